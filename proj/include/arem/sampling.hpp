#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>

#include "arem/noise.hpp"

namespace arem {

struct ShotCounts {
  int num_wires = 0;
  std::uint64_t total = 0;
  std::map<BasisIndex, std::uint64_t> counts;  // only nonzero outcomes are stored

  std::uint64_t count(BasisIndex outcome) const {
    auto it = counts.find(outcome);
    return it == counts.end() ? 0 : it->second;
  }

  double frequency(BasisIndex outcome) const {
    return total == 0 ? 0.0 : static_cast<double>(count(outcome)) / static_cast<double>(total);
  }

  /// Empirical distribution as a probability vector.
  ProbVectorD empirical() const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_size(num_wires)));
    for (const auto& [outcome, c] : counts) v(static_cast<Eigen::Index>(outcome)) = static_cast<double>(c);
    if (total > 0) v /= static_cast<double>(total);
    return ProbVectorD(num_wires, std::move(v));
  }
};

/// Deterministic multinomial draw of n_shots outcomes from dist, using
/// sequential conditional binomials so the cost is O(2^n) per call.
template <typename Scalar>
ShotCounts sample_shots(const ProbVector<Scalar>& dist, std::uint64_t n_shots, std::uint64_t seed) {
  if (n_shots == 0) throw std::invalid_argument("sample_shots requires at least one shot");
  dist.validate(Scalar(1e-9));
  std::mt19937_64 rng(seed);
  ShotCounts out;
  out.num_wires = dist.num_wires;
  out.total = n_shots;

  const Eigen::Index size = dist.size();
  // suffix(i) = mass of outcomes i..end; an outcome whose tail beyond it is
  // empty takes every remaining shot, so zero-probability outcomes never
  // receive rounding leftovers.
  Eigen::VectorXd suffix = Eigen::VectorXd::Zero(size + 1);
  for (Eigen::Index i = size - 1; i >= 0; --i) suffix(i) = suffix(i + 1) + static_cast<double>(dist.probs(i));

  std::uint64_t remaining = n_shots;
  for (Eigen::Index i = 0; i < size && remaining > 0; ++i) {
    const double p = static_cast<double>(dist.probs(i));
    if (p <= 0.0) continue;
    std::uint64_t drawn = remaining;
    if (suffix(i + 1) > 0.0) {
      std::binomial_distribution<std::uint64_t> binom(remaining, std::min(1.0, p / suffix(i)));
      drawn = binom(rng);
    }
    if (drawn > 0) {
      out.counts[static_cast<BasisIndex>(i)] = drawn;
      remaining -= drawn;
    }
  }
  return out;
}

}  // namespace arem
