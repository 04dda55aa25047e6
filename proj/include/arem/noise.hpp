#pragma once

// Exact diagonal propagation of encoding circuits under two-qubit
// depolarizing gate noise and per-wire bit-flip readout noise.
//
// Preparation is a product state, every gate is a basis permutation and all
// noise is a Pauli mixture, so the computational-basis diagonal evolves
// independently of the coherences. The state is therefore a length-2^n
// probability vector rather than a 2^n x 2^n density matrix.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arem/bits.hpp"

namespace arem {

/// Per-wire product-state preparation. zero_weight[w] is the probability
/// weight of |0> on wire w, i.e. the state sqrt(p)|0> + sqrt(1-p)|1>.
struct StatePrep {
  std::vector<double> zero_weight;

  int num_wires() const { return static_cast<int>(zero_weight.size()); }

  static StatePrep all_zero(int num_wires) {
    return StatePrep{std::vector<double>(static_cast<std::size_t>(num_wires), 1.0)};
  }

  static StatePrep basis(BasisIndex bits, int num_wires) {
    StatePrep prep = all_zero(num_wires);
    for (int w = 0; w < num_wires; ++w) {
      if (wire_bit(bits, w, num_wires)) prep.zero_weight[static_cast<std::size_t>(w)] = 0.0;
    }
    return prep;
  }

  void validate() const {
    if (zero_weight.empty() || num_wires() > kMaxWires) {
      throw std::invalid_argument("state preparation must cover 1.." + std::to_string(kMaxWires) + " wires");
    }
    for (double p : zero_weight) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("state preparation weight outside [0,1]: " + std::to_string(p));
      }
    }
  }
};

enum class GateKind { Cnot, X };

struct Gate {
  GateKind kind = GateKind::Cnot;
  int control = -1;  // unused for X
  int target = 0;

  static Gate cnot(int control, int target) { return Gate{GateKind::Cnot, control, target}; }
  static Gate x(int wire) { return Gate{GateKind::X, -1, wire}; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct GateList {
  int num_wires = 0;
  std::vector<Gate> gates;

  GateList() = default;
  GateList(int n, std::vector<Gate> g) : num_wires(n), gates(std::move(g)) {}

  std::size_t cnot_count() const {
    std::size_t count = 0;
    for (const Gate& g : gates) count += g.kind == GateKind::Cnot;
    return count;
  }

  void validate() const {
    if (num_wires < 1 || num_wires > kMaxWires) {
      throw std::invalid_argument("gate list wire count out of range: " + std::to_string(num_wires));
    }
    for (const Gate& g : gates) {
      if (g.target < 0 || g.target >= num_wires) {
        throw std::out_of_range("gate target index out of range: " + std::to_string(g.target));
      }
      if (g.kind == GateKind::Cnot) {
        if (g.control < 0 || g.control >= num_wires) {
          throw std::out_of_range("gate control index out of range: " + std::to_string(g.control));
        }
        if (g.control == g.target) {
          throw std::invalid_argument("CNOT control equals target: " + std::to_string(g.control));
        }
      }
    }
  }
};

/// Asymmetric readout flip channel: Pr(1->0) = q(1+kappa), Pr(0->1) = q(1-kappa).
struct BitflipChannel {
  double q = 0.0;
  double kappa = 0.0;

  double one_to_zero() const { return q * (1.0 + kappa); }
  double zero_to_one() const { return q * (1.0 - kappa); }

  void validate() const {
    if (!(q >= 0.0 && q <= 0.5)) throw std::domain_error("readout rate q outside [0,0.5]: " + std::to_string(q));
    if (!(kappa >= -1.0 && kappa <= 1.0)) {
      throw std::domain_error("readout asymmetry kappa outside [-1,1]: " + std::to_string(kappa));
    }
    const double a = one_to_zero();
    const double b = zero_to_one();
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) {
      throw std::domain_error("derived readout flip probability outside [0,1]");
    }
  }
};

struct NoiseModel {
  std::vector<BitflipChannel> readout;  // one per wire
  double gate_eps = 0.0;                // depolarizing rate after each CNOT
  std::vector<double> per_gate_eps;     // optional override, indexed by CNOT ordinal

  static NoiseModel uniform(int num_wires, double q, double kappa, double eps) {
    NoiseModel model;
    model.readout.assign(static_cast<std::size_t>(num_wires), BitflipChannel{q, kappa});
    model.gate_eps = eps;
    return model;
  }

  static NoiseModel noiseless(int num_wires) { return uniform(num_wires, 0.0, 0.0, 0.0); }

  double eps_for(std::size_t cnot_ordinal) const {
    return per_gate_eps.empty() ? gate_eps : per_gate_eps.at(cnot_ordinal);
  }

  void validate(int num_wires, std::size_t cnot_count) const {
    if (static_cast<int>(readout.size()) != num_wires) {
      throw std::invalid_argument("noise model has " + std::to_string(readout.size()) +
                                  " readout channels for " + std::to_string(num_wires) + " wires");
    }
    for (const BitflipChannel& ch : readout) ch.validate();
    auto check_eps = [](double eps) {
      if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("gate noise eps outside [0,1]: " + std::to_string(eps));
    };
    check_eps(gate_eps);
    if (!per_gate_eps.empty() && per_gate_eps.size() != cnot_count) {
      throw std::invalid_argument("per-gate eps list does not match CNOT count");
    }
    for (double eps : per_gate_eps) check_eps(eps);
  }
};

/// Probability distribution over the 2^n basis outcomes of num_wires wires.
template <typename Scalar>
struct ProbVector {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int num_wires = 0;
  Vector probs;

  ProbVector() = default;
  ProbVector(int n, Vector p) : num_wires(n), probs(std::move(p)) {}

  static ProbVector point_mass(BasisIndex index, int n) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(basis_size(n)));
    v(static_cast<Eigen::Index>(index)) = Scalar(1);
    return ProbVector(n, std::move(v));
  }

  Scalar operator[](BasisIndex index) const { return probs(static_cast<Eigen::Index>(index)); }
  Eigen::Index size() const { return probs.size(); }
  Scalar total() const { return probs.sum(); }

  void validate(Scalar tolerance = Scalar(1e-12)) const {
    if (probs.size() != static_cast<Eigen::Index>(basis_size(num_wires))) {
      throw std::invalid_argument("probability vector length does not match 2^n");
    }
    if ((probs.array() < Scalar(0)).any()) throw std::domain_error("probability vector has negative entries");
    using std::abs;
    if (abs(probs.sum() - Scalar(1)) > tolerance) throw std::domain_error("probability vector does not sum to 1");
  }

  template <typename Other>
  ProbVector<Other> cast() const {
    return ProbVector<Other>(num_wires, probs.template cast<Other>());
  }
};

using ProbVectorD = ProbVector<double>;

/// Relabels every outcome by its bitwise complement.
template <typename Scalar>
ProbVector<Scalar> complement(const ProbVector<Scalar>& dist) {
  const BasisIndex mask = all_ones(dist.num_wires);
  typename ProbVector<Scalar>::Vector out(dist.probs.size());
  for (Eigen::Index i = 0; i < dist.probs.size(); ++i) {
    out(static_cast<Eigen::Index>(static_cast<BasisIndex>(i) ^ mask)) = dist.probs(i);
  }
  return ProbVector<Scalar>(dist.num_wires, std::move(out));
}

/// Relabels outcomes by XOR with a fixed flip mask.
template <typename Scalar>
ProbVector<Scalar> xor_relabel(const ProbVector<Scalar>& dist, BasisIndex flips) {
  typename ProbVector<Scalar>::Vector out(dist.probs.size());
  for (Eigen::Index i = 0; i < dist.probs.size(); ++i) {
    out(static_cast<Eigen::Index>(static_cast<BasisIndex>(i) ^ flips)) = dist.probs(i);
  }
  return ProbVector<Scalar>(dist.num_wires, std::move(out));
}

template <typename Scalar>
Scalar total_variation(const ProbVector<Scalar>& a, const ProbVector<Scalar>& b) {
  return (a.probs - b.probs).cwiseAbs().sum() / Scalar(2);
}

namespace detail {

template <typename Vector>
void apply_cnot(Vector& v, BasisIndex control, BasisIndex target) {
  const auto size = static_cast<BasisIndex>(v.size());
  for (BasisIndex i = 0; i < size; ++i) {
    if ((i & control) && !(i & target)) std::swap(v(static_cast<Eigen::Index>(i)), v(static_cast<Eigen::Index>(i | target)));
  }
}

template <typename Vector>
void apply_flip(Vector& v, BasisIndex mask) {
  const auto size = static_cast<BasisIndex>(v.size());
  for (BasisIndex i = 0; i < size; ++i) {
    if (!(i & mask)) std::swap(v(static_cast<Eigen::Index>(i)), v(static_cast<Eigen::Index>(i | mask)));
  }
}

// The 16 two-qubit Paulis at eps/16 each, grouped by bit-flip pattern:
// none 1 - 3eps/4, control-only eps/4, target-only eps/4, both eps/4.
template <typename Vector, typename Scalar>
void apply_depolarizing_diagonal(Vector& v, BasisIndex control, BasisIndex target, Scalar eps) {
  if (eps == Scalar(0)) return;
  const Scalar w = eps / Scalar(4);
  const auto size = static_cast<BasisIndex>(v.size());
  for (BasisIndex i = 0; i < size; ++i) {
    if ((i & control) || (i & target)) continue;
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(i | target);
    const auto c = static_cast<Eigen::Index>(i | control);
    const auto d = static_cast<Eigen::Index>(i | control | target);
    const Scalar s = v(a) + v(b) + v(c) + v(d);
    const Scalar keep = Scalar(1) - Scalar(4) * w;
    v(a) = keep * v(a) + w * s;
    v(b) = keep * v(b) + w * s;
    v(c) = keep * v(c) + w * s;
    v(d) = keep * v(d) + w * s;
  }
}

template <typename Vector, typename Scalar>
void apply_readout(Vector& v, BasisIndex mask, Scalar zero_to_one, Scalar one_to_zero) {
  if (zero_to_one == Scalar(0) && one_to_zero == Scalar(0)) return;
  const auto size = static_cast<BasisIndex>(v.size());
  for (BasisIndex i = 0; i < size; ++i) {
    if (i & mask) continue;
    const auto lo = static_cast<Eigen::Index>(i);
    const auto hi = static_cast<Eigen::Index>(i | mask);
    const Scalar p0 = v(lo);
    const Scalar p1 = v(hi);
    v(lo) = p0 * (Scalar(1) - zero_to_one) + p1 * one_to_zero;
    v(hi) = p0 * zero_to_one + p1 * (Scalar(1) - one_to_zero);
  }
}

}  // namespace detail

/// Product-state diagonal of a preparation, wire 0 most significant.
template <typename Scalar = double>
typename ProbVector<Scalar>::Vector product_diagonal(const StatePrep& prep) {
  using Vector = typename ProbVector<Scalar>::Vector;
  Vector v = Vector::Ones(1);
  for (double p : prep.zero_weight) {
    Vector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * Scalar(p);
      next(2 * i + 1) = v(i) * (Scalar(1) - Scalar(p));
    }
    v = std::move(next);
  }
  return v;
}

/// Exact outcome distribution: prepare, run gates (depolarizing noise after
/// each CNOT, X gates noiseless), then apply each wire's readout channel.
template <typename Scalar = double>
ProbVector<Scalar> propagate_exact(const StatePrep& prep, const GateList& gates, const NoiseModel& noise) {
  prep.validate();
  gates.validate();
  const int n = gates.num_wires;
  if (prep.num_wires() != n) throw std::invalid_argument("state preparation and gate list disagree on wire count");
  noise.validate(n, gates.cnot_count());

  auto v = product_diagonal<Scalar>(prep);
  std::size_t cnot_ordinal = 0;
  for (const Gate& g : gates.gates) {
    if (g.kind == GateKind::X) {
      detail::apply_flip(v, wire_mask(g.target, n));
      continue;
    }
    const BasisIndex c = wire_mask(g.control, n);
    const BasisIndex t = wire_mask(g.target, n);
    detail::apply_cnot(v, c, t);
    detail::apply_depolarizing_diagonal(v, c, t, Scalar(noise.eps_for(cnot_ordinal++)));
  }
  for (int w = 0; w < n; ++w) {
    const BitflipChannel& ch = noise.readout[static_cast<std::size_t>(w)];
    detail::apply_readout(v, wire_mask(w, n), Scalar(ch.zero_to_one()), Scalar(ch.one_to_zero()));
  }
  return ProbVector<Scalar>(n, std::move(v));
}

}  // namespace arem
