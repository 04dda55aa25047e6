#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arem/codes.hpp"
#include "arem/noise.hpp"
#include "arem/sampling.hpp"

namespace arem {

enum class DecodeStrategy { Detect, Correct, Hybrid };

DecodeStrategy parse_strategy(std::string_view text);
std::string to_string(DecodeStrategy strategy);

struct DecodeOptions {
  /// (2,1) only: read 01 and 10 as logical 1 instead of refusing to correct.
  /// Meant for strongly asymmetric readout where 1 -> 0 dominates.
  bool pair_odd_as_one = false;
};

struct DecodeOutcome {
  std::optional<BasisIndex> logical;  // empty when the outcome is discarded
  Eigen::VectorXi syndrome;

  bool discarded() const { return !logical.has_value(); }
};

/// H * outcome mod 2.
Eigen::VectorXi syndrome(const Code& code, BasisIndex outcome);

/// Throws std::invalid_argument when the strategy is not available for the code.
void check_strategy(const Code& code, DecodeStrategy strategy, const DecodeOptions& options = {});

/// Decodes one physical outcome.
///
/// Detect keeps only zero-syndrome outcomes. Correct never discards: majority
/// vote per repetition block, or a flip of the wire whose Hamming index equals
/// the syndrome (extended codes ignore the total-parity row). Hybrid, for
/// extended codes, corrects when the total-parity row fires and discards when
/// only the Hamming rows fire.
DecodeOutcome decode_one(const Code& code, DecodeStrategy strategy, BasisIndex outcome,
                         const DecodeOptions& options = {});

template <typename Scalar>
struct DecodedDistribution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int num_logical = 0;
  Vector probs;  // normalized over the kept mass
  Scalar kept_fraction = Scalar(0);
  Scalar discarded_mass = Scalar(0);

  Scalar operator[](BasisIndex logical) const { return probs(static_cast<Eigen::Index>(logical)); }
};

using DecodedDistributionD = DecodedDistribution<double>;

/// Logical-outcome histogram of a batch of shots.
struct DecodedCounts {
  int num_logical = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t kept = 0;
  std::uint64_t discarded = 0;

  double kept_fraction() const {
    const auto total = kept + discarded;
    return total == 0 ? 0.0 : static_cast<double>(kept) / static_cast<double>(total);
  }
  double frequency(BasisIndex logical) const {
    return kept == 0 ? 0.0 : static_cast<double>(counts[static_cast<std::size_t>(logical)]) / static_cast<double>(kept);
  }
};

inline constexpr int kMaxTabulatedWires = 20;

/// Decode table over all 2^n outcomes, built once per (code, strategy).
class Decoder {
 public:
  static constexpr std::int64_t kDiscard = -1;

  Decoder(Code code, DecodeStrategy strategy, DecodeOptions options = {});

  const Code& code() const { return code_; }
  DecodeStrategy strategy() const { return strategy_; }

  /// Logical bitstring or kDiscard.
  std::int64_t lookup(BasisIndex outcome) const { return table_.at(static_cast<std::size_t>(outcome)); }

  template <typename Scalar>
  DecodedDistribution<Scalar> aggregate(const ProbVector<Scalar>& raw) const;

  DecodedCounts decode_shots(const ShotCounts& shots) const;

 private:
  Code code_;
  DecodeStrategy strategy_;
  std::vector<std::int64_t> table_;
};

template <typename Scalar>
DecodedDistribution<Scalar> Decoder::aggregate(const ProbVector<Scalar>& raw) const {
  if (raw.num_wires != code_.n || raw.size() != static_cast<Eigen::Index>(basis_size(code_.n))) {
    throw std::invalid_argument("raw distribution does not cover the code's " + std::to_string(code_.n) + " wires");
  }
  DecodedDistribution<Scalar> out;
  out.num_logical = code_.k;
  out.probs = DecodedDistribution<Scalar>::Vector::Zero(static_cast<Eigen::Index>(basis_size(code_.k)));
  Scalar discarded = Scalar(0);
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    const std::int64_t logical = table_[static_cast<std::size_t>(i)];
    if (logical == kDiscard) {
      discarded += raw.probs(i);
    } else {
      out.probs(static_cast<Eigen::Index>(logical)) += raw.probs(i);
    }
  }
  const Scalar kept = out.probs.sum();
  if (!(kept > Scalar(0))) throw std::domain_error("every outcome was discarded; kept mass is zero");
  out.kept_fraction = kept / (kept + discarded);
  out.discarded_mass = discarded;
  out.probs /= kept;
  return out;
}

template <typename Scalar>
DecodedDistribution<Scalar> aggregate(const Code& code, DecodeStrategy strategy, const ProbVector<Scalar>& raw,
                                      const DecodeOptions& options = {}) {
  return Decoder(code, strategy, options).aggregate(raw);
}

using Simulator = std::function<ProbVectorD(const StatePrep&, const GateList&, const NoiseModel&)>;

/// Exact diagonal propagation wrapped as a Simulator.
Simulator exact_simulator();

enum class RebalanceMode {
  /// Every wire independently receives a pre-readout X in half of the runs
  /// (all 2^n masks averaged). Symmetrizes each wire's channel exactly.
  PerWire,
  /// One extra run with X on every wire. Leaves an O(q^2 kappa^2) correlated
  /// residue across wires.
  Global,
};

/// Average, after undoing the X relabeling, of the raw distributions obtained
/// with noiseless X gates inserted right before readout.
ProbVectorD rebalanced_raw(const StatePrep& prep, const Code& code, const NoiseModel& noise, const Simulator& simulate,
                           RebalanceMode mode = RebalanceMode::PerWire);

DecodedDistributionD rebalanced_run(const StatePrep& prep, const Code& code, const NoiseModel& noise,
                                    const Simulator& simulate, DecodeStrategy strategy,
                                    RebalanceMode mode = RebalanceMode::PerWire, const DecodeOptions& options = {});

}  // namespace arem
