#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arem/codes.hpp"
#include "arem/decode.hpp"
#include "arem/noise.hpp"

namespace arem {

/// Exact non-negative rational, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Leading-order effective error rate q_eff ~ alpha * eps + c * q^e of a
/// (code, strategy) row.
struct Prediction {
  std::string code;
  DecodeStrategy strategy = DecodeStrategy::Detect;
  double q = 0.0;
  double eps = 0.0;
  int q_exponent = 0;
  Rational alpha;
  std::optional<double> q_prefactor;  // known only where the closed form fixes it
  double value = 0.0;                 // alpha*eps (+ c*q^e when c is known)
  std::vector<std::string> warnings;
};

Prediction predict_qeff(const Code& code, DecodeStrategy strategy, double q, double eps);

enum class ChannelClass { Correct, Discarded, LogicalError };

std::string to_string(ChannelClass c);

struct ChannelRecord {
  std::size_t gate_index = 0;
  int control = 0;
  int target = 0;
  std::string pauli;  // control letter then target letter, e.g. "XY"
  ChannelClass classification = ChannelClass::Correct;
  Rational weight;  // contribution to Q_eff / eps (multiples of 1/16 when prep-independent)
};

struct AlphaEstimate {
  Rational alpha;
  std::vector<ChannelRecord> breakdown;

  std::size_t logical_error_channels() const;
};

/// Inserts each two-qubit Pauli after each schedule CNOT of an otherwise
/// noiseless circuit, for every logical basis preparation, and sums the eps/16
/// weight of the channels that decode to a wrong logical string:
/// alpha = sum / k.
AlphaEstimate pauli_insertion_oracle(const Code& code, DecodeStrategy strategy, const DecodeOptions& options = {});

struct VariancePrediction {
  double lambda = 0.0;
  double lambda_eff = 0.0;
  double unmitigated = 0.0;
  double detection = 0.0;
  double correction = 0.0;
};

/// Estimator variances after N shots: unmitigated lambda(1-lambda)/N,
/// detection lambda_eff(1-lambda_eff)(1+2q)/N, correction
/// lambda_eff(1-lambda_eff)/N.
VariancePrediction predict_variance(double p, double q, double q_eff, std::uint64_t shots);

/// Large-r correction susceptibility of Hamming codes, 3r/16. Asymptotic only.
double hamming_alpha_asymptotic(int r);

/// Leading-order outcome distributions of the (2,1) and (3,1) codes under
/// symmetric readout q and depolarizing eps, neglecting O(eps q) and higher.
ProbVectorD closed_form_distribution(const Code& code, double p, double q, double eps);

}  // namespace arem
