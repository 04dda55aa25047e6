#include "arem/analytics.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arem {
namespace {

struct TableRow {
  int q_exponent;
  Rational alpha;
  std::optional<double> q_prefactor;
};

std::optional<TableRow> lookup_row(const Code& code, DecodeStrategy strategy) {
  using S = DecodeStrategy;
  const Rational quarter = Rational::make(1, 4);
  if (code.family == CodeFamily::Repetition && code.k == 1) {
    if (code.block_size == 2 && strategy == S::Detect) return TableRow{2, quarter, 1.0};
    if (code.block_size == 3 && strategy == S::Detect) return TableRow{3, quarter, std::nullopt};
    if (code.block_size == 3 && strategy == S::Correct) return TableRow{2, Rational::make(3, 4), 3.0};
  }
  if (code.family == CodeFamily::Hamming && code.rank == 3) {
    if (strategy == S::Detect) return TableRow{3, quarter, std::nullopt};
    if (strategy == S::Correct) return TableRow{2, Rational::make(7, 8), std::nullopt};
  }
  if (code.family == CodeFamily::ExtendedHamming && code.rank == 3) {
    if (code.variant == CircuitVariant::Full && strategy == S::Detect) return TableRow{4, quarter, std::nullopt};
    if (code.variant == CircuitVariant::Full && strategy == S::Hybrid) return TableRow{3, quarter, std::nullopt};
    if (code.variant == CircuitVariant::Reduced && strategy == S::Hybrid) {
      return TableRow{3, Rational::make(3, 4), std::nullopt};
    }
  }
  return std::nullopt;
}

constexpr std::array<char, 4> kPauliLetters{'I', 'X', 'Y', 'Z'};

bool flips_bit(char pauli) { return pauli == 'X' || pauli == 'Y'; }

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

Prediction predict_qeff(const Code& code, DecodeStrategy strategy, double q, double eps) {
  const auto row = lookup_row(code, strategy);
  if (!row) {
    throw std::invalid_argument("no closed-form prediction for code " + code.name + " (" + to_string(code.variant) +
                                ") with strategy " + to_string(strategy));
  }
  if (q < 0.0 || eps < 0.0) throw std::domain_error("error rates must be non-negative");
  Prediction out;
  out.code = code.name;
  out.strategy = strategy;
  out.q = q;
  out.eps = eps;
  out.q_exponent = row->q_exponent;
  out.alpha = row->alpha;
  out.q_prefactor = row->q_prefactor;
  out.value = row->alpha.value() * eps;
  if (row->q_prefactor) out.value += *row->q_prefactor * std::pow(q, row->q_exponent);
  if (q > 0.1) out.warnings.push_back("q above 0.1: leading-order expansion may be inaccurate");
  if (eps > 0.1) out.warnings.push_back("eps above 0.1: leading-order expansion may be inaccurate");
  if (!row->q_prefactor && q > 0.0) out.warnings.push_back("q prefactor unknown for this row; value holds the eps term only");
  return out;
}

std::string to_string(ChannelClass c) {
  switch (c) {
    case ChannelClass::Correct: return "correct";
    case ChannelClass::Discarded: return "discarded";
    case ChannelClass::LogicalError: return "logical_error";
  }
  return "unknown";
}

std::size_t AlphaEstimate::logical_error_channels() const {
  std::size_t count = 0;
  for (const auto& rec : breakdown) count += rec.classification == ChannelClass::LogicalError;
  return count;
}

AlphaEstimate pauli_insertion_oracle(const Code& code, DecodeStrategy strategy, const DecodeOptions& options) {
  check_strategy(code, strategy, options);
  const int n = code.n;
  const BasisIndex preps = basis_size(code.k);
  std::optional<Decoder> table;
  if (n <= kMaxTabulatedWires) table.emplace(code, strategy, options);
  auto decode = [&](BasisIndex outcome) -> std::optional<BasisIndex> {
    if (table) {
      const std::int64_t v = table->lookup(outcome);
      if (v == Decoder::kDiscard) return std::nullopt;
      return static_cast<BasisIndex>(v);
    }
    return decode_one(code, strategy, outcome, options).logical;
  };

  AlphaEstimate out;
  std::int64_t error_events = 0;  // (channel, preparation) pairs that decode wrongly
  for (std::size_t g = 0; g < code.schedule.size(); ++g) {
    const Cnot& gate = code.schedule[g];
    for (char pc : kPauliLetters) {
      for (char pt : kPauliLetters) {
        BasisIndex flips = 0;
        if (flips_bit(pc)) flips |= wire_mask(gate.control, n);
        if (flips_bit(pt)) flips |= wire_mask(gate.target, n);

        std::int64_t errors = 0;
        std::int64_t discards = 0;
        for (BasisIndex logical = 0; logical < preps; ++logical) {
          BasisIndex bits = 0;
          for (int j = 0; j < code.k; ++j) {
            if (wire_bit(logical, j, code.k)) bits |= wire_mask(code.logical_wires[static_cast<std::size_t>(j)], n);
          }
          for (std::size_t h = 0; h < code.schedule.size(); ++h) {
            const Cnot& c = code.schedule[h];
            if (wire_bit(bits, c.control, n)) bits ^= wire_mask(c.target, n);
            if (h == g) bits ^= flips;
          }
          const auto decoded = decode(bits);
          if (!decoded) {
            ++discards;
          } else if (*decoded != logical) {
            ++errors;
          }
        }

        ChannelRecord rec;
        rec.gate_index = g;
        rec.control = gate.control;
        rec.target = gate.target;
        rec.pauli = std::string{pc, pt};
        rec.weight = Rational::make(errors, 16 * static_cast<std::int64_t>(preps));
        if (errors > 0) {
          rec.classification = ChannelClass::LogicalError;
        } else if (discards > 0) {
          rec.classification = ChannelClass::Discarded;
        }
        if (flips == 0 && rec.classification != ChannelClass::Correct) {
          throw std::logic_error("phase-only Pauli " + rec.pauli + " changed a decoded outcome");
        }
        error_events += errors;
        out.breakdown.push_back(std::move(rec));
      }
    }
  }
  out.alpha = Rational::make(error_events, 16 * static_cast<std::int64_t>(preps) * code.k);
  return out;
}

VariancePrediction predict_variance(double p, double q, double q_eff, std::uint64_t shots) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("state parameter p outside [0,1]");
  if (shots == 0) throw std::invalid_argument("shot count must be positive");
  const double n = static_cast<double>(shots);
  VariancePrediction out;
  out.lambda = p + q * (1.0 - 2.0 * p);
  out.lambda_eff = p + q_eff * (1.0 - 2.0 * p);
  out.unmitigated = out.lambda * (1.0 - out.lambda) / n;
  const double base = out.lambda_eff * (1.0 - out.lambda_eff) / n;
  out.detection = base * (1.0 + 2.0 * q);
  out.correction = base;
  return out;
}

double hamming_alpha_asymptotic(int r) {
  if (r < 2) throw std::invalid_argument("Hamming rank must be >= 2");
  return 3.0 * r / 16.0;
}

ProbVectorD closed_form_distribution(const Code& code, double p, double q, double eps) {
  if (code.family != CodeFamily::Repetition || code.k != 1) {
    throw std::invalid_argument("closed-form distributions exist only for the (2,1) and (3,1) codes");
  }
  const double e4 = eps / 4.0;
  const double q2 = q * q;
  if (code.block_size == 2) {
    Eigen::VectorXd m(4);
    m(0b00) = p * (1.0 - 2.0 * q - eps) + q2 + e4;
    m(0b01) = q - q2 + e4;
    m(0b10) = q - q2 + e4;
    m(0b11) = (1.0 - p) * (1.0 - 2.0 * q - eps) + q2 + e4;
    return ProbVectorD(2, std::move(m));
  }
  Eigen::VectorXd m(8);
  const double base = 1.0 - 3.0 * q + 3.0 * q2 - 7.0 * eps / 4.0;
  m(0b000) = base * p + e4;
  m(0b001) = e4 * p + p * q + (1.0 - 3.0 * p) * q2;
  m(0b010) = e4 * (2.0 - p) + p * q + (1.0 - 3.0 * p) * q2;
  m(0b011) = e4 * (1.0 - p) + (1.0 - p) * q - (2.0 - 3.0 * p) * q2;
  m(0b100) = e4 * p + p * q + (1.0 - 3.0 * p) * q2;
  m(0b101) = e4 * (1.0 + p) + (1.0 - p) * q - (2.0 - 3.0 * p) * q2;
  m(0b110) = e4 * (1.0 - p) + (1.0 - p) * q - (2.0 - 3.0 * p) * q2;
  m(0b111) = base * (1.0 - p) + e4;
  return ProbVectorD(3, std::move(m));
}

}  // namespace arem
