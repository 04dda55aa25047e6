#include "arem/decode.hpp"

#include <algorithm>

namespace arem {
namespace {

std::vector<BasisIndex> row_masks(const Code& code) {
  std::vector<BasisIndex> masks(static_cast<std::size_t>(code.parity_check.rows()), 0);
  for (Eigen::Index row = 0; row < code.parity_check.rows(); ++row) {
    for (int w = 0; w < code.n; ++w) {
      if (code.parity_check(row, w) & 1) masks[static_cast<std::size_t>(row)] |= wire_mask(w, code.n);
    }
  }
  return masks;
}

struct DecodeContext {
  const Code& code;
  DecodeStrategy strategy;
  DecodeOptions options;
  std::vector<BasisIndex> rows;
  std::vector<int> wire_of_label;  // Hamming index -> wire, -1 if absent

  DecodeContext(const Code& c, DecodeStrategy s, const DecodeOptions& o)
      : code(c), strategy(s), options(o), rows(row_masks(c)) {
    int max_label = 0;
    for (int label : c.wire_labels) max_label = std::max(max_label, label);
    wire_of_label.assign(static_cast<std::size_t>(max_label + 1), -1);
    for (int w = 0; w < c.n; ++w) {
      const int label = c.wire_labels[static_cast<std::size_t>(w)];
      if (label > 0) wire_of_label[static_cast<std::size_t>(label)] = w;
    }
  }

  int check(std::size_t row, BasisIndex outcome) const { return popcount(rows[row] & outcome) & 1; }

  // Flips the wire named by a Hamming syndrome index.
  BasisIndex flip_label(BasisIndex outcome, BasisIndex label) const {
    if (label == 0) return outcome;
    if (label >= wire_of_label.size() || wire_of_label[static_cast<std::size_t>(label)] < 0) {
      throw std::logic_error("syndrome " + std::to_string(label) + " names no wire of code " + code.name);
    }
    return outcome ^ wire_mask(wire_of_label[static_cast<std::size_t>(label)], code.n);
  }

  std::int64_t decode_repetition(BasisIndex outcome) const {
    const int size = code.block_size;
    BasisIndex logical = 0;
    for (int b = 0; b < code.k; ++b) {
      int ones = 0;
      for (int a = 0; a < size; ++a) ones += wire_bit(outcome, b * size + a, code.n);
      bool bit = false;
      switch (strategy) {
        case DecodeStrategy::Detect:
          if (ones != 0 && ones != size) return Decoder::kDiscard;
          bit = ones == size;
          break;
        case DecodeStrategy::Correct:
          bit = size == 2 ? ones > 0 : 2 * ones > size;
          break;
        case DecodeStrategy::Hybrid:
          throw std::logic_error("hybrid decoding reached a repetition code");
      }
      if (bit) logical |= wire_mask(b, code.k);
    }
    return static_cast<std::int64_t>(logical);
  }

  std::int64_t decode_hamming(BasisIndex outcome) const {
    BasisIndex label = 0;
    for (std::size_t row = 0; row < rows.size(); ++row) label |= static_cast<BasisIndex>(check(row, outcome)) << row;
    if (strategy == DecodeStrategy::Detect) {
      return label == 0 ? static_cast<std::int64_t>(code.extract_logical(outcome)) : Decoder::kDiscard;
    }
    return static_cast<std::int64_t>(code.extract_logical(flip_label(outcome, label)));
  }

  std::int64_t decode_extended(BasisIndex outcome) const {
    const int total_parity = check(0, outcome);
    BasisIndex label = 0;
    for (std::size_t row = 1; row < rows.size(); ++row) {
      label |= static_cast<BasisIndex>(check(row, outcome)) << (row - 1);
    }
    switch (strategy) {
      case DecodeStrategy::Detect:
        if (total_parity != 0 || label != 0) return Decoder::kDiscard;
        return static_cast<std::int64_t>(code.extract_logical(outcome));
      case DecodeStrategy::Correct:
        return static_cast<std::int64_t>(code.extract_logical(flip_label(outcome, label)));
      case DecodeStrategy::Hybrid:
        if (total_parity == 0 && label != 0) return Decoder::kDiscard;
        // label == 0 with odd parity is a flip of the total-parity wire itself,
        // which carries no logical information.
        return static_cast<std::int64_t>(code.extract_logical(flip_label(outcome, label)));
    }
    return Decoder::kDiscard;
  }

  std::int64_t decode(BasisIndex outcome) const {
    switch (code.family) {
      case CodeFamily::Repetition: return decode_repetition(outcome);
      case CodeFamily::Hamming: return decode_hamming(outcome);
      case CodeFamily::ExtendedHamming: return decode_extended(outcome);
    }
    return Decoder::kDiscard;
  }
};

}  // namespace

DecodeStrategy parse_strategy(std::string_view text) {
  if (text == "detect" || text == "det") return DecodeStrategy::Detect;
  if (text == "correct" || text == "cor") return DecodeStrategy::Correct;
  if (text == "hybrid") return DecodeStrategy::Hybrid;
  throw std::invalid_argument("unknown decode strategy '" + std::string(text) + "'");
}

std::string to_string(DecodeStrategy strategy) {
  switch (strategy) {
    case DecodeStrategy::Detect: return "detect";
    case DecodeStrategy::Correct: return "correct";
    case DecodeStrategy::Hybrid: return "hybrid";
  }
  return "unknown";
}

Eigen::VectorXi syndrome(const Code& code, BasisIndex outcome) { return parity_checks(code, outcome); }

void check_strategy(const Code& code, DecodeStrategy strategy, const DecodeOptions& options) {
  if (strategy == DecodeStrategy::Hybrid && code.family != CodeFamily::ExtendedHamming) {
    throw std::invalid_argument("hybrid decoding needs an extended Hamming code (d >= 4), got " + code.name);
  }
  if (strategy == DecodeStrategy::Correct && code.family == CodeFamily::Repetition && code.block_size == 2 &&
      !options.pair_odd_as_one) {
    throw std::invalid_argument("the (2,1) code has distance 2 and cannot correct; enable pair_odd_as_one");
  }
}

DecodeOutcome decode_one(const Code& code, DecodeStrategy strategy, BasisIndex outcome, const DecodeOptions& options) {
  check_strategy(code, strategy, options);
  DecodeOutcome out;
  out.syndrome = syndrome(code, outcome);
  const DecodeContext ctx(code, strategy, options);
  const std::int64_t logical = ctx.decode(outcome);
  if (logical != Decoder::kDiscard) out.logical = static_cast<BasisIndex>(logical);
  return out;
}

Decoder::Decoder(Code code, DecodeStrategy strategy, DecodeOptions options)
    : code_(std::move(code)), strategy_(strategy) {
  check_strategy(code_, strategy_, options);
  if (code_.n > kMaxTabulatedWires) {
    throw std::invalid_argument("decode tables are limited to " + std::to_string(kMaxTabulatedWires) + " wires");
  }
  const DecodeContext ctx(code_, strategy_, options);
  table_.resize(static_cast<std::size_t>(basis_size(code_.n)));
  for (BasisIndex outcome = 0; outcome < basis_size(code_.n); ++outcome) {
    table_[static_cast<std::size_t>(outcome)] = ctx.decode(outcome);
  }
}

DecodedCounts Decoder::decode_shots(const ShotCounts& shots) const {
  if (shots.num_wires != code_.n) throw std::invalid_argument("shot counts do not match the code length");
  DecodedCounts out;
  out.num_logical = code_.k;
  out.counts.assign(static_cast<std::size_t>(basis_size(code_.k)), 0);
  for (const auto& [outcome, count] : shots.counts) {
    const std::int64_t logical = lookup(outcome);
    if (logical == kDiscard) {
      out.discarded += count;
    } else {
      out.counts[static_cast<std::size_t>(logical)] += count;
      out.kept += count;
    }
  }
  return out;
}

Simulator exact_simulator() {
  return [](const StatePrep& prep, const GateList& gates, const NoiseModel& noise) {
    return propagate_exact<double>(prep, gates, noise);
  };
}

ProbVectorD rebalanced_raw(const StatePrep& prep, const Code& code, const NoiseModel& noise, const Simulator& simulate,
                           RebalanceMode mode) {
  constexpr int kMaxPerWire = 16;
  const int n = code.n;
  std::vector<BasisIndex> masks;
  if (mode == RebalanceMode::Global) {
    masks = {0, all_ones(n)};
  } else {
    if (n > kMaxPerWire) throw std::invalid_argument("per-wire rebalancing is limited to 16 wires");
    for (BasisIndex m = 0; m < basis_size(n); ++m) masks.push_back(m);
  }

  const GateList base = code.encoding_circuit();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_size(n)));
  for (BasisIndex mask : masks) {
    GateList gates = base;
    for (int w = 0; w < n; ++w) {
      if (wire_bit(mask, w, n)) gates.gates.push_back(Gate::x(w));
    }
    sum += xor_relabel(simulate(prep, gates, noise), mask).probs;
  }
  sum /= static_cast<double>(masks.size());
  return ProbVectorD(n, std::move(sum));
}

DecodedDistributionD rebalanced_run(const StatePrep& prep, const Code& code, const NoiseModel& noise,
                                    const Simulator& simulate, DecodeStrategy strategy, RebalanceMode mode,
                                    const DecodeOptions& options) {
  return aggregate(code, strategy, rebalanced_raw(prep, code, noise, simulate, mode), options);
}

}  // namespace arem
