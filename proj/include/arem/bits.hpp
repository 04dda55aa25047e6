#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arem {

/// Computational-basis index over n wires. Wire 0 is the most significant
/// bit, so the printed bitstring reads wire 0 first.
using BasisIndex = std::uint64_t;

inline constexpr int kMaxWires = 62;

constexpr BasisIndex wire_mask(int wire, int num_wires) {
  return BasisIndex{1} << (num_wires - 1 - wire);
}

constexpr bool wire_bit(BasisIndex index, int wire, int num_wires) {
  return (index & wire_mask(wire, num_wires)) != 0;
}

constexpr BasisIndex all_ones(int num_wires) {
  return num_wires == 0 ? 0 : (~BasisIndex{0} >> (64 - num_wires));
}

constexpr BasisIndex basis_size(int num_wires) { return BasisIndex{1} << num_wires; }

inline int popcount(BasisIndex value) { return std::popcount(value); }

inline std::string to_bitstring(BasisIndex index, int num_wires) {
  std::string out(static_cast<std::size_t>(num_wires), '0');
  for (int w = 0; w < num_wires; ++w) {
    if (wire_bit(index, w, num_wires)) out[static_cast<std::size_t>(w)] = '1';
  }
  return out;
}

inline BasisIndex parse_bitstring(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxWires)) {
    throw std::invalid_argument("bitstring length out of range: '" + std::string(text) + "'");
  }
  BasisIndex value = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring contains non-binary character: '" + std::string(text) + "'");
    }
    value = (value << 1) | static_cast<BasisIndex>(c == '1');
  }
  return value;
}

}  // namespace arem
