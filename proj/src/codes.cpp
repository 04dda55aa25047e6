#include "arem/codes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace arem {
namespace {

std::string code_name(int n, int k) { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; }

BasisIndex run_schedule(const std::vector<Cnot>& schedule, BasisIndex bits, int n) {
  for (const Cnot& g : schedule) {
    if (wire_bit(bits, g.control, n)) bits ^= wire_mask(g.target, n);
  }
  return bits;
}

void materialize_codewords(Code& code) {
  code.codewords.clear();
  if (code.k > kMaxMaterializedLogical) return;
  code.codewords.reserve(static_cast<std::size_t>(basis_size(code.k)));
  for (BasisIndex logical = 0; logical < basis_size(code.k); ++logical) {
    code.codewords.push_back(code.encode(logical));
  }
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

BasisIndex Code::encode(BasisIndex logical) const {
  if (logical >= basis_size(k)) throw std::out_of_range("logical bitstring wider than k");
  BasisIndex bits = 0;
  for (int j = 0; j < k; ++j) {
    if (wire_bit(logical, j, k)) bits |= wire_mask(logical_wires[static_cast<std::size_t>(j)], n);
  }
  return run_schedule(schedule, bits, n);
}

BasisIndex Code::extract_logical(BasisIndex outcome) const {
  BasisIndex logical = 0;
  for (int j = 0; j < k; ++j) {
    if (wire_bit(outcome, logical_wires[static_cast<std::size_t>(j)], n)) logical |= wire_mask(j, k);
  }
  return logical;
}

GateList Code::encoding_circuit() const {
  std::vector<Gate> gates;
  gates.reserve(schedule.size());
  for (const Cnot& g : schedule) gates.push_back(Gate::cnot(g.control, g.target));
  return GateList(n, std::move(gates));
}

StatePrep Code::prep(std::span<const double> logical_zero_weight) const {
  if (static_cast<int>(logical_zero_weight.size()) != k) {
    throw std::invalid_argument("expected " + std::to_string(k) + " logical preparation weights");
  }
  StatePrep out = StatePrep::all_zero(n);
  for (int j = 0; j < k; ++j) {
    out.zero_weight[static_cast<std::size_t>(logical_wires[static_cast<std::size_t>(j)])] =
        logical_zero_weight[static_cast<std::size_t>(j)];
  }
  return out;
}

StatePrep Code::prep_uniform(double logical_zero_weight) const {
  const std::vector<double> weights(static_cast<std::size_t>(k), logical_zero_weight);
  return prep(weights);
}

StatePrep Code::basis_prep(BasisIndex logical) const {
  std::vector<double> weights(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) weights[static_cast<std::size_t>(j)] = wire_bit(logical, j, k) ? 0.0 : 1.0;
  return prep(weights);
}

Code repetition_code(int n_phys, int blocks) {
  if (n_phys != 2 && n_phys != 3) {
    throw std::invalid_argument("repetition code supports 2 or 3 physical wires, got " + std::to_string(n_phys));
  }
  if (blocks < 1 || n_phys * blocks > kMaxWires) throw std::invalid_argument("repetition block count out of range");

  Code code;
  code.family = CodeFamily::Repetition;
  code.n = n_phys * blocks;
  code.k = blocks;
  code.d = n_phys;
  code.block_size = n_phys;
  code.name = code_name(code.n, code.k);
  code.parity_check = Gf2Matrix::Zero((n_phys - 1) * blocks, code.n);
  for (int b = 0; b < blocks; ++b) {
    const int base = b * n_phys;
    code.logical_wires.push_back(base);
    for (int a = 1; a < n_phys; ++a) {
      const int row = b * (n_phys - 1) + (a - 1);
      code.parity_check(row, base) = 1;
      code.parity_check(row, base + a) = 1;
      code.schedule.push_back({base, base + a});
    }
    // Hamming indices so that the (3,1) block coincides with hamming_code(2).
    if (n_phys == 3) {
      code.wire_labels.insert(code.wire_labels.end(), {3, 1, 2});
    } else {
      code.wire_labels.insert(code.wire_labels.end(), {1, 0});
    }
  }
  materialize_codewords(code);
  return code;
}

Code hamming_code(int r) {
  if (r < 2) throw std::invalid_argument("Hamming code rank must be >= 2, got " + std::to_string(r));
  if (r > 5) throw std::invalid_argument("Hamming code rank above 5 exceeds the 62-wire limit");
  const int n = (1 << r) - 1;

  Code code;
  code.family = CodeFamily::Hamming;
  code.n = n;
  code.k = n - r;
  code.d = 3;
  code.rank = r;
  code.name = code_name(code.n, code.k);

  std::vector<int> logical_labels;
  std::vector<int> parity_labels;
  for (int l = 1; l <= n; ++l) {
    (std::has_single_bit(static_cast<unsigned>(l)) ? parity_labels : logical_labels).push_back(l);
  }
  code.wire_labels = logical_labels;
  code.wire_labels.insert(code.wire_labels.end(), parity_labels.begin(), parity_labels.end());
  for (int j = 0; j < code.k; ++j) code.logical_wires.push_back(j);

  code.parity_check = Gf2Matrix::Zero(r, n);
  for (int row = 0; row < r; ++row) {
    for (int w = 0; w < n; ++w) code.parity_check(row, w) = (code.wire_labels[static_cast<std::size_t>(w)] >> row) & 1;
  }

  // Grouped by logical wire, each feeding its parity bits in ascending order.
  auto parity_wire = [&](int bit) { return code.k + bit; };
  for (int j = 0; j < code.k; ++j) {
    const int label = code.wire_labels[static_cast<std::size_t>(j)];
    for (int bit = 0; bit < r; ++bit) {
      if ((label >> bit) & 1) code.schedule.push_back({j, parity_wire(bit)});
    }
  }
  materialize_codewords(code);
  return code;
}

Code extended_hamming_code(int r, CircuitVariant variant) {
  if (r < 2) throw std::invalid_argument("extended Hamming code rank must be >= 2, got " + std::to_string(r));
  if (r > 5) throw std::invalid_argument("extended Hamming code rank above 5 exceeds the 62-wire limit");
  const Code base = hamming_code(r);
  const int n = base.n + 1;
  const int extra = base.n;

  Code code;
  code.family = CodeFamily::ExtendedHamming;
  code.variant = variant;
  code.n = n;
  code.k = base.k;
  code.d = 4;
  code.rank = r;
  code.name = code_name(n, code.k);
  code.logical_wires = base.logical_wires;
  code.wire_labels = base.wire_labels;
  code.wire_labels.push_back(0);

  code.parity_check = Gf2Matrix::Zero(r + 1, n);
  code.parity_check.row(0).setOnes();
  code.parity_check.block(1, 0, r, base.n) = base.parity_check;

  code.schedule = base.schedule;
  if (variant == CircuitVariant::Full) {
    for (int w = 0; w < base.n; ++w) code.schedule.push_back({w, extra});
  } else {
    // Logical bit l lands on 1 + popcount(l) wires, so the total parity is the
    // XOR of the logical bits whose index has even weight.
    for (int j = 0; j < base.k; ++j) {
      if (popcount(static_cast<BasisIndex>(base.wire_labels[static_cast<std::size_t>(j)])) % 2 == 0) {
        code.schedule.push_back({j, extra});
      }
    }
  }
  materialize_codewords(code);
  return code;
}

Code make_code(std::string_view id, CircuitVariant variant) {
  const bool extended = id == "(8,4)" || id.substr(0, 12) == "ext_hamming:";
  if (variant == CircuitVariant::Reduced && !extended) {
    throw std::invalid_argument("the reduced circuit exists only for extended Hamming codes, not '" + std::string(id) + "'");
  }
  if (id == "(2,1)") return repetition_code(2);
  if (id == "(3,1)") return repetition_code(3);
  if (id == "(7,4)") return hamming_code(3);
  if (id == "(8,4)") return extended_hamming_code(3, variant);
  auto suffix = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (id.substr(0, prefix.size()) == prefix) return id.substr(prefix.size());
    return std::nullopt;
  };
  if (auto rest = suffix("rep:")) {
    const auto colon = rest->find(':');
    if (colon == std::string_view::npos) return repetition_code(parse_int(*rest, "repetition size"));
    return repetition_code(parse_int(rest->substr(0, colon), "repetition size"),
                           parse_int(rest->substr(colon + 1), "repetition blocks"));
  }
  if (auto rest = suffix("hamming:")) return hamming_code(parse_int(*rest, "Hamming rank"));
  if (auto rest = suffix("ext_hamming:")) return extended_hamming_code(parse_int(*rest, "Hamming rank"), variant);
  throw std::invalid_argument("unknown code id '" + std::string(id) + "'");
}

CircuitVariant parse_variant(std::string_view text) {
  if (text == "full" || text == "Full") return CircuitVariant::Full;
  if (text == "reduced" || text == "Reduced") return CircuitVariant::Reduced;
  throw std::invalid_argument("unknown circuit variant '" + std::string(text) + "'");
}

std::string to_string(CircuitVariant variant) { return variant == CircuitVariant::Full ? "full" : "reduced"; }

std::string to_string(CodeFamily family) {
  switch (family) {
    case CodeFamily::Repetition: return "repetition";
    case CodeFamily::Hamming: return "hamming";
    case CodeFamily::ExtendedHamming: return "extended_hamming";
  }
  return "unknown";
}

int measured_distance(const Code& code) {
  if (code.k > kMaxMaterializedLogical) {
    throw std::invalid_argument("distance enumeration limited to k <= " + std::to_string(kMaxMaterializedLogical));
  }
  int best = std::numeric_limits<int>::max();
  for (BasisIndex logical = 1; logical < basis_size(code.k); ++logical) {
    best = std::min(best, popcount(code.encode(logical)));
  }
  return best;
}

Eigen::VectorXi parity_checks(const Code& code, BasisIndex outcome) {
  if (outcome >= basis_size(code.n)) throw std::invalid_argument("outcome wider than the code length");
  Eigen::VectorXi bits(code.n);
  for (int w = 0; w < code.n; ++w) bits(w) = wire_bit(outcome, w, code.n) ? 1 : 0;
  Eigen::VectorXi checks = code.parity_check * bits;
  return checks.unaryExpr([](int v) { return v & 1; });
}

CouplingMap::CouplingMap(std::span<const std::pair<int, int>> edges) {
  for (const auto& [a, b] : edges) add_edge(a, b);
}

void CouplingMap::add_edge(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("coupling edge with negative qubit index");
  if (a == b) throw std::invalid_argument("coupling edge is a self-loop on qubit " + std::to_string(a));
  edges_.insert({std::min(a, b), std::max(a, b)});
}

bool CouplingMap::connected(int a, int b) const { return edges_.count({std::min(a, b), std::max(a, b)}) > 0; }

CouplingMap CouplingMap::line(int num_qubits) {
  CouplingMap map;
  for (int q = 0; q + 1 < num_qubits; ++q) map.add_edge(q, q + 1);
  return map;
}

CouplingMap CouplingMap::parse(std::string_view text) {
  CouplingMap map;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    int a = 0;
    int b = 0;
    if (!(fields >> a)) continue;
    std::string trailing;
    if (!(fields >> b) || (fields >> trailing)) {
      throw std::invalid_argument("coupling map line " + std::to_string(line_no) + " is not an 'a b' edge");
    }
    map.add_edge(a, b);
  }
  return map;
}

CouplingMap CouplingMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coupling map '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool connectivity_feasible(const Code& code, const CouplingMap& coupling, std::span<const int> assignment) {
  if (static_cast<int>(assignment.size()) != code.n) {
    throw std::invalid_argument("assignment covers " + std::to_string(assignment.size()) + " of " +
                                std::to_string(code.n) + " wires");
  }
  std::set<int> used(assignment.begin(), assignment.end());
  if (used.size() != assignment.size()) throw std::invalid_argument("wire assignment is not injective");
  return std::all_of(code.schedule.begin(), code.schedule.end(), [&](const Cnot& g) {
    return coupling.connected(assignment[static_cast<std::size_t>(g.control)],
                              assignment[static_cast<std::size_t>(g.target)]);
  });
}

}  // namespace arem
