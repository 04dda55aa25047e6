#pragma once

#include <Eigen/Dense>

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arem/bits.hpp"
#include "arem/noise.hpp"

namespace arem {

enum class CodeFamily { Repetition, Hamming, ExtendedHamming };

/// Selects between the two extended-Hamming encoders: Full feeds every wire
/// into the total-parity bit, Reduced only the logical wires whose Hamming
/// index has even weight.
enum class CircuitVariant { Full, Reduced };

/// Dense 0/1 matrix over GF(2).
using Gf2Matrix = Eigen::MatrixXi;

struct Cnot {
  int control = 0;
  int target = 0;
  friend bool operator==(const Cnot&, const Cnot&) = default;
};

inline constexpr int kMaxMaterializedLogical = 11;

/// An (n,k) classical code together with the CNOT schedule that writes it
/// onto n wires after the k logical wires have been prepared.
///
/// Wire order: logical wires first (ascending Hamming index), then parity
/// wires (ascending index), then the total-parity wire of an extended code.
/// Repetition codes with several logical blocks are laid out block-major.
struct Code {
  std::string name;
  CodeFamily family = CodeFamily::Repetition;
  CircuitVariant variant = CircuitVariant::Full;
  int n = 0;
  int k = 0;
  int d = 0;
  int rank = 0;        // r for the Hamming families
  int block_size = 0;  // physical wires per logical block (repetition only)
  Gf2Matrix parity_check;
  std::vector<int> logical_wires;
  std::vector<int> wire_labels;  // Hamming index per wire, 0 for the total-parity wire
  std::vector<Cnot> schedule;
  std::vector<BasisIndex> codewords;  // indexed by logical bitstring; empty when k > 11

  bool has_codeword_map() const { return !codewords.empty(); }

  /// Codeword of a k-bit logical string (logical qubit 0 most significant).
  BasisIndex encode(BasisIndex logical) const;

  /// Reads the logical positions of an n-bit outcome.
  BasisIndex extract_logical(BasisIndex outcome) const;

  /// Schedule as a gate list over n wires.
  GateList encoding_circuit() const;

  /// Product preparation with zero-weight p_j on logical wire j, ancillas in |0>.
  StatePrep prep(std::span<const double> logical_zero_weight) const;

  /// Same zero-weight on every logical wire.
  StatePrep prep_uniform(double logical_zero_weight) const;

  /// Basis preparation of a logical bitstring.
  StatePrep basis_prep(BasisIndex logical) const;
};

/// (2,1) or (3,1) repetition code, optionally repeated over several
/// independent logical blocks.
Code repetition_code(int n_phys, int blocks = 1);

/// (2^r - 1, 2^r - r - 1) Hamming code.
Code hamming_code(int r);

/// (2^r, 2^r - r - 1) extended Hamming code; the total-parity check is row 0.
Code extended_hamming_code(int r, CircuitVariant variant);

/// Builds a code from a short identifier: "(2,1)", "(3,1)", "(7,4)", "(8,4)",
/// "rep:<n>[:<blocks>]", "hamming:<r>", "ext_hamming:<r>".
Code make_code(std::string_view id, CircuitVariant variant = CircuitVariant::Full);

CircuitVariant parse_variant(std::string_view text);
std::string to_string(CircuitVariant variant);
std::string to_string(CodeFamily family);

/// Minimum Hamming weight over nonzero codewords, by enumeration (k <= 11).
int measured_distance(const Code& code);

/// H * outcome over GF(2), one entry per check row.
Eigen::VectorXi parity_checks(const Code& code, BasisIndex outcome);

/// Undirected coupling graph of a device.
class CouplingMap {
 public:
  CouplingMap() = default;
  explicit CouplingMap(std::span<const std::pair<int, int>> edges);

  void add_edge(int a, int b);
  bool connected(int a, int b) const;
  std::size_t edge_count() const { return edges_.size(); }

  /// Line of num_qubits qubits: 0-1-2-...
  static CouplingMap line(int num_qubits);

  /// Edge-list text: one "a b" or "a,b" pair per line, '#' starts a comment.
  static CouplingMap parse(std::string_view text);
  static CouplingMap load(const std::string& path);

 private:
  std::set<std::pair<int, int>> edges_;
};

/// True iff every CNOT of the schedule lands on a coupling edge once wire w
/// is placed on device qubit assignment[w].
bool connectivity_feasible(const Code& code, const CouplingMap& coupling, std::span<const int> assignment);

}  // namespace arem
