#pragma once

// CSV and JSON serialization of the toolkit's value types.

#include <iosfwd>
#include <string>

#include "arem/analytics.hpp"
#include "arem/codes.hpp"
#include "arem/decode.hpp"
#include "arem/mitigation.hpp"
#include "arem/noise.hpp"

namespace arem {

/// Shortest round-tripping decimal form of a double.
std::string format_number(double value);

/// bitstring,probability
void write_csv(const ProbVectorD& dist, std::ostream& out);

/// logical,probability rows followed by a "#meta" row with kept_fraction and
/// discarded_mass.
void write_csv(const DecodedDistributionD& dist, std::ostream& out);

/// Row-major; the header row and the first column carry the bitstrings.
void write_csv(const ResponseMatrixD& r, std::ostream& out);

/// gate_index,pauli,classification,weight
void write_csv(const AlphaEstimate& alpha, std::ostream& out);

/// {"name", "family", "variant", "n", "k", "d", "H", "schedule", "logical_wires", "wire_labels"}
std::string code_to_json(const Code& code);

}  // namespace arem
