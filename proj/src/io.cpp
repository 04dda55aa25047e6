#include "arem/io.hpp"

#include <charconv>
#include <ostream>

#include "json.hpp"

namespace arem {

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void write_csv(const ProbVectorD& dist, std::ostream& out) {
  out << "bitstring,probability\n";
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    out << to_bitstring(static_cast<BasisIndex>(i), dist.num_wires) << ',' << format_number(dist.probs(i)) << '\n';
  }
}

void write_csv(const DecodedDistributionD& dist, std::ostream& out) {
  out << "logical,probability\n";
  for (Eigen::Index i = 0; i < dist.probs.size(); ++i) {
    out << to_bitstring(static_cast<BasisIndex>(i), dist.num_logical) << ',' << format_number(dist.probs(i)) << '\n';
  }
  out << "#meta,kept_fraction=" << format_number(dist.kept_fraction)
      << ",discarded_mass=" << format_number(dist.discarded_mass) << '\n';
}

void write_csv(const ResponseMatrixD& r, std::ostream& out) {
  out << "measured\\prepared";
  for (Eigen::Index j = 0; j < r.dim(); ++j) out << ',' << to_bitstring(static_cast<BasisIndex>(j), r.num_logical);
  out << '\n';
  for (Eigen::Index i = 0; i < r.dim(); ++i) {
    out << to_bitstring(static_cast<BasisIndex>(i), r.num_logical);
    for (Eigen::Index j = 0; j < r.dim(); ++j) out << ',' << format_number(r.values(i, j));
    out << '\n';
  }
}

void write_csv(const AlphaEstimate& alpha, std::ostream& out) {
  out << "gate_index,pauli,classification,weight\n";
  for (const ChannelRecord& rec : alpha.breakdown) {
    out << rec.gate_index << ',' << rec.pauli << ',' << to_string(rec.classification) << ',' << rec.weight.str() << '\n';
  }
}

std::string code_to_json(const Code& code) {
  nlohmann::json doc;
  doc["name"] = code.name;
  doc["family"] = to_string(code.family);
  doc["variant"] = to_string(code.variant);
  doc["n"] = code.n;
  doc["k"] = code.k;
  doc["d"] = code.d;
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < code.parity_check.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < code.parity_check.cols(); ++c) row.push_back(code.parity_check(r, c));
    rows.push_back(std::move(row));
  }
  doc["H"] = std::move(rows);
  auto schedule = nlohmann::json::array();
  for (const Cnot& g : code.schedule) schedule.push_back({g.control, g.target});
  doc["schedule"] = std::move(schedule);
  doc["logical_wires"] = code.logical_wires;
  doc["wire_labels"] = code.wire_labels;
  return doc.dump(2);
}

}  // namespace arem
