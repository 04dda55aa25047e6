#include <gtest/gtest.h>

#include <set>

#include "arem/codes.hpp"
#include "arem/io.hpp"
#include "json.hpp"

using namespace arem;

namespace {

Gf2Matrix matrix(std::initializer_list<std::initializer_list<int>> rows) {
  Gf2Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (int v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

std::set<BasisIndex> codeword_set(const Code& code) { return {code.codewords.begin(), code.codewords.end()}; }

void check_code_invariants(const Code& code) {
  SCOPED_TRACE(code.name);
  ASSERT_TRUE(code.has_codeword_map());
  ASSERT_EQ(code.codewords.size(), basis_size(code.k));
  EXPECT_EQ(codeword_set(code).size(), code.codewords.size());
  for (BasisIndex b = 0; b < basis_size(code.k); ++b) {
    const BasisIndex c = code.codewords[b];
    EXPECT_EQ(parity_checks(code, c).sum(), 0);
    EXPECT_EQ(code.extract_logical(c), b);
    // full propagation is O(2^n) per string, so large codes get a sample
    if (code.k > 4 && b % 97 != 0) continue;
    const auto dist = propagate_exact(code.basis_prep(b), code.encoding_circuit(), NoiseModel::noiseless(code.n));
    EXPECT_DOUBLE_EQ(dist[c], 1.0);
  }
  EXPECT_EQ(measured_distance(code), code.d);
}

}  // namespace

TEST(Repetition, TwoQubit) {
  const Code code = repetition_code(2);
  EXPECT_EQ(codeword_set(code), (std::set<BasisIndex>{0b00, 0b11}));
  ASSERT_EQ(code.schedule.size(), 1u);
  EXPECT_EQ(code.schedule[0], (Cnot{0, 1}));
  EXPECT_EQ(code.d, 2);
  check_code_invariants(code);
}

TEST(Repetition, ThreeQubit) {
  const Code code = repetition_code(3);
  EXPECT_EQ(codeword_set(code), (std::set<BasisIndex>{0b000, 0b111}));
  EXPECT_EQ(code.d, 3);
  EXPECT_EQ(code.parity_check.rows(), 2);
  EXPECT_EQ(parity_checks(code, 0b111).sum(), 0);
  check_code_invariants(code);
}

TEST(Repetition, RejectsUnsupportedSize) {
  EXPECT_THROW(repetition_code(4), std::invalid_argument);
  EXPECT_THROW(repetition_code(1), std::invalid_argument);
}

TEST(Repetition, Blocks) {
  const Code code = repetition_code(2, 3);
  EXPECT_EQ(code.n, 6);
  EXPECT_EQ(code.k, 3);
  EXPECT_EQ(code.encode(0b101), 0b110011u);
  check_code_invariants(code);
}

TEST(Hamming, RankTwoIsThreeQubitRepetition) {
  const Code h = hamming_code(2);
  const Code rep = repetition_code(3);
  EXPECT_EQ(h.parity_check, rep.parity_check);
  EXPECT_EQ(h.schedule, rep.schedule);
  EXPECT_EQ(h.codewords, rep.codewords);
}

TEST(Hamming, SevenFourMatchesLayout) {
  const Code code = hamming_code(3);
  EXPECT_EQ(code.n, 7);
  EXPECT_EQ(code.k, 4);
  EXPECT_EQ(code.wire_labels, (std::vector<int>{3, 5, 6, 7, 1, 2, 4}));
  const Gf2Matrix expected = matrix({{1, 1, 0, 1, 1, 0, 0}, {1, 0, 1, 1, 0, 1, 0}, {0, 1, 1, 1, 0, 0, 1}});
  EXPECT_EQ(code.parity_check, expected);
  EXPECT_EQ(code.schedule.size(), 9u);
  check_code_invariants(code);
}

TEST(Hamming, Rank4Sizes) {
  const Code code = hamming_code(4);
  EXPECT_EQ(code.n, 15);
  EXPECT_EQ(code.k, 11);
  EXPECT_EQ(code.d, 3);
  check_code_invariants(code);
}

TEST(Hamming, Rank5HasNoCodewordMap) {
  const Code code = hamming_code(5);
  EXPECT_EQ(code.k, 26);
  EXPECT_FALSE(code.has_codeword_map());
  EXPECT_EQ(parity_checks(code, code.encode(0x2AAAAAA)).sum(), 0);
}

TEST(Hamming, RejectsSmallRank) { EXPECT_THROW(hamming_code(1), std::invalid_argument); }

TEST(Hamming, ScheduleLengthEqualsLogicalOnes) {
  for (int r = 2; r <= 5; ++r) {
    const Code code = hamming_code(r);
    int ones = 0;
    for (int w : code.logical_wires) ones += code.parity_check.col(w).sum();
    EXPECT_EQ(static_cast<int>(code.schedule.size()), ones) << r;
  }
}

TEST(ExtendedHamming, EightFourMatchesLayout) {
  const Code code = extended_hamming_code(3, CircuitVariant::Full);
  EXPECT_EQ(code.n, 8);
  EXPECT_EQ(code.d, 4);
  const Gf2Matrix expected = matrix({{1, 1, 1, 1, 1, 1, 1, 1},
                                     {1, 1, 0, 1, 1, 0, 0, 0},
                                     {1, 0, 1, 1, 0, 1, 0, 0},
                                     {0, 1, 1, 1, 0, 0, 1, 0}});
  EXPECT_EQ(code.parity_check, expected);
  check_code_invariants(code);
}

TEST(ExtendedHamming, FullAndReducedCircuits) {
  const Code full = extended_hamming_code(3, CircuitVariant::Full);
  const Code reduced = extended_hamming_code(3, CircuitVariant::Reduced);
  auto onto_q0 = [](const Code& c) {
    int count = 0;
    for (const Cnot& g : c.schedule) count += (g.target == c.n - 1);
    return count;
  };
  EXPECT_EQ(onto_q0(full), 7);
  EXPECT_EQ(onto_q0(reduced), 3);
  EXPECT_EQ(full.codewords, reduced.codewords);
  EXPECT_EQ(reduced.d, 4);
  check_code_invariants(reduced);
  for (BasisIndex c : full.codewords) EXPECT_EQ(popcount(c) % 2, 0);
}

TEST(ExtendedHamming, OtherRanks) {
  for (int r : {2, 4}) {
    for (auto v : {CircuitVariant::Full, CircuitVariant::Reduced}) {
      const Code code = extended_hamming_code(r, v);
      EXPECT_EQ(code.n, 1 << r);
      check_code_invariants(code);
    }
  }
  EXPECT_EQ(extended_hamming_code(4, CircuitVariant::Reduced).codewords,
            extended_hamming_code(4, CircuitVariant::Full).codewords);
}

TEST(MakeCode, Identifiers) {
  EXPECT_EQ(make_code("(2,1)").n, 2);
  EXPECT_EQ(make_code("(3,1)").n, 3);
  EXPECT_EQ(make_code("(7,4)").n, 7);
  EXPECT_EQ(make_code("(8,4)", CircuitVariant::Reduced).variant, CircuitVariant::Reduced);
  EXPECT_EQ(make_code("hamming:4").n, 15);
  EXPECT_EQ(make_code("ext_hamming:2").n, 4);
  EXPECT_EQ(make_code("rep:2:3").k, 3);
  EXPECT_THROW(make_code("(5,2)"), std::invalid_argument);
  EXPECT_THROW(make_code("(7,4)", CircuitVariant::Reduced), std::invalid_argument);
  EXPECT_EQ(parse_variant("reduced"), CircuitVariant::Reduced);
  EXPECT_THROW(parse_variant("half"), std::invalid_argument);
}

TEST(Connectivity, ThreeQubitLine) {
  const Code code = repetition_code(3);
  const CouplingMap line = CouplingMap::line(3);
  // logical wire 0 on the middle device qubit
  const std::vector<int> centre{1, 0, 2};
  const std::vector<int> end{0, 1, 2};
  EXPECT_TRUE(connectivity_feasible(code, line, centre));
  EXPECT_FALSE(connectivity_feasible(code, line, end));
}

TEST(Connectivity, SevenFourOnLine) {
  const Code code = hamming_code(3);
  const std::vector<int> identity{0, 1, 2, 3, 4, 5, 6};
  const CouplingMap line = CouplingMap::line(7);
  int adjacent = 0;
  for (const Cnot& g : code.schedule) adjacent += line.connected(g.control, g.target);
  EXPECT_LT(adjacent, 9);
  EXPECT_FALSE(connectivity_feasible(code, line, identity));
}

TEST(Connectivity, BadAssignments) {
  const Code code = repetition_code(3);
  const CouplingMap line = CouplingMap::line(3);
  const std::vector<int> short_map{0, 1};
  const std::vector<int> repeated{0, 0, 1};
  EXPECT_THROW(connectivity_feasible(code, line, short_map), std::invalid_argument);
  EXPECT_THROW(connectivity_feasible(code, line, repeated), std::invalid_argument);
}

TEST(Connectivity, ParseEdgeList) {
  const CouplingMap m = CouplingMap::parse("# heavy hex fragment\n0 1\n1,2\n\n2 3  # tail\n");
  EXPECT_EQ(m.edge_count(), 3u);
  EXPECT_TRUE(m.connected(2, 1));
  EXPECT_FALSE(m.connected(0, 2));
  EXPECT_THROW(CouplingMap::parse("0 x\n"), std::invalid_argument);
}

TEST(Serialization, CodeJson) {
  const auto doc = nlohmann::json::parse(code_to_json(hamming_code(3)));
  EXPECT_EQ(doc["n"], 7);
  EXPECT_EQ(doc["k"], 4);
  EXPECT_EQ(doc["d"], 3);
  EXPECT_EQ(doc["H"].size(), 3u);
  EXPECT_EQ(doc["H"][0], nlohmann::json::parse("[1,1,0,1,1,0,0]"));
  EXPECT_EQ(doc["schedule"].size(), 9u);
  EXPECT_EQ(doc["schedule"][0], nlohmann::json::parse("[0,4]"));
}
