#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "arem/codes.hpp"
#include "arem/decode.hpp"
#include "arem/io.hpp"

using namespace arem;

namespace {

BasisIndex flip(const Code& code, BasisIndex outcome, int wire) { return outcome ^ wire_mask(wire, code.n); }

DecodedDistributionD run(const Code& code, DecodeStrategy s, double p, double q, double kappa, double eps) {
  const auto raw = propagate_exact(code.prep_uniform(p), code.encoding_circuit(), NoiseModel::uniform(code.n, q, kappa, eps));
  return aggregate(code, s, raw);
}

// A bare wire with no encoding, used to look at the readout channel alone.
Code single_wire() {
  Code c;
  c.name = "(1,1)";
  c.n = 1;
  c.k = 1;
  c.d = 1;
  c.parity_check = Gf2Matrix::Zero(0, 1);
  c.logical_wires = {0};
  c.wire_labels = {0};
  c.codewords = {0, 1};
  return c;
}

}  // namespace

TEST(Syndrome, SevenFourExamples) {
  const Code code = hamming_code(3);
  const BasisIndex c = code.encode(0b0000);
  EXPECT_EQ(syndrome(code, c), Eigen::Vector3i(0, 0, 0));
  // wire 0 carries Hamming index 3, wire 4 carries index 1
  EXPECT_EQ(syndrome(code, flip(code, code.encode(0b1011), 0)), Eigen::Vector3i(1, 1, 0));
  EXPECT_EQ(syndrome(code, flip(code, code.encode(0b1011), 4)), Eigen::Vector3i(1, 0, 0));
}

TEST(Syndrome, LengthMismatch) {
  EXPECT_THROW(syndrome(hamming_code(3), BasisIndex{1} << 7), std::invalid_argument);
}

TEST(DecodeOne, Examples) {
  const Code rep3 = repetition_code(3);
  EXPECT_EQ(decode_one(rep3, DecodeStrategy::Correct, 0b010).logical, BasisIndex{0});
  EXPECT_TRUE(decode_one(repetition_code(2), DecodeStrategy::Detect, 0b01).discarded());
  const Code ext = extended_hamming_code(3, CircuitVariant::Full);
  const BasisIndex c = ext.encode(0b0110);
  EXPECT_TRUE(decode_one(ext, DecodeStrategy::Hybrid, flip(ext, flip(ext, c, 1), 5)).discarded());
}

TEST(DecodeOne, StrategyAvailability) {
  EXPECT_THROW(decode_one(repetition_code(2), DecodeStrategy::Correct, 0b01), std::invalid_argument);
  EXPECT_THROW(decode_one(hamming_code(3), DecodeStrategy::Hybrid, 0), std::invalid_argument);
  EXPECT_THROW(decode_one(repetition_code(3), DecodeStrategy::Hybrid, 0), std::invalid_argument);
  DecodeOptions opt;
  opt.pair_odd_as_one = true;
  EXPECT_EQ(decode_one(repetition_code(2), DecodeStrategy::Correct, 0b01, opt).logical, BasisIndex{1});
  EXPECT_EQ(decode_one(repetition_code(2), DecodeStrategy::Correct, 0b10, opt).logical, BasisIndex{1});
  EXPECT_EQ(decode_one(repetition_code(2), DecodeStrategy::Correct, 0b00, opt).logical, BasisIndex{0});
}

TEST(DecodeOne, RoundTrip) {
  for (const char* id : {"(2,1)", "(3,1)", "(7,4)", "(8,4)", "hamming:4", "rep:3:2"}) {
    const Code code = make_code(id);
    for (auto s : {DecodeStrategy::Detect, DecodeStrategy::Correct, DecodeStrategy::Hybrid}) {
      try {
        check_strategy(code, s);
      } catch (const std::invalid_argument&) {
        continue;
      }
      for (BasisIndex b = 0; b < basis_size(code.k); ++b) {
        const auto out = decode_one(code, s, code.encode(b));
        ASSERT_FALSE(out.discarded()) << id;
        EXPECT_EQ(*out.logical, b) << id << ' ' << to_string(s);
      }
    }
  }
}

TEST(DecodeOne, SingleFlipsAreCorrected) {
  for (const char* id : {"(3,1)", "(7,4)", "hamming:4", "rep:3:2"}) {
    const Code code = make_code(id);
    for (BasisIndex b = 0; b < basis_size(code.k); ++b) {
      for (int w = 0; w < code.n; ++w) {
        EXPECT_EQ(decode_one(code, DecodeStrategy::Correct, flip(code, code.encode(b), w)).logical, b) << id;
      }
    }
  }
  for (auto v : {CircuitVariant::Full, CircuitVariant::Reduced}) {
    const Code ext = extended_hamming_code(3, v);
    for (BasisIndex b = 0; b < basis_size(ext.k); ++b) {
      for (int w = 0; w < ext.n; ++w) {
        EXPECT_EQ(decode_one(ext, DecodeStrategy::Hybrid, flip(ext, ext.encode(b), w)).logical, b);
      }
    }
  }
}

TEST(DecodeOne, HybridDiscardsEveryDoubleFlip) {
  const Code ext = extended_hamming_code(3, CircuitVariant::Full);
  for (BasisIndex b = 0; b < basis_size(ext.k); ++b) {
    for (int a = 0; a < ext.n; ++a) {
      for (int c = a + 1; c < ext.n; ++c) {
        EXPECT_TRUE(decode_one(ext, DecodeStrategy::Hybrid, flip(ext, flip(ext, ext.encode(b), a), c)).discarded());
      }
    }
  }
}

TEST(DecodeOne, DetectAcceptsExactlyCodewords) {
  const Code code = hamming_code(3);
  const std::set<BasisIndex> words(code.codewords.begin(), code.codewords.end());
  for (BasisIndex o = 0; o < basis_size(code.n); ++o) {
    EXPECT_EQ(decode_one(code, DecodeStrategy::Detect, o).discarded(), words.count(o) == 0);
  }
}

TEST(Aggregate, TwoQubitKeptFraction) {
  const auto out = run(repetition_code(2), DecodeStrategy::Detect, 1.0, 0.1, 0.0, 0.0);
  EXPECT_NEAR(out.kept_fraction, 0.82, 1e-15);
  EXPECT_NEAR(out.discarded_mass, 0.18, 1e-15);
  EXPECT_NEAR(out.probs.sum(), 1.0, 1e-12);
}

TEST(Aggregate, ThreeQubitCorrectLeadingOrder) {
  const double p = 0.3;
  const double q = 1e-3;
  const double eps = 1e-3;
  const auto out = run(repetition_code(3), DecodeStrategy::Correct, p, q, 0.0, eps);
  const double predicted = p + 3.0 * (eps / 4.0 + q * q) * (1.0 - 2.0 * p);
  EXPECT_NEAR(out[0], predicted, 5.0 * eps * eps);
  EXPECT_EQ(out.kept_fraction, 1.0);
}

TEST(Aggregate, CorrectNeverDiscards) {
  for (const char* id : {"(3,1)", "(7,4)", "(8,4)"}) {
    const Code code = make_code(id);
    const auto out = run(code, DecodeStrategy::Correct, 0.2, 0.08, 0.3, 0.05);
    EXPECT_EQ(out.kept_fraction, 1.0) << id;
    EXPECT_EQ(out.discarded_mass, 0.0) << id;
  }
}

TEST(Aggregate, AllDiscardedIsAnError) {
  const Code code = repetition_code(2);
  Eigen::Vector4d v(0.0, 0.5, 0.5, 0.0);
  EXPECT_THROW(aggregate(code, DecodeStrategy::Detect, ProbVectorD(2, v)), std::domain_error);
}

TEST(Aggregate, LinearBeforeNormalization) {
  const Code code = hamming_code(3);
  const Decoder dec(code, DecodeStrategy::Detect);
  const auto a = propagate_exact(code.prep_uniform(0.2), code.encoding_circuit(), NoiseModel::uniform(7, 0.05, 0.0, 0.01));
  const auto b = propagate_exact(code.prep_uniform(0.7), code.encoding_circuit(), NoiseModel::uniform(7, 0.02, 0.4, 0.03));
  const double w = 0.35;
  const ProbVectorD mix(7, w * a.probs + (1.0 - w) * b.probs);
  const auto da = dec.aggregate(a);
  const auto db = dec.aggregate(b);
  const auto dm = dec.aggregate(mix);
  const Eigen::VectorXd bins = w * da.kept_fraction * da.probs + (1.0 - w) * db.kept_fraction * db.probs;
  EXPECT_LT((dm.kept_fraction * dm.probs - bins).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Aggregate, ComplementSymmetry) {
  for (auto s : {DecodeStrategy::Detect, DecodeStrategy::Correct}) {
    const Code code = repetition_code(3);
    const auto a = run(code, s, 0.2, 0.04, 0.0, 0.02);
    const auto b = run(code, s, 0.8, 0.04, 0.0, 0.02);
    EXPECT_NEAR(a[0], b[1], 1e-15);
  }
}

TEST(Decoder, ShotsMatchTable) {
  const Code code = extended_hamming_code(3, CircuitVariant::Full);
  const Decoder dec(code, DecodeStrategy::Hybrid);
  const auto raw = propagate_exact(code.prep_uniform(0.4), code.encoding_circuit(), NoiseModel::uniform(8, 0.05, 0.0, 0.02));
  const auto shots = sample_shots(raw, 20000, 5);
  const auto counts = dec.decode_shots(shots);
  EXPECT_EQ(counts.kept + counts.discarded, 20000u);
  const auto exact = dec.aggregate(raw);
  EXPECT_NEAR(counts.kept_fraction(), exact.kept_fraction, 0.01);
  EXPECT_NEAR(counts.frequency(0), exact[0], 0.01);
}

TEST(Rebalance, SymmetricNoiseUnchanged) {
  const Code code = repetition_code(2);
  const auto noise = NoiseModel::uniform(2, 0.05, 0.0, 0.01);
  const auto plain = run(code, DecodeStrategy::Detect, 0.3, 0.05, 0.0, 0.01);
  for (auto mode : {RebalanceMode::PerWire, RebalanceMode::Global}) {
    const auto rb = rebalanced_run(code.prep_uniform(0.3), code, noise, exact_simulator(), DecodeStrategy::Detect, mode);
    EXPECT_LT((rb.probs - plain.probs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Rebalance, RemovesAsymmetryBias) {
  const Code code = repetition_code(2);
  const double p = 0.3;
  const double q = 0.05;
  const auto symmetric = run(code, DecodeStrategy::Detect, p, q, 0.0, 0.0);
  const auto biased = run(code, DecodeStrategy::Detect, p, q, 0.8, 0.0);
  const auto rb = rebalanced_run(code.prep_uniform(p), code, NoiseModel::uniform(2, q, 0.8, 0.0), exact_simulator(),
                                 DecodeStrategy::Detect);
  EXPECT_NEAR(rb[0], symmetric[0], 1e-10);
  EXPECT_GT(std::abs(biased[0] - symmetric[0]), q * 0.8 / 10.0);
  // the rebalanced run follows the symmetric law up to O(q^2)
  EXPECT_NEAR(rb[0], p + q * q * (1.0 - 2.0 * p), 5.0 * q * q * q);
}

TEST(Rebalance, GlobalModeLeavesCorrelatedResidue) {
  const Code code = repetition_code(2);
  const auto symmetric = run(code, DecodeStrategy::Detect, 0.3, 0.05, 0.0, 0.0);
  const auto global = rebalanced_run(code.prep_uniform(0.3), code, NoiseModel::uniform(2, 0.05, 0.8, 0.0),
                                     exact_simulator(), DecodeStrategy::Detect, RebalanceMode::Global);
  const double residue = std::abs(global[0] - symmetric[0]);
  EXPECT_GT(residue, 1e-6);
  EXPECT_LT(residue, 0.05 * 0.05);
}

TEST(Rebalance, SingleWireAveragesDirections) {
  const Code wire = single_wire();
  const auto noise = NoiseModel::uniform(1, 0.1, 1.0, 0.0);
  for (auto mode : {RebalanceMode::PerWire, RebalanceMode::Global}) {
    const auto raw = rebalanced_raw(StatePrep{{0.0}}, wire, noise, exact_simulator(), mode);
    EXPECT_NEAR(raw[0], 0.1, 1e-15);
  }
}

TEST(Serialization, DecodedCsv) {
  const auto out = run(repetition_code(2), DecodeStrategy::Detect, 1.0, 0.1, 0.0, 0.0);
  std::ostringstream os;
  write_csv(out, os);
  EXPECT_EQ(os.str().substr(0, 20), "logical,probability\n");
  EXPECT_NE(os.str().find("#meta,kept_fraction=0.82"), std::string::npos);
}

TEST(Strategy, Parse) {
  EXPECT_EQ(parse_strategy("det"), DecodeStrategy::Detect);
  EXPECT_EQ(parse_strategy("correct"), DecodeStrategy::Correct);
  EXPECT_EQ(parse_strategy("hybrid"), DecodeStrategy::Hybrid);
  EXPECT_THROW(parse_strategy("vote"), std::invalid_argument);
}
