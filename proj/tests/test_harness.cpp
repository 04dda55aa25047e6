#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "arem/harness.hpp"

using namespace arem;

namespace {

ExperimentConfig config_for(const std::string& code, DecodeStrategy s, ParameterGrid grid) {
  ExperimentConfig c;
  c.code_id = code;
  c.strategy = s;
  c.grid = std::move(grid);
  return c;
}

double exact_qeff(const Decoder& dec, double q, double eps, double p = 0.25) {
  return *evaluate_point(dec, GridPoint{0, q, eps, 0.0, p}, 0, 0, false).q_eff;
}

// eps at which q_eff / q = 1 for fixed q, by bisection on [0, hi].
double threshold_eps(const Decoder& dec, double q, double hi) {
  double lo = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (exact_qeff(dec, q, mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("arem_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(EstimateQeff, Examples) {
  EXPECT_NEAR(estimate_qeff(0.2525, 0.25), 0.005, 1e-15);
  EXPECT_EQ(estimate_qeff(0.3, 0.3), 0.0);
  EXPECT_THROW(estimate_qeff(0.5, 0.5), std::domain_error);
  EXPECT_THROW(estimate_qeff(0.5, 0.5 + 5e-7), std::domain_error);
}

TEST(EstimateQeff, ResponseMatrixForm) {
  ResponseMatrixD id;
  id.num_logical = 2;
  id.values = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_EQ(estimate_Qeff(id), 0.0);
  ResponseMatrixD uniform;
  uniform.num_logical = 3;
  uniform.values = Eigen::MatrixXd::Constant(8, 8, 1.0 / 8.0);
  EXPECT_NEAR(estimate_Qeff(uniform), 1.0 - 1.0 / 8.0, 1e-15);
  EXPECT_NEAR(estimate_Qeff(symmetric_single_qubit_response(0.05)), 0.05, 1e-15);
}

TEST(EstimateQeff, SingleQubitQeffEqualsQeffFromMatrix) {
  const Decoder dec(repetition_code(3), DecodeStrategy::Correct);
  const auto m = evaluate_point(dec, GridPoint{0, 0.03, 0.01, 0.0, 0.25}, 0, 0, false);
  EXPECT_NEAR(*m.q_eff, m.Q_eff, 1e-12);
}

TEST(FitPowerLaw, ExactLaws) {
  std::vector<std::pair<double, double>> sq;
  std::vector<std::pair<double, double>> cube;
  for (double x : logspace(1e-3, 1.0, 7)) {
    sq.emplace_back(x, x * x);
    cube.emplace_back(x, 5.0 * x * x * x);
  }
  EXPECT_NEAR(fit_power_law(sq).exponent, 2.0, 1e-9);
  const auto f = fit_power_law(cube);
  EXPECT_NEAR(f.exponent, 3.0, 1e-9);
  EXPECT_NEAR(f.prefactor, 5.0, 1e-9);
  EXPECT_LT(f.residual, 1e-12);
  EXPECT_EQ(f.points, 7u);
}

TEST(FitPowerLaw, Window) {
  std::vector<std::pair<double, double>> pts;
  for (double x : logspace(1e-3, 1.0, 10)) pts.emplace_back(x, x < 0.1 ? x * x : x);
  EXPECT_NEAR(fit_power_law(pts, 0.0, 0.09).exponent, 2.0, 1e-9);
}

TEST(FitPowerLaw, Errors) {
  const std::vector<std::pair<double, double>> two{{1.0, 1.0}, {2.0, 4.0}};
  EXPECT_THROW(fit_power_law(two), std::invalid_argument);
  const std::vector<std::pair<double, double>> neg{{1.0, 1.0}, {2.0, -4.0}, {3.0, 9.0}};
  EXPECT_THROW(fit_power_law(neg), std::domain_error);
}

TEST(FitPowerLaw, ThreeQubitDetectSweep) {
  ParameterGrid g;
  g.q = logspace(1e-3, 3e-2, 12);
  g.eps = {0.0};
  const auto report = run_sweep(config_for("(3,1)", DecodeStrategy::Detect, g));
  ASSERT_EQ(report.fits.size(), 1u);
  EXPECT_EQ(report.fits[0].axis, "q");
  EXPECT_NEAR(report.fits[0].power_law.exponent, 3.0, 0.1);
  EXPECT_GT(report.fits[0].power_law.exponent_stderr, 0.0);
}

TEST(FitThroughOrigin, Slope) {
  const std::vector<std::pair<double, double>> pts{{1.0, 0.25}, {2.0, 0.5}, {4.0, 1.0}};
  const auto f = fit_through_origin(pts);
  EXPECT_NEAR(f.slope, 0.25, 1e-15);
  EXPECT_NEAR(f.slope_stderr, 0.0, 1e-15);
}

TEST(Grid, Enumeration) {
  ParameterGrid g;
  g.q = {0.1, 0.2};
  g.eps = {0.0, 0.01, 0.02};
  g.p = {0.1, 0.3};
  const auto pts = enumerate_grid(g);
  ASSERT_EQ(pts.size(), 12u);
  EXPECT_EQ(pts[1].p, 0.3);
  EXPECT_EQ(pts[2].eps, 0.01);
  EXPECT_EQ(pts[6].q, 0.2);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(pts[i].index, i);
  const auto ls = logspace(1e-4, 1e-1, 4);
  EXPECT_NEAR(ls[1], 1e-3, 1e-18);
  EXPECT_EQ(ls.back(), 1e-1);
  EXPECT_EQ(linspace(0.0, 1.0, 5)[2], 0.5);
}

TEST(Config, ParseAndRoundTrip) {
  const auto c = ExperimentConfig::parse(R"j({
    "code": "(8,4)", "variant": "reduced", "strategy": "hybrid",
    "grid": {"q": {"logspace": [1e-3, 1e-2, 3]}, "eps": 0.001, "p": [0.2]},
    "shots": 1000, "seed": 9, "output": {"dir": "x", "plot": true}
  })j");
  EXPECT_EQ(c.variant, CircuitVariant::Reduced);
  EXPECT_EQ(c.strategy, DecodeStrategy::Hybrid);
  EXPECT_EQ(c.grid.q.size(), 3u);
  EXPECT_EQ(c.grid.eps, std::vector<double>{0.001});
  EXPECT_EQ(c.grid.kappa, std::vector<double>{0.0});
  EXPECT_EQ(c.seed, std::optional<std::uint64_t>(9));
  EXPECT_TRUE(c.plot);
  EXPECT_NO_THROW(c.validate());
  const auto back = ExperimentConfig::parse(c.to_json());
  EXPECT_EQ(back.grid.q, c.grid.q);
  EXPECT_EQ(back.code_id, c.code_id);
  EXPECT_EQ(back.out_dir, "x");
}

TEST(Config, Defaults) {
  const auto c = ExperimentConfig::parse("{}");
  EXPECT_EQ(c.grid.q.size(), 16u);
  EXPECT_EQ(c.grid.q.front(), 1e-4);
  EXPECT_EQ(c.grid.eps.back(), 1e-1);
  EXPECT_EQ(c.grid.p, std::vector<double>{0.25});
  EXPECT_EQ(c.shots, 0u);
}

TEST(Config, Rejections) {
  EXPECT_THROW(ExperimentConfig::parse("[1]"), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::parse("{"), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::parse(R"j({"colour": 1})j"), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::parse(R"j({"grid": {"q": "a"}})j"), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::parse(R"j({"grid": {"q": {"geomspace": [1, 2, 3]}}})j"), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::parse(R"j({"shots": "many"})j"), std::invalid_argument);

  auto invalid = [](const std::string& text) { EXPECT_THROW(ExperimentConfig::parse(text).validate(), std::invalid_argument) << text; };
  invalid(R"j({"shots": 100})j");
  invalid(R"j({"grid": {"q": 0.6}})j");
  invalid(R"j({"grid": {"q": 0.4, "kappa": 1.5}})j");
  invalid(R"j({"grid": {"eps": 2.0}})j");
  invalid(R"j({"grid": {"p": 0.5}})j");
  invalid(R"j({"code": "(2,1)", "strategy": "correct"})j");
  invalid(R"j({"code": "(7,4)", "strategy": "hybrid"})j");
  EXPECT_NO_THROW(ExperimentConfig::parse(R"j({"code": "(7,4)", "grid": {"q": 0.01, "eps": 0.01, "p": 0.5}})j").validate());
}

TEST(Sweep, PIndependence) {
  const Decoder dec(repetition_code(2), DecodeStrategy::Detect);
  for (double q : {0.001, 0.02, 0.08}) {
    for (double eps : {0.0, 0.005, 0.05}) {
      const double a = exact_qeff(dec, q, eps, 0.1);
      const double b = exact_qeff(dec, q, eps, 0.25);
      const double c = exact_qeff(dec, q, eps, 0.4);
      EXPECT_LT(std::max({a, b, c}) - std::min({a, b, c}), 1e-9);
    }
  }
}

TEST(Sweep, ThresholdsAtSmallQ) {
  const Decoder det(repetition_code(2), DecodeStrategy::Detect);
  const Decoder cor(repetition_code(3), DecodeStrategy::Correct);
  const double q = 1e-3;
  EXPECT_NEAR(threshold_eps(det, q, 1.0) / (4.0 * q), 1.0, 0.05);
  EXPECT_NEAR(threshold_eps(cor, q, 1.0) / (4.0 * q / 3.0), 1.0, 0.05);
}

TEST(Sweep, RowsInBoundsAndReproducible) {
  ParameterGrid g;
  g.q = {0.0, 0.01, 0.1, 0.3};
  g.eps = {0.0, 0.02, 0.5};
  g.kappa = {0.0, 0.5};
  for (const char* id : {"(2,1)", "(7,4)"}) {
    auto cfg = config_for(id, DecodeStrategy::Detect, g);
    const auto a = run_sweep(cfg);
    const auto b = run_sweep(cfg);
    std::ostringstream sa, sb;
    write_sweep_csv(a, sa);
    write_sweep_csv(b, sb);
    EXPECT_EQ(sa.str(), sb.str());
    for (const auto& row : a.rows) {
      EXPECT_GT(row.kept_fraction, 0.0);
      EXPECT_LE(row.kept_fraction, 1.0);
      EXPECT_GE(row.Q_eff, 0.0);
      EXPECT_LE(row.Q_eff, 1.0);
      if (row.q_eff) {
        EXPECT_GE(*row.q_eff, 0.0);
        EXPECT_LE(*row.q_eff, 1.0);
      }
    }
  }
}

TEST(Sweep, SampledModeReproducibleForSeed) {
  ParameterGrid g;
  g.q = {0.01, 0.05};
  g.eps = {0.01};
  auto cfg = config_for("(3,1)", DecodeStrategy::Correct, g);
  cfg.shots = 2000;
  cfg.seed = 17;
  std::ostringstream a, b, c;
  write_sweep_csv(run_sweep(cfg), a);
  write_sweep_csv(run_sweep(cfg), b);
  cfg.seed = 18;
  write_sweep_csv(run_sweep(cfg), c);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(Sweep, SampledConvergesToExact) {
  ParameterGrid g;
  g.q = logspace(1e-3, 0.1, 6);
  g.eps = logspace(1e-3, 0.1, 5);
  auto exact_cfg = config_for("(2,1)", DecodeStrategy::Detect, g);
  auto sampled_cfg = exact_cfg;
  sampled_cfg.shots = 10000;
  sampled_cfg.seed = 2024;
  const auto exact = run_sweep(exact_cfg);
  const auto sampled = run_sweep(sampled_cfg);
  ASSERT_EQ(exact.rows.size(), sampled.rows.size());
  std::size_t within = 0;
  for (std::size_t i = 0; i < exact.rows.size(); ++i) {
    ASSERT_TRUE(sampled.rows[i].m_bar0_variance.has_value());
    if (std::abs(*sampled.rows[i].q_eff - *exact.rows[i].q_eff) <= 5.0 / std::sqrt(10000.0)) ++within;
  }
  EXPECT_GE(static_cast<double>(within), 0.99 * static_cast<double>(exact.rows.size()));
}

TEST(Sweep, SeedsDependOnIndex) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 7), derive_seed(5, 7));
}

TEST(Sweep, CsvSchema) {
  ParameterGrid g;
  g.q = {0.01};
  g.eps = {0.0};
  const auto report = run_sweep(config_for("(2,1)", DecodeStrategy::Detect, g));
  std::ostringstream os;
  write_sweep_csv(report, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# arem sweep v1");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 13), "# code=(2,1);");
  std::getline(in, line);
  EXPECT_EQ(line, "index,q,eps,kappa,p,kept_fraction,discarded_mass,m_bar0,m_bar0_var,q_eff,Q_eff,q_eff_over_q");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 7), "0,0.01,");
}

TEST(Sweep, AlphaFitAlongEps) {
  ParameterGrid g;
  g.q = {0.0};
  g.eps = logspace(1e-5, 1e-3, 5);
  const auto report = run_sweep(config_for("(7,4)", DecodeStrategy::Correct, g));
  ASSERT_EQ(report.fits.size(), 1u);
  ASSERT_TRUE(report.fits[0].alpha.has_value());
  EXPECT_NEAR(report.fits[0].alpha->slope, 7.0 / 8.0, 0.02);
  EXPECT_NEAR(report.fits[0].power_law.exponent, 1.0, 0.01);
}

TEST(Sweep, WritesFiles) {
  const auto dir = scratch_dir("sweep");
  ParameterGrid g;
  g.q = logspace(1e-3, 1e-1, 4);
  g.eps = logspace(1e-3, 1e-1, 3);
  auto cfg = config_for("(2,1)", DecodeStrategy::Detect, g);
  cfg.out_dir = dir.string();
  cfg.plot = true;
  const auto paths = run_sweep_to_disk(cfg);
  ASSERT_EQ(paths.size(), 2u);
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p)) << p;
  EXPECT_EQ(std::filesystem::path(paths[1]).extension(), ".svg");

  cfg.grid.eps = {0.0};
  cfg.csv_name = "line.csv";
  const auto line_paths = run_sweep_to_disk(cfg);
  ASSERT_EQ(line_paths.size(), 3u);
  EXPECT_NE(line_paths[1].find("line_fits.csv"), std::string::npos);
  EXPECT_NE(line_paths[2].find("line_loglog.svg"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Compare, IdenticalConfigs) {
  ParameterGrid g;
  g.q = {0.0, 0.01};
  g.eps = {0.0, 0.01};
  const auto cfg = config_for("(3,1)", DecodeStrategy::Correct, g);
  const auto table = compare_codes(cfg, cfg);
  ASSERT_EQ(table.rows.size(), 4u);
  for (const auto& r : table.rows) EXPECT_EQ(r.ratio, 1.0);
}

TEST(Compare, DetectOverCorrectAtSmallEps) {
  ParameterGrid g;
  g.q = {0.0};
  g.eps = {1e-5};
  const auto table = compare_codes(config_for("(7,4)", DecodeStrategy::Detect, g),
                                   config_for("(7,4)", DecodeStrategy::Correct, g));
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_NEAR(table.rows[0].ratio, 2.0 / 7.0, 0.01 * 2.0 / 7.0);
}

TEST(Compare, DetectCodesAgreeWhenEpsDominates) {
  ParameterGrid g;
  g.q = {1e-4};
  g.eps = {1e-2};
  const auto table = compare_codes(config_for("(7,4)", DecodeStrategy::Detect, g),
                                   config_for("(2,1)", DecodeStrategy::Detect, g));
  EXPECT_NEAR(table.rows[0].ratio, 1.0, 0.05);
}

TEST(Compare, ZeroDenominator) {
  ParameterGrid g;
  g.q = {0.0};
  g.eps = {0.01};
  ParameterGrid h = g;
  const auto table = compare_codes(config_for("(3,1)", DecodeStrategy::Correct, g),
                                   config_for("(3,1)", DecodeStrategy::Correct, h));
  EXPECT_EQ(table.rows[0].ratio, 1.0);
  g.eps = {0.0};
  h.eps = {0.0};
  const auto zeros = compare_codes(config_for("(2,1)", DecodeStrategy::Detect, g),
                                   config_for("(3,1)", DecodeStrategy::Detect, h));
  EXPECT_EQ(zeros.rows[0].ratio, 1.0);
}

TEST(Compare, GridMismatch) {
  ParameterGrid g;
  g.q = {0.01};
  g.eps = {0.01};
  ParameterGrid h = g;
  h.eps = {0.02};
  EXPECT_THROW(compare_codes(config_for("(2,1)", DecodeStrategy::Detect, g), config_for("(2,1)", DecodeStrategy::Detect, h)),
               std::invalid_argument);
}

TEST(Compare, Csv) {
  ComparisonTable t{"a", "b", {{0.0, 0.01, 0.0, 0.5, 0.0, std::numeric_limits<double>::infinity()}}};
  std::ostringstream os;
  write_comparison_csv(t, os);
  EXPECT_NE(os.str().find("0,0.01,0,0.5,0,inf\n"), std::string::npos);
}

TEST(Scaling, SummaryRows) {
  const auto rows = summary_table_rows();
  ASSERT_EQ(rows.size(), 7u);
  const std::vector<double> q = logspace(1e-3, 3e-2, 8);
  const std::vector<double> eps = logspace(1e-5, 1e-4, 3);
  const std::vector<double> exponents{2, 3, 2, 3, 2, 4, 3};
  std::vector<ScalingResult> results;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    results.push_back(run_scaling(make_code(rows[i].code_id, rows[i].variant), rows[i].strategy, q, eps));
    EXPECT_NEAR(results.back().q_fit.exponent, exponents[i], 0.1) << rows[i].code_id;
  }
  std::ostringstream os;
  write_scaling_csv(results, os);
  const std::string csv = os.str();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}
