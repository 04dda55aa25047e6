#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arem/codes.hpp"
#include "arem/decode.hpp"
#include "arem/mitigation.hpp"
#include "arem/noise.hpp"

namespace arem {

/// Inverts m_bar0 = p + (1 - 2p) q_eff. Throws for p within 1e-6 of 1/2.
double estimate_qeff(double m_bar0, double p);

/// One minus the mean diagonal of a logical response matrix.
template <typename Scalar>
Scalar estimate_Qeff(const ResponseMatrix<Scalar>& r) {
  return Scalar(1) - r.values.diagonal().mean();
}

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;         // RMS of the log-space residuals
  double exponent_stderr = 0.0;  // zero for an exact fit or three collinear points
  std::size_t points = 0;

  std::pair<double, double> exponent_ci95() const {
    return {exponent - 1.96 * exponent_stderr, exponent + 1.96 * exponent_stderr};
  }
};

/// Least-squares line through (log x, log y) for the points with x in
/// [x_min, x_max]. Needs at least three points, all strictly positive.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points, double x_min = 0.0,
                          double x_max = std::numeric_limits<double>::infinity());

struct LinearFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
};

/// Least-squares slope of y = slope * x through the origin.
LinearFit fit_through_origin(std::span<const std::pair<double, double>> points);

struct ParameterGrid {
  std::vector<double> q{0.0};
  std::vector<double> eps{0.0};
  std::vector<double> kappa{0.0};
  std::vector<double> p{0.25};

  std::size_t size() const { return q.size() * eps.size() * kappa.size() * p.size(); }
};

std::vector<double> logspace(double lo, double hi, std::size_t count);
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Declarative experiment description, loaded from a JSON document:
///
///   {
///     "code": "(2,1)", "variant": "full", "strategy": "detect",
///     "grid": {"q": [0.01, 0.02] | {"logspace": [lo, hi, count]} | {"linspace": [...]},
///              "eps": ..., "kappa": ..., "p": ...},
///     "shots": 0, "seed": 1, "rebalance": false,
///     "output": {"dir": "out", "csv": "sweep.csv", "plot": false}
///   }
///
/// shots = 0 selects exact distributions. Omitted q and eps axes default to
/// 16 log-spaced points over [1e-4, 1e-1].
struct ExperimentConfig {
  std::string code_id = "(2,1)";
  CircuitVariant variant = CircuitVariant::Full;
  DecodeStrategy strategy = DecodeStrategy::Detect;
  ParameterGrid grid;
  std::uint64_t shots = 0;
  std::optional<std::uint64_t> seed;
  bool rebalance = false;
  std::string out_dir = "out";
  std::string csv_name = "sweep.csv";
  bool plot = false;

  static ExperimentConfig parse(const std::string& json_text);
  static ExperimentConfig load(const std::string& path);
  std::string to_json() const;

  Code make_code() const { return arem::make_code(code_id, variant); }

  /// Throws std::invalid_argument when the configuration cannot run.
  void validate() const;
};

struct GridPoint {
  std::size_t index = 0;
  double q = 0.0;
  double eps = 0.0;
  double kappa = 0.0;
  double p = 0.25;
};

/// Row-major enumeration: q outermost, then eps, kappa, p.
std::vector<GridPoint> enumerate_grid(const ParameterGrid& grid);

struct PointMetrics {
  GridPoint point;
  double kept_fraction = 1.0;
  double discarded_mass = 0.0;
  std::optional<double> m_bar0;  // single-logical-qubit codes only
  std::optional<double> q_eff;   // clamped to [0,1]
  std::optional<double> m_bar0_variance;  // m(1-m)/kept shots, sampled mode only
  double Q_eff = 0.0;
};

struct SweepFit {
  std::string axis;  // "q" or "eps"
  std::string metric;
  PowerLawFit power_law;
  std::optional<LinearFit> alpha;  // Q_eff / k against eps, eps axis only
};

struct MetricReport {
  ExperimentConfig config;
  std::string code_name;
  int num_logical = 0;
  std::vector<PointMetrics> rows;
  std::vector<SweepFit> fits;
};

/// Logical response matrix of encode -> noise -> decode, one noiseless basis
/// preparation per column.
ResponseMatrixD encoded_response_matrix(const Decoder& decoder, const NoiseModel& noise, bool rebalance = false);

/// Seed of grid point `index` derived from the master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

PointMetrics evaluate_point(const Decoder& decoder, const GridPoint& point, std::uint64_t shots, std::uint64_t seed,
                            bool rebalance);

/// Runs every grid point. The output order and values do not depend on how
/// points are scheduled.
MetricReport run_sweep(const ExperimentConfig& config);

void write_sweep_csv(const MetricReport& report, std::ostream& out);
void write_fits_csv(const MetricReport& report, std::ostream& out);

/// Runs the sweep and writes <out_dir>/<csv_name> (plus fits and optional
/// plots). Returns the paths written.
std::vector<std::string> run_sweep_to_disk(const ExperimentConfig& config);

struct ComparisonRow {
  double q = 0.0;
  double eps = 0.0;
  double kappa = 0.0;
  double Q_eff_a = 0.0;
  double Q_eff_b = 0.0;
  double ratio = 0.0;  // of Q_eff / k; 1 when both are equal, +inf when only b vanishes
};

struct ComparisonTable {
  std::string label_a;
  std::string label_b;
  std::vector<ComparisonRow> rows;
};

/// Elementwise ratio of the per-logical-qubit error Q_eff / k, A over B, so
/// codes with different k compare on one scale. Both configs must share the
/// (q, eps, kappa) grid.
ComparisonTable compare_codes(const ExperimentConfig& a, const ExperimentConfig& b);

void write_comparison_csv(const ComparisonTable& table, std::ostream& out);

/// Power-law exponent in q (eps = 0) and susceptibility alpha (q = 0) of one
/// (code, strategy) row.
struct ScalingResult {
  std::string code;
  CircuitVariant variant = CircuitVariant::Full;
  DecodeStrategy strategy = DecodeStrategy::Detect;
  PowerLawFit q_fit;
  LinearFit alpha_fit;
  std::vector<std::pair<double, double>> q_curve;    // (q, Q_eff) at eps = 0
  std::vector<std::pair<double, double>> eps_curve;  // (eps, Q_eff) at q = 0
};

ScalingResult run_scaling(const Code& code, DecodeStrategy strategy, std::span<const double> q_values,
                          std::span<const double> eps_values);

void write_scaling_csv(std::span<const ScalingResult> results, std::ostream& out);

/// The seven (code, variant, strategy) rows of the summary table.
struct TableRowSpec {
  std::string code_id;
  CircuitVariant variant;
  DecodeStrategy strategy;
};
std::vector<TableRowSpec> summary_table_rows();

}  // namespace arem
