#include "arem/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "arem/io.hpp"
#include "arem/plot.hpp"
#include "arem/sampling.hpp"
#include "json.hpp"

namespace arem {

using nlohmann::json;

double estimate_qeff(double m_bar0, double p) {
  if (std::abs(1.0 - 2.0 * p) < 2e-6) {
    throw std::domain_error("q_eff is undetermined at p = 0.5; prepare with a different p (e.g. 0.25)");
  }
  return (m_bar0 - p) / (1.0 - 2.0 * p);
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points, double x_min, double x_max) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& [x, y] : points) {
    if (x < x_min || x > x_max) continue;
    if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("power-law fit needs strictly positive x and y");
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  const std::size_t n = lx.size();
  if (n < 3) throw std::invalid_argument("power-law fit needs at least three points in the window");

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("power-law fit needs at least two distinct x values");

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (intercept + fit.exponent * lx[i]);
    ssr += r * r;
  }
  fit.residual = std::sqrt(ssr / static_cast<double>(n));
  fit.exponent_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  fit.points = n;
  return fit;
}

LinearFit fit_through_origin(std::span<const std::pair<double, double>> points) {
  if (points.empty()) throw std::invalid_argument("linear fit needs at least one point");
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += x * x;
    sxy += x * y;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("linear fit needs a nonzero x value");
  LinearFit fit;
  fit.slope = sxy / sxx;
  if (points.size() > 1) {
    double ssr = 0.0;
    for (const auto& [x, y] : points) ssr += (y - fit.slope * x) * (y - fit.slope * x);
    fit.slope_stderr = std::sqrt(ssr / static_cast<double>(points.size() - 1) / sxx);
  }
  return fit;
}

std::vector<double> logspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw std::invalid_argument("logspace bounds must be positive");
  if (count == 0) throw std::invalid_argument("logspace needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) throw std::invalid_argument("linspace needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

// ---------------------------------------------------------------------------
// Config

namespace {

std::vector<double> parse_axis(const json& node, const std::string& name) {
  if (node.is_number()) return {node.get<double>()};
  if (node.is_array()) {
    std::vector<double> out;
    for (const json& v : node) {
      if (!v.is_number()) throw std::invalid_argument("grid axis '" + name + "' must contain only numbers");
      out.push_back(v.get<double>());
    }
    if (out.empty()) throw std::invalid_argument("grid axis '" + name + "' is empty");
    return out;
  }
  if (node.is_object() && node.size() == 1) {
    const std::string kind = node.begin().key();
    const json& args = node.begin().value();
    if (!args.is_array() || args.size() != 3) {
      throw std::invalid_argument("grid axis '" + name + "': " + kind + " takes [lo, hi, count]");
    }
    const double lo = args[0].get<double>();
    const double hi = args[1].get<double>();
    const auto count = args[2].get<std::size_t>();
    if (kind == "logspace") return logspace(lo, hi, count);
    if (kind == "linspace") return linspace(lo, hi, count);
    throw std::invalid_argument("grid axis '" + name + "': unknown generator '" + kind + "'");
  }
  throw std::invalid_argument("grid axis '" + name + "' must be a number, an array, or {logspace|linspace: [...]}");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
  }
}

std::string describe_strategy(const Code& code, DecodeStrategy strategy) {
  return code.name + " " + to_string(strategy);
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  reject_unknown(doc, {"code", "variant", "strategy", "grid", "shots", "seed", "rebalance", "output"}, "config");

  ExperimentConfig cfg;
  cfg.grid.q = logspace(1e-4, 1e-1, 16);
  cfg.grid.eps = logspace(1e-4, 1e-1, 16);
  try {
    if (doc.contains("code")) cfg.code_id = doc["code"].get<std::string>();
    if (doc.contains("variant")) cfg.variant = parse_variant(doc["variant"].get<std::string>());
    if (doc.contains("strategy")) cfg.strategy = parse_strategy(doc["strategy"].get<std::string>());
    if (doc.contains("grid")) {
      const json& g = doc["grid"];
      if (!g.is_object()) throw std::invalid_argument("grid must be an object");
      reject_unknown(g, {"q", "eps", "kappa", "p"}, "grid");
      if (g.contains("q")) cfg.grid.q = parse_axis(g["q"], "q");
      if (g.contains("eps")) cfg.grid.eps = parse_axis(g["eps"], "eps");
      if (g.contains("kappa")) cfg.grid.kappa = parse_axis(g["kappa"], "kappa");
      if (g.contains("p")) cfg.grid.p = parse_axis(g["p"], "p");
    }
    if (doc.contains("shots")) cfg.shots = doc["shots"].get<std::uint64_t>();
    if (doc.contains("seed") && !doc["seed"].is_null()) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("rebalance")) cfg.rebalance = doc["rebalance"].get<bool>();
    if (doc.contains("output")) {
      const json& o = doc["output"];
      reject_unknown(o, {"dir", "csv", "plot"}, "output");
      if (o.contains("dir")) cfg.out_dir = o["dir"].get<std::string>();
      if (o.contains("csv")) cfg.csv_name = o["csv"].get<std::string>();
      if (o.contains("plot")) cfg.plot = o["plot"].get<bool>();
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config field has the wrong type: ") + e.what());
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

std::string ExperimentConfig::to_json() const {
  json doc;
  doc["code"] = code_id;
  doc["variant"] = to_string(variant);
  doc["strategy"] = to_string(strategy);
  doc["grid"] = {{"q", grid.q}, {"eps", grid.eps}, {"kappa", grid.kappa}, {"p", grid.p}};
  doc["shots"] = shots;
  doc["seed"] = seed ? json(*seed) : json(nullptr);
  doc["rebalance"] = rebalance;
  doc["output"] = {{"dir", out_dir}, {"csv", csv_name}, {"plot", plot}};
  return doc.dump(2);
}

void ExperimentConfig::validate() const {
  const Code code = make_code();
  check_strategy(code, strategy);
  if (code.n > kMaxTabulatedWires) throw std::invalid_argument("code is too large to tabulate");
  if (grid.size() == 0) throw std::invalid_argument("parameter grid is empty");
  if (shots > 0 && !seed) throw std::invalid_argument("a seed is required when shots > 0");
  for (double q : grid.q) {
    for (double kappa : grid.kappa) {
      try {
        BitflipChannel{q, kappa}.validate();
      } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string("grid point outside channel bounds: ") + e.what());
      }
    }
  }
  for (double eps : grid.eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("grid eps outside [0,1]");
  }
  for (double p : grid.p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("grid p outside [0,1]");
    if (code.k == 1 && std::abs(1.0 - 2.0 * p) < 2e-6) {
      throw std::invalid_argument("p = 0.5 makes q_eff undetermined; use another p such as 0.25");
    }
  }
}

std::vector<GridPoint> enumerate_grid(const ParameterGrid& grid) {
  std::vector<GridPoint> out;
  out.reserve(grid.size());
  for (double q : grid.q) {
    for (double eps : grid.eps) {
      for (double kappa : grid.kappa) {
        for (double p : grid.p) {
          out.push_back(GridPoint{out.size(), q, eps, kappa, p});
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

ProbVectorD raw_distribution(const Code& code, const StatePrep& prep, const NoiseModel& noise, bool rebalance) {
  if (rebalance) return rebalanced_raw(prep, code, noise, exact_simulator(), RebalanceMode::PerWire);
  return propagate_exact<double>(prep, code.encoding_circuit(), noise);
}

Eigen::VectorXd sampled_logical(const Decoder& decoder, const ProbVectorD& raw, std::uint64_t shots,
                                std::uint64_t seed, DecodedCounts* counts_out = nullptr) {
  const DecodedCounts counts = decoder.decode_shots(sample_shots(raw, shots, seed));
  if (counts.kept == 0) throw std::domain_error("every sampled shot was discarded");
  Eigen::VectorXd out(static_cast<Eigen::Index>(counts.counts.size()));
  for (std::size_t i = 0; i < counts.counts.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = counts.frequency(static_cast<BasisIndex>(i));
  }
  if (counts_out) *counts_out = counts;
  return out;
}

ResponseMatrixD sampled_response_matrix(const Decoder& decoder, const NoiseModel& noise, bool rebalance,
                                        std::uint64_t shots, std::uint64_t seed) {
  const Code& code = decoder.code();
  return build_response_matrix<double>(
      [&](BasisIndex j) {
        const ProbVectorD raw = raw_distribution(code, code.basis_prep(j), noise, rebalance);
        return sampled_logical(decoder, raw, shots, derive_seed(seed, j + 1));
      },
      code.k);
}

}  // namespace

ResponseMatrixD encoded_response_matrix(const Decoder& decoder, const NoiseModel& noise, bool rebalance) {
  const Code& code = decoder.code();
  return build_response_matrix<double>(
      [&](BasisIndex j) { return decoder.aggregate(raw_distribution(code, code.basis_prep(j), noise, rebalance)).probs; },
      code.k);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 step keyed by the index
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PointMetrics evaluate_point(const Decoder& decoder, const GridPoint& point, std::uint64_t shots, std::uint64_t seed,
                            bool rebalance) {
  const Code& code = decoder.code();
  const NoiseModel noise = NoiseModel::uniform(code.n, point.q, point.kappa, point.eps);
  PointMetrics m;
  m.point = point;

  const ProbVectorD raw = raw_distribution(code, code.prep_uniform(point.p), noise, rebalance);
  const DecodedDistributionD exact = decoder.aggregate(raw);
  if (shots == 0) {
    m.kept_fraction = exact.kept_fraction;
    m.discarded_mass = exact.discarded_mass;
    if (code.k == 1) m.m_bar0 = exact[0];
    m.Q_eff = estimate_Qeff(encoded_response_matrix(decoder, noise, rebalance));
  } else {
    DecodedCounts counts;
    const Eigen::VectorXd freq = sampled_logical(decoder, raw, shots, derive_seed(seed, 0), &counts);
    m.kept_fraction = counts.kept_fraction();
    m.discarded_mass = 1.0 - m.kept_fraction;
    if (code.k == 1) {
      m.m_bar0 = freq(0);
      m.m_bar0_variance = freq(0) * (1.0 - freq(0)) / static_cast<double>(counts.kept);
    }
    m.Q_eff = estimate_Qeff(sampled_response_matrix(decoder, noise, rebalance, shots, seed));
  }
  if (m.m_bar0) m.q_eff = std::clamp(estimate_qeff(*m.m_bar0, point.p), 0.0, 1.0);
  m.Q_eff = std::clamp(m.Q_eff, 0.0, 1.0);
  return m;
}

namespace {

// Fits along the single varying axis. Points with a zero metric or outside
// the fit's domain are dropped; too few points means no fit.
void add_fits(MetricReport& report) {
  const ParameterGrid& g = report.config.grid;
  if (g.kappa.size() != 1 || g.p.size() != 1) return;
  const bool single = report.num_logical == 1;
  auto metric = [&](const PointMetrics& m) { return single ? m.q_eff.value_or(0.0) : m.Q_eff; };
  const std::string metric_name = single ? "q_eff" : "Q_eff";

  auto fit_axis = [&](const std::string& axis, auto x_of) {
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<double, double>> linear;
    for (const PointMetrics& m : report.rows) {
      const double x = x_of(m.point);
      const double y = metric(m);
      linear.emplace_back(x, m.Q_eff / report.num_logical);
      if (x > 0.0 && y > 0.0) pts.emplace_back(x, y);
    }
    if (pts.size() < 3) return;
    SweepFit fit;
    fit.axis = axis;
    fit.metric = metric_name;
    try {
      fit.power_law = fit_power_law(pts);
    } catch (const std::exception&) {
      return;
    }
    if (axis == "eps") fit.alpha = fit_through_origin(linear);
    report.fits.push_back(std::move(fit));
  };

  if (g.eps.size() == 1 && g.q.size() >= 3) fit_axis("q", [](const GridPoint& p) { return p.q; });
  if (g.q.size() == 1 && g.eps.size() >= 3) fit_axis("eps", [](const GridPoint& p) { return p.eps; });
}

const char* kSweepSchema = "# arem sweep v1";

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

MetricReport run_sweep(const ExperimentConfig& config) {
  config.validate();
  MetricReport report;
  report.config = config;
  const Decoder decoder(config.make_code(), config.strategy);
  report.code_name = decoder.code().name;
  report.num_logical = decoder.code().k;
  const std::uint64_t master = config.seed.value_or(0);
  for (const GridPoint& point : enumerate_grid(config.grid)) {
    report.rows.push_back(
        evaluate_point(decoder, point, config.shots, derive_seed(master, point.index), config.rebalance));
  }
  add_fits(report);
  return report;
}

void write_sweep_csv(const MetricReport& report, std::ostream& out) {
  const ExperimentConfig& c = report.config;
  out << kSweepSchema << '\n'
      << "# code=" << report.code_name << ";variant=" << to_string(c.variant) << ";strategy=" << to_string(c.strategy)
      << ";shots=" << (c.shots == 0 ? std::string("exact") : std::to_string(c.shots))
      << ";seed=" << (c.seed ? std::to_string(*c.seed) : std::string("none")) << ";rebalance=" << (c.rebalance ? 1 : 0)
      << '\n';
  out << "index,q,eps,kappa,p,kept_fraction,discarded_mass,m_bar0,m_bar0_var,q_eff,Q_eff,q_eff_over_q\n";
  for (const PointMetrics& m : report.rows) {
    const GridPoint& p = m.point;
    std::string ratio;
    if (m.q_eff && p.q > 0.0) ratio = format_number(*m.q_eff / p.q);
    out << p.index << ',' << format_number(p.q) << ',' << format_number(p.eps) << ',' << format_number(p.kappa) << ','
        << format_number(p.p) << ',' << format_number(m.kept_fraction) << ',' << format_number(m.discarded_mass) << ','
        << opt(m.m_bar0) << ',' << opt(m.m_bar0_variance) << ',' << opt(m.q_eff) << ',' << format_number(m.Q_eff)
        << ',' << ratio << '\n';
  }
}

void write_fits_csv(const MetricReport& report, std::ostream& out) {
  out << "axis,metric,exponent,exponent_ci95_lo,exponent_ci95_hi,prefactor,residual,points,alpha,alpha_stderr\n";
  for (const SweepFit& f : report.fits) {
    const auto [lo, hi] = f.power_law.exponent_ci95();
    out << f.axis << ',' << f.metric << ',' << format_number(f.power_law.exponent) << ',' << format_number(lo) << ','
        << format_number(hi) << ',' << format_number(f.power_law.prefactor) << ','
        << format_number(f.power_law.residual) << ',' << f.power_law.points << ','
        << (f.alpha ? format_number(f.alpha->slope) : std::string()) << ','
        << (f.alpha ? format_number(f.alpha->slope_stderr) : std::string()) << '\n';
  }
}

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& csv, const std::string& suffix, const std::string& ext) {
  return csv.parent_path() / (csv.stem().string() + suffix + ext);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_sweep_plots(const MetricReport& report, const std::filesystem::path& csv, std::vector<std::string>& paths) {
  const ParameterGrid& g = report.config.grid;
  const bool single = report.num_logical == 1;
  const std::string metric = single ? "q_eff" : "Q_eff";
  const std::string title = report.code_name + " " + to_string(report.config.strategy);
  if (g.q.size() > 1 && g.eps.size() > 1) {
    // first kappa and p slice, value metric / q
    std::vector<double> values;
    for (const PointMetrics& m : report.rows) {
      if (m.point.kappa != g.kappa.front() || m.point.p != g.p.front()) continue;
      const double v = single ? m.q_eff.value_or(0.0) : m.Q_eff;
      values.push_back(m.point.q > 0.0 ? v / m.point.q : 0.0);
    }
    const auto path = with_suffix(csv, "_heatmap", ".svg");
    plot::write_heatmap_svg(path.string(), title + ": " + metric + " / q", "q", "eps", g.q, g.eps, values, 1.0);
    paths.push_back(path.string());
    return;
  }
  plot::Series series{metric, {}};
  const bool along_q = g.q.size() > 1;
  for (const PointMetrics& m : report.rows) {
    series.points.emplace_back(along_q ? m.point.q : m.point.eps, single ? m.q_eff.value_or(0.0) : m.Q_eff);
  }
  const auto path = with_suffix(csv, "_loglog", ".svg");
  plot::write_loglog_svg(path.string(), title, along_q ? "q" : "eps", metric, std::span<const plot::Series>(&series, 1));
  paths.push_back(path.string());
}

}  // namespace

std::vector<std::string> run_sweep_to_disk(const ExperimentConfig& config) {
  const MetricReport report = run_sweep(config);
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  const std::filesystem::path csv = dir / config.csv_name;
  std::vector<std::string> paths;
  {
    auto out = open_output(csv);
    write_sweep_csv(report, out);
    paths.push_back(csv.string());
  }
  if (!report.fits.empty()) {
    const auto fits = with_suffix(csv, "_fits", ".csv");
    auto out = open_output(fits);
    write_fits_csv(report, out);
    paths.push_back(fits.string());
  }
  const ParameterGrid& g = config.grid;
  if (config.plot && (g.q.size() > 1 || g.eps.size() > 1)) write_sweep_plots(report, csv, paths);
  return paths;
}

// ---------------------------------------------------------------------------
// Comparison and scaling

ComparisonTable compare_codes(const ExperimentConfig& a, const ExperimentConfig& b) {
  if (a.grid.q != b.grid.q || a.grid.eps != b.grid.eps || a.grid.kappa != b.grid.kappa) {
    throw std::invalid_argument("compared configs must share the same q, eps and kappa grid");
  }
  // Q_eff does not depend on p, so one p slice per config is enough.
  ExperimentConfig ca = a;
  ExperimentConfig cb = b;
  ca.grid.p = {a.grid.p.front()};
  cb.grid.p = {b.grid.p.front()};
  const MetricReport ra = run_sweep(ca);
  const MetricReport rb = run_sweep(cb);

  ComparisonTable table;
  table.label_a = describe_strategy(ca.make_code(), ca.strategy);
  table.label_b = describe_strategy(cb.make_code(), cb.strategy);
  for (std::size_t i = 0; i < ra.rows.size(); ++i) {
    const PointMetrics& x = ra.rows[i];
    const PointMetrics& y = rb.rows[i];
    ComparisonRow row;
    row.q = x.point.q;
    row.eps = x.point.eps;
    row.kappa = x.point.kappa;
    row.Q_eff_a = x.Q_eff;
    row.Q_eff_b = y.Q_eff;
    const double a_per = x.Q_eff / ra.num_logical;
    const double b_per = y.Q_eff / rb.num_logical;
    if (a_per == b_per) {
      row.ratio = 1.0;
    } else if (b_per == 0.0) {
      row.ratio = std::numeric_limits<double>::infinity();
    } else {
      row.ratio = a_per / b_per;
    }
    table.rows.push_back(row);
  }
  return table;
}

void write_comparison_csv(const ComparisonTable& table, std::ostream& out) {
  out << "# arem compare v1\n# a=" << table.label_a << ";b=" << table.label_b << '\n'
      << "q,eps,kappa,Q_eff_a,Q_eff_b,ratio\n";
  for (const ComparisonRow& r : table.rows) {
    out << format_number(r.q) << ',' << format_number(r.eps) << ',' << format_number(r.kappa) << ','
        << format_number(r.Q_eff_a) << ',' << format_number(r.Q_eff_b) << ','
        << (std::isinf(r.ratio) ? std::string("inf") : format_number(r.ratio)) << '\n';
  }
}

ScalingResult run_scaling(const Code& code, DecodeStrategy strategy, std::span<const double> q_values,
                          std::span<const double> eps_values) {
  const Decoder decoder(code, strategy);
  ScalingResult result;
  result.code = code.name;
  result.variant = code.variant;
  result.strategy = strategy;
  for (double q : q_values) {
    const double Q = estimate_Qeff(encoded_response_matrix(decoder, NoiseModel::uniform(code.n, q, 0.0, 0.0)));
    result.q_curve.emplace_back(q, Q);
  }
  std::vector<std::pair<double, double>> per_logical;
  for (double eps : eps_values) {
    const double Q = estimate_Qeff(encoded_response_matrix(decoder, NoiseModel::uniform(code.n, 0.0, 0.0, eps)));
    result.eps_curve.emplace_back(eps, Q);
    per_logical.emplace_back(eps, Q / code.k);
  }
  if (!q_values.empty()) result.q_fit = fit_power_law(result.q_curve);
  if (!eps_values.empty()) result.alpha_fit = fit_through_origin(per_logical);
  return result;
}

void write_scaling_csv(std::span<const ScalingResult> results, std::ostream& out) {
  out << "# arem scaling v1\n"
      << "code,variant,strategy,q_exponent,q_exponent_stderr,q_prefactor,q_residual,alpha,alpha_stderr\n";
  for (const ScalingResult& r : results) {
    out << r.code << ',' << to_string(r.variant) << ',' << to_string(r.strategy) << ','
        << format_number(r.q_fit.exponent) << ',' << format_number(r.q_fit.exponent_stderr) << ','
        << format_number(r.q_fit.prefactor) << ',' << format_number(r.q_fit.residual) << ','
        << format_number(r.alpha_fit.slope) << ',' << format_number(r.alpha_fit.slope_stderr) << '\n';
  }
}

std::vector<TableRowSpec> summary_table_rows() {
  using enum DecodeStrategy;
  return {
      {"(2,1)", CircuitVariant::Full, Detect},  {"(3,1)", CircuitVariant::Full, Detect},
      {"(3,1)", CircuitVariant::Full, Correct}, {"(7,4)", CircuitVariant::Full, Detect},
      {"(7,4)", CircuitVariant::Full, Correct}, {"(8,4)", CircuitVariant::Full, Detect},
      {"(8,4)", CircuitVariant::Full, Hybrid},
  };
}

}  // namespace arem
