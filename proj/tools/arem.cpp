#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arem/analytics.hpp"
#include "arem/codes.hpp"
#include "arem/harness.hpp"
#include "arem/io.hpp"
#include "arem/mitigation.hpp"
#include "arem/plot.hpp"
#include "json.hpp"

using namespace arem;
using nlohmann::json;

namespace {

struct Overrides {
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string shots;  // empty, "exact" or a decimal count
  bool plot = false;
};

std::uint64_t parse_shots(const std::string& text) {
  if (text == "exact") return 0;
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text[0] == '-') {
    throw std::invalid_argument("--shots takes a shot count or 'exact', got '" + text + "'");
  }
  return n;
}

void apply(const Overrides& o, ExperimentConfig& cfg) {
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (o.seed) cfg.seed = o.seed;
  if (!o.shots.empty()) cfg.shots = parse_shots(o.shots);
  if (o.plot) cfg.plot = true;
}

// Writes to <dir>/<name> when an output directory is set, else to stdout.
template <typename Fn>
void emit(const std::string& dir, const std::string& name, Fn&& write) {
  if (dir.empty()) {
    write(std::cout);
    return;
  }
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
  std::cout << path << '\n';
}

std::vector<int> parse_assignment(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("--assignment takes comma-separated device qubits, got '" + text + "'");
    }
  }
  return out;
}

std::vector<DecodeStrategy> supported_strategies(const Code& code) {
  std::vector<DecodeStrategy> out;
  for (DecodeStrategy s : {DecodeStrategy::Detect, DecodeStrategy::Correct, DecodeStrategy::Hybrid}) {
    try {
      check_strategy(code, s);
      out.push_back(s);
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

int fail(const std::string& kind, const std::string& message, int code) {
  std::cerr << "error: " << json{{"kind", kind}, {"message", message}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active readout error mitigation toolkit"};
  app.require_subcommand(1);
  Overrides ov;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", ov.out_dir, "Output directory");
    sub->add_option("--seed", ov.seed, "Master seed");
    sub->add_option("--shots", ov.shots, "Shot count, or 'exact'");
    sub->add_flag("--plot", ov.plot, "Also write SVG plots");
  };

  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "Run an experiment config over its grid");
  sweep->add_option("--config", config_path, "Experiment config (JSON)")->required();
  add_common(sweep);

  std::string code_id;
  std::string variant_name = "full";
  std::string strategy_name;
  std::vector<double> q_range{1e-3, 3e-2, 8};
  std::vector<double> eps_range{1e-5, 1e-4, 3};
  auto* scaling = app.add_subcommand("scaling", "Fit q exponents and alpha for the summary table rows");
  scaling->add_option("--code", code_id, "Restrict to one code");
  scaling->add_option("--variant", variant_name, "full or reduced");
  scaling->add_option("--strategy", strategy_name, "Restrict to one strategy");
  scaling->add_option("--q-range", q_range, "lo hi count for the eps = 0 fit")->expected(3);
  scaling->add_option("--eps-range", eps_range, "lo hi count for the q = 0 fit")->expected(3);
  add_common(scaling);

  bool pair_odd = false;
  auto* alpha = app.add_subcommand("alpha", "Enumerate single Pauli faults and report alpha");
  alpha->add_option("--code", code_id, "Code id, e.g. (7,4)")->required();
  alpha->add_option("--variant", variant_name, "full or reduced");
  alpha->add_option("--strategy", strategy_name, "detect, correct or hybrid")->required();
  alpha->add_flag("--pair-odd-as-one", pair_odd, "(2,1) only: read odd-parity pairs as 1");
  add_common(alpha);

  std::vector<std::string> compare_paths;
  auto* compare = app.add_subcommand("compare", "Per-logical-qubit Q_eff ratio of two configs");
  compare->add_option("--config", compare_paths, "Two experiment configs, A then B")->required()->expected(2);
  add_common(compare);

  double q = 0.0;
  double eps = 0.0;
  auto* predict = app.add_subcommand("predict", "Leading-order q_eff of a code and strategy");
  predict->add_option("--code", code_id, "Code id")->required();
  predict->add_option("--variant", variant_name, "full or reduced");
  predict->add_option("--strategy", strategy_name, "Decode strategy")->required();
  predict->add_option("--q", q, "Readout flip probability");
  predict->add_option("--eps", eps, "Depolarizing strength per CNOT");

  std::string coupling_path;
  std::string assignment_text;
  auto* feasible = app.add_subcommand("feasible", "Check a code's CNOT schedule against a coupling map");
  feasible->add_option("--code", code_id, "Code id")->required();
  feasible->add_option("--variant", variant_name, "full or reduced");
  feasible->add_option("--coupling", coupling_path, "Edge-list file")->required();
  feasible->add_option("--assignment", assignment_text, "Device qubit per wire, comma-separated (default identity)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (*sweep) {
      ExperimentConfig cfg = ExperimentConfig::load(config_path);
      apply(ov, cfg);
      cfg.validate();
      for (const std::string& path : run_sweep_to_disk(cfg)) std::cout << path << '\n';
    } else if (*scaling) {
      if (!ov.shots.empty() && parse_shots(ov.shots) != 0) {
        throw std::invalid_argument("scaling fits use exact distributions; drop --shots or pass 'exact'");
      }
      const CircuitVariant variant = parse_variant(variant_name);
      const auto qs = logspace(q_range[0], q_range[1], static_cast<std::size_t>(q_range[2]));
      const auto es = logspace(eps_range[0], eps_range[1], static_cast<std::size_t>(eps_range[2]));
      std::vector<TableRowSpec> rows;
      if (!code_id.empty()) {
        const auto strategies = strategy_name.empty() ? supported_strategies(make_code(code_id, variant))
                                                      : std::vector<DecodeStrategy>{parse_strategy(strategy_name)};
        for (DecodeStrategy s : strategies) rows.push_back({code_id, variant, s});
      } else {
        for (const TableRowSpec& row : summary_table_rows()) {
          if (strategy_name.empty() || row.strategy == parse_strategy(strategy_name)) rows.push_back(row);
        }
      }
      std::vector<ScalingResult> results;
      for (const TableRowSpec& row : rows) {
        results.push_back(run_scaling(make_code(row.code_id, row.variant), row.strategy, qs, es));
      }
      emit(ov.out_dir, "scaling.csv", [&](std::ostream& out) { write_scaling_csv(results, out); });
      if (ov.plot) {
        if (ov.out_dir.empty()) throw std::invalid_argument("--plot needs --out");
        std::vector<plot::Series> series;
        for (const ScalingResult& r : results) {
          series.push_back({r.code + " " + to_string(r.strategy), r.q_curve});
        }
        const std::string path = (std::filesystem::path(ov.out_dir) / "scaling_q.svg").string();
        plot::write_loglog_svg(path, "Q_eff at eps = 0", "q", "Q_eff", series);
        std::cout << path << '\n';
      }
    } else if (*alpha) {
      DecodeOptions options;
      options.pair_odd_as_one = pair_odd;
      const Code code = make_code(code_id, parse_variant(variant_name));
      const AlphaEstimate est = pauli_insertion_oracle(code, parse_strategy(strategy_name), options);
      std::cerr << "alpha = " << est.alpha.str() << " (" << format_number(est.alpha.value()) << "), "
                << est.logical_error_channels() << " logical-error channels\n";
      emit(ov.out_dir, "alpha_breakdown.csv", [&](std::ostream& out) { write_csv(est, out); });
    } else if (*compare) {
      ExperimentConfig a = ExperimentConfig::load(compare_paths[0]);
      ExperimentConfig b = ExperimentConfig::load(compare_paths[1]);
      apply(ov, a);
      apply(ov, b);
      a.validate();
      b.validate();
      const ComparisonTable table = compare_codes(a, b);
      emit(ov.out_dir, "compare.csv", [&](std::ostream& out) { write_comparison_csv(table, out); });
      if (ov.plot) {
        if (ov.out_dir.empty()) throw std::invalid_argument("--plot needs --out");
        std::vector<double> xs;
        std::vector<double> ys;
        for (const ComparisonRow& row : table.rows) {
          if (std::find(xs.begin(), xs.end(), row.q) == xs.end()) xs.push_back(row.q);
          if (std::find(ys.begin(), ys.end(), row.eps) == ys.end()) ys.push_back(row.eps);
        }
        if (xs.size() * ys.size() != table.rows.size()) {
          throw std::invalid_argument("ratio map needs a single kappa value");
        }
        std::vector<double> values;
        for (const ComparisonRow& row : table.rows) values.push_back(row.ratio);
        const std::string path = (std::filesystem::path(ov.out_dir) / "compare_ratio.svg").string();
        plot::write_heatmap_svg(path, table.label_a + " / " + table.label_b, "q", "eps", xs, ys, values, 1.0);
        std::cout << path << '\n';
      }
    } else if (*predict) {
      const Prediction p = predict_qeff(make_code(code_id, parse_variant(variant_name)), parse_strategy(strategy_name), q, eps);
      json out{{"code", p.code},
               {"strategy", to_string(p.strategy)},
               {"q", p.q},
               {"eps", p.eps},
               {"alpha", p.alpha.str()},
               {"q_exponent", p.q_exponent},
               {"q_prefactor", p.q_prefactor ? json(*p.q_prefactor) : json(nullptr)},
               {"q_eff", p.value},
               {"warnings", p.warnings}};
      std::cout << out.dump() << '\n';
    } else if (*feasible) {
      const Code code = make_code(code_id, parse_variant(variant_name));
      const CouplingMap coupling = CouplingMap::load(coupling_path);
      std::vector<int> assignment;
      if (assignment_text.empty()) {
        for (int w = 0; w < code.n; ++w) assignment.push_back(w);
      } else {
        assignment = parse_assignment(assignment_text);
      }
      const bool ok = connectivity_feasible(code, coupling, assignment);
      std::cout << json{{"code", code.name}, {"feasible", ok}, {"assignment", assignment}}.dump() << '\n';
    }
  } catch (const IllConditionedError& e) {
    return fail("ill_conditioned", e.what(), 1);
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e.what(), 1);
  } catch (const std::domain_error& e) {
    return fail("domain_error", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("runtime_error", e.what(), 1);
  }
  return 0;
}
