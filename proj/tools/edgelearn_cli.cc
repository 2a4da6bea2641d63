#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "edgelearn/errors.h"
#include "edgelearn/harness.h"

namespace el = edgelearn;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw el::IoError("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw el::IoError("write failed: " + path);
}

struct GenArgs {
  std::string family;
  std::size_t n = 0, m = 0, d = 0, k = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct LearnArgs {
  std::string graph;
  std::string algorithm = "find_edges";
  std::string cost_model = "belovs";
  std::string cost_scale = "1";
  std::string const_scale = "1";
  std::uint64_t seed = 0;
  std::string report;
  std::string edges_out;
  bool timing = false;
  bool literal_cgt = false;
};

struct ExperimentArgs {
  std::string config;
  std::string out;
  std::string raw;
  std::size_t jobs = 0;
  std::size_t trials = 0;
};

struct AuditArgs {
  std::string family = "matching";
  std::string algorithm = "learn_matching";
  std::size_t n = 0, m = 0, d = 1, seeds = 1000;
  std::uint64_t base_seed = 0;
  std::string out;
};

struct PlotArgs {
  std::string in, x = "m", y = "median_quantum", out;
};

int run_gen(const GenArgs& a) {
  el::TrialConfig config;
  config.family = el::parse_family(a.family);
  config.n = a.n;
  config.m = a.m;
  config.d = a.d;
  config.k = a.k;
  config.seed = a.seed;
  config.algorithm = el::Algorithm::find_edges;
  const el::Graph graph = el::make_instance(config);
  el::write_graph_file(a.out, graph, el::degree_promise(config, graph));
  std::cout << "wrote " << a.out << ": n=" << graph.vertex_count() << " m=" << graph.edge_count()
            << " max_degree=" << graph.max_degree() << '\n';
  return 0;
}

int run_learn(const LearnArgs& a) {
  el::TrialConfig config;
  config.algorithm = el::parse_algorithm(a.algorithm);
  config.model.kind = el::parse_cost_kind(a.cost_model);
  config.model.scale = el::parse_positive_rational(a.cost_scale);
  config.const_scale = el::parse_positive_rational(a.const_scale);
  config.seed = a.seed;
  config.batched_cgt = !a.literal_cgt;
  const el::GraphFile file = el::read_graph_file(a.graph);
  const el::TrialReport report = el::run_on_graph(file.graph, file.degree_bound, config);
  write_text(a.report, el::serialize(report, a.timing));
  if (!a.edges_out.empty()) {
    std::string text;
    for (const auto& e : report.edges) text += std::to_string(e.u) + ' ' + std::to_string(e.v) + '\n';
    write_text(a.edges_out, text);
  }
  std::cout << "exact=" << (report.exact ? "true" : "false")
            << " classical=" << report.total.classical
            << " quantum=" << report.total.quantum << '\n';
  return 0;
}

int run_experiment(const ExperimentArgs& a) {
  el::Experiment experiment = el::load_experiment(a.config);
  if (a.jobs > 0) experiment.options.jobs = a.jobs;
  if (a.trials > 0) experiment.options.trials = a.trials;
  experiment.options.keep_raw = !a.raw.empty();
  const el::SweepResult result = el::sweep(experiment.grid, experiment.options);
  el::write_table(result.table, a.out);
  if (!a.raw.empty()) el::write_table(el::raw_table(experiment.grid, result.raw), a.raw);
  std::cout << "wrote " << a.out << " (" << result.table.rows.size() << " rows)\n";
  // One fit per series: rows sharing everything but n, m and seed.
  const el::Table& t = result.table;
  std::vector<std::string> keys;
  std::vector<el::Table> series;
  for (const auto& row : t.rows) {
    std::string key;
    for (const char* c : {"family", "algorithm", "cost_model", "cost_scale", "const_scale", "d", "k"}) {
      key += std::string(key.empty() ? "" : " ") + c + "=" + row[t.column(c)];
    }
    const auto at = std::find(keys.begin(), keys.end(), key);
    if (at == keys.end()) {
      keys.push_back(key);
      series.push_back({t.columns, {row}});
    } else {
      series[static_cast<std::size_t>(at - keys.begin())].rows.push_back(row);
    }
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    const bool classical = series[i].rows[0][t.column("algorithm")] == "classical_only";
    const char* y = classical ? "median_classical" : "median_quantum";
    try {
      const auto fit = el::fit_scaling(series[i], "m", y);
      std::cout << keys[i] << ": " << y << " vs m slope " << el::format_double(fit.slope) << ", r2 "
                << el::format_double(fit.r2) << " over " << fit.points << " points\n";
    } catch (const el::InvalidConfig&) {
    }
  }
  if (const auto crossover = el::speedup_crossover(result.table)) {
    std::cout << "crossover m: " << el::format_double(*crossover) << '\n';
  }
  return 0;
}

int run_audit(const AuditArgs& a) {
  el::AuditConfig config;
  config.family = el::parse_family(a.family);
  config.algorithm = el::parse_algorithm(a.algorithm);
  config.n = a.n;
  config.m = a.m;
  config.d = a.d;
  config.seeds = a.seeds;
  config.base_seed = a.base_seed;
  const el::AuditSummary summary = el::concentration_audit(config);
  el::write_table(summary.table(), a.out);
  std::cout << "part_overflow_rate=" << el::format_double(summary.part_overflow_rate())
            << " pair_overflow_rate=" << el::format_double(summary.pair_overflow_rate()) << '\n';
  return 0;
}

int run_plot(const PlotArgs& a) {
  const el::Table table = el::read_table(a.in);
  write_text(a.out, el::render_loglog_svg(table, a.x, a.y));
  const auto fit = el::fit_scaling(table, a.x, a.y);
  std::cout << a.y << " vs " << a.x << ": slope " << el::format_double(fit.slope) << ", r2 "
            << el::format_double(fit.r2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge learning with OR queries: instance generation, learners, sweeps, audits"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a hidden graph file");
  gen_cmd->add_option("--family", gen.family)->required();
  gen_cmd->add_option("--n", gen.n)->required();
  gen_cmd->add_option("--m", gen.m, "Edge count (ignored by cycle and clique_pair)");
  gen_cmd->add_option("--d", gen.d, "Degree bound for bounded_degree");
  gen_cmd->add_option("--k", gen.k, "Clique size for clique");
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--out", gen.out)->required();

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn", "Learn a graph file and write a report");
  learn_cmd->add_option("--graph", learn.graph)->required();
  learn_cmd->add_option("--algorithm", learn.algorithm)->capture_default_str();
  learn_cmd->add_option("--cost-model", learn.cost_model)->capture_default_str();
  learn_cmd->add_option("--cost-scale", learn.cost_scale)->capture_default_str();
  learn_cmd->add_option("--const-scale", learn.const_scale)->capture_default_str();
  learn_cmd->add_option("--seed", learn.seed)->required();
  learn_cmd->add_option("--report", learn.report)->required();
  learn_cmd->add_option("--edges-out", learn.edges_out, "Also write the learned edges");
  learn_cmd->add_flag("--timing", learn.timing, "Include elapsed_seconds in the report");
  learn_cmd->add_flag("--literal-cgt", learn.literal_cgt, "One CGT call per instance");

  ExperimentArgs experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a YAML-configured sweep");
  experiment_cmd->add_option("--config", experiment.config)->required();
  experiment_cmd->add_option("--out", experiment.out)->required();
  experiment_cmd->add_option("--raw", experiment.raw, "Per-trial CSV");
  experiment_cmd->add_option("--jobs", experiment.jobs, "Worker threads (overrides config)");
  experiment_cmd->add_option("--trials", experiment.trials, "Trials per point (overrides config)");

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Concentration audit of the initial partition");
  audit_cmd->add_option("--family", audit.family)->capture_default_str();
  audit_cmd->add_option("--algorithm", audit.algorithm)->capture_default_str();
  audit_cmd->add_option("--n", audit.n)->required();
  audit_cmd->add_option("--m", audit.m)->required();
  audit_cmd->add_option("--d", audit.d)->capture_default_str();
  audit_cmd->add_option("--seeds", audit.seeds)->capture_default_str();
  audit_cmd->add_option("--base-seed", audit.base_seed)->capture_default_str();
  audit_cmd->add_option("--out", audit.out)->required();

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Log-log SVG of two CSV columns with a fitted line");
  plot_cmd->add_option("--in", plot.in)->required();
  plot_cmd->add_option("--x", plot.x)->capture_default_str();
  plot_cmd->add_option("--y", plot.y)->capture_default_str();
  plot_cmd->add_option("--out", plot.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*learn_cmd) return run_learn(learn);
    if (*experiment_cmd) return run_experiment(experiment);
    if (*audit_cmd) return run_audit(audit);
    if (*plot_cmd) return run_plot(plot);
  } catch (const el::InvalidConfig& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return 2;
  } catch (const el::InfeasibleInstance& e) {
    std::cerr << "infeasible instance: " << e.what() << '\n';
    return 3;
  } catch (const el::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
