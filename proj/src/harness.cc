#include "edgelearn/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "edgelearn/classical_learner.h"
#include "edgelearn/errors.h"
#include "edgelearn/generators.h"
#include "edgelearn/partition.h"
#include "edgelearn/random.h"

namespace edgelearn {

namespace {

constexpr Family kFamilies[] = {Family::matching, Family::cycle,  Family::bounded_degree,
                                Family::star,     Family::clique, Family::clique_pair};
constexpr Algorithm kAlgorithms[] = {Algorithm::find_edges, Algorithm::learn_matching,
                                     Algorithm::classical_only};

double ln(std::size_t n) { return n > 1 ? std::log(static_cast<double>(n)) : 0.0; }

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::matching:
      return "matching";
    case Family::cycle:
      return "cycle";
    case Family::bounded_degree:
      return "bounded_degree";
    case Family::star:
      return "star";
    case Family::clique:
      return "clique";
    case Family::clique_pair:
      return "clique_pair";
  }
  return "unknown";
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::find_edges:
      return "find_edges";
    case Algorithm::learn_matching:
      return "learn_matching";
    case Algorithm::classical_only:
      return "classical_only";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (auto f : kFamilies) {
    if (name == to_string(f)) return f;
  }
  throw InvalidConfig("unknown family '" + std::string(name) +
                      "' (matching|cycle|bounded_degree|star|clique|clique_pair)");
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : kAlgorithms) {
    if (name == to_string(a)) return a;
  }
  throw InvalidConfig("unknown algorithm '" + std::string(name) +
                      "' (find_edges|learn_matching|classical_only)");
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

Graph make_instance(const TrialConfig& config) {
  if (config.algorithm == Algorithm::learn_matching && config.family != Family::matching) {
    throw InvalidConfig("learn_matching needs the matching family, got " +
                        std::string(to_string(config.family)));
  }
  const std::uint64_t seed = seed_stream(config.seed, 0);
  switch (config.family) {
    case Family::matching:
      return gen_matching(config.n, config.m, seed);
    case Family::cycle:
      return gen_cycle(config.n, seed);
    case Family::bounded_degree:
      return gen_bounded_degree(config.n, config.m, config.d, seed);
    case Family::star:
      return gen_star(config.n, config.m, seed);
    case Family::clique:
      return gen_clique(config.n, config.k, seed);
    case Family::clique_pair:
      return gen_clique_pair(config.n, seed);
  }
  throw InvalidConfig("unknown family");
}

std::size_t degree_promise(const TrialConfig& config, const Graph& graph) {
  switch (config.family) {
    case Family::matching:
      return 1;
    case Family::cycle:
      return 2;
    case Family::bounded_degree:
      return config.d;
    case Family::star:
      return config.m;
    case Family::clique:
      return config.k > 0 ? config.k - 1 : 0;
    case Family::clique_pair:
      return graph.max_degree();
  }
  return graph.max_degree();
}

double part_threshold(std::size_t n, std::size_t d) {
  return d <= 1 ? ln(n) : static_cast<double>(d + 1) * ln(n);
}

ConcentrationCounts concentration_counts(const Graph& graph, const std::vector<VertexSet>& parts,
                                         std::size_t m, std::size_t d) {
  ConcentrationCounts out;
  const std::size_t n = graph.vertex_count();
  d = std::max<std::size_t>(d, 1);
  out.initial_parts = parts.size();
  out.part_threshold = part_threshold(n, d);
  if (parts.size() <= 1) return out;

  constexpr std::size_t kOutside = SIZE_MAX;
  std::vector<std::size_t> label(n, kOutside);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (Vertex v : parts[j]) label[v] = j;
  }
  std::vector<std::size_t> inside(parts.size(), 0);
  for (const auto& e : graph.edges()) {
    if (label[e.u] != kOutside && label[e.u] == label[e.v]) ++inside[label[e.u]];
  }
  for (auto count : inside) {
    out.max_part_edges = std::max(out.max_part_edges, count);
    if (static_cast<double>(count) >= out.part_threshold) ++out.part_overflows;
  }

  const double floor_threshold = static_cast<double>(d + 1) * ln(n);
  for (const auto& round : make_level_schedule(parts.size(), m, n).rounds) {
    const double threshold = std::max(round.k, floor_threshold);
    std::vector<std::size_t> crossing(round.parts / 2, 0);
    for (const auto& e : graph.edges()) {
      const std::size_t a = label[e.u];
      const std::size_t b = label[e.v];
      if (a == kOutside || b == kOutside || a == b) continue;
      if ((a ^ 1) == b && a / 2 < crossing.size()) ++crossing[a / 2];
    }
    for (auto count : crossing) {
      ++out.merge_pairs;
      if (threshold > 0.0) {
        out.max_pair_load = std::max(out.max_pair_load, static_cast<double>(count) / threshold);
      }
      if (static_cast<double>(count) >= threshold) ++out.pair_overflows;
    }
    // Pair j becomes part j; an unpaired last part T-1 lands on (T-1)/2 as well.
    for (auto& l : label) {
      if (l != kOutside) l /= 2;
    }
  }
  return out;
}

TrialReport run_on_graph(const Graph& graph, std::size_t degree_bound, const TrialConfig& config) {
  if (config.algorithm == Algorithm::learn_matching && graph.max_degree() > 1) {
    throw InvalidConfig("learn_matching needs a matching, hidden max degree is " +
                        std::to_string(graph.max_degree()));
  }
  TrialReport report;
  report.config = config;
  report.config.n = graph.vertex_count();
  report.config.m = graph.edge_count();
  report.hidden_edges = graph.edge_count();
  report.config.d = degree_bound;
  report.promised_degree = degree_bound;

  OrOracle oracle(graph, OracleOptions{.log_enabled = false});
  LearnerParams params{config.model, config.const_scale, config.batched_cgt};
  const std::uint64_t learner_seed = seed_stream(config.seed, 1);
  const std::size_t m = graph.edge_count();

  const auto start = std::chrono::steady_clock::now();
  FindEdgesResult result;
  switch (config.algorithm) {
    case Algorithm::classical_only: {
      VertexSet all(graph.vertex_count());
      std::iota(all.begin(), all.end(), Vertex{0});
      result.edges = learn_all_edges_classical(all, oracle);
      result.phases.push_back({"classical", oracle.snapshot()});
      result.edge_count_mismatch = result.edges.size() != m;
      break;
    }
    case Algorithm::find_edges:
      result = find_edges(oracle, m, degree_bound, params, learner_seed);
      break;
    case Algorithm::learn_matching:
      result = learn_matching(oracle, m, params, learner_seed);
      break;
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const EdgeList& truth = graph.edges();
  EdgeList missing;
  EdgeList extra;
  std::set_difference(truth.begin(), truth.end(), result.edges.begin(), result.edges.end(),
                      std::back_inserter(missing));
  std::set_difference(result.edges.begin(), result.edges.end(), truth.begin(), truth.end(),
                      std::back_inserter(extra));
  report.false_negatives = missing.size();
  report.false_positives = extra.size();
  report.exact = missing.empty() && extra.empty();
  report.learned_edges = result.edges.size();
  report.edge_count_mismatch = result.edge_count_mismatch;
  report.total = oracle.snapshot();
  report.phases = std::move(result.phases);
  report.rounds = result.schedule.rounds.size();
  report.stats = result.stats;
  const std::size_t d = config.algorithm == Algorithm::learn_matching ? 1 : degree_bound;
  if (!result.levels.empty()) {
    report.concentration = concentration_counts(graph, result.levels.front(), m, d);
  } else {
    report.concentration.part_threshold = part_threshold(graph.vertex_count(), d);
  }
  report.edges = std::move(result.edges);
  return report;
}

TrialReport run_trial(const TrialConfig& config) {
  const Graph graph = make_instance(config);
  auto report = run_on_graph(graph, degree_promise(config, graph), config);
  report.family = config.family;
  return report;
}

std::string serialize(const TrialReport& r, bool with_timing) {
  std::ostringstream out;
  auto line = [&](std::string_view key, const auto& value) { out << key << '=' << value << '\n'; };
  line("family", r.family ? to_string(*r.family) : std::string_view("file"));
  line("n", r.config.n);
  line("m", r.config.m);
  line("d", r.config.d);
  line("k", r.config.k);
  line("algorithm", to_string(r.config.algorithm));
  line("cost_model", to_string(r.config.model.kind));
  line("cost_scale", format_double(r.config.model.scale));
  line("const_scale", format_double(r.config.const_scale));
  line("seed", r.config.seed);
  line("hidden_edges", r.hidden_edges);
  line("promised_degree", r.promised_degree);
  line("exact", r.exact ? 1 : 0);
  line("learned_edges", r.learned_edges);
  line("false_positives", r.false_positives);
  line("false_negatives", r.false_negatives);
  line("edge_count_mismatch", r.edge_count_mismatch ? 1 : 0);
  line("classical_queries", r.total.classical);
  line("quantum_charged", r.total.quantum);
  for (const auto& phase : r.phases) {
    line("phase." + phase.label + ".classical", phase.cost.classical);
    line("phase." + phase.label + ".quantum", phase.cost.quantum);
  }
  line("initial_parts", r.concentration.initial_parts);
  line("rounds", r.rounds);
  line("part_threshold", format_double(r.concentration.part_threshold));
  line("part_overflows", r.concentration.part_overflows);
  line("max_part_edges", r.concentration.max_part_edges);
  line("merge_pairs", r.concentration.merge_pairs);
  line("pair_overflows", r.concentration.pair_overflows);
  line("max_pair_load", format_double(r.concentration.max_pair_load));
  line("class_pairs", r.stats.class_pairs);
  line("active_pairs", r.stats.active_pairs);
  line("signature_tests", r.stats.signature_tests);
  line("colorings", r.stats.colorings);
  line("class_overruns", r.stats.class_overruns);
  line("max_classes", r.stats.max_classes);
  if (with_timing) line("elapsed_seconds", format_double(r.elapsed_seconds));
  return out.str();
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

std::vector<std::string> sweep_columns() {
  return {"point",           "family",          "n",
          "m",               "d",               "k",
          "algorithm",       "cost_model",      "cost_scale",
          "const_scale",     "seed",            "trials",
          "status",          "mean_edges",      "exact_rate",
          "mean_classical",  "median_classical", "max_classical",
          "mean_quantum",    "median_quantum",  "max_quantum",
          "mismatch_rate",   "part_overflow_rate", "pair_overflow_rate",
          "class_overrun_rate"};
}

namespace {

std::vector<std::string> point_prefix(std::size_t index, const TrialConfig& p,
                                      std::size_t trials) {
  return {std::to_string(index),
          std::string(to_string(p.family)),
          std::to_string(p.n),
          std::to_string(p.m),
          std::to_string(p.d),
          std::to_string(p.k),
          std::string(to_string(p.algorithm)),
          std::string(to_string(p.model.kind)),
          format_double(p.model.scale),
          format_double(p.const_scale),
          std::to_string(p.seed),
          std::to_string(trials)};
}

std::string clean_message(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

std::vector<std::string> aggregate_row(const std::vector<TrialReport>& trials) {
  std::vector<std::string> row;
  row.push_back("ok");
  const double count = static_cast<double>(trials.size());
  auto rate = [&](auto predicate) {
    const auto hits = std::count_if(trials.begin(), trials.end(), predicate);
    return format_double(count > 0 ? static_cast<double>(hits) / count : 0.0);
  };
  std::vector<double> classical;
  std::vector<double> quantum;
  double edges = 0.0;
  for (const auto& t : trials) {
    classical.push_back(static_cast<double>(t.total.classical));
    quantum.push_back(static_cast<double>(t.total.quantum));
    edges += static_cast<double>(t.hidden_edges);
  }
  auto mean = [&](const std::vector<double>& v) {
    return format_double(v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / count);
  };
  auto max = [&](const std::vector<double>& v) {
    return format_double(v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()));
  };
  row.push_back(format_double(count > 0 ? edges / count : 0.0));
  row.push_back(rate([](const TrialReport& t) { return t.exact; }));
  row.push_back(mean(classical));
  row.push_back(format_double(median(classical)));
  row.push_back(max(classical));
  row.push_back(mean(quantum));
  row.push_back(format_double(median(quantum)));
  row.push_back(max(quantum));
  row.push_back(rate([](const TrialReport& t) { return t.edge_count_mismatch; }));
  row.push_back(rate([](const TrialReport& t) { return t.concentration.part_overflows > 0; }));
  row.push_back(rate([](const TrialReport& t) { return t.concentration.pair_overflows > 0; }));
  row.push_back(rate([](const TrialReport& t) { return t.stats.class_overruns > 0; }));
  return row;
}

SweepResult sweep(const std::vector<TrialConfig>& grid, const SweepOptions& options) {
  if (grid.empty()) throw InvalidConfig("empty grid");
  if (options.trials == 0) throw InvalidConfig("trials must be positive");
  const std::size_t trials = options.trials;
  const std::size_t tasks = grid.size() * trials;

  std::vector<TrialReport> reports(tasks);
  std::vector<std::string> failure(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      TrialConfig config = grid[task / trials];
      config.seed = seed_stream(grid[task / trials].seed, task % trials);
      try {
        reports[task] = run_trial(config);
        reports[task].edges.clear();
        reports[task].edges.shrink_to_fit();
      } catch (const InfeasibleInstance& e) {
        failure[task] = "infeasible: " + clean_message(e.what());
      } catch (const InvalidConfig& e) {
        failure[task] = "invalid: " + clean_message(e.what());
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, tasks);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepResult out;
  out.table.columns = sweep_columns();
  out.raw.resize(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    auto row = point_prefix(p, grid[p], trials);
    const auto first = failure.begin() + static_cast<std::ptrdiff_t>(p * trials);
    const auto failed =
        std::find_if(first, first + static_cast<std::ptrdiff_t>(trials),
                     [](const std::string& f) { return !f.empty(); });
    if (failed != first + static_cast<std::ptrdiff_t>(trials)) {
      row.push_back(*failed);
      row.resize(out.table.columns.size());
    } else {
      std::vector<TrialReport> point(
          std::make_move_iterator(reports.begin() + static_cast<std::ptrdiff_t>(p * trials)),
          std::make_move_iterator(reports.begin() + static_cast<std::ptrdiff_t>((p + 1) * trials)));
      auto stats = aggregate_row(point);
      row.insert(row.end(), stats.begin(), stats.end());
      if (options.keep_raw) out.raw[p] = std::move(point);
    }
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

Table raw_table(const std::vector<TrialConfig>& grid,
                const std::vector<std::vector<TrialReport>>& raw) {
  Table t;
  t.columns = {"point",         "trial",          "seed",           "hidden_edges",
               "exact",         "classical",      "quantum",        "false_positives",
               "false_negatives", "edge_count_mismatch", "part_overflows", "pair_overflows",
               "class_overruns"};
  for (std::size_t p = 0; p < raw.size() && p < grid.size(); ++p) {
    for (std::size_t i = 0; i < raw[p].size(); ++i) {
      const auto& r = raw[p][i];
      t.rows.push_back({std::to_string(p), std::to_string(i), std::to_string(r.config.seed),
                        std::to_string(r.hidden_edges), r.exact ? "1" : "0",
                        std::to_string(r.total.classical), std::to_string(r.total.quantum),
                        std::to_string(r.false_positives), std::to_string(r.false_negatives),
                        r.edge_count_mismatch ? "1" : "0",
                        std::to_string(r.concentration.part_overflows),
                        std::to_string(r.concentration.pair_overflows),
                        std::to_string(r.stats.class_overruns)});
    }
  }
  return t;
}

namespace {

double parse_cell(const std::string& text, std::string_view column) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw InvalidConfig("column " + std::string(column) + ": not a number '" + text + "'");
  }
  return value;
}

bool row_ok(const Table& table, const std::vector<std::string>& row) {
  auto it = std::find(table.columns.begin(), table.columns.end(), "status");
  return it == table.columns.end() || row[static_cast<std::size_t>(it - table.columns.begin())] == "ok";
}

}  // namespace

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw InvalidConfig("scaling fit needs at least 3 points, got " + std::to_string(x.size()));
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw InvalidConfig("scaling fit needs positive values, got (" + format_double(x[i]) + ", " +
                          format_double(y[i]) + ")");
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double k = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / k;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / k;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InvalidConfig("scaling fit needs at least two distinct x values");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += r * r;
  }
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  fit.points = lx.size();
  return fit;
}

ScalingFit fit_scaling(const Table& table, std::string_view x, std::string_view y) {
  const std::size_t cx = table.column(x);
  const std::size_t cy = table.column(y);
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : table.rows) {
    if (!row_ok(table, row)) continue;
    xs.push_back(parse_cell(row[cx], x));
    ys.push_back(parse_cell(row[cy], y));
  }
  return fit_power_law(xs, ys);
}

std::optional<double> speedup_crossover(const Table& table) {
  const auto family = table.column("family");
  const auto n = table.column("n");
  const auto m = table.column("m");
  const auto algorithm = table.column("algorithm");
  const auto mc = table.column("median_classical");
  const auto mq = table.column("median_quantum");
  std::map<std::tuple<std::string, std::string, std::string>, double> classical;
  for (const auto& row : table.rows) {
    if (row_ok(table, row) && row[algorithm] == "classical_only") {
      classical[{row[family], row[n], row[m]}] = parse_cell(row[mc], "median_classical");
    }
  }
  std::optional<double> best;
  for (const auto& row : table.rows) {
    if (!row_ok(table, row) || row[algorithm] == "classical_only") continue;
    auto it = classical.find({row[family], row[n], row[m]});
    if (it == classical.end()) continue;
    if (parse_cell(row[mq], "median_quantum") < it->second) {
      const double at = parse_cell(row[m], "m");
      if (!best || at < *best) best = at;
    }
  }
  return best;
}

double AuditSummary::part_overflow_rate() const {
  return config.seeds == 0 ? 0.0
                           : static_cast<double>(part_overflow_seeds) /
                                 static_cast<double>(config.seeds);
}

double AuditSummary::pair_overflow_rate() const {
  return config.seeds == 0 ? 0.0
                           : static_cast<double>(pair_overflow_seeds) /
                                 static_cast<double>(config.seeds);
}

Table AuditSummary::table() const {
  Table t;
  t.columns = {"family",         "n",
               "m",              "d",
               "algorithm",      "seeds",
               "base_seed",      "initial_parts",
               "part_threshold", "part_overflow_seeds",
               "part_overflow_rate", "pair_overflow_seeds",
               "pair_overflow_rate", "max_part_edges",
               "max_pair_load"};
  t.rows.push_back({std::string(to_string(config.family)), std::to_string(config.n),
                    std::to_string(config.m), std::to_string(config.d),
                    std::string(to_string(config.algorithm)), std::to_string(config.seeds),
                    std::to_string(config.base_seed), std::to_string(initial_parts),
                    format_double(part_threshold), std::to_string(part_overflow_seeds),
                    format_double(part_overflow_rate()), std::to_string(pair_overflow_seeds),
                    format_double(pair_overflow_rate()), std::to_string(max_part_edges),
                    format_double(max_pair_load)});
  return t;
}

AuditSummary concentration_audit(const AuditConfig& config) {
  if (config.algorithm == Algorithm::classical_only) {
    throw InvalidConfig("audit needs find_edges or learn_matching");
  }
  if (config.family != Family::matching && config.family != Family::bounded_degree) {
    throw InvalidConfig("audit supports the matching and bounded_degree families");
  }
  AuditSummary summary;
  summary.config = config;
  for (std::size_t s = 0; s < config.seeds; ++s) {
    TrialConfig trial;
    trial.family = config.family;
    trial.n = config.n;
    trial.m = config.m;
    trial.d = config.d;
    trial.algorithm = config.algorithm;
    trial.seed = seed_stream(config.base_seed, s);
    const Graph graph = make_instance(trial);
    const std::size_t m = graph.edge_count();
    const bool matching = config.algorithm == Algorithm::learn_matching;
    const std::size_t d = matching ? 1 : degree_promise(trial, graph);
    const std::size_t parts = matching ? isqrt(m) : isqrt(m / (d + 1));
    summary.initial_parts = parts;
    summary.part_threshold = part_threshold(graph.vertex_count(), d);
    if (parts <= 1) continue;

    VertexSet all(graph.vertex_count());
    std::iota(all.begin(), all.end(), Vertex{0});
    Rng rng(seed_stream(trial.seed, 1));
    const auto partition = random_equitable_partition(all, parts, rng);
    const auto counts = concentration_counts(graph, partition.parts, m, d);
    if (counts.part_overflows > 0) ++summary.part_overflow_seeds;
    if (counts.pair_overflows > 0) ++summary.pair_overflow_seeds;
    summary.max_part_edges = std::max(summary.max_part_edges, counts.max_part_edges);
    summary.max_pair_load = std::max(summary.max_pair_load, counts.max_pair_load);
  }
  return summary;
}

}  // namespace edgelearn
