#include <gtest/gtest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "edgelearn/errors.h"
#include "edgelearn/generators.h"
#include "edgelearn/harness.h"
#include "edgelearn/partition.h"
#include "oracles.h"

using namespace edgelearn;
namespace fs = std::filesystem;

namespace {

TrialConfig matching_config(std::size_t n, std::size_t m, double c, std::uint64_t seed) {
  TrialConfig config;
  config.family = Family::matching;
  config.n = n;
  config.m = m;
  config.algorithm = Algorithm::learn_matching;
  config.const_scale = c;
  config.seed = seed;
  return config;
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double number(const std::string& text) { return std::stod(text); }

class ScratchDir {
 public:
  ScratchDir() {
    path_ = fs::temp_directory_path() /
            ("edgelearn_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args) {
  const std::string command = std::string(EDGELEARN_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Names, RoundTrip) {
  for (auto f : {Family::matching, Family::cycle, Family::bounded_degree, Family::star,
                 Family::clique, Family::clique_pair}) {
    EXPECT_EQ(parse_family(to_string(f)), f);
  }
  for (auto a : {Algorithm::find_edges, Algorithm::learn_matching, Algorithm::classical_only}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_family("tree"), InvalidConfig);
  EXPECT_THROW(parse_algorithm("grover"), InvalidConfig);
}

TEST(RunTrial, SmallMatchingExactAndReplayable) {
  const TrialConfig config = matching_config(16, 4, 1.0, 12);
  const TrialReport a = run_trial(config);
  const TrialReport b = run_trial(config);
  EXPECT_TRUE(a.exact);
  EXPECT_EQ(a.total, b.total);
  EXPECT_EQ(serialize(a), serialize(b));
  EXPECT_EQ(a.hidden_edges, 4u);
  EXPECT_EQ(a.promised_degree, 1u);
  Counters sum;
  for (const auto& p : a.phases) sum = sum + p.cost;
  EXPECT_EQ(sum, a.total);
}

TEST(RunTrial, ClassicalOnlyChargesNoQuantum) {
  TrialConfig config = matching_config(16, 4, 1.0, 12);
  config.algorithm = Algorithm::classical_only;
  const TrialReport r = run_trial(config);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.total.quantum, 0u);
  // Same hidden graph as the learner run.
  EXPECT_EQ(r.hidden_edges, run_trial(matching_config(16, 4, 1.0, 12)).hidden_edges);
}

TEST(RunTrial, ComparesAgainstGroundTruth) {
  // With tiny constants the learner makes mistakes; the report must see them.
  std::size_t inexact = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    TrialConfig config;
    config.family = Family::bounded_degree;
    config.n = 300;
    config.m = 250;
    config.d = 3;
    config.algorithm = Algorithm::find_edges;
    config.const_scale = 0.01;
    config.seed = s;
    const TrialReport r = run_trial(config);
    const Graph g = make_instance(config);
    const bool exact = r.edges == g.edges();
    EXPECT_EQ(r.exact, exact);
    EdgeList fp, fn;
    std::set_difference(r.edges.begin(), r.edges.end(), g.edges().begin(), g.edges().end(),
                        std::back_inserter(fp));
    std::set_difference(g.edges().begin(), g.edges().end(), r.edges.begin(), r.edges.end(),
                        std::back_inserter(fn));
    EXPECT_EQ(r.false_positives, fp.size());
    EXPECT_EQ(r.false_negatives, fn.size());
    EXPECT_EQ(r.edge_count_mismatch, r.edges.size() != 250);
    inexact += exact ? 0 : 1;
  }
  EXPECT_GT(inexact, 0u);
}

TEST(RunTrial, RejectsMismatchedAlgorithm) {
  TrialConfig config;
  config.family = Family::cycle;
  config.n = 20;
  config.algorithm = Algorithm::learn_matching;
  EXPECT_THROW(run_trial(config), InvalidConfig);
  config.family = Family::matching;
  config.m = 11;
  EXPECT_THROW(run_trial(config), InfeasibleInstance);
}

TEST(RunTrial, DegreePromises) {
  TrialConfig config;
  config.n = 30;
  config.seed = 2;
  config.algorithm = Algorithm::find_edges;
  config.family = Family::cycle;
  EXPECT_EQ(degree_promise(config, make_instance(config)), 2u);
  config.family = Family::star;
  config.m = 7;
  EXPECT_EQ(degree_promise(config, make_instance(config)), 7u);
  config.family = Family::clique;
  config.k = 5;
  EXPECT_EQ(degree_promise(config, make_instance(config)), 4u);
  config.family = Family::bounded_degree;
  config.m = 20;
  config.d = 4;
  EXPECT_EQ(degree_promise(config, make_instance(config)), 4u);
  config.family = Family::clique_pair;
  const Graph g = make_instance(config);
  EXPECT_EQ(degree_promise(config, g), g.max_degree());
}

TEST(Serialize, FixedKeysAndOptionalTiming) {
  const TrialReport r = run_trial(matching_config(64, 16, 0.5, 3));
  const std::string text = serialize(r);
  std::istringstream lines(text);
  std::vector<std::string> keys;
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find('=');
    ASSERT_NE(eq, std::string::npos) << line;
    keys.push_back(line.substr(0, eq));
  }
  const std::vector<std::string> head = {"family", "n", "m", "d", "k", "algorithm", "cost_model",
                                         "cost_scale", "const_scale", "seed", "hidden_edges"};
  ASSERT_GE(keys.size(), head.size());
  EXPECT_TRUE(std::equal(head.begin(), head.end(), keys.begin()));
  for (const char* key : {"exact", "classical_queries", "quantum_charged", "part_overflows",
                          "pair_overflows", "phase.within_parts.classical", "phase.round_1.quantum"}) {
    EXPECT_NE(std::find(keys.begin(), keys.end(), key), keys.end()) << key;
  }
  EXPECT_EQ(text.find("elapsed_seconds"), std::string::npos);
  EXPECT_NE(serialize(r, true).find("elapsed_seconds="), std::string::npos);
}

TEST(Concentration, CountsMatchBruteForce) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t d = 1 + s % 3;
    const std::size_t m = 150 * d;
    const Graph g = gen_bounded_degree(400, m, d, s);
    const std::size_t t = 6 + s % 9;
    VertexSet all(400);
    for (Vertex v = 0; v < 400; ++v) all[v] = v;
    const auto parts = random_equitable_partition(all, t, s + 100).parts;
    const auto c = concentration_counts(g, parts, m, d);

    const double part_limit = d <= 1 ? std::log(400.0) : (d + 1) * std::log(400.0);
    std::size_t overflows = 0, max_edges = 0;
    for (const auto& part : parts) {
      const std::size_t e = bf::induced(g.edges(), part).size();
      overflows += e >= part_limit ? 1 : 0;
      max_edges = std::max(max_edges, e);
    }
    EXPECT_EQ(c.initial_parts, t);
    EXPECT_DOUBLE_EQ(c.part_threshold, part_limit);
    EXPECT_EQ(c.part_overflows, overflows);
    EXPECT_EQ(c.max_part_edges, max_edges);

    // Replay the merges with plain vectors.
    std::vector<VertexSet> level = parts;
    std::size_t pairs = 0, pair_overflows = 0;
    double load = 0.0;
    for (std::size_t width = t; width > 1; width = (width + 1) / 2) {
      const double p = 1.0 / static_cast<double>(width);
      const double k = 2.0 * m * p * p * std::log(400.0);
      const double limit = std::max(k, (d + 1) * std::log(400.0));
      std::vector<VertexSet> next;
      for (std::size_t j = 0; j + 1 < level.size(); j += 2) {
        const std::size_t crossings = bf::crossing(g.edges(), level[j], level[j + 1]).size();
        ++pairs;
        pair_overflows += crossings >= limit ? 1 : 0;
        load = std::max(load, static_cast<double>(crossings) / limit);
        VertexSet merged = level[j];
        merged.insert(merged.end(), level[j + 1].begin(), level[j + 1].end());
        std::sort(merged.begin(), merged.end());
        next.push_back(merged);
      }
      if (level.size() % 2 == 1) next.push_back(level.back());
      level = next;
    }
    EXPECT_EQ(c.merge_pairs, pairs);
    EXPECT_EQ(c.pair_overflows, pair_overflows);
    EXPECT_NEAR(c.max_pair_load, load, 1e-12);
  }
}

TEST(Audit, SinglePartHasNoViolations) {
  AuditConfig config;
  config.family = Family::matching;
  config.n = 50;
  config.m = 1;
  config.seeds = 100;
  const AuditSummary s = concentration_audit(config);
  EXPECT_EQ(s.initial_parts, 1u);
  EXPECT_EQ(s.part_overflow_seeds, 0u);
  EXPECT_EQ(s.pair_overflow_seeds, 0u);
}

TEST(Audit, ReplaysTheLearnersPartition) {
  for (std::uint64_t base = 0; base < 5; ++base) {
    AuditConfig config;
    config.family = Family::bounded_degree;
    config.n = 600;
    config.m = 400;
    config.d = 3;
    config.seeds = 1;
    config.base_seed = base;
    config.algorithm = Algorithm::find_edges;
    const AuditSummary s = concentration_audit(config);

    TrialConfig trial;
    trial.family = Family::bounded_degree;
    trial.n = 600;
    trial.m = 400;
    trial.d = 3;
    trial.algorithm = Algorithm::find_edges;
    trial.const_scale = 0.05;
    trial.seed = seed_stream(base, 0);
    const TrialReport r = run_trial(trial);
    EXPECT_EQ(s.initial_parts, r.concentration.initial_parts);
    EXPECT_EQ(s.max_part_edges, r.concentration.max_part_edges);
    EXPECT_DOUBLE_EQ(s.max_pair_load, r.concentration.max_pair_load);
    EXPECT_EQ(s.part_overflow_seeds, r.concentration.part_overflows > 0 ? 1u : 0u);
  }
}

TEST(Audit, RejectsUnsupportedFamilies) {
  AuditConfig config;
  config.family = Family::cycle;
  config.n = 20;
  EXPECT_THROW(concentration_audit(config), InvalidConfig);
}

TEST(Sweep, SinglePointSingleTrialMatchesRunTrial) {
  const TrialConfig point = matching_config(100, 30, 0.25, 5);
  const SweepResult result = sweep({point}, {1, 1, true});
  ASSERT_EQ(result.table.rows.size(), 1u);
  TrialConfig direct = point;
  direct.seed = seed_stream(5, 0);
  const TrialReport r = run_trial(direct);
  const auto& row = result.table.rows[0];
  const auto& t = result.table;
  EXPECT_EQ(row[t.column("status")], "ok");
  EXPECT_EQ(row[t.column("median_quantum")], std::to_string(r.total.quantum));
  EXPECT_EQ(row[t.column("mean_classical")], std::to_string(r.total.classical));
  EXPECT_EQ(row[t.column("exact_rate")], r.exact ? "1" : "0");
  EXPECT_EQ(serialize(result.raw[0][0]), serialize([&] {
              TrialReport copy = r;
              copy.edges.clear();
              return copy;
            }()));
}

TEST(Sweep, MedianQuantumNonDecreasingInM) {
  std::vector<TrialConfig> grid;
  for (std::size_t m : {64, 256, 1024}) grid.push_back(matching_config(4 * m, m, 0.05, 1));
  const SweepResult result = sweep(grid, {5, 1, false});
  const auto col = result.table.column("median_quantum");
  double prev = 0.0;
  for (const auto& row : result.table.rows) {
    const double q = number(row[col]);
    EXPECT_LE(prev, q);
    prev = q;
  }
}

TEST(Sweep, InfeasiblePointIsIsolated) {
  std::vector<TrialConfig> grid = {matching_config(40, 10, 0.5, 1), matching_config(10, 30, 0.5, 1),
                                   matching_config(40, 12, 0.5, 1)};
  const SweepResult result = sweep(grid, {3, 1, false});
  const auto status = result.table.column("status");
  EXPECT_EQ(result.table.rows[0][status], "ok");
  EXPECT_EQ(result.table.rows[1][status].rfind("infeasible: ", 0), 0u);
  EXPECT_EQ(result.table.rows[1][result.table.column("median_quantum")], "");
  EXPECT_EQ(result.table.rows[2][status], "ok");
  // The feasible rows equal a sweep without the bad point.
  const SweepResult alone = sweep({grid[0], grid[2]}, {3, 1, false});
  for (std::size_t c = 1; c < result.table.columns.size(); ++c) {
    EXPECT_EQ(result.table.rows[0][c], alone.table.rows[0][c]);
    EXPECT_EQ(result.table.rows[2][c], alone.table.rows[1][c]);
  }
}

TEST(Sweep, ParallelFoldIsDeterministic) {
  std::vector<TrialConfig> grid;
  for (std::size_t m : {20, 40}) grid.push_back(matching_config(4 * m, m, 0.2, 9));
  std::ostringstream serial, parallel;
  sweep(grid, {6, 1, false}).table.write_csv(serial);
  sweep(grid, {6, 3, false}).table.write_csv(parallel);
  EXPECT_EQ(serial.str(), parallel.str());
}

// Statistics recomputed from the raw dump, read back from CSV, equal the emitted rows.
TEST(Sweep, AggregatesRecomputeFromRawDump) {
  std::vector<TrialConfig> grid;
  for (std::size_t m : {30, 60}) grid.push_back(matching_config(4 * m, m, 0.1, 4));
  TrialConfig bounded;
  bounded.family = Family::bounded_degree;
  bounded.n = 200;
  bounded.m = 150;
  bounded.d = 3;
  bounded.algorithm = Algorithm::find_edges;
  bounded.const_scale = 0.02;
  bounded.seed = 8;
  grid.push_back(bounded);
  const std::size_t trials = 8;
  const SweepResult result = sweep(grid, {trials, 1, true});

  std::stringstream io;
  raw_table(grid, result.raw).write_csv(io);
  const Table raw = Table::read_csv(io);
  ASSERT_EQ(raw.rows.size(), grid.size() * trials);

  const auto& t = result.table;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    std::vector<double> classical, quantum;
    double edges = 0, exact = 0, mismatch = 0, part = 0, pair = 0, overrun = 0;
    for (const auto& row : raw.rows) {
      if (row[raw.column("point")] != std::to_string(p)) continue;
      classical.push_back(number(row[raw.column("classical")]));
      quantum.push_back(number(row[raw.column("quantum")]));
      edges += number(row[raw.column("hidden_edges")]);
      exact += number(row[raw.column("exact")]);
      mismatch += number(row[raw.column("edge_count_mismatch")]);
      part += number(row[raw.column("part_overflows")]) > 0 ? 1 : 0;
      pair += number(row[raw.column("pair_overflows")]) > 0 ? 1 : 0;
      overrun += number(row[raw.column("class_overruns")]) > 0 ? 1 : 0;
    }
    ASSERT_EQ(classical.size(), trials);
    auto mean = [&](const std::vector<double>& v) {
      double s = 0;
      for (double x : v) s += x;
      return s / static_cast<double>(trials);
    };
    auto mid = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      return (v[v.size() / 2 - 1] + v[v.size() / 2]) / 2;  // trials is even
    };
    const double n = static_cast<double>(trials);
    const auto& row = t.rows[p];
    EXPECT_EQ(row[t.column("mean_edges")], shortest(edges / n));
    EXPECT_EQ(row[t.column("exact_rate")], shortest(exact / n));
    EXPECT_EQ(row[t.column("mean_classical")], shortest(mean(classical)));
    EXPECT_EQ(row[t.column("median_classical")], shortest(mid(classical)));
    EXPECT_EQ(row[t.column("max_classical")],
              shortest(*std::max_element(classical.begin(), classical.end())));
    EXPECT_EQ(row[t.column("mean_quantum")], shortest(mean(quantum)));
    EXPECT_EQ(row[t.column("median_quantum")], shortest(mid(quantum)));
    EXPECT_EQ(row[t.column("max_quantum")],
              shortest(*std::max_element(quantum.begin(), quantum.end())));
    EXPECT_EQ(row[t.column("mismatch_rate")], shortest(mismatch / n));
    EXPECT_EQ(row[t.column("part_overflow_rate")], shortest(part / n));
    EXPECT_EQ(row[t.column("pair_overflow_rate")], shortest(pair / n));
    EXPECT_EQ(row[t.column("class_overrun_rate")], shortest(overrun / n));
  }
}

TEST(Fit, ExactPowerLaws) {
  std::vector<double> x, sqrt_y, lin_y;
  for (double v = 64; v <= 16384; v *= 2) {
    x.push_back(v);
    sqrt_y.push_back(std::sqrt(v));
    lin_y.push_back(3 * v);
  }
  const ScalingFit half = fit_power_law(x, sqrt_y);
  EXPECT_NEAR(half.slope, 0.5, 1e-9);
  EXPECT_NEAR(half.intercept, 0.0, 1e-9);
  EXPECT_NEAR(half.r2, 1.0, 1e-12);
  const ScalingFit one = fit_power_law(x, lin_y);
  EXPECT_NEAR(one.slope, 1.0, 1e-9);
  EXPECT_NEAR(one.intercept, std::log(3.0), 1e-9);
}

TEST(Fit, RejectsBadInput) {
  EXPECT_THROW(fit_power_law({1, 2}, {1, 2}), InvalidConfig);
  EXPECT_THROW(fit_power_law({1, 2, 0}, {1, 2, 3}), InvalidConfig);
  EXPECT_THROW(fit_power_law({1, 2, 3}, {1, -2, 3}), InvalidConfig);
  EXPECT_THROW(fit_power_law({2, 2, 2}, {1, 2, 3}), InvalidConfig);
}

TEST(Fit, TableSkipsFailedRows) {
  Table t;
  t.columns = {"status", "m", "q"};
  t.rows = {{"ok", "4", "2"}, {"infeasible: x", "", ""}, {"ok", "16", "4"}, {"ok", "64", "8"}};
  const ScalingFit fit = fit_scaling(t, "m", "q");
  EXPECT_EQ(fit.points, 3u);
  EXPECT_NEAR(fit.slope, 0.5, 1e-12);
  EXPECT_THROW(fit_scaling(t, "m", "nope"), InvalidConfig);
}

TEST(Crossover, SmallestMWhereQuantumWins) {
  Table t;
  t.columns = {"status", "family", "n", "m", "algorithm", "median_classical", "median_quantum"};
  t.rows = {
      {"ok", "matching", "256", "64", "classical_only", "500", "0"},
      {"ok", "matching", "256", "64", "learn_matching", "0", "900"},
      {"ok", "matching", "1024", "256", "classical_only", "2000", "0"},
      {"ok", "matching", "1024", "256", "learn_matching", "0", "1500"},
      {"ok", "matching", "4096", "1024", "classical_only", "9000", "0"},
      {"ok", "matching", "4096", "1024", "learn_matching", "0", "5000"},
  };
  ASSERT_TRUE(speedup_crossover(t).has_value());
  EXPECT_EQ(*speedup_crossover(t), 256.0);
  t.rows[3][6] = "2500";
  t.rows[5][6] = "9500";
  EXPECT_FALSE(speedup_crossover(t).has_value());
}

TEST(Csv, RoundTripWithQuoting) {
  Table t;
  t.columns = {"a", "b,c", "d"};
  t.rows = {{"1", "x \"y\"", ""}, {"line\nbreak", "2", "3"}};
  std::stringstream io;
  t.write_csv(io);
  const Table back = Table::read_csv(io);
  EXPECT_EQ(back.columns, t.columns);
  EXPECT_EQ(back.rows, t.rows);
  std::stringstream again;
  back.write_csv(again);
  EXPECT_EQ(again.str(), io.str());
}

TEST(Csv, RejectsMalformed) {
  std::stringstream ragged("a,b\n1,2,3\n");
  EXPECT_THROW(Table::read_csv(ragged), InvalidConfig);
  std::stringstream open_quote("a,b\n\"1,2\n");
  EXPECT_THROW(Table::read_csv(open_quote), InvalidConfig);
  std::stringstream empty("");
  EXPECT_THROW(Table::read_csv(empty), InvalidConfig);
  EXPECT_THROW(read_table("/nonexistent/x.csv"), IoError);
}

TEST(Experiment, GridIsCartesianLastKeyFastest) {
  const Experiment e = parse_experiment(R"(
experiment:
  trials: 7
  jobs: 2
grid:
  family: matching
  algorithm: [learn_matching, classical_only]
  m: [64, 128, 256]
  n_per_m: 4
  cost_model: montanaro_shao
  cost_scale: 1/2
  const_scale: 0.25
  seed: 3
)");
  EXPECT_EQ(e.options.trials, 7u);
  EXPECT_EQ(e.options.jobs, 2u);
  ASSERT_EQ(e.grid.size(), 6u);
  EXPECT_EQ(e.grid[0].algorithm, Algorithm::learn_matching);
  EXPECT_EQ(e.grid[0].m, 64u);
  EXPECT_EQ(e.grid[1].m, 128u);
  EXPECT_EQ(e.grid[3].algorithm, Algorithm::classical_only);
  EXPECT_EQ(e.grid[5].n, 1024u);
  EXPECT_EQ(e.grid[5].model.kind, CostKind::montanaro_shao);
  EXPECT_DOUBLE_EQ(e.grid[5].model.scale, 0.5);
  EXPECT_DOUBLE_EQ(e.grid[5].const_scale, 0.25);
  EXPECT_EQ(e.grid[5].seed, 3u);
}

TEST(Experiment, RejectsBadConfigs) {
  for (const char* text : {"grid: {family: tree}", "grid: {colour: red}", "other: 1\ngrid: {n: 4}",
                           "grid: {n: -4}", "grid: {n: []}", "grid: {n: [[1]]}", "[1, 2]",
                           "experiment: {trials: 0}\ngrid: {n: 4}", "experiment: {x: 1}\ngrid: {n: 4}",
                           "grid: {cost_scale: 0}", "grid: {n: 4", "experiment: {trials: 3}"}) {
    EXPECT_THROW(parse_experiment(text), InvalidConfig) << text;
  }
  EXPECT_THROW(load_experiment("/nonexistent/e.yaml"), IoError);
}

TEST(Plot, SelfContainedLogLogSvg) {
  Table t;
  t.columns = {"status", "m", "median_quantum"};
  t.rows = {{"ok", "64", "8"}, {"ok", "256", "16"}, {"ok", "1024", "32"}, {"bad", "", ""}};
  const std::string svg = render_loglog_svg(t, "m", "median_quantum");
  EXPECT_EQ(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0), 0u);
  EXPECT_NE(svg.find("slope 0.500"), std::string::npos);
  std::size_t circles = 0;
  for (auto at = svg.find("<circle"); at != std::string::npos; at = svg.find("<circle", at + 1)) {
    ++circles;
  }
  EXPECT_EQ(circles, 3u);
  EXPECT_EQ(svg.find("http://", 30), std::string::npos);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
}

TEST(Cli, EndToEndAndExitCodes) {
  ScratchDir dir;
  const auto graph = dir.file("g.txt");
  ASSERT_EQ(cli("gen --family matching --n 200 --m 50 --seed 4 --out " + graph), 0);
  const GraphFile file = read_graph_file(graph);
  EXPECT_EQ(file.graph.edge_count(), 50u);
  EXPECT_EQ(file.degree_bound, 1u);

  const auto r1 = dir.file("r1.txt"), r2 = dir.file("r2.txt");
  const std::string learn = "learn --graph " + graph +
                            " --algorithm learn_matching --cost-model belovs --const-scale 1/4"
                            " --seed 9 --report ";
  ASSERT_EQ(cli(learn + r1), 0);
  ASSERT_EQ(cli(learn + r2), 0);
  EXPECT_EQ(slurp(r1), slurp(r2));
  EXPECT_NE(slurp(r1).find("exact=1\n"), std::string::npos);
  EXPECT_NE(slurp(r1).find("family=file\n"), std::string::npos);

  const auto config = dir.file("e.yaml");
  std::ofstream(config) << "experiment: {trials: 3}\n"
                           "grid:\n  family: matching\n  algorithm: learn_matching\n"
                           "  m: [16, 32, 64]\n  n_per_m: 4\n  const_scale: 0.1\n";
  const auto csv = dir.file("sweep.csv"), svg = dir.file("sweep.svg");
  ASSERT_EQ(cli("experiment --config " + config + " --out " + csv + " --raw " + dir.file("raw.csv")), 0);
  EXPECT_EQ(read_table(csv).rows.size(), 3u);
  EXPECT_EQ(read_table(dir.file("raw.csv")).rows.size(), 9u);
  ASSERT_EQ(cli("plot --in " + csv + " --x m --y median_quantum --out " + svg), 0);
  EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
  const auto audit = dir.file("audit.csv");
  ASSERT_EQ(cli("audit --family matching --n 400 --m 100 --seeds 20 --out " + audit), 0);
  EXPECT_EQ(read_table(audit).rows.size(), 1u);

  EXPECT_EQ(cli("gen --family tree --n 10 --m 2 --seed 1 --out " + graph), 2);
  EXPECT_EQ(cli("gen --family matching --n 10 --seed 1"), 2);
  EXPECT_EQ(cli("learn --graph " + graph + " --cost-model nope --seed 1 --report " + r1), 2);
  EXPECT_EQ(cli("gen --family matching --n 10 --m 6 --seed 1 --out " + graph), 3);
  EXPECT_EQ(cli("learn --graph " + dir.file("missing.txt") + " --seed 1 --report " + r1), 4);
  EXPECT_EQ(cli("gen --family matching --n 10 --m 2 --seed 1 --out /nonexistent/dir/g.txt"), 4);
  EXPECT_EQ(cli("plot --in " + dir.file("missing.csv") + " --out " + svg), 4);
  EXPECT_EQ(cli("bogus"), 2);
}
