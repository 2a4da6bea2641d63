#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgelearn/cgt.h"
#include "edgelearn/graph.h"
#include "edgelearn/quantum_learner.h"

namespace edgelearn {

enum class Family { matching, cycle, bounded_degree, star, clique, clique_pair };
enum class Algorithm { find_edges, learn_matching, classical_only };

std::string_view to_string(Family family);
std::string_view to_string(Algorithm algorithm);
// Both throw InvalidConfig on unknown names.
Family parse_family(std::string_view name);
Algorithm parse_algorithm(std::string_view name);

struct TrialConfig {
  Family family = Family::matching;
  std::size_t n = 0;
  std::size_t m = 0;  // ignored by cycle and clique_pair
  std::size_t d = 0;  // bounded_degree only
  std::size_t k = 0;  // clique only
  Algorithm algorithm = Algorithm::learn_matching;
  CostModel model;
  double const_scale = 1.0;
  std::uint64_t seed = 0;
  bool batched_cgt = true;
};

// The hidden graph of a trial, drawn with seed_stream(config.seed, 0).
// Throws InvalidConfig or InfeasibleInstance.
Graph make_instance(const TrialConfig& config);
// Max-degree promise handed to the learner: 1, 2, d, m, k - 1 by family; the true maximum
// degree for clique_pair.
std::size_t degree_promise(const TrialConfig& config, const Graph& graph);

struct ConcentrationCounts {
  std::size_t initial_parts = 0;
  double part_threshold = 0.0;
  std::size_t part_overflows = 0;  // initial parts with e(V_1j) >= part_threshold
  std::size_t max_part_edges = 0;
  std::size_t pair_overflows = 0;  // merge pairs with crossings >= max(k_i, (d+1) ln n)
  std::size_t merge_pairs = 0;
  double max_pair_load = 0.0;  // max crossings / threshold over all merge pairs
};

// Part threshold: ln n when the partition follows the matching schedule (d = 1), otherwise
// (d + 1) ln n.
double part_threshold(std::size_t n, std::size_t d);
// Replays the merge tree of an initial partition against the hidden graph.
ConcentrationCounts concentration_counts(const Graph& graph, const std::vector<VertexSet>& parts,
                                         std::size_t m, std::size_t d);

struct TrialReport {
  TrialConfig config;
  std::optional<Family> family;  // empty when the graph came from a file
  std::size_t hidden_edges = 0;
  std::size_t promised_degree = 0;
  bool exact = false;
  std::size_t learned_edges = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  bool edge_count_mismatch = false;
  Counters total;
  std::vector<PhaseCost> phases;
  std::size_t rounds = 0;
  ConcentrationCounts concentration;
  LearnerStats stats;
  double elapsed_seconds = 0.0;
  EdgeList edges;
};

// Generates the instance, runs the learner with seed_stream(config.seed, 1) and the promises
// m = |E| and d = degree_promise, and compares against ground truth. The report's config
// carries the realized n, m and the promised d.
TrialReport run_trial(const TrialConfig& config);
// Same on a given graph; config.family, n, m, d and k are taken from the graph.
TrialReport run_on_graph(const Graph& graph, std::size_t degree_bound, const TrialConfig& config);

// key=value lines in a fixed order. Wall time is left out unless `with_timing`, so equal
// configs serialize byte-identically.
std::string serialize(const TrialReport& report, bool with_timing = false);

// Rows of strings under named columns. CSV is the on-disk form.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  // Throws InvalidConfig on an unknown column.
  std::size_t column(std::string_view name) const;
  void write_csv(std::ostream& out) const;
  // Throws InvalidConfig on ragged rows.
  static Table read_csv(std::istream& in);
};

void write_table(const Table& table, const std::string& path);  // IoError
Table read_table(const std::string& path);                      // IoError, InvalidConfig

struct SweepOptions {
  std::size_t trials = 100;
  std::size_t jobs = 1;
  bool keep_raw = false;
};

struct SweepResult {
  Table table;
  // Per grid point, per trial, when keep_raw. Empty vectors for failed points.
  std::vector<std::vector<TrialReport>> raw;
};

// Trial t of a grid point runs with seed seed_stream(point.seed, t). Rows follow grid order;
// a point whose instance cannot be built gets status "infeasible: ..." or "invalid: ..." and
// empty statistics.
SweepResult sweep(const std::vector<TrialConfig>& grid, const SweepOptions& options);
// The statistics columns (status onward) sweep emits for one point's trials.
std::vector<std::string> aggregate_row(const std::vector<TrialReport>& trials);
std::vector<std::string> sweep_columns();
// Raw per-trial dump, one row per trial.
Table raw_table(const std::vector<TrialConfig>& grid,
                const std::vector<std::vector<TrialReport>>& raw);

double median(std::vector<double> values);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural-log space
  double r2 = 0.0;
  std::size_t points = 0;
};

// OLS of ln y on ln x over rows whose status (if present) is "ok". Needs at least 3 rows and
// positive values; throws InvalidConfig otherwise.
ScalingFit fit_scaling(const Table& table, std::string_view x, std::string_view y);
ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

// Smallest m at which the learner's median quantum charge drops below classical_only's median
// classical count at equal (family, n, m); rows are matched by those columns.
std::optional<double> speedup_crossover(const Table& table);

struct AuditConfig {
  Family family = Family::matching;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 1;
  std::size_t seeds = 1000;
  std::uint64_t base_seed = 0;
  // find_edges schedule floor(sqrt(m / (d + 1))) parts; otherwise floor(sqrt(m)).
  Algorithm algorithm = Algorithm::learn_matching;
};

struct AuditSummary {
  AuditConfig config;
  std::size_t initial_parts = 0;
  double part_threshold = 0.0;
  std::size_t part_overflow_seeds = 0;
  std::size_t pair_overflow_seeds = 0;
  std::size_t max_part_edges = 0;
  double max_pair_load = 0.0;

  double part_overflow_rate() const;
  double pair_overflow_rate() const;
  Table table() const;
};

// Seed s draws the graph exactly as run_trial with seed seed_stream(base_seed, s) does and the
// initial partition exactly as the learner does, then replays the merge tree.
AuditSummary concentration_audit(const AuditConfig& config);

struct Experiment {
  std::vector<TrialConfig> grid;
  SweepOptions options;
};

// YAML with an optional `experiment:` map (trials, jobs) and a `grid:` map whose values are
// scalars or sequences. The grid is the Cartesian product in file order, first key varying
// slowest. Keys: family, algorithm, n, n_per_m, m, d, k, cost_model, cost_scale, const_scale,
// seed, batched_cgt; n_per_m sets n = n_per_m * m. Throws InvalidConfig.
Experiment parse_experiment(const std::string& yaml_text);
Experiment load_experiment(const std::string& path);  // adds IoError

// Self-contained SVG: log-log scatter of (x, y) with the fitted line.
std::string render_loglog_svg(const Table& table, std::string_view x, std::string_view y);

std::string format_double(double value);

}  // namespace edgelearn
