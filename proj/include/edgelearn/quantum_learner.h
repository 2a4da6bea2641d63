#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgelearn/cgt.h"
#include "edgelearn/classical_learner.h"
#include "edgelearn/graph.h"
#include "edgelearn/oracle.h"
#include "edgelearn/random.h"

namespace edgelearn {

struct LearnerParams {
  CostModel model;
  // Multiplies the lemma constants 60 and 75. 1.0 reproduces them exactly.
  double const_scale = 1.0;
  // Answer the class-pair non-isolation instances of the general lemma in one sweep
  // (IdealQuantumCgt::solve_pairs) and the N signature instances of each bipartite call in
  // one batch (solve_tests). false runs the literal per-pair and per-test calls; results and
  // charges are identical either way.
  bool batched_cgt = true;
};

// Signature test count ceil(const_scale * 60 d ln n), at least 1.
std::size_t signature_test_count(std::size_t d, std::size_t n, double const_scale);
// Cover sample count ceil(const_scale * 75 d ln n), at least 1.
std::size_t cover_sample_count(std::size_t d, std::size_t n, double const_scale);
// Colors the general lemma budgets per sampled subset: ceil(ln n) + 1.
std::size_t color_class_target(std::size_t n);

// chi_b(b)_i = [b ∈ T_i]; chi_a(a)_i = [a ∈ N(T_i)]. Rows are bit vectors of `tests` bits
// packed into `words` 64-bit words, one row per entry of a_side / b_side.
struct SignatureMatrix {
  std::size_t tests = 0;
  std::size_t words = 0;
  VertexSet a_side;
  VertexSet b_side;
  std::vector<std::uint64_t> chi_a;
  std::vector<std::uint64_t> chi_b;
  std::vector<VertexSet> test_sets;
  std::vector<std::uint64_t> first_word;  // scratch: word 0 of every chi_a row

  bool a_bit(std::size_t row, std::size_t i) const { return bit(chi_a, row, i); }
  bool b_bit(std::size_t row, std::size_t i) const { return bit(chi_b, row, i); }
  // supp chi_b(b_row) ⊆ supp chi_a(a_row)
  bool contained(std::size_t b_row, std::size_t a_row) const;

 private:
  bool bit(const std::vector<std::uint64_t>& rows, std::size_t row, std::size_t i) const {
    return (rows[row * words + i / 64] >> (i % 64)) & 1U;
  }
};

struct LearnerStats {
  std::uint64_t class_pairs = 0;   // bipartite-lemma instances in the general lemma
  std::uint64_t active_pairs = 0;  // of those, instances with a crossing edge
  std::uint64_t signature_tests = 0;
  std::uint64_t colorings = 0;
  std::uint64_t class_overruns = 0;  // colorings that needed more than color_class_target(n)
  std::size_t max_classes = 0;

  LearnerStats& operator+=(const LearnerStats& other);
};

// Vertices of A with a neighbor in B and vice versa: two idealized CGT instances,
// charging cost(|A'|) + cost(|B'|).
std::pair<VertexSet, VertexSet> find_nonisolated(std::span<const Vertex> a,
                                                 std::span<const Vertex> b, OrOracle& oracle,
                                                 const CostModel& model);

struct BipartiteResult {
  EdgeList edges;
  VertexSet a_active;
  VertexSet b_active;
  SignatureMatrix signatures;  // empty when either active side is empty
};

// Crossing edges between disjoint independent sets A and B of a graph with max degree <= d.
// After restricting to non-isolated vertices, samples N = signature_test_count(d, n) sets
// T_i ⊆ B' with inclusion probability 1/(3d), learns each N(T_i) ∩ A' by idealized CGT and
// reports (a, b) whenever supp chi(b) ⊆ supp chi(a). True edges are never missed; a
// non-edge is reported only when its signature happens to be covered.
BipartiteResult learn_bipartite_crossings(std::span<const Vertex> a, std::span<const Vertex> b,
                                          std::size_t d, OrOracle& oracle,
                                          const LearnerParams& params, Rng& rng);
BipartiteResult learn_bipartite_crossings(std::span<const Vertex> a, std::span<const Vertex> b,
                                          std::size_t d, OrOracle& oracle,
                                          const LearnerParams& params, std::uint64_t seed);

struct GeneralResult {
  EdgeList edges;
  LearnerStats stats;
};

// Crossing edges between disjoint sets A = known_a.scope and B = known_b.scope whose internal
// edges are known. Samples N = cover_sample_count(d, n) subsets of each side (inclusion 1/(2d)),
// greedy-colors every subset by the known edges and runs the bipartite learner on every pair
// of color classes.
GeneralResult learn_crossings_general(const KnownEdges& known_a, const KnownEdges& known_b,
                                      std::size_t d, OrOracle& oracle,
                                      const LearnerParams& params, Rng& rng);
GeneralResult learn_crossings_general(const KnownEdges& known_a, const KnownEdges& known_b,
                                      std::size_t d, OrOracle& oracle,
                                      const LearnerParams& params, std::uint64_t seed);

struct LevelRound {
  std::size_t index = 0;  // 1-based
  std::size_t parts = 0;  // T_i
  double p = 0.0;         // 1 / T_i
  double k = 0.0;         // 2 m p_i^2 ln n, the crossing-count threshold of the round
};

// T_{i+1} = ceil(T_i / 2) until a single part remains: ceil(log2 T_1) rounds.
struct LevelSchedule {
  std::size_t initial_parts = 0;
  std::vector<LevelRound> rounds;
};

LevelSchedule make_level_schedule(std::size_t initial_parts, std::size_t m, std::size_t n);

struct PhaseCost {
  std::string label;
  Counters cost;
};

struct FindEdgesResult {
  EdgeList edges;
  bool edge_count_mismatch = false;
  LevelSchedule schedule;
  // levels[0] is the initial partition; levels[i] the parts after round i's merges.
  // Empty when the learner took the classical path (T_1 <= 1).
  std::vector<std::vector<VertexSet>> levels;
  std::vector<PhaseCost> phases;
  LearnerStats stats;
};

// Randomized divide and conquer for a graph promised to have m edges and max degree <= d.
// T_1 = floor(sqrt(m / (d + 1))); with T_1 <= 1 the whole vertex set is learned classically.
// Otherwise: a random equitable partition into T_1 parts, classical learning inside each
// part, then rounds that learn the crossings of consecutive part pairs with the general
// lemma and merge them. An unpaired last part carries over.
FindEdgesResult find_edges(OrOracle& oracle, std::size_t m, std::size_t d,
                           const LearnerParams& params, std::uint64_t seed);

// find_edges for a matching (d = 1) with T_1 = floor(sqrt(m)).
FindEdgesResult learn_matching(OrOracle& oracle, std::size_t m, const LearnerParams& params,
                               std::uint64_t seed);

std::size_t isqrt(std::size_t x);

}  // namespace edgelearn
