#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgelearn/graph.h"
#include "edgelearn/oracle.h"

namespace edgelearn {

enum class CostKind { belovs, ambainis_montanaro, montanaro_shao };

// Charged quantum queries for recovering a support of size k:
//   belovs              ceil(scale * sqrt(k))
//   ambainis_montanaro  ceil(scale * k * log2(k + 2))
//   montanaro_shao      ceil(scale * sqrt(k) * log2(k + 2) * log2(log2(k + 4)))
// each floored at 1, since confirming an empty support still takes a query.
struct CostModel {
  CostKind kind = CostKind::belovs;
  double scale = 1.0;
};

std::uint64_t cost(const CostModel& model, std::uint64_t k);

std::string_view to_string(CostKind kind);
// Throws InvalidConfig on an unknown name.
CostKind parse_cost_kind(std::string_view name);
// Accepts "3", "0.25" or "1/4"; must be positive. Throws InvalidConfig otherwise.
double parse_positive_rational(std::string_view text);

// Group testing over `ground` where a subset X tests positive iff or_query(X ∪ context) = 1.
// Ground and context are disjoint independent sets, so the defectives are exactly the
// ground vertices with a neighbor in the context and membership is monotone.
struct CgtInstance {
  VertexSet ground;
  VertexSet context;
};

// Branching binary search with real OR queries: one root query, then every positive
// half is split again. When the left half answers 0 the right half is known positive
// and is not queried. At most 1 + 2k*ceil(log2 |ground|) queries.
VertexSet cgt_classical(const CgtInstance& instance, OrOracle& oracle);

// The same search, skipping the root query when the caller already knows the ground set
// tests positive.
VertexSet find_defectives(std::span<const Vertex> ground, std::span<const Vertex> context,
                          OrOracle& oracle, bool root_known_positive);

// Idealized quantum CGT: exact answers read through the oracle's private support channel,
// zero classical queries, and cost(model, |support|) charged to the quantum counter.
class IdealQuantumCgt {
 public:
  IdealQuantumCgt(OrOracle& oracle, CostModel model) : oracle_(oracle), model_(model) {}

  const CostModel& model() const { return model_; }
  std::uint64_t charge_for(std::uint64_t k) {
    return k < cost_cache_.size() ? cost_cache_[k] : charge_slow(k);
  }

  // ground ∩ N(context).
  VertexSet solve(std::span<const Vertex> ground, std::span<const Vertex> context);

  // A batch of `tests` instances sharing one ground set: instance i has context
  // T_i = { context[r] : bit i of context_rows[r] } and its answer ground ∩ N(T_i) is written
  // as bit i of ground_rows[g]. Rows are `words` 64-bit words each; `context` must be
  // disjoint from `ground`. Charges the sum of the per-instance costs.
  void solve_tests(std::span<const Vertex> ground, std::span<const Vertex> context,
                   std::span<const std::uint64_t> context_rows, std::size_t tests,
                   std::size_t words, std::span<std::uint64_t> ground_rows);

  struct PairSupport {
    std::size_t a_index = 0;
    std::size_t b_index = 0;
    VertexSet a_active;  // a_sets[a_index] ∩ N(b_sets[b_index])
    VertexSet b_active;  // b_sets[b_index] ∩ N(a_sets[a_index])
  };

  // For every pair (a_sets[x], b_sets[y]) solves the two instances
  // solve(a_sets[x], b_sets[y]) and solve(b_sets[y], a_sets[x]), charging exactly what
  // the |a_sets| * |b_sets| individual pairs of calls would. Pairs with a non-empty
  // support are passed to `visit` in (x, y) lexicographic order; the rest are charged
  // only. The unions of a_sets and of b_sets must be disjoint.
  void solve_pairs(const std::vector<VertexSet>& a_sets, const std::vector<VertexSet>& b_sets,
                   const std::function<void(const PairSupport&)>& visit);

 private:
  std::uint64_t charge_slow(std::uint64_t k);
  std::uint64_t charge_columns(const std::uint64_t* planes, std::size_t level,
                               std::uint64_t mask, std::uint64_t prefix);

  OrOracle& oracle_;
  CostModel model_;
  std::vector<std::uint64_t> cost_cache_;
  // solve_tests scratch: context vertex -> row, valid where context_stamp_ == stamp_.
  std::vector<std::uint32_t> context_row_;
  std::vector<std::uint32_t> context_stamp_;
  std::uint32_t stamp_ = 0;
};

VertexSet cgt_quantum(const CgtInstance& instance, OrOracle& oracle, const CostModel& model);

}  // namespace edgelearn
