#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "edgelearn/graph.h"

namespace edgelearn {

struct Counters {
  std::uint64_t classical = 0;
  std::uint64_t quantum = 0;

  friend auto operator<=>(const Counters&, const Counters&) = default;
  friend Counters operator-(const Counters& a, const Counters& b) {
    return {a.classical - b.classical, a.quantum - b.quantum};
  }
  friend Counters operator+(const Counters& a, const Counters& b) {
    return {a.classical + b.classical, a.quantum + b.quantum};
  }
};

struct QueryRecord {
  std::uint64_t seq = 0;
  std::uint64_t digest = 0;  // order-independent hash of the queried set
  std::uint64_t size = 0;
  bool answer = false;
  std::vector<Vertex> members;  // only with OracleOptions::full_sets

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

struct OracleOptions {
  bool log_enabled = true;
  bool full_sets = false;
  // Nonzero: charge_quantum throws BudgetExceeded once the counter passes it.
  std::uint64_t quantum_budget = 0;
};

// Order-independent 64-bit digest of a vertex multiset.
std::uint64_t set_digest(std::span<const Vertex> s);

class IdealQuantumCgt;

// OR-query access to a sealed hidden graph. Single owner: one trial, one thread.
// Classical queries and quantum charges are counted separately. The only other path
// to the hidden edges is the private support channel reserved for IdealQuantumCgt.
class OrOracle {
 public:
  explicit OrOracle(Graph hidden, OracleOptions options = {});

  std::size_t vertex_count() const { return hidden_.vertex_count(); }

  // 1 iff some hidden edge has both endpoints in S. Costs one classical query.
  // Throws std::out_of_range on a vertex id >= n.
  bool or_query(std::span<const Vertex> s);
  // Same query on S = first ∪ second, without materializing the union.
  bool or_query(std::span<const Vertex> first, std::span<const Vertex> second);

  void charge_quantum(std::uint64_t queries) {
    counters_.quantum += queries;
    if (options_.quantum_budget != 0 && counters_.quantum > options_.quantum_budget) over_budget();
  }

  Counters snapshot() const { return counters_; }

  const std::vector<QueryRecord>& log() const { return log_; }
  void reset_log() { log_.clear(); }
  // One line per record: "<seq> <set_digest> <set_size> <answer>".
  void write_log(std::ostream& out) const;

 private:
  friend class IdealQuantumCgt;

  // { v in target : v has a hidden neighbor in probe }. No classical charge.
  // Throws std::invalid_argument when target and probe overlap.
  VertexSet ground_truth_support(std::span<const Vertex> target, std::span<const Vertex> probe);
  std::span<const Vertex> hidden_neighbors(Vertex v) const { return hidden_.neighbors(v); }

  [[noreturn]] void over_budget() const;
  std::uint32_t next_epoch();
  void check_range(std::span<const Vertex> s) const;

  Graph hidden_;
  OracleOptions options_;
  Counters counters_;
  std::vector<QueryRecord> log_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

}  // namespace edgelearn
