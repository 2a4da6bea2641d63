#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace edgelearn {

using Vertex = std::uint32_t;

// Sorted, duplicate-free by convention. Functions that build one return it in that form.
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  // Normal form has u < v.
  static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

// Sorts and deduplicates in place; every edge must already be in normal form.
void normalize(EdgeList& edges);

// Sorts and deduplicates in place.
void normalize(VertexSet& vertices);

// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;

  // Edges may come in any order and orientation. Throws std::invalid_argument on a
  // self-loop, a duplicate, or an endpoint >= n.
  Graph(std::size_t n, EdgeList edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t max_degree() const { return max_degree_; }
  const EdgeList& edges() const { return edges_; }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  bool has_edge(Vertex a, Vertex b) const;

  // Recomputes every invariant from scratch.
  bool check_invariants() const;

 private:
  std::size_t n_ = 0;
  EdgeList edges_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<Vertex> adjacency_;
  std::size_t max_degree_ = 0;
};

// Ground-truth helpers. Learners never see a Graph; the harness and tests do.
EdgeList induced_edges(const Graph& g, std::span<const Vertex> subset);
EdgeList crossing_edges(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b);

// Text format: header "n m d", then one sorted "u v" line per edge. `d` is the promised
// maximum degree and must be at least the true one.
struct GraphFile {
  Graph graph;
  std::size_t degree_bound = 0;
};

void write_graph(std::ostream& out, const Graph& g, std::size_t degree_bound);
GraphFile read_graph(std::istream& in);
void write_graph_file(const std::string& path, const Graph& g, std::size_t degree_bound);
GraphFile read_graph_file(const std::string& path);

}  // namespace edgelearn
