#pragma once

#include <span>

#include "edgelearn/graph.h"
#include "edgelearn/oracle.h"

namespace edgelearn {

// Edges accumulated so far, complete for `scope`: every hidden edge inside scope is listed.
struct KnownEdges {
  EdgeList edges;
  VertexSet scope;
};

// E(A, B) for disjoint independent sets A and B, by two-level branching search: first the
// vertices of A with a neighbor in B, then each one's neighborhood in B. Uses the fact that
// or_query(X ∪ Y) reports a crossing edge between X ⊆ A and Y ⊆ B. One query when E(A, B)
// is empty.
EdgeList learn_bipartite_independent_classical(std::span<const Vertex> a,
                                               std::span<const Vertex> b, OrOracle& oracle);

// E(S) with classical OR queries only. If S spans an edge, split it at the midpoint by
// vertex id, learn both halves recursively, greedy-color each half by its now-known edges
// and learn the crossings of every pair of color classes.
EdgeList learn_all_edges_classical(std::span<const Vertex> s, OrOracle& oracle);

}  // namespace edgelearn
