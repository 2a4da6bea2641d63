#include "edgelearn/classical_learner.h"

#include <algorithm>

#include "edgelearn/cgt.h"
#include "edgelearn/partition.h"

namespace edgelearn {

namespace {

EdgeList bipartite(std::span<const Vertex> a, std::span<const Vertex> b, OrOracle& oracle) {
  EdgeList out;
  if (a.empty() || b.empty() || !oracle.or_query(a, b)) return out;
  for (Vertex u : find_defectives(a, b, oracle, true)) {
    const Vertex single[] = {u};
    for (Vertex w : find_defectives(b, single, oracle, true)) out.push_back(Edge::make(u, w));
  }
  return out;
}

EdgeList learn_sorted(std::span<const Vertex> s, OrOracle& oracle) {
  if (s.size() < 2 || !oracle.or_query(s)) return {};
  const std::size_t half = s.size() / 2;
  auto left = s.first(half);
  auto right = s.subspan(half);
  EdgeList left_edges = learn_sorted(left, oracle);
  EdgeList right_edges = learn_sorted(right, oracle);

  const auto left_classes = greedy_color(left, left_edges).classes;
  const auto right_classes = greedy_color(right, right_edges).classes;
  EdgeList out = std::move(left_edges);
  out.insert(out.end(), right_edges.begin(), right_edges.end());
  for (const auto& x : left_classes) {
    for (const auto& y : right_classes) {
      auto crossing = bipartite(x, y, oracle);
      out.insert(out.end(), crossing.begin(), crossing.end());
    }
  }
  normalize(out);
  return out;
}

}  // namespace

EdgeList learn_bipartite_independent_classical(std::span<const Vertex> a,
                                               std::span<const Vertex> b, OrOracle& oracle) {
  VertexSet sa(a.begin(), a.end());
  VertexSet sb(b.begin(), b.end());
  normalize(sa);
  normalize(sb);
  auto out = bipartite(sa, sb, oracle);
  normalize(out);
  return out;
}

EdgeList learn_all_edges_classical(std::span<const Vertex> s, OrOracle& oracle) {
  VertexSet sorted(s.begin(), s.end());
  normalize(sorted);
  return learn_sorted(sorted, oracle);
}

}  // namespace edgelearn
