#include "edgelearn/partition.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace edgelearn {

Partition random_equitable_partition(std::span<const Vertex> ground, std::size_t parts, Rng& rng) {
  if (parts < 1 || parts > ground.size()) {
    throw std::invalid_argument("partition needs 1 <= T <= |S| (T=" + std::to_string(parts) +
                                ", |S|=" + std::to_string(ground.size()) + ")");
  }
  VertexSet order(ground.begin(), ground.end());
  std::sort(order.begin(), order.end());
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t base = order.size() / parts;
  const std::size_t larger = order.size() % parts;
  Partition out;
  out.parts.reserve(parts);
  auto it = order.begin();
  for (std::size_t j = 0; j < parts; ++j) {
    const auto size = static_cast<std::ptrdiff_t>(base + (j < larger ? 1 : 0));
    VertexSet part(it, it + size);
    std::sort(part.begin(), part.end());
    out.parts.push_back(std::move(part));
    it += size;
  }
  out.covers = true;
  return out;
}

Partition random_equitable_partition(std::span<const Vertex> ground, std::size_t parts,
                                     std::uint64_t seed) {
  Rng rng(seed);
  return random_equitable_partition(ground, parts, rng);
}

ColorClasses greedy_color(std::span<const Vertex> vertices, std::span<const Edge> known_edges) {
  VertexSet order(vertices.begin(), vertices.end());
  normalize(order);
  const std::size_t count = order.size();
  auto local = [&](Vertex v) -> std::size_t {
    auto it = std::lower_bound(order.begin(), order.end(), v);
    return (it != order.end() && *it == v) ? static_cast<std::size_t>(it - order.begin()) : count;
  };

  // Earlier-neighbor lists only: greedy never looks at uncolored neighbors.
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (const auto& e : known_edges) {
    std::size_t a = local(e.u);
    std::size_t b = local(e.v);
    if (a == count || b == count || a == b) continue;
    if (a > b) std::swap(a, b);
    arcs.emplace_back(b, a);
  }
  std::sort(arcs.begin(), arcs.end());

  ColorClasses out;
  std::vector<std::size_t> color(count, 0);
  std::vector<std::size_t> seen_at;  // color -> last vertex that ruled it out
  auto arc = arcs.begin();
  for (std::size_t i = 0; i < count; ++i) {
    for (; arc != arcs.end() && arc->first == i; ++arc) {
      std::size_t c = color[arc->second];
      if (c >= seen_at.size()) seen_at.resize(c + 1, count);
      seen_at[c] = i;
    }
    std::size_t c = 0;
    while (c < seen_at.size() && seen_at[c] == i) ++c;
    color[i] = c;
    if (c >= out.classes.size()) out.classes.resize(c + 1);
    out.classes[c].push_back(order[i]);
  }
  return out;
}

}  // namespace edgelearn
