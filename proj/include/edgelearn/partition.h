#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgelearn/graph.h"
#include "edgelearn/random.h"

namespace edgelearn {

struct Partition {
  std::vector<VertexSet> parts;
  // Union of parts equals the ground set the partition was built from.
  bool covers = false;
};

// Uniform over equitable partitions with labeled parts: shuffle, then cut into blocks
// whose sizes are ceil(|S|/T) for the first |S| mod T parts and floor(|S|/T) after.
// Throws std::invalid_argument unless 1 <= parts <= |ground|.
Partition random_equitable_partition(std::span<const Vertex> ground, std::size_t parts, Rng& rng);
Partition random_equitable_partition(std::span<const Vertex> ground, std::size_t parts,
                                     std::uint64_t seed);

struct ColorClasses {
  std::vector<VertexSet> classes;
};

// Greedy proper coloring of (vertices, known_edges): vertices in ascending order each take
// the smallest color unused by an earlier neighbor, so at most max_degree + 1 classes.
// Known edges with an endpoint outside `vertices` are ignored.
ColorClasses greedy_color(std::span<const Vertex> vertices, std::span<const Edge> known_edges);

}  // namespace edgelearn
