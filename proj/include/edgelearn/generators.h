#pragma once

#include <cstdint>

#include "edgelearn/graph.h"

namespace edgelearn {

// Benchmark families for the hidden graph. All throw InfeasibleInstance when the
// parameters admit no graph.

// Uniform random matching with exactly m edges: a uniform 2m-subset, uniformly paired.
Graph gen_matching(std::size_t n, std::size_t m, std::uint64_t seed);

// Uniform random Hamiltonian cycle on 0..n-1.
Graph gen_cycle(std::size_t n, std::uint64_t seed);

// Exactly m edges with max degree <= d by rejection-sampled uniform insertion.
// Gives up after `attempt_budget` draws (0 means 100*m).
Graph gen_bounded_degree(std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed,
                         std::size_t attempt_budget = 0);

// Cliques on {0..n/2-1} and {n/2..n-1}; each cross pair present with probability 1/2.
Graph gen_clique_pair(std::size_t n, std::uint64_t seed);

// Star with a random center and m random leaves.
Graph gen_star(std::size_t n, std::size_t m, std::uint64_t seed);

// Clique on a random k-subset; the other vertices are isolated.
Graph gen_clique(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace edgelearn
