#include "edgelearn/generators.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "edgelearn/errors.h"
#include "edgelearn/random.h"

namespace edgelearn {

namespace {

std::vector<Vertex> shuffled_vertices(std::size_t n, Rng& rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

std::string params(std::initializer_list<std::pair<const char*, std::size_t>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) {
    if (!s.empty()) s += ", ";
    s += k;
    s += '=';
    s += std::to_string(v);
  }
  return s;
}

}  // namespace

Graph gen_matching(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (2 * m > n) throw InfeasibleInstance("matching needs 2m <= n (" + params({{"n", n}, {"m", m}}) + ")");
  Rng rng(seed);
  auto order = shuffled_vertices(n, rng);
  EdgeList edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) edges.push_back(Edge::make(order[2 * i], order[2 * i + 1]));
  return Graph(n, std::move(edges));
}

Graph gen_cycle(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw InfeasibleInstance("cycle needs n >= 3 (" + params({{"n", n}}) + ")");
  Rng rng(seed);
  auto order = shuffled_vertices(n, rng);
  EdgeList edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back(Edge::make(order[i], order[(i + 1) % n]));
  return Graph(n, std::move(edges));
}

Graph gen_bounded_degree(std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed,
                         std::size_t attempt_budget) {
  if (2 * m > n * d || (n > 0 && m > n * (n - 1) / 2) || (n == 0 && m > 0)) {
    throw InfeasibleInstance("bounded-degree graph needs m <= nd/2 and m <= n(n-1)/2 (" +
                             params({{"n", n}, {"m", m}, {"d", d}}) + ")");
  }
  if (attempt_budget == 0) attempt_budget = 100 * m;
  Rng rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, n == 0 ? 0 : static_cast<Vertex>(n - 1));
  std::vector<std::size_t> deg(n, 0);
  std::unordered_set<std::uint64_t> present;
  present.reserve(2 * m);
  EdgeList edges;
  edges.reserve(m);
  std::size_t attempts = 0;
  while (edges.size() < m) {
    if (attempts++ >= attempt_budget) {
      throw InfeasibleInstance("bounded-degree sampler placed " + std::to_string(edges.size()) +
                               " of " + std::to_string(m) + " edges within " +
                               std::to_string(attempt_budget) + " attempts (" +
                               params({{"n", n}, {"d", d}}) + ")");
    }
    Vertex a = pick(rng);
    Vertex b = pick(rng);
    if (a == b || deg[a] >= d || deg[b] >= d) continue;
    Edge e = Edge::make(a, b);
    if (!present.insert((std::uint64_t{e.u} << 32) | e.v).second) continue;
    ++deg[a];
    ++deg[b];
    edges.push_back(e);
  }
  return Graph(n, std::move(edges));
}

Graph gen_clique_pair(std::size_t n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw InfeasibleInstance("clique pair needs even n >= 4 (" + params({{"n", n}}) + ")");
  }
  Rng rng(seed);
  BernoulliBits coin(rng);
  const auto half = static_cast<Vertex>(n / 2);
  const auto fair = BernoulliBits::threshold(0.5);
  EdgeList edges;
  for (Vertex base : {Vertex{0}, half}) {
    for (Vertex u = base; u < base + half; ++u) {
      for (Vertex v = u + 1; v < base + half; ++v) edges.push_back({u, v});
    }
  }
  for (Vertex u = 0; u < half; ++u) {
    for (Vertex v = half; v < 2 * half; ++v) {
      if (coin.next(fair)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

Graph gen_star(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m + 1 > n) throw InfeasibleInstance("star needs m <= n-1 (" + params({{"n", n}, {"m", m}}) + ")");
  Rng rng(seed);
  auto order = shuffled_vertices(n, rng);
  EdgeList edges;
  for (std::size_t i = 1; i <= m; ++i) edges.push_back(Edge::make(order[0], order[i]));
  return Graph(n, std::move(edges));
}

Graph gen_clique(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k > n) throw InfeasibleInstance("clique needs k <= n (" + params({{"n", n}, {"k", k}}) + ")");
  Rng rng(seed);
  auto order = shuffled_vertices(n, rng);
  EdgeList edges;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) edges.push_back(Edge::make(order[i], order[j]));
  }
  return Graph(n, std::move(edges));
}

}  // namespace edgelearn
