#include "edgelearn/quantum_learner.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "edgelearn/partition.h"

namespace edgelearn {

namespace {

std::size_t scaled_count(double constant, std::size_t d, std::size_t n, double const_scale) {
  const double ln_n = n > 1 ? std::log(static_cast<double>(n)) : 0.0;
  const double raw = std::ceil(const_scale * constant * static_cast<double>(d) * ln_n);
  return raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
}

std::size_t row_of(const VertexSet& side, Vertex v) {
  return static_cast<std::size_t>(std::lower_bound(side.begin(), side.end(), v) - side.begin());
}

// Signature stage of the bipartite lemma on already non-isolated sides, written into `sig`
// (buffers reused across calls). chi_b is drawn 64 tests at a time, row by row. Batched
// mode answers all N tests in one CGT batch, otherwise one solve per test; both consume the
// RNG identically and charge the same. Calls emit(ra, rb) for every contained pair.
template <typename Emit>
void infer_from_signatures(const VertexSet& a_active, const VertexSet& b_active, std::size_t d,
                           std::size_t n, IdealQuantumCgt& cgt, const LearnerParams& params,
                           Rng& rng, SignatureMatrix& sig, bool keep_sets, LearnerStats& stats,
                           Emit&& emit) {
  sig.tests = signature_test_count(d, n, params.const_scale);
  sig.words = (sig.tests + 63) / 64;
  sig.chi_a.resize(a_active.size() * sig.words);
  sig.chi_b.resize(b_active.size() * sig.words);

  BernoulliBits coin(rng);
  const auto include = BernoulliBits::threshold(1.0 / (3.0 * static_cast<double>(d)));
  const std::uint64_t tail = sig.tests % 64 == 0 ? ~std::uint64_t{0}
                                                  : (std::uint64_t{1} << (sig.tests % 64)) - 1;
  for (std::size_t r = 0; r < b_active.size(); ++r) {
    std::uint64_t* row = sig.chi_b.data() + r * sig.words;
    for (std::size_t w = 0; w < sig.words; ++w) row[w] = coin.lanes(include);
    row[sig.words - 1] &= tail;
  }

  const bool need_sets = keep_sets || !params.batched_cgt;
  sig.test_sets.clear();
  if (need_sets) {
    sig.test_sets.assign(sig.tests, {});
    for (std::size_t r = 0; r < b_active.size(); ++r) {
      for (std::size_t i = 0; i < sig.tests; ++i) {
        if (sig.b_bit(r, i)) sig.test_sets[i].push_back(b_active[r]);
      }
    }
  }
  if (params.batched_cgt) {
    cgt.solve_tests(a_active, b_active, sig.chi_b, sig.tests, sig.words, sig.chi_a);
  } else {
    std::fill(sig.chi_a.begin(), sig.chi_a.end(), 0);
    for (std::size_t i = 0; i < sig.tests; ++i) {
      for (Vertex a : cgt.solve(a_active, sig.test_sets[i])) {
        sig.chi_a[row_of(a_active, a) * sig.words + i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
  }
  stats.signature_tests += sig.tests;

  // Word 0 as a branch-free prefilter, then the remaining words for survivors.
  sig.first_word.resize(a_active.size());
  for (std::size_t ra = 0; ra < a_active.size(); ++ra) sig.first_word[ra] = sig.chi_a[ra * sig.words];
  for (std::size_t rb = 0; rb < b_active.size(); ++rb) {
    const std::uint64_t head = sig.chi_b[rb * sig.words];
    for (std::size_t ra = 0; ra < a_active.size(); ++ra) {
      if ((head & ~sig.first_word[ra]) == 0 && sig.contained(rb, ra)) emit(ra, rb);
    }
  }
}

// Each sampled subset of `side`, split into greedy color classes by `known`.
std::vector<VertexSet> sampled_classes(const VertexSet& side, const EdgeList& known,
                                       std::size_t samples, std::uint64_t include,
                                       std::size_t class_target, BernoulliBits& coin,
                                       LearnerStats& stats) {
  std::vector<VertexSet> subsets(samples);
  for (auto& subset : subsets) {
    for (std::size_t base = 0; base < side.size(); base += 64) {
      for (std::uint64_t bits = coin.lanes(include); bits != 0; bits &= bits - 1) {
        const std::size_t at = base + static_cast<std::size_t>(__builtin_ctzll(bits));
        if (at < side.size()) subset.push_back(side[at]);
      }
    }
  }
  std::vector<VertexSet> classes;
  for (const auto& subset : subsets) {
    if (subset.empty()) continue;
    auto coloring = greedy_color(subset, known).classes;
    ++stats.colorings;
    stats.max_classes = std::max(stats.max_classes, coloring.size());
    if (coloring.size() > class_target) ++stats.class_overruns;
    for (auto& c : coloring) classes.push_back(std::move(c));
  }
  return classes;
}

VertexSet merge_sets(const VertexSet& x, const VertexSet& y) {
  VertexSet out;
  out.reserve(x.size() + y.size());
  std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::size_t signature_test_count(std::size_t d, std::size_t n, double const_scale) {
  return scaled_count(60.0, std::max<std::size_t>(d, 1), n, const_scale);
}

std::size_t cover_sample_count(std::size_t d, std::size_t n, double const_scale) {
  return scaled_count(75.0, std::max<std::size_t>(d, 1), n, const_scale);
}

std::size_t color_class_target(std::size_t n) {
  const double ln_n = n > 1 ? std::log(static_cast<double>(n)) : 0.0;
  return static_cast<std::size_t>(std::ceil(ln_n)) + 1;
}

bool SignatureMatrix::contained(std::size_t b_row, std::size_t a_row) const {
  const std::uint64_t* b = chi_b.data() + b_row * words;
  const std::uint64_t* a = chi_a.data() + a_row * words;
  for (std::size_t w = 0; w < words; ++w) {
    if (b[w] & ~a[w]) return false;
  }
  return true;
}

LearnerStats& LearnerStats::operator+=(const LearnerStats& other) {
  class_pairs += other.class_pairs;
  active_pairs += other.active_pairs;
  signature_tests += other.signature_tests;
  colorings += other.colorings;
  class_overruns += other.class_overruns;
  max_classes = std::max(max_classes, other.max_classes);
  return *this;
}

std::pair<VertexSet, VertexSet> find_nonisolated(std::span<const Vertex> a,
                                                 std::span<const Vertex> b, OrOracle& oracle,
                                                 const CostModel& model) {
  IdealQuantumCgt cgt(oracle, model);
  auto a_active = cgt.solve(a, b);
  auto b_active = cgt.solve(b, a);
  return {std::move(a_active), std::move(b_active)};
}

BipartiteResult learn_bipartite_crossings(std::span<const Vertex> a, std::span<const Vertex> b,
                                          std::size_t d, OrOracle& oracle,
                                          const LearnerParams& params, Rng& rng) {
  BipartiteResult result;
  std::tie(result.a_active, result.b_active) = find_nonisolated(a, b, oracle, params.model);
  if (result.a_active.empty() || result.b_active.empty()) return result;
  IdealQuantumCgt cgt(oracle, params.model);
  LearnerStats unused;
  infer_from_signatures(result.a_active, result.b_active, std::max<std::size_t>(d, 1),
                        oracle.vertex_count(), cgt, params, rng, result.signatures, true, unused,
                        [&](std::size_t ra, std::size_t rb) {
                          result.edges.push_back(
                              Edge::make(result.a_active[ra], result.b_active[rb]));
                        });
  result.signatures.a_side = result.a_active;
  result.signatures.b_side = result.b_active;
  normalize(result.edges);
  return result;
}

BipartiteResult learn_bipartite_crossings(std::span<const Vertex> a, std::span<const Vertex> b,
                                          std::size_t d, OrOracle& oracle,
                                          const LearnerParams& params, std::uint64_t seed) {
  Rng rng(seed);
  return learn_bipartite_crossings(a, b, d, oracle, params, rng);
}

GeneralResult learn_crossings_general(const KnownEdges& known_a, const KnownEdges& known_b,
                                      std::size_t d, OrOracle& oracle,
                                      const LearnerParams& params, Rng& rng) {
  d = std::max<std::size_t>(d, 1);
  const std::size_t n = oracle.vertex_count();
  const std::size_t samples = cover_sample_count(d, n, params.const_scale);
  const auto include = BernoulliBits::threshold(1.0 / (2.0 * static_cast<double>(d)));
  const std::size_t class_target = color_class_target(n);

  GeneralResult result;
  BernoulliBits coin(rng);
  const auto a_classes = sampled_classes(known_a.scope, known_a.edges, samples, include,
                                         class_target, coin, result.stats);
  const auto b_classes = sampled_classes(known_b.scope, known_b.edges, samples, include,
                                         class_target, coin, result.stats);
  result.stats.class_pairs += static_cast<std::uint64_t>(a_classes.size()) * b_classes.size();

  IdealQuantumCgt cgt(oracle, params.model);
  SignatureMatrix sig;
  // Each crossing edge is found by many class pairs; keep one copy per A-side vertex.
  std::vector<VertexSet> partners(n);
  auto infer = [&](const VertexSet& a_active, const VertexSet& b_active) {
    ++result.stats.active_pairs;
    infer_from_signatures(a_active, b_active, d, n, cgt, params, rng, sig, false, result.stats,
                          [&](std::size_t ra, std::size_t rb) {
                            auto& found = partners[a_active[ra]];
                            const Vertex b = b_active[rb];
                            if (std::find(found.begin(), found.end(), b) == found.end()) {
                              found.push_back(b);
                            }
                          });
  };

  if (params.batched_cgt) {
    cgt.solve_pairs(a_classes, b_classes, [&](const IdealQuantumCgt::PairSupport& pair) {
      infer(pair.a_active, pair.b_active);
    });
  } else {
    for (const auto& x : a_classes) {
      for (const auto& y : b_classes) {
        auto [a_active, b_active] = find_nonisolated(x, y, oracle, params.model);
        if (!a_active.empty() && !b_active.empty()) infer(a_active, b_active);
      }
    }
  }
  for (Vertex a : known_a.scope) {
    for (Vertex b : partners[a]) result.edges.push_back(Edge::make(a, b));
  }
  normalize(result.edges);
  return result;
}

GeneralResult learn_crossings_general(const KnownEdges& known_a, const KnownEdges& known_b,
                                      std::size_t d, OrOracle& oracle,
                                      const LearnerParams& params, std::uint64_t seed) {
  Rng rng(seed);
  return learn_crossings_general(known_a, known_b, d, oracle, params, rng);
}

LevelSchedule make_level_schedule(std::size_t initial_parts, std::size_t m, std::size_t n) {
  LevelSchedule schedule;
  schedule.initial_parts = initial_parts;
  const double ln_n = n > 1 ? std::log(static_cast<double>(n)) : 0.0;
  std::size_t parts = initial_parts;
  for (std::size_t i = 1; parts > 1; ++i) {
    const double p = 1.0 / static_cast<double>(parts);
    schedule.rounds.push_back({i, parts, p, 2.0 * static_cast<double>(m) * p * p * ln_n});
    parts = (parts + 1) / 2;
  }
  return schedule;
}

std::size_t isqrt(std::size_t x) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

namespace {

FindEdgesResult divide_and_conquer(OrOracle& oracle, std::size_t m, std::size_t d,
                                   std::size_t initial_parts, const LearnerParams& params,
                                   std::uint64_t seed) {
  FindEdgesResult result;
  const std::size_t n = oracle.vertex_count();
  VertexSet all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  Rng rng(seed);

  if (initial_parts <= 1) {
    const auto before = oracle.snapshot();
    result.edges = learn_all_edges_classical(all, oracle);
    result.phases.push_back({"classical", oracle.snapshot() - before});
    result.schedule = make_level_schedule(initial_parts, m, n);
  } else {
    auto before = oracle.snapshot();
    auto parts = random_equitable_partition(all, initial_parts, rng).parts;
    std::vector<EdgeList> known;
    known.reserve(parts.size());
    for (const auto& part : parts) known.push_back(learn_all_edges_classical(part, oracle));
    result.phases.push_back({"within_parts", oracle.snapshot() - before});
    result.levels.push_back(parts);
    result.schedule = make_level_schedule(initial_parts, m, n);

    for (const auto& round : result.schedule.rounds) {
      before = oracle.snapshot();
      std::vector<VertexSet> next_parts;
      std::vector<EdgeList> next_known;
      for (std::size_t j = 0; j + 1 < parts.size(); j += 2) {
        const std::uint64_t pair_seed = rng();
        KnownEdges left{known[j], parts[j]};
        KnownEdges right{known[j + 1], parts[j + 1]};
        auto crossing = learn_crossings_general(left, right, d, oracle, params, pair_seed);
        result.stats += crossing.stats;
        EdgeList merged = std::move(left.edges);
        merged.insert(merged.end(), right.edges.begin(), right.edges.end());
        merged.insert(merged.end(), crossing.edges.begin(), crossing.edges.end());
        normalize(merged);
        next_parts.push_back(merge_sets(parts[j], parts[j + 1]));
        next_known.push_back(std::move(merged));
      }
      if (parts.size() % 2 == 1) {
        next_parts.push_back(std::move(parts.back()));
        next_known.push_back(std::move(known.back()));
      }
      parts = std::move(next_parts);
      known = std::move(next_known);
      result.phases.push_back({"round_" + std::to_string(round.index), oracle.snapshot() - before});
      result.levels.push_back(parts);
    }
    result.edges = std::move(known.front());
  }
  result.edge_count_mismatch = result.edges.size() != m;
  return result;
}

}  // namespace

FindEdgesResult find_edges(OrOracle& oracle, std::size_t m, std::size_t d,
                           const LearnerParams& params, std::uint64_t seed) {
  return divide_and_conquer(oracle, m, d, isqrt(m / (d + 1)), params, seed);
}

FindEdgesResult learn_matching(OrOracle& oracle, std::size_t m, const LearnerParams& params,
                               std::uint64_t seed) {
  return divide_and_conquer(oracle, m, 1, isqrt(m), params, seed);
}

}  // namespace edgelearn
