#include "edgelearn/cgt.h"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "edgelearn/errors.h"

namespace edgelearn {

std::uint64_t cost(const CostModel& model, std::uint64_t k) {
  const double kk = static_cast<double>(k);
  double raw = 0.0;
  switch (model.kind) {
    case CostKind::belovs:
      raw = std::sqrt(kk);
      break;
    case CostKind::ambainis_montanaro:
      raw = kk * std::log2(kk + 2.0);
      break;
    case CostKind::montanaro_shao:
      raw = std::sqrt(kk) * std::log2(kk + 2.0) * std::log2(std::log2(kk + 4.0));
      break;
  }
  const double charged = std::ceil(model.scale * raw);
  return charged < 1.0 ? 1 : static_cast<std::uint64_t>(charged);
}

std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::belovs:
      return "belovs";
    case CostKind::ambainis_montanaro:
      return "ambainis_montanaro";
    case CostKind::montanaro_shao:
      return "montanaro_shao";
  }
  return "unknown";
}

CostKind parse_cost_kind(std::string_view name) {
  for (auto kind : {CostKind::belovs, CostKind::ambainis_montanaro, CostKind::montanaro_shao}) {
    if (name == to_string(kind)) return kind;
  }
  throw InvalidConfig("unknown cost model '" + std::string(name) +
                      "' (belovs|ambainis_montanaro|montanaro_shao)");
}

double parse_positive_rational(std::string_view text) {
  auto number = [&](std::string_view part) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw InvalidConfig("not a number: '" + std::string(text) + "'");
    }
    return value;
  };
  double value = 0.0;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const double den = number(text.substr(slash + 1));
    if (den == 0.0) throw InvalidConfig("zero denominator: '" + std::string(text) + "'");
    value = number(text.substr(0, slash)) / den;
  } else {
    value = number(text);
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidConfig("expected a positive rational, got '" + std::string(text) + "'");
  }
  return value;
}

namespace {

void branch(std::span<const Vertex> positive, std::span<const Vertex> context, OrOracle& oracle,
            VertexSet& out) {
  if (positive.size() == 1) {
    out.push_back(positive.front());
    return;
  }
  const std::size_t half = (positive.size() + 1) / 2;
  auto left = positive.first(half);
  auto right = positive.subspan(half);
  if (oracle.or_query(left, context)) {
    branch(left, context, oracle, out);
    if (oracle.or_query(right, context)) branch(right, context, oracle, out);
  } else {
    branch(right, context, oracle, out);
  }
}

}  // namespace

VertexSet find_defectives(std::span<const Vertex> ground, std::span<const Vertex> context,
                          OrOracle& oracle, bool root_known_positive) {
  VertexSet out;
  if (!root_known_positive && !oracle.or_query(ground, context)) return out;
  if (ground.empty()) return out;
  branch(ground, context, oracle, out);
  normalize(out);
  return out;
}

VertexSet cgt_classical(const CgtInstance& instance, OrOracle& oracle) {
  return find_defectives(instance.ground, instance.context, oracle, false);
}

std::uint64_t IdealQuantumCgt::charge_slow(std::uint64_t k) {
  constexpr std::uint64_t kCacheLimit = 4096;
  if (k >= kCacheLimit) return cost(model_, k);
  while (cost_cache_.size() <= k) cost_cache_.push_back(cost(model_, cost_cache_.size()));
  return cost_cache_[k];
}

VertexSet IdealQuantumCgt::solve(std::span<const Vertex> ground, std::span<const Vertex> context) {
  auto support = oracle_.ground_truth_support(ground, context);
  oracle_.charge_quantum(charge_for(support.size()));
  return support;
}

void IdealQuantumCgt::solve_tests(std::span<const Vertex> ground, std::span<const Vertex> context,
                                  std::span<const std::uint64_t> context_rows, std::size_t tests,
                                  std::size_t words, std::span<std::uint64_t> ground_rows) {
  if (context_rows.size() != context.size() * words || ground_rows.size() != ground.size() * words ||
      tests > words * 64) {
    throw std::invalid_argument("solve_tests: row shapes do not match");
  }
  const std::size_t n = oracle_.vertex_count();
  if (context_row_.size() != n) {
    context_row_.assign(n, 0);
    context_stamp_.assign(n, 0);
  }
  if (++stamp_ == 0) {
    std::fill(context_stamp_.begin(), context_stamp_.end(), 0);
    stamp_ = 1;
  }
  for (std::size_t r = 0; r < context.size(); ++r) {
    if (context[r] >= n) throw std::out_of_range("vertex " + std::to_string(context[r]) + " out of range");
    context_row_[context[r]] = static_cast<std::uint32_t>(r);
    context_stamp_[context[r]] = stamp_;
  }
  std::fill(ground_rows.begin(), ground_rows.end(), 0);
  // a ∈ N(T_i) iff some neighbor of a in the context carries bit i.
  for (std::size_t g = 0; g < ground.size(); ++g) {
    if (ground[g] >= n) throw std::out_of_range("vertex " + std::to_string(ground[g]) + " out of range");
    if (context_stamp_[ground[g]] == stamp_) {
      throw std::invalid_argument("support query: target and probe share vertex " +
                                  std::to_string(ground[g]));
    }
    std::uint64_t* row = ground_rows.data() + g * words;
    for (Vertex b : oracle_.hidden_neighbors(ground[g])) {
      if (context_stamp_[b] != stamp_) continue;
      const std::uint64_t* src = context_rows.data() + std::size_t{context_row_[b]} * words;
      for (std::size_t w = 0; w < words; ++w) row[w] |= src[w];
    }
  }

  // Per-word column counts as bit-sliced binary counters: plane j holds bit j of every
  // column's count. Columns are then grouped by count value, one popcount per group.
  std::array<std::uint64_t, 64> planes{};
  const std::size_t width = static_cast<std::size_t>(std::bit_width(ground.size()));
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::fill(planes.begin(), planes.begin() + width, 0);
    for (std::size_t g = 0; g < ground.size(); ++g) {
      std::uint64_t carry = ground_rows[g * words + w];
      for (std::size_t j = 0; carry != 0; ++j) {
        const std::uint64_t next = planes[j] & carry;
        planes[j] ^= carry;
        carry = next;
      }
    }
    const std::size_t live = std::min<std::size_t>(64, tests - w * 64);
    const std::uint64_t mask = live == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << live) - 1;
    total += charge_columns(planes.data(), width, mask, 0);
  }
  oracle_.charge_quantum(total);
}

std::uint64_t IdealQuantumCgt::charge_columns(const std::uint64_t* planes, std::size_t level,
                                              std::uint64_t mask, std::uint64_t prefix) {
  if (mask == 0) return 0;
  if (level == 0) return static_cast<std::uint64_t>(std::popcount(mask)) * charge_for(prefix);
  const std::uint64_t high = planes[level - 1];
  return charge_columns(planes, level - 1, mask & high, prefix | (std::uint64_t{1} << (level - 1))) +
         charge_columns(planes, level - 1, mask & ~high, prefix);
}

void IdealQuantumCgt::solve_pairs(const std::vector<VertexSet>& a_sets,
                                  const std::vector<VertexSet>& b_sets,
                                  const std::function<void(const PairSupport&)>& visit) {
  constexpr std::uint32_t kAbsent = UINT32_MAX;
  const std::size_t n = oracle_.vertex_count();

  // b-vertex -> ascending list of b_sets containing it (CSR over local ids).
  std::vector<std::uint32_t> local(n, kAbsent);
  std::vector<std::uint32_t> count;
  for (const auto& set : b_sets) {
    for (Vertex b : set) {
      if (b >= n) throw std::out_of_range("vertex " + std::to_string(b) + " out of range");
      if (local[b] == kAbsent) {
        local[b] = static_cast<std::uint32_t>(count.size());
        count.push_back(0);
      }
      ++count[local[b]];
    }
  }
  std::vector<std::size_t> offset(count.size() + 1, 0);
  for (std::size_t i = 0; i < count.size(); ++i) offset[i + 1] = offset[i] + count[i];
  std::vector<std::uint32_t> member_of(offset.back());
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t y = 0; y < b_sets.size(); ++y) {
      for (Vertex b : b_sets[y]) member_of[fill[local[b]]++] = static_cast<std::uint32_t>(y);
    }
  }

  struct Bucket {
    VertexSet a;
    VertexSet b;
  };
  std::vector<std::uint32_t> slot(b_sets.size(), kAbsent);
  std::vector<std::uint32_t> touched;
  std::vector<Bucket> buckets;
  PairSupport pair;
  std::uint64_t nonempty = 0;
  const std::uint64_t empty_pair_charge = 2 * charge_for(0);

  for (std::size_t x = 0; x < a_sets.size(); ++x) {
    for (Vertex a : a_sets[x]) {
      if (a >= n) throw std::out_of_range("vertex " + std::to_string(a) + " out of range");
      if (local[a] != kAbsent) {
        throw std::invalid_argument("support query: vertex " + std::to_string(a) +
                                    " lies on both sides");
      }
      for (Vertex b : oracle_.hidden_neighbors(a)) {
        if (local[b] == kAbsent) continue;
        for (std::size_t k = offset[local[b]]; k < offset[local[b] + 1]; ++k) {
          const auto y = member_of[k];
          if (slot[y] == kAbsent) {
            slot[y] = static_cast<std::uint32_t>(touched.size());
            touched.push_back(y);
            if (buckets.size() < touched.size()) buckets.emplace_back();
          }
          auto& bucket = buckets[slot[y]];
          if (bucket.a.empty() || bucket.a.back() != a) bucket.a.push_back(a);
          bucket.b.push_back(b);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto y : touched) {
      auto& bucket = buckets[slot[y]];
      normalize(bucket.a);
      normalize(bucket.b);
      pair.a_index = x;
      pair.b_index = y;
      pair.a_active.assign(bucket.a.begin(), bucket.a.end());
      pair.b_active.assign(bucket.b.begin(), bucket.b.end());
      bucket.a.clear();
      bucket.b.clear();
      slot[y] = kAbsent;
      oracle_.charge_quantum(charge_for(pair.a_active.size()) + charge_for(pair.b_active.size()));
      ++nonempty;
      visit(pair);
    }
    touched.clear();
  }
  const std::uint64_t pairs = static_cast<std::uint64_t>(a_sets.size()) * b_sets.size();
  oracle_.charge_quantum((pairs - nonempty) * empty_pair_charge);
}

VertexSet cgt_quantum(const CgtInstance& instance, OrOracle& oracle, const CostModel& model) {
  return IdealQuantumCgt(oracle, model).solve(instance.ground, instance.context);
}

}  // namespace edgelearn
