#include "edgelearn/oracle.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "edgelearn/errors.h"

namespace edgelearn {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t set_digest(std::span<const Vertex> s) {
  std::uint64_t h = 0;
  for (Vertex v : s) h += mix(v);
  return h;
}

OrOracle::OrOracle(Graph hidden, OracleOptions options)
    : hidden_(std::move(hidden)), options_(options), stamp_(hidden_.vertex_count(), 0) {}

void OrOracle::over_budget() const {
  throw BudgetExceeded("quantum charge " + std::to_string(counters_.quantum) + " exceeds budget " +
                       std::to_string(options_.quantum_budget));
}

std::uint32_t OrOracle::next_epoch() {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  return epoch_;
}

void OrOracle::check_range(std::span<const Vertex> s) const {
  for (Vertex v : s) {
    if (v >= hidden_.vertex_count()) {
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range for n=" +
                              std::to_string(hidden_.vertex_count()));
    }
  }
}

bool OrOracle::or_query(std::span<const Vertex> s) { return or_query(s, {}); }

bool OrOracle::or_query(std::span<const Vertex> first, std::span<const Vertex> second) {
  check_range(first);
  check_range(second);
  const auto epoch = next_epoch();
  bool answer = false;
  for (auto part : {first, second}) {
    for (Vertex v : part) {
      if (answer) break;
      stamp_[v] = epoch;
      for (Vertex w : hidden_.neighbors(v)) {
        if (stamp_[w] == epoch) {
          answer = true;
          break;
        }
      }
    }
  }
  ++counters_.classical;
  if (options_.log_enabled) {
    QueryRecord rec;
    rec.seq = counters_.classical - 1;
    rec.digest = set_digest(first) + set_digest(second);
    rec.size = first.size() + second.size();
    rec.answer = answer;
    if (options_.full_sets) {
      rec.members.assign(first.begin(), first.end());
      rec.members.insert(rec.members.end(), second.begin(), second.end());
      std::sort(rec.members.begin(), rec.members.end());
    }
    log_.push_back(std::move(rec));
  }
  return answer;
}

VertexSet OrOracle::ground_truth_support(std::span<const Vertex> target,
                                         std::span<const Vertex> probe) {
  check_range(target);
  check_range(probe);
  const auto epoch = next_epoch();
  for (Vertex b : probe) stamp_[b] = epoch;
  VertexSet out;
  for (Vertex a : target) {
    if (stamp_[a] == epoch) {
      throw std::invalid_argument("support query: target and probe share vertex " +
                                  std::to_string(a));
    }
    for (Vertex w : hidden_.neighbors(a)) {
      if (stamp_[w] == epoch) {
        out.push_back(a);
        break;
      }
    }
  }
  normalize(out);
  return out;
}

void OrOracle::write_log(std::ostream& out) const {
  char digest[17];
  for (const auto& rec : log_) {
    std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(rec.digest));
    out << rec.seq << ' ' << digest << ' ' << rec.size << ' ' << (rec.answer ? 1 : 0) << '\n';
  }
}

}  // namespace edgelearn
