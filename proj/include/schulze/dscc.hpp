#pragma once

// Decremental strongly connected components.
//
// Maintains, under edge deletions only, the SCC partition of a digraph together
// with SCC ids, the SCC of every vertex and the in-degree of every SCC
// (live edges entering it from outside). A deletion inside an SCC first checks
// whether the tail can still reach the head; only when it cannot does the SCC
// get re-decomposed. After a split the fragment with the largest total live
// degree keeps the old id and every other fragment receives a fresh id, so ids
// are never retired and there are at most m of them.
//
// Adjacency is held as bitsets in both directions; searches advance a word at a
// time, so re-decomposing an SCC U costs O(|U| * m / 64).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schulze/bitset.hpp"

namespace schulze {

using SccId = std::uint32_t;

struct Edge {
  std::size_t from;
  std::size_t to;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Misuse of the decremental SCC interface (deleting a dead edge, querying an unknown id).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One SCC that split during a batch: `old_id` now names the retained fragment,
/// `created` the other fragments.
struct SccSplit {
  SccId old_id;
  std::vector<SccId> created;
};

class DecrementalScc {
 public:
  /// Complete digraph on m vertices: a single SCC with in-degree 0.
  explicit DecrementalScc(std::size_t m) : DecrementalScc(m, nullptr) {
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < m; ++v) {
        if (u != v) add_edge(u, v);
      }
    }
    initialise_components();
  }

  /// Arbitrary digraph on m vertices (self-loops and duplicates are ignored).
  DecrementalScc(std::size_t m, std::span<const Edge> edges) : DecrementalScc(m, nullptr) {
    for (const auto& e : edges) {
      if (e.from >= m || e.to >= m) throw std::out_of_range("edge endpoint out of range");
      if (e.from != e.to && !live(e.from, e.to)) add_edge(e.from, e.to);
    }
    initialise_components();
  }

  std::size_t size() const noexcept { return m_; }
  std::size_t scc_count() const noexcept { return next_id_; }

  bool live(std::size_t u, std::size_t v) const { return out_.test(u, v); }

  bool same_scc(std::size_t u, std::size_t v) const { return scc_of_.at(u) == scc_of_.at(v); }

  SccId scc_id(std::size_t v) const { return scc_of_.at(v); }

  /// Ids of all current SCCs, ascending.
  std::vector<SccId> scc_ids() const {
    std::vector<SccId> ids(next_id_);
    for (SccId id = 0; id < next_id_; ++id) ids[id] = id;
    return ids;
  }

  std::int64_t in_degree(SccId id) const {
    check_id(id);
    return in_degree_[id];
  }

  const std::vector<std::size_t>& members(SccId id) const {
    check_id(id);
    return members_[id];
  }

  /// Deletes the live edge (u, v). Returns the ids of the SCCs created by the
  /// deletion; the fragment that keeps the old id is not listed.
  std::vector<SccId> delete_edge(std::size_t u, std::size_t v) {
    remove_edge(u, v);
    const SccId su = scc_of_[u];
    const SccId sv = scc_of_[v];
    if (su != sv) {
      --in_degree_[sv];
      return {};
    }
    if (reaches_within(u, v, su)) return {};
    return split(su);
  }

  /// Deletes a batch of live edges, then repairs every SCC that lost an internal
  /// edge. Equivalent to deleting the edges one at a time; reports one entry per
  /// pre-batch SCC that split.
  std::vector<SccSplit> delete_edges(std::span<const Edge> edges) {
    std::vector<std::vector<Edge>> internal;
    std::vector<SccId> touched;
    for (const auto& e : edges) {
      remove_edge(e.from, e.to);
      const SccId su = scc_of_[e.from];
      const SccId sv = scc_of_[e.to];
      if (su != sv) {
        --in_degree_[sv];
        continue;
      }
      if (internal.size() <= su) internal.resize(su + 1);
      if (internal[su].empty()) touched.push_back(su);
      internal[su].push_back(e);
    }
    std::vector<SccSplit> splits;
    for (SccId id : touched) {
      const bool intact = std::all_of(internal[id].begin(), internal[id].end(),
                                      [&](const Edge& e) { return reaches_within(e.from, e.to, id); });
      if (intact) continue;
      auto created = split(id);
      if (!created.empty()) splits.push_back({id, std::move(created)});
    }
    return splits;
  }

 private:
  DecrementalScc(std::size_t m, std::nullptr_t)
      : m_(m),
        out_(m, m),
        in_(m, m),
        masks_(m, m),
        scc_of_(m, 0),
        members_(m),
        in_degree_(m, 0),
        degree_(m, 0),
        scratch_(words_for(m)),
        visited_(words_for(m)) {}

  void add_edge(std::size_t u, std::size_t v) {
    out_.set(u, v);
    in_.set(v, u);
    ++degree_[u];
    ++degree_[v];
  }

  void remove_edge(std::size_t u, std::size_t v) {
    if (u >= m_ || v >= m_ || u == v || !out_.test(u, v)) {
      throw ContractViolation("delete of non-live edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    out_.reset(u, v);
    in_.reset(v, u);
    --degree_[u];
    --degree_[v];
  }

  void check_id(SccId id) const {
    if (id >= next_id_) throw ContractViolation("unknown SCC id " + std::to_string(id));
  }

  void initialise_components() {
    std::vector<std::uint64_t> all(words_for(m_), 0);
    for (std::size_t v = 0; v < m_; ++v) all[v / kWordBits] |= std::uint64_t{1} << (v % kWordBits);
    auto components = components_within(all);
    next_id_ = 0;
    for (auto& comp : components) assign(next_id_++, std::move(comp));
    for (SccId id = 0; id < next_id_; ++id) recount_in_degree(id);
  }

  void assign(SccId id, std::vector<std::size_t> vertices) {
    auto mask = masks_.row(id);
    std::fill(mask.begin(), mask.end(), 0);
    for (auto v : vertices) {
      masks_.set(id, v);
      scc_of_[v] = id;
    }
    members_[id] = std::move(vertices);
  }

  void recount_in_degree(SccId id) {
    const auto mask = masks_.row(id);
    std::int64_t total = 0;
    for (auto y : members_[id]) {
      const auto from = in_.row(y);
      for (std::size_t w = 0; w < from.size(); ++w) total += std::popcount(from[w] & ~mask[w]);
    }
    in_degree_[id] = total;
  }

  /// Whether a reaches b using live edges inside SCC `id`. Breadth-first from a;
  /// a popped vertex x settles the query as soon as x -> b or x -> y -> b is live.
  bool reaches_within(std::size_t a, std::size_t b, SccId id) {
    if (out_.test(a, b)) return true;
    const auto mask = masks_.row(id);
    const auto into_b = in_.row(b);
    std::fill(visited_.begin(), visited_.end(), 0);
    visited_[a / kWordBits] |= std::uint64_t{1} << (a % kWordBits);
    queue_.clear();
    queue_.push_back(a);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const auto x = queue_[head];
      const auto succ = out_.row(x);
      if (first_common_bit(succ, into_b) != kNoBit) return true;
      for (std::size_t w = 0; w < succ.size(); ++w) {
        std::uint64_t fresh = succ[w] & mask[w] & ~visited_[w];
        visited_[w] |= fresh;
        while (fresh) {
          const auto y = w * kWordBits + static_cast<std::size_t>(std::countr_zero(fresh));
          if (y == b) return true;
          queue_.push_back(y);
          fresh &= fresh - 1;
        }
      }
    }
    return false;
  }

  /// SCCs of the live subgraph induced by `mask` (Kosaraju, bitset-driven DFS).
  std::vector<std::vector<std::size_t>> components_within(std::span<const std::uint64_t> mask) {
    std::vector<std::size_t> finish;
    std::copy(mask.begin(), mask.end(), scratch_.begin());
    for (std::size_t w = 0; w < mask.size(); ++w) {
      for (std::uint64_t bits = mask[w]; bits; bits &= bits - 1) {
        const auto s = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        if (!bit(scratch_, s)) continue;
        clear_bit(scratch_, s);
        stack_.assign(1, s);
        while (!stack_.empty()) {
          const auto x = stack_.back();
          const auto y = first_common_bit(out_.row(x), scratch_);
          if (y == kNoBit) {
            finish.push_back(x);
            stack_.pop_back();
          } else {
            clear_bit(scratch_, y);
            stack_.push_back(y);
          }
        }
      }
    }

    std::vector<std::vector<std::size_t>> components;
    std::copy(mask.begin(), mask.end(), scratch_.begin());
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
      if (!bit(scratch_, *it)) continue;
      clear_bit(scratch_, *it);
      std::vector<std::size_t> comp{*it};
      for (std::size_t head = 0; head < comp.size(); ++head) {
        const auto pred = in_.row(comp[head]);
        for (std::size_t w = 0; w < pred.size(); ++w) {
          std::uint64_t fresh = pred[w] & scratch_[w];
          scratch_[w] &= ~fresh;
          for (; fresh; fresh &= fresh - 1) {
            comp.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(fresh)));
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
    return components;
  }

  /// Re-decomposes SCC `id`; returns the ids of all fragments except the retained one.
  std::vector<SccId> split(SccId id) {
    std::vector<std::uint64_t> mask(masks_.row(id).begin(), masks_.row(id).end());
    auto components = components_within(mask);
    if (components.size() <= 1) return {};

    std::size_t keep = 0;
    std::int64_t best = -1;
    for (std::size_t c = 0; c < components.size(); ++c) {
      std::int64_t total = 0;
      for (auto v : components[c]) total += degree_[v];
      if (total > best) {
        best = total;
        keep = c;
      }
    }

    std::vector<SccId> created;
    for (std::size_t c = 0; c < components.size(); ++c) {
      if (c == keep) continue;
      const SccId fresh = next_id_++;
      assign(fresh, std::move(components[c]));
      created.push_back(fresh);
    }
    assign(id, std::move(components[keep]));
    recount_in_degree(id);
    for (SccId fresh : created) recount_in_degree(fresh);
    return created;
  }

  static bool bit(const std::vector<std::uint64_t>& bits, std::size_t i) {
    return (bits[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  static void clear_bit(std::vector<std::uint64_t>& bits, std::size_t i) {
    bits[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits));
  }

  std::size_t m_;
  BitRows out_;
  BitRows in_;
  BitRows masks_;  // row per SCC id
  std::vector<SccId> scc_of_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::int64_t> in_degree_;
  std::vector<std::int64_t> degree_;  // live in + out degree per vertex
  SccId next_id_ = 0;

  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint64_t> visited_;
  std::vector<std::size_t> queue_;
  std::vector<std::size_t> stack_;
};

}  // namespace schulze
