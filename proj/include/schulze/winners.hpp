#pragma once

// Schulze winners from a comparison graph in near-quadratic time by deleting
// edges in increasing weight order under a decremental SCC structure:
//
//  * find_winner: one winner. A tracked vertex x moves to the head of the
//    deleted edge whenever that deletion splits the SCC containing both
//    endpoints and x. The winners of x's SCC are always winners of the graph.
//  * find_all_winners: all winners. Edges are deleted one weight level at a
//    time while a set of candidate SCCs is kept; a candidate SCC that splits is
//    replaced by those fragments whose in-degree is 0 after the level. Once all
//    edges are gone, the surviving singletons are exactly the winners.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "schulze/ballots.hpp"
#include "schulze/bottleneck.hpp"
#include "schulze/dscc.hpp"
#include "schulze/majority_graph.hpp"

namespace schulze {

struct WeightedEdge {
  std::int64_t weight;
  std::uint32_t from;
  std::uint32_t to;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// All m(m-1) edges sorted by (weight, source, target).
inline std::vector<WeightedEdge> sorted_edges(const ComparisonGraph& graph) {
  const std::size_t m = graph.size();
  std::vector<WeightedEdge> edges;
  edges.reserve(m * (m > 0 ? m - 1 : 0));
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (u != v) edges.push_back({graph(u, v), static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
    }
  }
  if (edges.empty()) return edges;
  const auto [lo, hi] = std::minmax_element(edges.begin(), edges.end(),
                                            [](const WeightedEdge& x, const WeightedEdge& y) { return x.weight < y.weight; });
  const std::uint64_t spread = static_cast<std::uint64_t>(hi->weight) - static_cast<std::uint64_t>(lo->weight);
  if (spread >= 4 * edges.size()) {
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
      return std::tie(x.weight, x.from, x.to) < std::tie(y.weight, y.from, y.to);
    });
    return edges;
  }
  // Stable counting sort on weight; edges are already in (source, target) order.
  const std::int64_t base = lo->weight;
  const std::size_t range = static_cast<std::size_t>(spread) + 1;
  std::vector<std::size_t> start(range + 1, 0);
  for (const auto& e : edges) ++start[static_cast<std::size_t>(e.weight - base) + 1];
  for (std::size_t k = 1; k <= range; ++k) start[k] += start[k - 1];
  std::vector<WeightedEdge> sorted(edges.size());
  for (const auto& e : edges) sorted[start[static_cast<std::size_t>(e.weight - base)]++] = e;
  return sorted;
}

/// Subgraph induced by `vertices`, keeping their names.
inline ComparisonGraph induced_subgraph(const ComparisonGraph& graph, std::span<const Candidate> vertices) {
  IntMatrix w(vertices.size(), vertices.size());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    names.push_back(graph.candidates()[vertices[i]]);
    for (std::size_t j = 0; j < vertices.size(); ++j) w(i, j) = graph(vertices[i], vertices[j]);
  }
  return ComparisonGraph(std::move(names), std::move(w));
}

/// Reference winner set: all-pairs widths, then the definition.
inline std::vector<Candidate> baseline_winners(const ComparisonGraph& graph) {
  return winners_from_bottlenecks(apbp(graph));
}

// ---------------------------------------------------------------------------
// Tracing

/// One deletion of the single-winner scan.
struct WinnerStep {
  WeightedEdge edge;
  bool flag;       // both endpoints were in x's SCC before the deletion
  bool split;      // endpoints ended up in different SCCs
  Candidate x;     // tracked vertex after the step
};

/// One weight level of the all-winners scan, as mutations of the candidate SCC set.
struct WinnerLevel {
  std::int64_t weight;
  std::vector<SccId> removed;   // candidate SCCs that split
  std::vector<SccId> added;     // their fragments
  std::vector<SccId> dropped;   // fragments discarded for positive in-degree
};

struct WinnerTrace {
  std::vector<WeightedEdge> edges;
  std::vector<WinnerStep> steps;
  std::vector<WinnerLevel> levels;
  std::vector<SccId> final_scc_of;  // SCC id of every vertex after the last deletion
};

/// Replays the recorded single-winner steps.
inline Candidate replay_winner(const WinnerTrace& trace) {
  Candidate x = 0;
  for (const auto& step : trace.steps) {
    if (step.flag && step.split) x = step.edge.to;
  }
  return x;
}

/// Replays the recorded candidate-set mutations.
inline std::vector<Candidate> replay_all_winners(const WinnerTrace& trace) {
  std::vector<char> in_set(trace.final_scc_of.size() + 1, 0);
  if (!in_set.empty()) in_set[0] = 1;
  for (const auto& level : trace.levels) {
    for (auto id : level.removed) in_set.at(id) = 0;
    for (auto id : level.added) in_set.at(id) = 1;
    for (auto id : level.dropped) in_set.at(id) = 0;
  }
  std::vector<Candidate> out;
  for (std::size_t v = 0; v < trace.final_scc_of.size(); ++v) {
    if (in_set[trace.final_scc_of[v]]) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------

enum class SccEngine {
  batch,     // one repair pass per distinct weight
  per_edge,  // one delete_edge call per edge
};

struct WinnerOptions {
  SccEngine engine = SccEngine::batch;
  /// Brute-force the loop invariants after every step (small graphs only).
  bool check_invariants = false;
  WinnerTrace* trace = nullptr;
};

namespace detail {

inline bool is_subset(const std::vector<Candidate>& small, const std::vector<Candidate>& large) {
  return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

/// Winners of G[vertices], mapped back to vertex indices of G.
inline std::vector<Candidate> induced_winners(const ComparisonGraph& graph, std::span<const Candidate> vertices) {
  std::vector<Candidate> out;
  for (auto local : baseline_winners(induced_subgraph(graph, vertices))) out.push_back(vertices[local]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// One Schulze winner.
inline Candidate find_winner(const ComparisonGraph& graph, const WinnerOptions& options = {}) {
  const std::size_t m = graph.size();
  if (m == 0) throw std::invalid_argument("find_winner: empty graph");
  const auto edges = sorted_edges(graph);
  DecrementalScc scc(m);
  std::vector<Candidate> reference;
  if (options.check_invariants) reference = baseline_winners(graph);
  if (options.trace) {
    options.trace->edges = edges;
    options.trace->steps.clear();
  }

  Candidate x = 0;
  for (const auto& e : edges) {
    const bool flag = scc.same_scc(e.from, x) && scc.same_scc(e.to, x);
    scc.delete_edge(e.from, e.to);
    const bool split = !scc.same_scc(e.from, e.to);
    if (split && flag) x = e.to;
    if (options.trace) options.trace->steps.push_back({e, flag, split, x});
    if (options.check_invariants) {
      const auto local = detail::induced_winners(graph, scc.members(scc.scc_id(x)));
      if (!detail::is_subset(local, reference)) {
        throw std::logic_error("invariant violated: a winner of x's SCC is not a winner of the graph");
      }
    }
  }
  if (options.trace) {
    options.trace->final_scc_of.resize(m);
    for (std::size_t v = 0; v < m; ++v) options.trace->final_scc_of[v] = scc.scc_id(v);
  }
  return x;
}

/// The full Schulze winner set, in candidate order.
inline std::vector<Candidate> find_all_winners(const ComparisonGraph& graph, const WinnerOptions& options = {}) {
  const std::size_t m = graph.size();
  if (m == 0) throw std::invalid_argument("find_all_winners: empty graph");
  const auto edges = sorted_edges(graph);
  DecrementalScc scc(m);
  std::vector<char> candidate(m, 0);  // indexed by SCC id; ids never exceed m
  candidate[scc.scc_id(0)] = 1;

  std::vector<Candidate> reference;
  if (options.check_invariants) reference = baseline_winners(graph);
  if (options.trace) {
    options.trace->edges = edges;
    options.trace->levels.clear();
  }

  std::vector<Edge> level_edges;
  std::vector<SccId> fresh;  // fragments added during the current level
  for (std::size_t lo = 0; lo < edges.size();) {
    std::size_t hi = lo;
    while (hi < edges.size() && edges[hi].weight == edges[lo].weight) ++hi;
    WinnerLevel record{edges[lo].weight, {}, {}, {}};
    fresh.clear();

    auto replace = [&](SccId old_id, std::span<const SccId> created) {
      // The retained fragment still carries `old_id`; it re-enters the set with the others.
      record.removed.push_back(old_id);
      record.added.push_back(old_id);
      fresh.push_back(old_id);
      for (auto id : created) {
        candidate[id] = 1;
        record.added.push_back(id);
        fresh.push_back(id);
      }
    };

    if (options.engine == SccEngine::per_edge) {
      for (std::size_t k = lo; k < hi; ++k) {
        const auto& e = edges[k];
        const SccId before = scc.scc_id(e.from);
        const bool flag = scc.same_scc(e.from, e.to);
        const auto created = scc.delete_edge(e.from, e.to);
        if (!scc.same_scc(e.from, e.to) && flag && candidate[before]) replace(before, created);
      }
    } else {
      level_edges.clear();
      for (std::size_t k = lo; k < hi; ++k) level_edges.push_back({edges[k].from, edges[k].to});
      for (const auto& split : scc.delete_edges(level_edges)) {
        if (candidate[split.old_id]) replace(split.old_id, split.created);
      }
    }

    for (auto id : fresh) {
      if (candidate[id] && scc.in_degree(id) > 0) {
        candidate[id] = 0;
        record.dropped.push_back(id);
      }
    }

    if (options.check_invariants) {
      std::vector<Candidate> united;
      for (auto id : scc.scc_ids()) {
        if (!candidate[id]) continue;
        const auto local = detail::induced_winners(graph, scc.members(id));
        united.insert(united.end(), local.begin(), local.end());
      }
      std::sort(united.begin(), united.end());
      if (united != reference) {
        throw std::logic_error("invariant violated: candidate SCC winners differ from the graph's winners");
      }
    }
    if (options.trace) options.trace->levels.push_back(std::move(record));
    lo = hi;
  }

  std::vector<Candidate> winners;
  for (std::size_t v = 0; v < m; ++v) {
    if (candidate[scc.scc_id(v)]) winners.push_back(v);
  }
  if (options.trace) {
    options.trace->final_scc_of.resize(m);
    for (std::size_t v = 0; v < m; ++v) options.trace->final_scc_of[v] = scc.scc_id(v);
  }
  if (winners.empty()) throw std::logic_error("empty Schulze winner set");
  return winners;
}

/// Smallest non-empty set whose members all strictly beat every outsider
/// (u beats v when w(u, v) > w(v, u)). These are the candidates that reach every
/// other candidate along "not beaten by" steps. O(m^3).
inline std::vector<Candidate> smith_set(const ComparisonGraph& graph) {
  const std::size_t m = graph.size();
  std::vector<char> reach(m * m, 0);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) reach[u * m + v] = (u == v) || !(graph(v, u) > graph(u, v));
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!reach[i * m + k]) continue;
      for (std::size_t j = 0; j < m; ++j) reach[i * m + j] |= reach[k * m + j];
    }
  }
  std::vector<Candidate> out;
  for (std::size_t u = 0; u < m; ++u) {
    bool all = true;
    for (std::size_t v = 0; v < m && all; ++v) all = reach[u * m + v];
    if (all) out.push_back(u);
  }
  return out;
}

}  // namespace schulze
