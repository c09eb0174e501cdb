#pragma once

// Widest (maximum bottleneck) paths on complete comparison graphs: the cubic
// all-pairs closure, dense single-source search, winner verification and the
// Schulze ranking derived from the all-pairs widths.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "schulze/ballots.hpp"
#include "schulze/majority_graph.hpp"
#include "schulze/matrix.hpp"

namespace schulze {

/// Width of the empty path from a vertex to itself. Never read by winner logic.
inline constexpr std::int64_t kUnboundedWidth = std::numeric_limits<std::int64_t>::max();
/// Width assigned to vertices not (yet) reached.
inline constexpr std::int64_t kNoPath = std::numeric_limits<std::int64_t>::min();

/// All-pairs widths B(u, v); the diagonal holds `kUnboundedWidth`.
class BottleneckMatrix {
 public:
  explicit BottleneckMatrix(IntMatrix widths) : widths_(std::move(widths)) {}

  std::size_t size() const noexcept { return widths_.rows(); }
  std::int64_t operator()(std::size_t u, std::size_t v) const noexcept { return widths_(u, v); }
  const IntMatrix& widths() const noexcept { return widths_; }

  friend bool operator==(const BottleneckMatrix&, const BottleneckMatrix&) = default;

 private:
  IntMatrix widths_;
};

/// Max-min closure over intermediate vertices (Floyd-Warshall order). O(m^3).
/// This is the reference baseline, not a sub-cubic algorithm.
inline BottleneckMatrix apbp(const ComparisonGraph& graph) {
  const std::size_t m = graph.size();
  IntMatrix b = graph.weights();
  for (std::size_t v = 0; v < m; ++v) b(v, v) = kUnboundedWidth;
  for (std::size_t k = 0; k < m; ++k) {
    const auto via = b.row(k);
    for (std::size_t i = 0; i < m; ++i) {
      const std::int64_t to_k = b(i, k);
      auto row = b.row(i);
      for (std::size_t j = 0; j < m; ++j) row[j] = std::max(row[j], std::min(to_k, via[j]));
    }
  }
  return BottleneckMatrix(std::move(b));
}

/// Single-source widest paths on a dense graph given by `weight(u, v)`.
/// Dijkstra with a linear-scan extract-max, O(m^2). The source gets `kUnboundedWidth`.
template <typename WeightFn>
std::vector<std::int64_t> widest_paths_from(std::size_t m, std::size_t source, WeightFn&& weight) {
  std::vector<std::int64_t> width(m, kNoPath);
  std::vector<char> done(m, 0);
  width[source] = kUnboundedWidth;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = m;
    for (std::size_t v = 0; v < m; ++v) {
      if (!done[v] && (best == m || width[v] > width[best])) best = v;
    }
    done[best] = 1;
    const std::int64_t through = width[best];
    for (std::size_t v = 0; v < m; ++v) {
      if (!done[v]) width[v] = std::max(width[v], std::min(through, static_cast<std::int64_t>(weight(best, v))));
    }
  }
  return width;
}

/// B(source, v) for every v; entry `source` is `kUnboundedWidth`.
inline std::vector<std::int64_t> ssbp(const ComparisonGraph& graph, Candidate source) {
  if (source >= graph.size()) throw std::out_of_range("ssbp: source out of range");
  return widest_paths_from(graph.size(), source, [&graph](std::size_t u, std::size_t v) { return graph(u, v); });
}

/// B(v, target) for every v, via widest paths from `target` in the reversed graph.
inline std::vector<std::int64_t> ssbp_to(const ComparisonGraph& graph, Candidate target) {
  if (target >= graph.size()) throw std::out_of_range("ssbp_to: target out of range");
  return widest_paths_from(graph.size(), target, [&graph](std::size_t u, std::size_t v) { return graph(v, u); });
}

/// Whether v is a Schulze winner: B(v, u) >= B(u, v) for all u. O(m^2).
inline bool verify_winner(const ComparisonGraph& graph, Candidate v) {
  const auto out = ssbp(graph, v);
  const auto in = ssbp_to(graph, v);
  for (std::size_t u = 0; u < graph.size(); ++u) {
    if (u != v && out[u] < in[u]) return false;
  }
  return true;
}

/// {u : B(u, v) >= B(v, u) for all v}, in candidate order.
inline std::vector<Candidate> winners_from_bottlenecks(const BottleneckMatrix& b) {
  std::vector<Candidate> winners;
  for (std::size_t u = 0; u < b.size(); ++u) {
    bool wins = true;
    for (std::size_t v = 0; v < b.size() && wins; ++v) wins = (u == v) || b(u, v) >= b(v, u);
    if (wins) winners.push_back(u);
  }
  if (winners.empty() && b.size() > 0) throw std::logic_error("empty Schulze winner set");
  return winners;
}

/// Weak order ranking the candidates by R = {(u, v) : B(u, v) > B(v, u)}.
///
/// Tie-classes are peeled off from the top: each class is the set of remaining
/// candidates that no remaining candidate beats, so the first class is the
/// winner set and every pair in R is ranked in R's direction. R is transitive
/// but "neither beats the other" need not be, so two candidates in different
/// classes may still be unrelated by R. Throws std::logic_error if R is not
/// transitive.
inline WeakOrder schulze_ranking(const BottleneckMatrix& b) {
  const std::size_t m = b.size();
  auto beats = [&b](std::size_t u, std::size_t v) { return u != v && b(u, v) > b(v, u); };

  std::vector<std::size_t> level(m, 0);
  std::vector<char> placed(m, 0);
  WeakOrder order;
  for (std::size_t remaining = m; remaining > 0;) {
    std::vector<Candidate> top;
    for (std::size_t u = 0; u < m; ++u) {
      if (placed[u]) continue;
      bool beaten = false;
      for (std::size_t v = 0; v < m && !beaten; ++v) beaten = !placed[v] && beats(v, u);
      if (!beaten) top.push_back(u);
    }
    if (top.empty()) throw std::logic_error("Schulze relation has a cycle");
    for (Candidate u : top) {
      placed[u] = 1;
      level[u] = order.groups.size();
    }
    remaining -= top.size();
    order.groups.push_back(std::move(top));
  }
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (beats(u, v) && level[u] >= level[v]) throw std::logic_error("Schulze relation is not transitive");
    }
  }
  return order;
}

}  // namespace schulze
