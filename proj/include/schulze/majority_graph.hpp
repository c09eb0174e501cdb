#pragma once

// Weighted majority graphs and the more general comparison graphs: complete
// digraphs over the candidates whose integer edge weights encode link strength.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "schulze/ballots.hpp"
#include "schulze/dominance.hpp"
#include "schulze/matrix.hpp"
#include "schulze/text.hpp"

namespace schulze {

/// Complete digraph over m named candidates with integer weights w(u, v), u != v.
class ComparisonGraph {
 public:
  ComparisonGraph() = default;
  ComparisonGraph(std::vector<std::string> candidates, IntMatrix weight)
      : candidates_(std::move(candidates)), weight_(std::move(weight)) {
    if (!weight_.square() || weight_.rows() != candidates_.size()) {
      throw std::invalid_argument("comparison graph: weight matrix must be m x m");
    }
    for (std::size_t v = 0; v < size(); ++v) weight_(v, v) = 0;
  }

  /// Graph with generated names c1..cm.
  explicit ComparisonGraph(IntMatrix weight)
      : ComparisonGraph(default_names(weight.rows()), std::move(weight)) {}

  std::size_t size() const noexcept { return candidates_.size(); }
  const std::vector<std::string>& candidates() const noexcept { return candidates_; }
  const IntMatrix& weights() const noexcept { return weight_; }
  std::int64_t operator()(std::size_t u, std::size_t v) const noexcept { return weight_(u, v); }

  std::optional<Candidate> index_of(std::string_view name) const {
    for (std::size_t c = 0; c < candidates_.size(); ++c) {
      if (candidates_[c] == name) return c;
    }
    return std::nullopt;
  }

  static std::vector<std::string> default_names(std::size_t m) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < m; ++c) names.push_back("c" + std::to_string(c + 1));
    return names;
  }

  friend bool operator==(const ComparisonGraph&, const ComparisonGraph&) = default;

 private:
  std::vector<std::string> candidates_;
  IntMatrix weight_;
};

/// w(u, v) = M(u, v) - M(v, u).
inline ComparisonGraph margins_from_tallies(std::vector<std::string> candidates, const IntMatrix& tallies) {
  const std::size_t m = tallies.rows();
  IntMatrix w(m, m);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (u != v) w(u, v) = tallies(u, v) - tallies(v, u);
    }
  }
  return ComparisonGraph(std::move(candidates), std::move(w));
}

inline ComparisonGraph build_wmg_naive(const PreferenceProfile& profile) {
  return margins_from_tallies(profile.candidates(), pairwise_tallies(profile));
}

/// Tallies through the Dominance Product of the rank matrices:
/// A(u, a) = 2 f(a, u) and B(a, v) = 2 f(a, v) - 1, so A(u, a) <= B(a, v) iff u is
/// ranked strictly above v by voter a. Doubling keeps the half-offset integral.
inline IntMatrix pairwise_tallies_dominance(const PreferenceProfile& profile,
                                            std::optional<std::size_t> block_size = std::nullopt) {
  const std::size_t m = profile.num_candidates();
  const std::size_t n = profile.num_voters();
  const IntMatrix ranks = rank_encode(profile);
  IntMatrix a(m, n);
  IntMatrix b(n, m);
  for (std::size_t voter = 0; voter < n; ++voter) {
    for (std::size_t c = 0; c < m; ++c) {
      a(c, voter) = 2 * ranks(voter, c);
      b(voter, c) = 2 * ranks(voter, c) - 1;
    }
  }
  const std::size_t s = block_size.value_or(default_bucket_size(m, n, m));
  return dominance_product_blocked(a, b, s);
}

inline ComparisonGraph build_wmg_fast(const PreferenceProfile& profile,
                                      std::optional<std::size_t> block_size = std::nullopt) {
  return margins_from_tallies(profile.candidates(), pairwise_tallies_dominance(profile, block_size));
}

// ---------------------------------------------------------------------------
// Strength of a link, generalizing the margin.

enum class Strength { margin, winning_votes, losing_votes, ratio };

inline Strength parse_strength(std::string_view name) {
  if (name == "margin") return Strength::margin;
  if (name == "winning-votes" || name == "winning_votes") return Strength::winning_votes;
  if (name == "losing-votes" || name == "losing_votes") return Strength::losing_votes;
  if (name == "ratio") return Strength::ratio;
  throw std::invalid_argument("unsupported strength '" + std::string(name) + "'");
}

inline std::string_view to_string(Strength s) {
  switch (s) {
    case Strength::margin: return "margin";
    case Strength::winning_votes: return "winning-votes";
    case Strength::losing_votes: return "losing-votes";
    case Strength::ratio: return "ratio";
  }
  return "?";
}

/// The pair (M(u, v), M(v, u)) describing one directed link.
struct Link {
  std::int64_t support = 0;
  std::int64_t opposition = 0;

  friend bool operator==(const Link&, const Link&) = default;
};

/// Three-way comparison of link strength under `s`: negative when x is weaker than y.
///
/// winning_votes: winning links beat tied links beat losing links; winning links
/// order by more support, then less opposition; losing links by less opposition,
/// then more support.
/// losing_votes: same classes; winning links order by less opposition, then more
/// support; losing links by more support, then less opposition.
/// ratio: support / opposition compared by cross-multiplication. (x, 0) with x > 0
/// is the unique strongest class; (0, 0) counts as ratio 0.
inline int compare_strength(Strength s, Link x, Link y) {
  auto three_way = [](auto lhs, auto rhs) { return lhs < rhs ? -1 : (rhs < lhs ? 1 : 0); };
  auto outcome = [](Link l) { return l.support > l.opposition ? 2 : (l.support == l.opposition ? 1 : 0); };
  switch (s) {
    case Strength::margin:
      return three_way(x.support - x.opposition, y.support - y.opposition);
    case Strength::winning_votes:
    case Strength::losing_votes: {
      const int cx = outcome(x);
      if (int c = three_way(cx, outcome(y)); c != 0) return c;
      if (cx == 1) return 0;
      const bool by_support = (cx == 2) == (s == Strength::winning_votes);
      if (by_support) {
        if (int c = three_way(x.support, y.support); c != 0) return c;
        return three_way(y.opposition, x.opposition);
      }
      if (int c = three_way(y.opposition, x.opposition); c != 0) return c;
      return three_way(x.support, y.support);
    }
    case Strength::ratio: {
      const bool inf_x = x.opposition == 0 && x.support > 0;
      const bool inf_y = y.opposition == 0 && y.support > 0;
      if (inf_x || inf_y) return three_way(inf_x, inf_y);
      const std::int64_t dx = x.opposition == 0 ? 1 : x.opposition;
      const std::int64_t dy = y.opposition == 0 ? 1 : y.opposition;
      return three_way(x.support * dy, y.support * dx);
    }
  }
  return 0;
}

/// Comparison graph whose weights are the dense ranks (starting at 1) of each
/// link's strength among the m(m-1) links present. Equal strengths share a weight.
inline ComparisonGraph comparison_graph_from_tallies(std::vector<std::string> candidates, const IntMatrix& tallies,
                                                     Strength strength) {
  const std::size_t m = tallies.rows();
  std::vector<Link> links;
  links.reserve(m * m);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (u != v) links.push_back({tallies(u, v), tallies(v, u)});
    }
  }
  auto by_value = [](Link x, Link y) {
    return x.support != y.support ? x.support < y.support : x.opposition < y.opposition;
  };
  std::sort(links.begin(), links.end(), by_value);
  links.erase(std::unique(links.begin(), links.end()), links.end());
  std::stable_sort(links.begin(), links.end(),
                   [strength](Link x, Link y) { return compare_strength(strength, x, y) < 0; });

  std::vector<std::int64_t> rank(links.size());
  for (std::size_t k = 0; k < links.size(); ++k) {
    rank[k] = (k == 0) ? 1 : rank[k - 1] + (compare_strength(strength, links[k - 1], links[k]) < 0 ? 1 : 0);
  }
  std::vector<std::pair<Link, std::int64_t>> lookup;
  for (std::size_t k = 0; k < links.size(); ++k) lookup.emplace_back(links[k], rank[k]);
  std::sort(lookup.begin(), lookup.end(), [&](const auto& x, const auto& y) { return by_value(x.first, y.first); });

  IntMatrix w(m, m);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (u == v) continue;
      const Link key{tallies(u, v), tallies(v, u)};
      auto it = std::lower_bound(lookup.begin(), lookup.end(), key,
                                 [&](const auto& entry, Link k) { return by_value(entry.first, k); });
      w(u, v) = it->second;
    }
  }
  return ComparisonGraph(std::move(candidates), std::move(w));
}

inline ComparisonGraph build_comparison_graph(const PreferenceProfile& profile, Strength strength) {
  return comparison_graph_from_tallies(profile.candidates(), pairwise_tallies(profile), strength);
}

// ---------------------------------------------------------------------------
// Random graphs.

/// Antisymmetric graph with w(u, v) = -w(v, u) drawn uniformly from [-n, n].
inline ComparisonGraph random_margin_graph(std::size_t m, std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(-n, n);
  IntMatrix w(m, m);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = u + 1; v < m; ++v) {
      w(u, v) = dist(rng);
      w(v, u) = -w(u, v);
    }
  }
  return ComparisonGraph(std::move(w));
}

/// Complete digraph with every w(u, v) drawn independently from [lo, hi].
inline ComparisonGraph random_weight_graph(std::size_t m, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  IntMatrix w(m, m);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (u != v) w(u, v) = dist(rng);
    }
  }
  return ComparisonGraph(std::move(w));
}

// ---------------------------------------------------------------------------
// Graph text format:
//
//   wmg <m>
//   name1,name2,...
//   u v w        (one line per ordered pair u != v, 0-based indices)

inline std::string format_graph(const ComparisonGraph& g) {
  std::ostringstream out;
  out << "wmg " << g.size() << '\n';
  for (std::size_t c = 0; c < g.size(); ++c) out << (c ? "," : "") << g.candidates()[c];
  out << '\n';
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (u != v) out << u << ' ' << v << ' ' << g(u, v) << '\n';
    }
  }
  return out.str();
}

inline ComparisonGraph parse_graph(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing 'wmg <m>' header");
  auto [header_line, header] = lines.front();
  if (header.substr(0, 4) != "wmg ") throw ParseError(header_line, "expected 'wmg <m>' header");
  const auto m = detail::parse_integer<std::size_t>(detail::trim(header.substr(4)), header_line);
  if (m == 0) throw ParseError(header_line, "graph needs at least one candidate");
  if (lines.size() < 2) throw ParseError(header_line, "missing candidate list");

  auto [names_line, names_text] = lines[1];
  std::vector<std::string> names;
  for (auto part : detail::split(names_text, ',')) {
    auto name = detail::trim(part);
    if (!detail::valid_candidate_name(name)) {
      throw ParseError(names_line, "invalid candidate name '" + std::string(name) + "'");
    }
    if (std::find(names.begin(), names.end(), name) != names.end()) {
      throw ParseError(names_line, "duplicate candidate '" + std::string(name) + "'");
    }
    names.emplace_back(name);
  }
  if (names.size() != m) throw ParseError(names_line, "expected " + std::to_string(m) + " candidate names");

  IntMatrix w(m, m);
  std::vector<char> seen(m * m);
  std::size_t edges = 0;
  for (std::size_t li = 2; li < lines.size(); ++li) {
    auto [lineno, line] = lines[li];
    const auto fields = detail::fields(line);
    if (fields.size() != 3) throw ParseError(lineno, "expected 'u v w'");
    const auto u = detail::parse_integer<std::size_t>(fields[0], lineno);
    const auto v = detail::parse_integer<std::size_t>(fields[1], lineno);
    const auto weight = detail::parse_integer<std::int64_t>(fields[2], lineno);
    if (u >= m || v >= m) throw ParseError(lineno, "candidate index out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    if (seen[u * m + v]) throw ParseError(lineno, "duplicate edge");
    seen[u * m + v] = 1;
    w(u, v) = weight;
    ++edges;
  }
  if (edges != m * (m - 1)) {
    throw ParseError(lines.back().first, "graph must list all " + std::to_string(m * (m - 1)) + " ordered pairs");
  }
  return ComparisonGraph(std::move(names), std::move(w));
}

}  // namespace schulze
