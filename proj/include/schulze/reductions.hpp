#pragma once

// Instance generators turning Dominance Product / Dominating Pairs inputs into
// preference profiles:
//
//  * dominance_to_wmg_instance: r voters over 2r candidates u_1..u_r, v_1..v_r
//    whose margins satisfy w(u_i, v_j) = 2 C(i, j) - r.
//  * dominating_pairs_to_schulze_instance: 10r - 2 voters over 2r + 2
//    candidates (the u's, the v's, W and W') such that W is a Schulze winner iff
//    C has no entry equal to r. Here r is the dimension after padding.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "schulze/ballots.hpp"
#include "schulze/bottleneck.hpp"
#include "schulze/dominance.hpp"
#include "schulze/majority_graph.hpp"

namespace schulze {

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReductionKind { wmg, winner };

struct ReductionInstance {
  ReductionKind kind;
  PreferenceProfile profile;
  std::map<std::string, Candidate> roles;  // "u1".."ur", "v1".."vr", and "W", "W'" for the winner kind
  std::size_t r;                           // dimension of the caller's matrices
  bool padded;                             // positivity padding applied (winner kind)
  DominanceInstance encoded;               // padded, entry-distinct matrices the voters encode

  std::size_t encoded_dimension() const noexcept { return encoded.dimension(); }
  Candidate u(std::size_t i) const { return roles.at("u" + std::to_string(i + 1)); }
  Candidate v(std::size_t j) const { return roles.at("v" + std::to_string(j + 1)); }
  Candidate w() const { return roles.at("W"); }
  Candidate w_prime() const { return roles.at("W'"); }
};

namespace detail {

inline std::vector<std::string> role_names(std::size_t r, bool with_w) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < r; ++i) names.push_back("u" + std::to_string(i + 1));
  for (std::size_t j = 0; j < r; ++j) names.push_back("v" + std::to_string(j + 1));
  if (with_w) {
    names.emplace_back("W");
    names.emplace_back("W'");
  }
  return names;
}

/// Candidates u_1..u_r (indices 0..r-1) and v_1..v_r (r..2r-1) ordered by the
/// numbers voter k associates with them: A(i, k) for u_i, B(k, j) for v_j.
/// Entries must be distinct, so the order is strict.
inline std::vector<Candidate> encoded_order(const DominanceInstance& inst, std::size_t k) {
  const std::size_t r = inst.dimension();
  std::vector<std::pair<std::int64_t, Candidate>> keyed;
  for (std::size_t i = 0; i < r; ++i) keyed.emplace_back(inst.a(i, k), i);
  for (std::size_t j = 0; j < r; ++j) keyed.emplace_back(inst.b(k, j), r + j);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Candidate> order;
  for (auto& [value, c] : keyed) order.push_back(c);
  return order;
}

inline WeakOrder strict(const std::vector<Candidate>& order) {
  WeakOrder vote;
  for (auto c : order) vote.groups.push_back({c});
  return vote;
}

template <typename... Parts>
std::vector<Candidate> concat(const Parts&... parts) {
  std::vector<Candidate> out;
  (out.insert(out.end(), parts.begin(), parts.end()), ...);
  return out;
}

inline std::vector<Candidate> reversed(std::vector<Candidate> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

/// r McGarvey pairs: +2r to M(x, y) for x in `heads`, y in `tails`, +0 to
/// M(y, x), and +r to every other ordered pair.
///   voter 1: heads > tails > rest
///   voter 2: reverse(rest) > reverse(heads) > reverse(tails)
inline void add_mcgarvey_pairs(std::vector<WeakOrder>& votes, std::size_t pairs, std::size_t m,
                               const std::vector<Candidate>& heads, const std::vector<Candidate>& tails) {
  std::vector<char> used(m, 0);
  for (auto c : heads) used[c] = 1;
  for (auto c : tails) used[c] = 1;
  std::vector<Candidate> rest;
  for (Candidate c = 0; c < m; ++c) {
    if (!used[c]) rest.push_back(c);
  }
  const auto first = strict(concat(heads, tails, rest));
  const auto second = strict(concat(reversed(rest), reversed(heads), reversed(tails)));
  for (std::size_t p = 0; p < pairs; ++p) {
    votes.push_back(first);
    votes.push_back(second);
  }
}

}  // namespace detail

/// Profile with r voters over 2r candidates whose M(u_i, v_j) equals C(i, j).
inline ReductionInstance dominance_to_wmg_instance(const DominanceInstance& inst) {
  const std::size_t r = inst.dimension();
  if (r == 0) throw std::invalid_argument("reduction needs r >= 1");
  auto distinct = make_entries_distinct(inst);
  std::vector<WeakOrder> votes;
  for (std::size_t k = 0; k < r; ++k) votes.push_back(detail::strict(detail::encoded_order(distinct, k)));
  auto names = detail::role_names(r, false);
  std::map<std::string, Candidate> roles;
  for (std::size_t c = 0; c < names.size(); ++c) roles.emplace(names[c], c);
  return {ReductionKind::wmg, PreferenceProfile(std::move(names), std::move(votes)), std::move(roles), r, false,
          std::move(distinct)};
}

/// C(i, j) = (w(u_i, v_j) + r) / 2, read off the margin graph of a
/// `dominance_to_wmg_instance` profile.
inline IntMatrix recover_dominance_from_wmg(const ComparisonGraph& graph, const std::map<std::string, Candidate>& roles,
                                            std::size_t r) {
  IntMatrix c(r, r);
  const auto sr = static_cast<std::int64_t>(r);
  for (std::size_t i = 0; i < r; ++i) {
    const Candidate u = roles.at("u" + std::to_string(i + 1));
    for (std::size_t j = 0; j < r; ++j) {
      const Candidate v = roles.at("v" + std::to_string(j + 1));
      if (u >= graph.size() || v >= graph.size()) throw ReductionError("role index outside the graph");
      const std::int64_t sum = graph(u, v) + sr;
      if (sum % 2 != 0) throw ReductionError("w(u, v) + r is odd: not the image of a reduction instance");
      if (sum < 0 || sum > 2 * sr) throw ReductionError("w(u, v) out of range for a reduction instance");
      c(i, j) = sum / 2;
    }
  }
  return c;
}

/// Pads an r x r instance to (r + 1) x (r + 1). Every Dominance Product entry of
/// the result is positive, and entries equal to r + 1 are exactly the dominating
/// pairs of the original:
///   A gains a column of 0s and B a matching row of 1s (every old C entry gains 1);
///   A gains a row of values above every other entry, B a column of values below
///   every other entry; the shared corner cell pair is A = 0, B = 1.
inline DominanceInstance pad_for_positivity(const DominanceInstance& inst) {
  const std::size_t r = inst.dimension();
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  for (auto x : inst.a.values()) lo = std::min(lo, x), hi = std::max(hi, x);
  for (auto x : inst.b.values()) lo = std::min(lo, x), hi = std::max(hi, x);
  const std::int64_t above = hi + 1;
  const std::int64_t below = lo - 1;

  IntMatrix a(r + 1, r + 1);
  IntMatrix b(r + 1, r + 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      a(i, k) = inst.a(i, k);
      b(i, k) = inst.b(i, k);
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    a(i, r) = 0;
    b(r, i) = 1;
    a(r, i) = above;
    b(i, r) = below;
  }
  a(r, r) = 0;
  b(r, r) = 1;
  return DominanceInstance(std::move(a), std::move(b));
}

/// Profile on 2R + 2 candidates and 10R - 2 voters (R = r + 1 after padding) in
/// which W is a Schulze winner iff the padded Dominance Product has no entry R.
inline ReductionInstance dominating_pairs_to_schulze_instance(const DominanceInstance& inst) {
  const std::size_t r0 = inst.dimension();
  if (r0 == 0) throw std::invalid_argument("reduction needs r >= 1");
  auto encoded = make_entries_distinct(pad_for_positivity(inst));
  const std::size_t r = encoded.dimension();
  const std::size_t m = 2 * r + 2;
  const Candidate w = 2 * r;
  const Candidate w_prime = 2 * r + 1;

  std::vector<Candidate> us(r);
  std::vector<Candidate> vs(r);
  std::iota(us.begin(), us.end(), Candidate{0});
  std::iota(vs.begin(), vs.end(), Candidate{r});

  std::vector<WeakOrder> votes;
  votes.reserve(10 * r - 2);
  // 2r voters carrying the Dominance Product, with W and W' last or first.
  for (std::size_t k = 0; k < r; ++k) {
    votes.push_back(detail::strict(detail::concat(detail::encoded_order(encoded, k), std::vector{w_prime, w})));
  }
  for (std::size_t k = 0; k < r; ++k) {
    votes.push_back(detail::strict(detail::concat(std::vector{w, w_prime}, detail::encoded_order(encoded, k))));
  }
  // r - 1 voters each: W' > v_r > ... > v_1 > W > u_r > ... > u_1, and
  // W > u_1 > ... > u_r > v_1 > ... > v_r > W'.
  const auto third = detail::strict(detail::concat(std::vector{w_prime}, detail::reversed(vs), std::vector{w},
                                                    detail::reversed(us)));
  const auto fourth = detail::strict(detail::concat(std::vector{w}, us, vs, std::vector{w_prime}));
  for (std::size_t k = 0; k + 1 < r; ++k) votes.push_back(third);
  for (std::size_t k = 0; k + 1 < r; ++k) votes.push_back(fourth);
  // Three 2r-voter gadgets: W over W', W' over every v_j, every v_j over W.
  detail::add_mcgarvey_pairs(votes, r, m, {w}, {w_prime});
  detail::add_mcgarvey_pairs(votes, r, m, {w_prime}, vs);
  detail::add_mcgarvey_pairs(votes, r, m, vs, {w});

  auto names = detail::role_names(r, true);
  std::map<std::string, Candidate> roles;
  for (std::size_t c = 0; c < names.size(); ++c) roles.emplace(names[c], c);
  return {ReductionKind::winner, PreferenceProfile(std::move(names), std::move(votes)), std::move(roles), r0, true,
          std::move(encoded)};
}

/// Decides Dominating Pairs by asking whether W is a Schulze winner of the
/// generated profile.
inline bool decide_dominating_pairs_via_schulze(const DominanceInstance& inst) {
  const auto instance = dominating_pairs_to_schulze_instance(inst);
  const auto graph = build_wmg_naive(instance.profile);
  return !verify_winner(graph, instance.w());
}

}  // namespace schulze
