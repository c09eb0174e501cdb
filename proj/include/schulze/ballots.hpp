#pragma once

// Preference profiles over weak orders: representation, the ballot text format,
// rank encoding, pairwise tallies and seeded random generation.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "schulze/matrix.hpp"
#include "schulze/text.hpp"

namespace schulze {

using Candidate = std::size_t;

/// A weak order as a sequence of tie-groups, most preferred group first.
/// Candidates inside a group are kept sorted by index.
struct WeakOrder {
  std::vector<std::vector<Candidate>> groups;

  friend bool operator==(const WeakOrder&, const WeakOrder&) = default;
};

/// A list of n weak orders over m named candidates. Immutable after construction.
class PreferenceProfile {
 public:
  PreferenceProfile(std::vector<std::string> candidates, std::vector<WeakOrder> votes)
      : candidates_(std::move(candidates)), votes_(std::move(votes)) {
    if (candidates_.empty()) throw std::invalid_argument("profile needs at least one candidate");
    if (votes_.empty()) throw std::invalid_argument("profile needs at least one vote");
    for (std::size_t c = 0; c < candidates_.size(); ++c) {
      if (!detail::valid_candidate_name(candidates_[c])) {
        throw std::invalid_argument("invalid candidate name '" + candidates_[c] + "'");
      }
      if (!index_.emplace(candidates_[c], c).second) {
        throw std::invalid_argument("duplicate candidate '" + candidates_[c] + "'");
      }
    }
    const std::size_t m = candidates_.size();
    std::vector<char> seen(m);
    for (auto& vote : votes_) {
      std::fill(seen.begin(), seen.end(), 0);
      std::size_t count = 0;
      for (auto& group : vote.groups) {
        if (group.empty()) throw std::invalid_argument("empty tie-group in vote");
        std::sort(group.begin(), group.end());
        for (Candidate c : group) {
          if (c >= m || seen[c]) throw std::invalid_argument("vote is not a weak order over all candidates");
          seen[c] = 1;
          ++count;
        }
      }
      if (count != m) throw std::invalid_argument("vote does not rank every candidate");
    }
  }

  std::size_t num_candidates() const noexcept { return candidates_.size(); }
  std::size_t num_voters() const noexcept { return votes_.size(); }
  const std::vector<std::string>& candidates() const noexcept { return candidates_; }
  const std::vector<WeakOrder>& votes() const noexcept { return votes_; }

  std::optional<Candidate> index_of(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    return std::nullopt;
  }

 private:
  std::vector<std::string> candidates_;
  std::vector<WeakOrder> votes_;
  std::unordered_map<std::string, Candidate> index_;
};

/// Parses the ballot text format:
///
///   # comment
///   candidates: a,b,c
///   a > b = c
///   c > a > b x3
///
/// Every vote must rank every candidate exactly once. A trailing `xK` token
/// repeats the vote K times.
inline PreferenceProfile parse_profile(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing 'candidates:' header");

  auto [header_line, header] = lines.front();
  constexpr std::string_view kHeader = "candidates:";
  if (header.substr(0, kHeader.size()) != kHeader) {
    throw ParseError(header_line, "expected 'candidates:' header");
  }
  std::vector<std::string> names;
  std::unordered_map<std::string_view, Candidate> index;
  for (auto part : detail::split(header.substr(kHeader.size()), ',')) {
    auto name = detail::trim(part);
    if (!detail::valid_candidate_name(name)) {
      throw ParseError(header_line, "invalid candidate name '" + std::string(name) + "'");
    }
    if (!index.emplace(name, names.size()).second) {
      throw ParseError(header_line, "duplicate candidate '" + std::string(name) + "'");
    }
    names.emplace_back(name);
  }
  const std::size_t m = names.size();

  std::vector<WeakOrder> votes;
  std::vector<char> seen(m);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto [lineno, line] = lines[li];

    std::size_t multiplicity = 1;
    if (auto ws = line.find_last_of(" \t"); ws != std::string_view::npos) {
      auto last = line.substr(ws + 1);
      auto rest = detail::trim(line.substr(0, ws));
      const bool after_operator = !rest.empty() && (rest.back() == '>' || rest.back() == '=');
      if (last.size() > 1 && last[0] == 'x' && !after_operator &&
          std::all_of(last.begin() + 1, last.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        auto [ptr, ec] = std::from_chars(last.data() + 1, last.data() + last.size(), multiplicity);
        if (ec != std::errc{} || multiplicity == 0) {
          throw ParseError(lineno, "multiplicity must be a positive integer");
        }
        line = rest;
      }
    }

    WeakOrder vote;
    std::fill(seen.begin(), seen.end(), 0);
    std::size_t ranked = 0;
    for (auto group_text : detail::split(line, '>')) {
      std::vector<Candidate> group;
      for (auto part : detail::split(group_text, '=')) {
        auto name = detail::trim(part);
        if (name.empty()) throw ParseError(lineno, "malformed vote: empty candidate slot");
        auto it = index.find(name);
        if (it == index.end()) throw ParseError(lineno, "unknown candidate '" + std::string(name) + "'");
        if (seen[it->second]) throw ParseError(lineno, "candidate '" + std::string(name) + "' repeated in vote");
        seen[it->second] = 1;
        ++ranked;
        group.push_back(it->second);
      }
      vote.groups.push_back(std::move(group));
    }
    if (ranked != m) {
      for (std::size_t c = 0; c < m; ++c) {
        if (!seen[c]) throw ParseError(lineno, "candidate '" + names[c] + "' missing from vote");
      }
    }
    for (std::size_t k = 0; k < multiplicity; ++k) votes.push_back(vote);
  }
  if (votes.empty()) throw ParseError(lines.back().first, "profile has no votes");
  return PreferenceProfile(std::move(names), std::move(votes));
}

/// Writes a profile in the ballot format; runs of identical consecutive votes
/// are folded into one line with an `xK` suffix.
inline std::string format_profile(const PreferenceProfile& profile) {
  std::ostringstream out;
  out << "candidates: ";
  for (std::size_t c = 0; c < profile.num_candidates(); ++c) {
    out << (c ? "," : "") << profile.candidates()[c];
  }
  out << '\n';
  const auto& votes = profile.votes();
  for (std::size_t a = 0; a < votes.size();) {
    std::size_t run = 1;
    while (a + run < votes.size() && votes[a + run] == votes[a]) ++run;
    const auto& groups = votes[a].groups;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (g) out << " > ";
      for (std::size_t k = 0; k < groups[g].size(); ++k) {
        out << (k ? " = " : "") << profile.candidates()[groups[g][k]];
      }
    }
    if (run > 1) out << " x" << run;
    out << '\n';
    a += run;
  }
  return out.str();
}

/// n x m matrix of dense 0-based ranks: ranks(a, u) is the index of u's tie-group in vote a.
inline IntMatrix rank_encode(const PreferenceProfile& profile) {
  IntMatrix ranks(profile.num_voters(), profile.num_candidates());
  for (std::size_t a = 0; a < profile.num_voters(); ++a) {
    const auto& groups = profile.votes()[a].groups;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (Candidate c : groups[g]) ranks(a, c) = static_cast<std::int64_t>(g);
    }
  }
  return ranks;
}

/// Rebuilds a weak order from one row of dense ranks.
inline WeakOrder weak_order_from_ranks(std::span<const std::int64_t> ranks) {
  std::int64_t groups = 0;
  for (auto r : ranks) groups = std::max(groups, r + 1);
  WeakOrder order;
  order.groups.resize(static_cast<std::size_t>(groups));
  for (std::size_t c = 0; c < ranks.size(); ++c) order.groups[static_cast<std::size_t>(ranks[c])].push_back(c);
  std::erase_if(order.groups, [](const auto& g) { return g.empty(); });
  return order;
}

/// counts(u, v) = number of voters strictly preferring u to v. O(n m^2).
inline IntMatrix pairwise_tallies(const PreferenceProfile& profile) {
  const std::size_t m = profile.num_candidates();
  const IntMatrix ranks = rank_encode(profile);
  IntMatrix counts(m, m);
  for (std::size_t a = 0; a < profile.num_voters(); ++a) {
    const auto row = ranks.row(a);
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < m; ++v) counts(u, v) += row[u] < row[v];
    }
  }
  return counts;
}

/// Seeded random profile: each vote is a uniform permutation whose adjacent
/// candidates are merged into one tie-group with probability `tie_probability`.
inline PreferenceProfile random_profile(std::size_t m, std::size_t n, double tie_probability,
                                        std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("random_profile needs m, n >= 1");
  if (!(tie_probability >= 0.0 && tie_probability <= 1.0)) {
    throw std::invalid_argument("tie probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution tie(tie_probability);
  std::vector<std::string> names;
  for (std::size_t c = 0; c < m; ++c) names.push_back("c" + std::to_string(c + 1));

  std::vector<Candidate> perm(m);
  std::vector<WeakOrder> votes;
  votes.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::iota(perm.begin(), perm.end(), Candidate{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    WeakOrder vote;
    vote.groups.push_back({perm[0]});
    for (std::size_t k = 1; k < m; ++k) {
      if (tie(rng)) {
        vote.groups.back().push_back(perm[k]);
      } else {
        vote.groups.push_back({perm[k]});
      }
    }
    votes.push_back(std::move(vote));
  }
  return PreferenceProfile(std::move(names), std::move(votes));
}

}  // namespace schulze
