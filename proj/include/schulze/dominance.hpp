#pragma once

// Dominance Product C(i, j) = |{k : A(i, k) <= B(k, j)}| and the Dominating Pairs
// decision problem. The products here accept rectangular operands (p x q times
// q x r); `DominanceInstance` is the square form used by the reductions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "schulze/bitset.hpp"
#include "schulze/matrix.hpp"
#include "schulze/text.hpp"

namespace schulze {

/// A pair of r x r integer matrices.
struct DominanceInstance {
  IntMatrix a;
  IntMatrix b;

  DominanceInstance() = default;
  DominanceInstance(IntMatrix lhs, IntMatrix rhs) : a(std::move(lhs)), b(std::move(rhs)) {
    if (!a.square() || !b.square() || a.rows() != b.rows()) {
      throw std::invalid_argument("dominance instance needs two square matrices of equal dimension");
    }
  }

  std::size_t dimension() const noexcept { return a.rows(); }
};

namespace detail {

inline void check_product_shapes(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dominance product: inner dimensions differ");
}

}  // namespace detail

/// Definitional O(p q r) count.
inline IntMatrix dominance_product_bruteforce(const IntMatrix& a, const IntMatrix& b) {
  detail::check_product_shapes(a, b);
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto lhs = a(i, k);
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += lhs <= brow[j];
    }
  }
  return c;
}

inline IntMatrix dominance_product_bruteforce(const DominanceInstance& inst) {
  return dominance_product_bruteforce(inst.a, inst.b);
}

/// Bucket size balancing the two cost terms of `dominance_product_blocked`:
/// ((p + r) / s) word-parallel products of p x r x ceil(q / 64) against
/// q * s * p * r / (p + r) same-bucket comparisons.
inline std::size_t default_bucket_size(std::size_t p, std::size_t q, std::size_t r) {
  const double span = static_cast<double>(p + r);
  if (q == 0 || span == 0) return 1;
  const double words = static_cast<double>(words_for(q));
  const double s = span * std::sqrt(words / static_cast<double>(q));
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(s)), 1, p + r);
}

/// Blocked Dominance Product.
///
/// For every inner index k, the p values A(., k) and the r values B(k, .) are
/// merged into one sorted sequence (A before B on equal values, so an A entry
/// precedes a B entry exactly when it is <=) and cut into buckets of
/// `bucket_size` consecutive positions. A pair in different buckets is decided by
/// bucket order alone; those pairs are counted with one bitset boolean product per
/// bucket boundary. Pairs sharing a bucket are compared directly.
///
/// Larger buckets mean fewer products and more direct comparisons; a bucket
/// of at least p + r entries degenerates to brute force.
inline IntMatrix dominance_product_blocked(const IntMatrix& a, const IntMatrix& b, std::size_t bucket_size) {
  detail::check_product_shapes(a, b);
  if (bucket_size == 0) throw std::invalid_argument("bucket size must be >= 1");
  const std::size_t p = a.rows();
  const std::size_t q = a.cols();
  const std::size_t r = b.cols();
  IntMatrix c(p, r);
  if (p == 0 || q == 0 || r == 0) return c;

  const std::size_t span = p + r;
  const std::size_t buckets = (span + bucket_size - 1) / bucket_size;

  // Per bucket, the (row, k) cells of A and (col, k) cells of B that fall into it.
  struct Cell {
    std::uint32_t index;
    std::uint32_t k;
  };
  std::vector<std::vector<Cell>> a_cells(buckets);
  std::vector<std::vector<Cell>> b_cells(buckets);

  struct Entry {
    std::int64_t value;
    std::uint32_t from_b;
    std::uint32_t index;
  };
  std::vector<Entry> merged(span);
  for (std::size_t k = 0; k < q; ++k) {
    for (std::size_t i = 0; i < p; ++i) merged[i] = {a(i, k), 0, static_cast<std::uint32_t>(i)};
    for (std::size_t j = 0; j < r; ++j) merged[p + j] = {b(k, j), 1, static_cast<std::uint32_t>(j)};
    std::sort(merged.begin(), merged.end(), [](const Entry& x, const Entry& y) {
      return x.value != y.value ? x.value < y.value : x.from_b < y.from_b;
    });

    for (std::size_t t = 0; t < buckets; ++t) {
      const std::size_t lo = t * bucket_size;
      const std::size_t hi = std::min(span, lo + bucket_size);
      // Same-bucket pairs: direct comparison.
      for (std::size_t x = lo; x < hi; ++x) {
        if (merged[x].from_b) continue;
        const auto lhs = merged[x].value;
        auto crow = c.row(merged[x].index);
        for (std::size_t y = lo; y < hi; ++y) {
          if (merged[y].from_b && lhs <= merged[y].value) ++crow[merged[y].index];
        }
      }
      for (std::size_t x = lo; x < hi; ++x) {
        auto& dest = merged[x].from_b ? b_cells[t] : a_cells[t];
        dest.push_back({merged[x].index, static_cast<std::uint32_t>(k)});
      }
    }
  }

  // Cross-bucket pairs: sum over t of [bucket(A) == t] * [bucket(B) > t].
  BitRows lhs(p, q);
  BitRows rhs_t(r, q);
  for (std::size_t t = 1; t < buckets; ++t) {
    for (const auto& cell : b_cells[t]) rhs_t.set(cell.index, cell.k);
  }
  for (std::size_t t = 0; t + 1 < buckets; ++t) {
    if (t > 0) {
      for (const auto& cell : a_cells[t - 1]) lhs.reset(cell.index, cell.k);
      for (const auto& cell : b_cells[t]) rhs_t.reset(cell.index, cell.k);
    }
    if (a_cells[t].empty()) continue;
    for (const auto& cell : a_cells[t]) lhs.set(cell.index, cell.k);
    accumulate_bool_product(lhs, rhs_t, [&c](std::size_t i, std::size_t j, std::size_t count) {
      c(i, j) += static_cast<std::int64_t>(count);
    });
  }
  return c;
}

inline IntMatrix dominance_product_blocked(const DominanceInstance& inst, std::size_t bucket_size) {
  return dominance_product_blocked(inst.a, inst.b, bucket_size);
}

inline IntMatrix dominance_product(const IntMatrix& a, const IntMatrix& b) {
  return dominance_product_blocked(a, b, default_bucket_size(a.rows(), a.cols(), b.cols()));
}

/// True iff some (i, j) has A(i, k) <= B(k, j) for every k, i.e. C holds an entry equal to r.
inline bool has_dominating_pair(const DominanceInstance& inst) {
  const auto r = static_cast<std::int64_t>(inst.dimension());
  if (r == 0) return false;
  const IntMatrix c = dominance_product(inst.a, inst.b);
  return std::any_of(c.values().begin(), c.values().end(), [r](std::int64_t x) { return x == r; });
}

/// Replaces every entry by its 1-based position in the global sorted order of all
/// 2r^2 entries, placing A entries before B entries on equal values. The result
/// has pairwise distinct entries and the same Dominance Product. O(r^2 log r).
inline DominanceInstance make_entries_distinct(const DominanceInstance& inst) {
  const std::size_t r = inst.dimension();
  struct Entry {
    std::int64_t value;
    std::uint8_t from_b;
    std::size_t index;
  };
  std::vector<Entry> entries;
  entries.reserve(2 * r * r);
  for (std::size_t x = 0; x < r * r; ++x) entries.push_back({inst.a.values()[x], 0, x});
  for (std::size_t x = 0; x < r * r; ++x) entries.push_back({inst.b.values()[x], 1, x});
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.from_b != y.from_b) return x.from_b < y.from_b;
    return x.index < y.index;
  });
  IntMatrix a(r, r);
  IntMatrix b(r, r);
  for (std::size_t pos = 0; pos < entries.size(); ++pos) {
    auto& dest = entries[pos].from_b ? b : a;
    dest(entries[pos].index / r, entries[pos].index % r) = static_cast<std::int64_t>(pos + 1);
  }
  return DominanceInstance(std::move(a), std::move(b));
}

// Matrix text format: a "mat <r>" header followed by r lines of r integers.
// A file may hold several matrices back to back.

inline std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  out << "mat " << m.rows() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

inline std::vector<IntMatrix> parse_matrices(std::string_view text) {
  const auto lines = detail::content_lines(text);
  std::vector<IntMatrix> out;
  std::size_t li = 0;
  while (li < lines.size()) {
    auto [header_line, header] = lines[li++];
    const auto head = detail::fields(header);
    if (head.size() != 2 || head[0] != "mat") throw ParseError(header_line, "expected 'mat <r>' header");
    const auto r = detail::parse_integer<std::size_t>(head[1], header_line);
    IntMatrix m(r, r);
    for (std::size_t i = 0; i < r; ++i) {
      if (li >= lines.size()) throw ParseError(lines.back().first, "matrix truncated");
      auto [lineno, line] = lines[li++];
      const auto cells = detail::fields(line);
      if (cells.size() != r) throw ParseError(lineno, "expected " + std::to_string(r) + " entries");
      for (std::size_t j = 0; j < r; ++j) m(i, j) = detail::parse_integer<std::int64_t>(cells[j], lineno);
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace schulze
