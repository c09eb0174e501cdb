#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace schulze {

inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

/// A fixed number of bit rows, each `words()` 64-bit words long.
class BitRows {
 public:
  BitRows() = default;
  BitRows(std::size_t rows, std::size_t bits)
      : rows_(rows), bits_(bits), words_(words_for(bits)), data_(rows * words_, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t bits() const noexcept { return bits_; }
  std::size_t words() const noexcept { return words_; }

  std::span<std::uint64_t> row(std::size_t r) noexcept { return {data_.data() + r * words_, words_}; }
  std::span<const std::uint64_t> row(std::size_t r) const noexcept {
    return {data_.data() + r * words_, words_};
  }

  bool test(std::size_t r, std::size_t b) const noexcept {
    return (data_[r * words_ + b / kWordBits] >> (b % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t b) noexcept {
    data_[r * words_ + b / kWordBits] |= std::uint64_t{1} << (b % kWordBits);
  }
  void reset(std::size_t r, std::size_t b) noexcept {
    data_[r * words_ + b / kWordBits] &= ~(std::uint64_t{1} << (b % kWordBits));
  }
  void clear() noexcept { std::fill(data_.begin(), data_.end(), 0); }

 private:
  std::size_t rows_ = 0;
  std::size_t bits_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

inline std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  std::size_t total = 0;
  for (std::size_t w = 0; w < a.size(); ++w) total += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return total;
}

inline constexpr std::size_t kNoBit = static_cast<std::size_t>(-1);

/// Index of the first set bit of `a & b`, or `kNoBit` when the intersection is empty.
inline std::size_t first_common_bit(std::span<const std::uint64_t> a,
                                    std::span<const std::uint64_t> b) noexcept {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (const std::uint64_t x = a[w] & b[w]; x != 0) {
      return w * kWordBits + static_cast<std::size_t>(std::countr_zero(x));
    }
  }
  return kNoBit;
}

inline std::size_t first_common_bit(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                    std::span<const std::uint64_t> c) noexcept {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (const std::uint64_t x = a[w] & b[w] & c[w]; x != 0) {
      return w * kWordBits + static_cast<std::size_t>(std::countr_zero(x));
    }
  }
  return kNoBit;
}

/// Boolean matrix product counted into `out`: out(i, j) += |row_i(lhs) AND row_j(rhs_t)|.
/// `rhs_t` holds the right operand transposed, so both operands are row-major over the
/// shared inner dimension.
template <typename Accumulator>
void accumulate_bool_product(const BitRows& lhs, const BitRows& rhs_t, Accumulator&& out) {
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    const auto a = lhs.row(i);
    bool any = false;
    for (auto w : a) any |= (w != 0);
    if (!any) continue;
    for (std::size_t j = 0; j < rhs_t.rows(); ++j) {
      if (const auto c = popcount_and(a, rhs_t.row(j)); c != 0) out(i, j, c);
    }
  }
}

}  // namespace schulze
