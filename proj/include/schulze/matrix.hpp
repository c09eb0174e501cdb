#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace schulze {

/// Dense row-major matrix with value semantics.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds a matrix from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix out(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != out.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < out.cols_; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;

}  // namespace schulze
