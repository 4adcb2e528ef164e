#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "lct/rational.hpp"

namespace lct {

using QVector = std::vector<Rat>;

/// Dense row-major matrix of exact rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

  static QMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Rat> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

  QMatrix transpose() const;
  bool is_symmetric() const;
  QMatrix leading_minor(std::size_t k) const;

  QVector operator*(std::span<const Rat> x) const;
  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

/// Unique solution of A·x = b by fraction-free (Bareiss) elimination.
/// Throws SingularMatrix when A has no pivot in some column and
/// DimensionMismatch when the shapes disagree.
QVector solve_linear_system(const QMatrix& a, std::span<const Rat> b);

/// Exact determinant, via the same fraction-free elimination.
Rat determinant(const QMatrix& a);

/// True iff every leading principal minor is positive. Throws NotSymmetric.
bool is_positive_definite(const QMatrix& a);

}  // namespace lct
