#include "lct/matrix.hpp"

#include <string>
#include <utility>

#include "lct/errors.hpp"

namespace lct {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool QMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

QMatrix QMatrix::leading_minor(std::size_t k) const {
  QMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
  return m;
}

QVector QMatrix::operator*(std::span<const Rat> x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector product: size mismatch");
  QVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rat acc;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !x[j].is_zero()) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

namespace {

using IntGrid = std::vector<std::vector<BigInt>>;

BigInt lcm(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

// Scales each row of [A | extra] by the lcm of its denominators. Returns the
// integer grid and the product of the scale factors.
IntGrid integer_rows(const QMatrix& a, std::span<const Rat> extra, BigInt& scale_product) {
  IntGrid grid(a.rows());
  scale_product = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) l = lcm(l, a(i, j).den());
    if (!extra.empty()) l = lcm(l, extra[i].den());
    scale_product *= l;
    auto& row = grid[i];
    row.reserve(a.cols() + 1);
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j).num() * (l / a(i, j).den()));
    if (!extra.empty()) row.push_back(extra[i].num() * (l / extra[i].den()));
  }
  return grid;
}

// In-place Bareiss elimination on the first `n` columns. Returns +1/-1 for
// the permutation parity, or 0 when a column has no pivot.
int bareiss(IntGrid& m, std::size_t n) {
  int parity = 1;
  BigInt previous = 1;
  const std::size_t width = m.empty() ? 0 : m.front().size();
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && m[swap_with][k].is_zero()) ++swap_with;
      if (swap_with == n) return 0;
      std::swap(m[k], m[swap_with]);
      parity = -parity;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < width; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
      m[i][k] = 0;
    }
    previous = m[k][k];
  }
  return parity;
}

}  // namespace

QVector solve_linear_system(const QMatrix& a, std::span<const Rat> b) {
  if (!a.is_square()) throw DimensionMismatch("solve_linear_system: matrix is not square");
  if (b.size() != a.rows()) throw DimensionMismatch("solve_linear_system: right-hand side has wrong length");
  const std::size_t n = a.rows();
  BigInt unused;
  IntGrid m = integer_rows(a, b, unused);
  if (bareiss(m, n) == 0) throw SingularMatrix("solve_linear_system: zero pivot column");

  QVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rat acc(m[ii][n], 1);
    for (std::size_t j = ii + 1; j < n; ++j)
      if (!m[ii][j].is_zero()) acc -= Rat(m[ii][j], 1) * x[j];
    x[ii] = acc / Rat(m[ii][ii], 1);
  }
  return x;
}

Rat determinant(const QMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  BigInt scale;
  IntGrid m = integer_rows(a, {}, scale);
  const int parity = bareiss(m, n);
  if (parity == 0) return 0;
  return Rat(parity * m[n - 1][n - 1], scale);
}

bool is_positive_definite(const QMatrix& a) {
  if (!a.is_symmetric()) throw NotSymmetric("is_positive_definite: matrix is not symmetric");
  for (std::size_t k = 1; k <= a.rows(); ++k)
    if (determinant(a.leading_minor(k)).sign() <= 0) return false;
  return true;
}

}  // namespace lct
