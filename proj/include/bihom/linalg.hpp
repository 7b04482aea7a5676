#pragma once

// Dense exact matrices and Gaussian elimination over a Field.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bihom/field.hpp"

namespace bihom {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DependenceError : public std::invalid_argument {
 public:
  DependenceError(std::size_t index, const std::string& what)
      : std::invalid_argument(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

template <Field K>
using Vec = std::vector<typename K::Scalar>;

template <Field K>
class Matrix {
 public:
  using Scalar = typename K::Scalar;

  Matrix() = default;
  Matrix(K field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(K field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  static Matrix column(K field, const Vec<K>& v) {
    Matrix m(field, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  static Matrix from_columns(K field, std::size_t rows, const std::vector<Vec<K>>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const K& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<K> col(std::size_t j) const {
    Vec<K> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  /// Throws FieldMismatch if any entry lives outside field().
  void check_field() const {
    for (const auto& s : data_)
      if (!field_.contains(s)) throw FieldMismatch("matrix entry " + s.str() + " outside field " + field_.name());
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec<K> apply(const Vec<K>& v) const {
    if (v.size() != cols_) throw DimensionError("vector length " + std::to_string(v.size()) + " != " + std::to_string(cols_));
    Vec<K> out(rows_, field_.zero());
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Scalar& a = (*this)(i, j);
        if (!a.is_zero()) out[i] += a * v[j];
      }
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const Scalar& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  void same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix shape mismatch");
  }

  K field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

template <Field K>
struct RrefResult {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form with first-nonzero pivoting.
template <Field K>
RrefResult<K> rref(Matrix<K> m) {
  m.check_field();
  const K& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pr = row;
    while (pr < m.rows() && m(pr, col).is_zero()) ++pr;
    if (pr == m.rows()) continue;
    if (pr != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(row, j));
    auto inv = f.one() / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      auto factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <Field K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).rank();
}

/// Basis of {v : Mv = 0}, one column vector per free column.
template <Field K>
std::vector<Matrix<K>> nullspace(const Matrix<K>& m) {
  auto r = rref(m);
  const K& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Matrix<K>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Matrix<K> v(f, m.cols(), 1);
    v(free, 0) = f.one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v(r.pivots[i], 0) = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some v with Mv = b, or nullopt when the system is inconsistent.
template <Field K>
std::optional<Matrix<K>> solve(const Matrix<K>& m, const Matrix<K>& b) {
  if (b.cols() != 1 || b.rows() != m.rows())
    throw DimensionError("right-hand side must be a " + std::to_string(m.rows()) + "x1 column");
  const K& f = m.field();
  Matrix<K> aug(f, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b(i, 0);
  }
  auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Matrix<K> x(f, m.cols(), 1);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x(r.pivots[i], 0) = r.reduced(i, m.cols());
  return x;
}

template <Field K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  const K& f = m.field();
  Matrix<K> aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  auto r = rref(aug);
  if (r.rank() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<K> inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

/// Rank of the span of a family of equal-length vectors.
template <Field K>
std::size_t span_rank(const K& f, std::size_t dim, const std::vector<Vec<K>>& vectors) {
  if (vectors.empty()) return 0;
  return rank(Matrix<K>::from_columns(f, dim, vectors));
}

/// Independent subfamily spanning the same space (pivot columns, in order).
template <Field K>
std::vector<Vec<K>> span_basis(const K& f, std::size_t dim, const std::vector<Vec<K>>& vectors) {
  if (vectors.empty()) return {};
  auto r = rref(Matrix<K>::from_columns(f, dim, vectors));
  std::vector<Vec<K>> out;
  for (auto p : r.pivots) out.push_back(vectors[p]);
  return out;
}

template <Field K>
bool in_span(const K& f, std::size_t dim, const std::vector<Vec<K>>& basis, const Vec<K>& v) {
  auto ext = basis;
  ext.push_back(v);
  return span_rank(f, dim, ext) == span_rank(f, dim, basis);
}

/// Equal dimension and mutual membership.
template <Field K>
bool span_equal(const K& f, std::size_t dim, const std::vector<Vec<K>>& a, const std::vector<Vec<K>>& b) {
  auto ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  const auto ra = span_rank(f, dim, a);
  return ra == span_rank(f, dim, b) && ra == span_rank(f, dim, ab);
}

/// Coordinates of v in an independent family, or nullopt if v is outside its span.
template <Field K>
std::optional<Vec<K>> coordinates(const K& f, std::size_t dim, const std::vector<Vec<K>>& basis, const Vec<K>& v) {
  if (basis.empty()) {
    for (const auto& x : v)
      if (!x.is_zero()) return std::nullopt;
    return Vec<K>{};
  }
  auto x = solve(Matrix<K>::from_columns(f, dim, basis), Matrix<K>::column(f, v));
  if (!x) return std::nullopt;
  return x->col(0);
}

/// The inputs followed by standard basis vectors, added greedily by lowest index.
template <Field K>
std::vector<Vec<K>> extend_to_basis(const K& f, const std::vector<Vec<K>>& vectors, std::size_t ambient_dim) {
  std::vector<Vec<K>> basis;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim) throw DimensionError("vector " + std::to_string(i) + " has wrong length");
    basis.push_back(vectors[i]);
    if (span_rank(f, ambient_dim, basis) != basis.size())
      throw DependenceError(i, "vector " + std::to_string(i) + " is dependent on the preceding vectors");
  }
  for (std::size_t j = 0; j < ambient_dim && basis.size() < ambient_dim; ++j) {
    Vec<K> e(ambient_dim, f.zero());
    e[j] = f.one();
    basis.push_back(e);
    if (span_rank(f, ambient_dim, basis) != basis.size()) basis.pop_back();
  }
  return basis;
}

}  // namespace bihom
