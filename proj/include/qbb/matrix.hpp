#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qbb/scalar.hpp"

namespace qbb {

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline std::size_t pivot_cost(const RadicalRational& x) { return x.terms().size(); }
inline std::size_t pivot_cost(const RatFunc& x) {
  return x.num().coeffs().size() + 2 * x.den().coeffs().size();
}

template <class T>
using Vec = std::vector<T>;

template <class T>
bool is_zero_vec(const Vec<T>& v) {
  for (auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1);
    return m;
  }
  static Matrix from_columns(const std::vector<Vec<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec<T> column(std::size_t j) const {
    Vec<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec<T> row(std::size_t i) const { return Vec<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec<T> apply(const Vec<T>& v) const {
    if (v.size() != cols_) throw InternalError("matrix-vector size mismatch");
    Vec<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T s;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) s += (*this)(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InternalError("matrix product size mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) c(i, j) += x * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  bool is_zero_matrix() const {
    for (auto& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

// Reduced row echelon form; pivot columns are the column rank profile.
template <class T>
struct Echelon {
  Matrix<T> r;
  std::vector<std::size_t> pivots;
};

template <class T>
Echelon<T> rref(Matrix<T> m) {
  Echelon<T> out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::optional<std::size_t> best;
    for (std::size_t i = row; i < m.rows(); ++i)
      if (!is_zero(m(i, c)) && (!best || pivot_cost(m(i, c)) < pivot_cost(m(*best, c)))) best = i;
    if (!best) continue;
    if (*best != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(*best, j));
    T inv = T(1) / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.r = std::move(m);
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

// Basis of the right null space {x : m x = 0}.
template <class T>
std::vector<Vec<T>> kernel(const Matrix<T>& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec<T>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(m.cols());
    v[f] = T(1);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.r(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

// Solves m X = b for a matrix right-hand side; returns nullopt when inconsistent.
// Free variables are set to zero.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& m, const Matrix<T>& b) {
  Matrix<T> aug(m.rows(), m.cols() + b.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, m.cols() + j) = b(i, j);
  }
  auto e = rref(std::move(aug));
  Matrix<T> x(m.cols(), b.cols());
  std::size_t k = 0;
  for (; k < e.pivots.size(); ++k) {
    if (e.pivots[k] >= m.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[k], j) = e.r(k, m.cols() + j);
  }
  return x;
}

template <class T>
std::optional<Vec<T>> solve(const Matrix<T>& m, const Vec<T>& b) {
  auto x = solve(m, Matrix<T>::from_columns({b}, m.rows()));
  if (!x) return std::nullopt;
  return x->column(0);
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw InternalError("inverse of a non-square matrix");
  auto e = rref(m);
  if (e.pivots.size() != m.rows()) throw InternalError("inverse of a singular matrix");
  auto x = solve(m, Matrix<T>::identity(m.rows()));
  return *x;
}

template <class T>
Matrix<T> apply_scalar(const Matrix<T>& m, T (*f)(const T&)) {
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  return out;
}

template <class T>
Vec<T> add(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> out = a;
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return out;
}
template <class T>
Vec<T> sub(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> out = a;
  for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
  return out;
}
template <class T>
Vec<T> scale(const Vec<T>& a, const T& s) {
  Vec<T> out(a.size());
  if (is_zero(s)) return out;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!is_zero(a[k])) out[k] = a[k] * s;
  return out;
}
template <class T>
T dot(const Vec<T>& a, const Matrix<T>& g, const Vec<T>& b) {
  T s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!is_zero(b[j]) && !is_zero(g(i, j))) s += a[i] * g(i, j) * b[j];
  }
  return s;
}

}  // namespace qbb
