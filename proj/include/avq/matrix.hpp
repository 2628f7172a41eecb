#pragma once

#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "avq/arith.hpp"
#include "avq/error.hpp"
#include "avq/poly.hpp"

namespace avq {

// Dense row-major matrix over an exact scalar. Same scalar requirements as
// Poly<T>; elimination routines need a field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : r_(rows), c_(cols), a_(std::move(data)) {
    if (a_.size() != r_ * c_) throw Error(ErrorCode::InvalidInput, "matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix col(std::size_t j) const {
    Matrix v(r_, 1);
    for (std::size_t i = 0; i < r_; ++i) v(i, 0) = (*this)(i, j);
    return v;
  }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }

  /// Horizontal concatenation.
  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ && a.c_ && b.c_) throw Error(ErrorCode::InvalidInput, "hstack row mismatch");
    std::size_t rows = a.c_ ? a.r_ : b.r_;
    Matrix m(rows, a.c_ + b.c_);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
    }
    return m;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!detail::scalar_zero(x)) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m(a.r_, a.c_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m(a.r_, a.c_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw Error(ErrorCode::InvalidInput, "matrix product shape mismatch");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (detail::scalar_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) = m(i, j) + x * b(k, j);
      }
    return m;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix m(a);
    for (auto& x : m.a_) x = s * x;
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

  /// Elementwise image under a scalar map (used for semilinear actions).
  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(a_[0]))>;
    std::vector<U> out;
    out.reserve(a_.size());
    for (const auto& x : a_) out.push_back(f(x));
    return Matrix<U>(r_, c_, std::move(out));
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw Error(ErrorCode::InvalidInput, "matrix shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
Matrix<T> pow(const Matrix<T>& m, unsigned long e) {
  Matrix<T> acc = Matrix<T>::identity(m.rows()), base = m;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && detail::scalar_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    T inv = T(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || detail::scalar_zero(m(i, col))) continue;
      T f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

/// Basis of the right kernel, as columns.
template <class T>
Matrix<T> kernel(Matrix<T> m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_piv[j]) free.push_back(j);
  Matrix<T> k(m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], f) = T(0) - m(r, free[f]);
  }
  return k;
}

/// Columns of m forming a basis of its column space.
template <class T>
Matrix<T> column_basis(const Matrix<T>& m) {
  Matrix<T> w = m;
  auto piv = rref(w);
  Matrix<T> b(m.rows(), piv.size());
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, k) = m(i, piv[k]);
  return b;
}

/// Solves a x = b (b may have several columns); nullopt if inconsistent.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> aug = Matrix<T>::hstack(a, b);
  auto piv = rref(aug);
  for (auto c : piv)
    if (c >= a.cols()) return std::nullopt;
  Matrix<T> x(a.cols(), b.cols());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(r, a.cols() + j);
  return x;
}

template <class T>
T determinant(Matrix<T> m) {
  if (!m.square()) throw Error(ErrorCode::InvalidInput, "determinant of non-square matrix");
  T det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && detail::scalar_zero(m(p, col))) ++p;
    if (p == n) return T(0);
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      det = T(0) - det;
    }
    det = det * m(col, col);
    T inv = T(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (detail::scalar_zero(m(i, col))) continue;
      T f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
    }
  }
  return det;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  return solve(m, Matrix<T>::identity(m.rows()));
}

/// Evaluates a polynomial at a square matrix.
template <class T>
Matrix<T> eval(const Poly<T>& p, const Matrix<T>& m) {
  Matrix<T> acc(m.rows(), m.cols());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * m + (*it) * Matrix<T>::identity(m.rows());
  return acc;
}

/// Minimal polynomial by Krylov iteration on the full algebra (field scalars).
template <class T>
Poly<T> minimal_polynomial(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  // Vectorised powers I, M, M^2, ... until a linear dependence appears.
  std::vector<Matrix<T>> powers{Matrix<T>::identity(n)};
  for (std::size_t k = 1; k <= n; ++k) {
    powers.push_back(powers.back() * m);
    Matrix<T> a(n * n, k);
    Matrix<T> b(n * n, 1);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n * n; ++i) a(i, j) = powers[j](i / n, i % n);
    for (std::size_t i = 0; i < n * n; ++i) b(i, 0) = powers[k](i / n, i % n);
    if (auto x = solve(a, b)) {
      std::vector<T> c(k + 1, T(0));
      for (std::size_t j = 0; j < k; ++j) c[j] = T(0) - (*x)(j, 0);
      c[k] = T(1);
      return Poly<T>(std::move(c));
    }
  }
  throw Error(ErrorCode::InvalidInput, "minimal polynomial search failed");
}

/// Characteristic polynomial det(X - M) via the Faddeev-LeVerrier recurrence.
template <class T>
Poly<T> characteristic_polynomial(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  Matrix<T> mk = Matrix<T>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<T> am = m * mk;
    T tr(0);
    for (std::size_t i = 0; i < n; ++i) tr = tr + am(i, i);
    c[n - k] = T(0) - tr / T(static_cast<long>(k));
    mk = am + c[n - k] * Matrix<T>::identity(n);
  }
  return Poly<T>(std::move(c));
}

using RatMatrix = Matrix<Rat>;

RatMatrix companion(const RatPoly& monic);

}  // namespace avq
