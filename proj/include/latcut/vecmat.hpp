// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT

#ifndef LATCUT_VECMAT_HPP_
#define LATCUT_VECMAT_HPP_

#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "latcut/rational.hpp"

namespace latcut {

// Dense row-major matrix over an arbitrary scalar. Everything in this project
// is at most a few dozen rows/columns, so the aim is clarity and exactness
// (the same code runs over doubles and over rationals), not BLAS speed.
template <class T>
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<T> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, const T& fill = T(0))
      : rows(r), cols(c), data(r * c, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
};

template <class T>
using Vec = std::vector<T>;

using VecD = Vec<double>;
using VecR = Vec<Rat>;
using VecI = Vec<Int>;
using MatD = Mat<double>;
using MatR = Mat<Rat>;

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  assert(a.size() == b.size());
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
Vec<T> mat_vec(const Mat<T>& m, const Vec<T>& v) {
  assert(m.cols == v.size());
  Vec<T> out(m.rows, T(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
  return out;
}

// m^T v for row-major m without materializing the transpose.
template <class T>
Vec<T> mat_tvec(const Mat<T>& m, const Vec<T>& v) {
  assert(m.rows == v.size());
  Vec<T> out(m.cols, T(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[j] += m(i, j) * v[i];
  return out;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
  assert(a.cols == b.rows);
  Mat<T> out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  Mat<T> out(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out(j, i) = m(i, j);
  return out;
}

template <class T>
void axpy(Vec<T>& y, const T& a, const Vec<T>& x) {
  assert(y.size() == x.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

template <class T>
Vec<T> scaled(const Vec<T>& x, const T& a) {
  Vec<T> out(x);
  for (auto& v : out) v *= a;
  return out;
}

template <class T>
Vec<T> vec_sub(const Vec<T>& a, const Vec<T>& b) {
  assert(a.size() == b.size());
  Vec<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <class T>
Vec<T> vec_add(const Vec<T>& a, const Vec<T>& b) {
  assert(a.size() == b.size());
  Vec<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline double norm2(const VecD& v) { return std::sqrt(dot(v, v)); }

// Exact determinant by Gaussian elimination; intended for rational scalars.
template <class T>
T determinant(Mat<T> m) {
  assert(m.rows == m.cols);
  const std::size_t n = m.rows;
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == T(0)) ++piv;
    if (piv == n) return T(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == T(0)) continue;
      T f = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

// Solves m x = rhs for each column of rhs. Exact over rationals; throws if m
// is singular.
template <class T>
Mat<T> solve_linear(Mat<T> m, Mat<T> rhs) {
  assert(m.rows == m.cols && m.rows == rhs.rows);
  const std::size_t n = m.rows, k = rhs.cols;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == T(0)) ++piv;
    if (piv == n) throw std::domain_error("solve_linear: singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      for (std::size_t j = 0; j < k; ++j) std::swap(rhs(piv, j), rhs(col, j));
    }
    T inv = T(1) / m(col, col);
    for (std::size_t j = col; j < n; ++j) m(col, j) *= inv;
    for (std::size_t j = 0; j < k; ++j) rhs(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col) == T(0)) continue;
      T f = m(i, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
      for (std::size_t j = 0; j < k; ++j) rhs(i, j) -= f * rhs(col, j);
    }
  }
  return rhs;
}

template <class T>
Vec<T> solve_linear(const Mat<T>& m, const Vec<T>& rhs) {
  Mat<T> col(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) col(i, 0) = rhs[i];
  Mat<T> sol = solve_linear(m, col);
  Vec<T> out(m.cols);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sol(i, 0);
  return out;
}

// Cholesky factorization m = L L^T for symmetric positive definite m.
// Returns false if a pivot drops below eps (not PD to working precision).
inline bool cholesky(const MatD& m, MatD& lower, double eps = 0.0) {
  assert(m.rows == m.cols);
  const std::size_t n = m.rows;
  lower = MatD(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      if (i == j) {
        if (s <= eps) return false;
        lower(i, i) = std::sqrt(s);
      } else {
        lower(i, j) = s / lower(j, j);
      }
    }
  }
  return true;
}

// Modified Gram-Schmidt with one re-orthogonalization pass. Columns of
// `frame` are orthonormalized in place; returns false if a column is
// (numerically) dependent on the previous ones.
inline bool orthonormalize_columns(MatD& frame, double drop_tol = 1e-10) {
  const std::size_t n = frame.rows, k = frame.cols;
  for (std::size_t j = 0; j < k; ++j) {
    VecD col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = frame(i, j);
    double before = norm2(col);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) {
        double proj = 0;
        for (std::size_t i = 0; i < n; ++i) proj += frame(i, p) * col[i];
        for (std::size_t i = 0; i < n; ++i) col[i] -= proj * frame(i, p);
      }
    }
    double after = norm2(col);
    if (after <= drop_tol * std::max(1.0, before)) return false;
    for (std::size_t i = 0; i < n; ++i) frame(i, j) = col[i] / after;
  }
  return true;
}

inline VecR lift_vec(const VecD& v) {
  VecR out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = rat_from_double(v[i]);
  return out;
}

inline MatR lift_mat(const MatD& m) {
  MatR out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = rat_from_double(m(i, j));
  return out;
}

inline VecD to_double_vec(const VecR& v) {
  VecD out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

inline VecD to_double_vec(const VecI& v) {
  VecD out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

// Narrowing view of an exact integer vector for reporting. Throws rather
// than wrapping silently; every coordinate this project reports lives in a
// box of radius far below 2^63.
inline std::vector<long long> to_longs(const VecI& v) {
  std::vector<long long> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < std::numeric_limits<long long>::min() ||
        v[i] > std::numeric_limits<long long>::max())
      throw std::overflow_error("to_longs: coordinate out of range");
    out[i] = v[i].convert_to<long long>();
  }
  return out;
}

}  // namespace latcut

#endif  // LATCUT_VECMAT_HPP_
