#pragma once

#include "sympde/scalar.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace sympde {

//==============================================================================
// Small dense matrices over either scalar path
//==============================================================================

template <class S> class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, S{}) {
    if (rows < 0 || cols < 0) throw Error(ErrorKind::dimension, "negative matrix size");
  }
  Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = int(rows.size());
    cols_ = rows_ ? int(rows.begin()->size()) : 0;
    a_.reserve(std::size_t(rows_) * cols_);
    for (auto &r : rows) {
      if (int(r.size()) != cols_) throw Error(ErrorKind::dimension, "ragged initializer");
      for (long v : r) a_.push_back(scalar_of<S>(v));
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_of<S>(1);
    return m;
  }
  static Matrix zero(int r, int c) { return Matrix(r, c); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S &operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const S &operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  friend Matrix operator+(const Matrix &x, const Matrix &y) {
    x.check_same(y);
    Matrix r = x;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
    return r;
  }
  friend Matrix operator-(const Matrix &x, const Matrix &y) {
    x.check_same(y);
    Matrix r = x;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
    return r;
  }
  friend Matrix operator-(const Matrix &x) {
    Matrix r = x;
    for (auto &v : r.a_) v = -v;
    return r;
  }
  friend Matrix operator*(const Matrix &x, const Matrix &y) {
    if (x.cols_ != y.rows_) throw Error(ErrorKind::dimension, "matrix product shape mismatch");
    Matrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const S &xik = x(i, k);
        if (xik == S{}) continue;
        for (int j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend Matrix operator*(const S &c, const Matrix &x) {
    Matrix r = x;
    for (auto &v : r.a_) v = c * v;
    return r;
  }
  friend bool operator==(const Matrix &x, const Matrix &y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  //! Largest entry magnitude (double estimate); scale reference for zero tests.
  double max_abs() const {
    double m = 0;
    for (auto &v : a_) m = std::max(m, scalar_abs(v));
    return m;
  }

  bool is_zero(const Tol &tol) const {
    double scale = std::max(1.0, max_abs());
    for (auto &v : a_)
      if (!ScalarTraits<S>::is_zero(v, tol, ScalarTraits<S>::exact ? 1.0 : scale)) return false;
    return true;
  }

  bool is_symmetric(const Tol &tol) const {
    if (!square()) return false;
    double scale = std::max(1.0, max_abs());
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (!ScalarTraits<S>::is_zero((*this)(i, j) - (*this)(j, i), tol,
                                      ScalarTraits<S>::exact ? 1.0 : scale))
          return false;
    return true;
  }

  Matrix submatrix(int r0, int c0, int nr, int nc) const {
    Matrix r(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

  //! Minor obtained by deleting row i and column j.
  Matrix minor_matrix(int i, int j) const {
    Matrix r(rows_ - 1, cols_ - 1);
    for (int a = 0, ra = 0; a < rows_; ++a) {
      if (a == i) continue;
      for (int b = 0, rb = 0; b < cols_; ++b) {
        if (b == j) continue;
        r(ra, rb++) = (*this)(a, b);
      }
      ++ra;
    }
    return r;
  }

  S det() const {
    if (!square()) throw Error(ErrorKind::dimension, "determinant of non-square matrix");
    int n = rows_;
    if (n == 0) return scalar_of<S>(1);
    if (n == 1) return (*this)(0, 0);
    if (n == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    // Gaussian elimination with magnitude pivoting; exact over GQ.
    Matrix m = *this;
    S d = scalar_of<S>(1);
    for (int c = 0; c < n; ++c) {
      int p = -1;
      double best = 0;
      for (int i = c; i < n; ++i) {
        double w = scalar_abs(m(i, c));
        if (w > best) best = w, p = i;
      }
      if (p < 0) return S{};
      if (p != c) {
        for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
        d = -d;
      }
      d *= m(c, c);
      for (int i = c + 1; i < n; ++i) {
        if (m(i, c) == S{}) continue;
        S f = m(i, c) / m(c, c);
        for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return d;
  }

private:
  void check_same(const Matrix &y) const {
    if (rows_ != y.rows_ || cols_ != y.cols_)
      throw Error(ErrorKind::dimension, "matrix shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

//==============================================================================
// Row reduction, rank, solving
//==============================================================================

//! Echelon form in place; returns pivot column list. Zero test scales with the
//! largest entry of the partially reduced matrix (avoids false rank drops).
template <class S>
std::vector<int> row_reduce(Matrix<S> &m, const Tol &tol) {
  std::vector<int> pivots;
  int r = 0;
  double scale = std::max(1.0, m.max_abs());
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    double best = 0;
    for (int i = r; i < m.rows(); ++i) {
      double w = scalar_abs(m(i, c));
      if (w > best) best = w, p = i;
    }
    if constexpr (ScalarTraits<S>::exact) {
      if (p < 0 || m(p, c) == S{}) continue;
    } else {
      if (p < 0 || best <= tol.at_scale(scale)) continue;
    }
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    S inv = scalar_of<S>(1) / m(r, c);
    for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == S{}) continue;
      S f = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class S> int rank(Matrix<S> m, const Tol &tol = {}) {
  return int(row_reduce(m, tol).size());
}

//! Adjugate (transpose of cofactors): M * adj(M) = det(M) * I.
template <class S> Matrix<S> adjugate(const Matrix<S> &m) {
  if (!m.square()) throw Error(ErrorKind::dimension, "adjugate of non-square matrix");
  int n = m.rows();
  if (n > 6) throw Error(ErrorKind::dimension, "adjugate limited to n <= 6");
  if (n == 1) return Matrix<S>::identity(1);
  Matrix<S> r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      S c = m.minor_matrix(i, j).det();
      if ((i + j) % 2) c = -c;
      r(j, i) = c;
    }
  return r;
}

//! Solve A x = b (multiple right-hand sides). Consistent systems only; free
//! variables are set to zero. Throws ErrorKind::inconsistent otherwise.
template <class S>
Matrix<S> solve_linear(const Matrix<S> &A, const Matrix<S> &b, const Tol &tol = {}) {
  if (A.rows() != b.rows()) throw Error(ErrorKind::dimension, "solve: row mismatch");
  int n = A.rows(), m = A.cols(), k = b.cols();
  Matrix<S> aug(n, m + k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) aug(i, j) = A(i, j);
    for (int j = 0; j < k; ++j) aug(i, m + j) = b(i, j);
  }
  auto pivots = row_reduce(aug, tol);
  double scale = std::max(1.0, aug.max_abs());
  // A pivot in the augmented block means the system is inconsistent.
  for (std::size_t t = 0; t < pivots.size(); ++t)
    if (pivots[t] >= m) {
      double resid = 0;
      for (int j = m; j < m + k; ++j) resid = std::max(resid, scalar_abs(aug(int(t), j)));
      throw Error(ErrorKind::inconsistent,
                  "inconsistent linear system, residual ~" + std::to_string(resid));
    }
  // Also catch 0 = nonzero rows below the pivot rows on the float path.
  for (int i = int(pivots.size()); i < n; ++i)
    for (int j = m; j < m + k; ++j)
      if (!ScalarTraits<S>::is_zero(aug(i, j), tol, scale))
        throw Error(ErrorKind::inconsistent, "inconsistent linear system");
  Matrix<S> x(m, k);
  for (std::size_t t = 0; t < pivots.size(); ++t)
    for (int j = 0; j < k; ++j) x(pivots[t], j) = aug(int(t), m + j);
  return x;
}

//! Basis of the right null space, one column per basis vector.
template <class S> Matrix<S> nullspace(Matrix<S> m, const Tol &tol = {}) {
  int n = m.cols();
  auto pivots = row_reduce(m, tol);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  int nfree = n - int(pivots.size());
  Matrix<S> basis(n, nfree);
  int col = 0;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(f, col) = scalar_of<S>(1);
    for (std::size_t t = 0; t < pivots.size(); ++t) basis(pivots[t], col) = -m(int(t), f);
    ++col;
  }
  return basis;
}

template <class S> Matrix<S> inverse(const Matrix<S> &m, const Tol &tol = {}) {
  if (!m.square()) throw Error(ErrorKind::dimension, "inverse of non-square matrix");
  return solve_linear(m, Matrix<S>::identity(m.rows()), tol);
}

template <class S> S trace(const Matrix<S> &m) {
  S t{};
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

//! Max |entry| of (a - c*b); projective residual helper.
template <class S>
double proportionality_residual(const Matrix<S> &a, const Matrix<S> &b) {
  // scale chosen on b's largest entry
  int bi = 0, bj = 0;
  double best = -1;
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (scalar_abs(b(i, j)) > best) best = scalar_abs(b(i, j)), bi = i, bj = j;
  if (best <= 0) return a.max_abs();
  S c = a(bi, bj) / b(bi, bj);
  double r = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r = std::max(r, scalar_abs(a(i, j) - c * b(i, j)));
  double denom = std::max(a.max_abs(), 1e-300);
  return r / std::max(1.0, denom);
}

} // namespace sympde
