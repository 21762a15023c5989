#pragma once

#include "sympde/matrix.hpp"

#include <array>
#include <string>
#include <vector>

namespace sympde {

//==============================================================================
// The fixed symplectic space C = V + V*, basis e1,e2,e3, e4=eps1, e5=eps2,
// e6=eps3; omega = x1^x4 + x2^x5 + x3^x6. Quadratic forms are stored as the
// symmetric matrix M of q = sum M_ab x^a x^b in the coordinates x^a dual to
// the fixed basis (symmetric products carry 1/2 on off-diagonal pairs).
//==============================================================================

//! Gram matrix J of omega: J(i, i+3) = +1, J(i+3, i) = -1.
template <class S> Matrix<S> gram() {
  Matrix<S> j(6, 6);
  for (int i = 0; i < 3; ++i) {
    j(i, i + 3) = scalar_of<S>(1);
    j(i + 3, i) = scalar_of<S>(-1);
  }
  return j;
}

template <class S> bool is_symplectic(const Matrix<S> &g, const Tol &tol = {}) {
  if (g.rows() != 6 || g.cols() != 6) throw Error(ErrorKind::dimension, "is_symplectic needs 6x6");
  return (g.transpose() * gram<S>() * g - gram<S>()).is_zero(tol);
}

//! Membership in sp(6): gram * X symmetric (equivalently block (S,R;T,-S^t)).
template <class S> bool in_sp_algebra(const Matrix<S> &x, const Tol &tol = {}) {
  if (x.rows() != 6 || x.cols() != 6) return false;
  return (gram<S>() * x).is_symmetric(tol);
}

//! phi: sp(6) -> S^2(C*), X -> (1/2) X^t J. Sp-equivariant module isomorphism:
//! phi(g^-1 X g) = g^t phi(X) g, and phi(diag(l,m,n,-l,-m,-n)) is the literal
//! Cartan form l*eps1 e1 + m*eps2 e2 + n*eps3 e3.
template <class S> Matrix<S> phi(const Matrix<S> &x, const Tol &tol = {}) {
  if (!in_sp_algebra(x, tol)) throw Error(ErrorKind::domain, "phi: matrix not in sp(6)");
  S half = scalar_of<S>(1) / scalar_of<S>(2);
  return half * (x.transpose() * gram<S>());
}

//! Inverse of phi: Q -> 2 J Q; phi(phi_inv(Q)) = Q exactly.
template <class S> Matrix<S> phi_inv(const Matrix<S> &q) {
  if (q.rows() != 6 || q.cols() != 6) throw Error(ErrorKind::dimension, "phi_inv needs 6x6");
  return scalar_of<S>(2) * (gram<S>() * q);
}

//! Pullback action on quadratic forms, act(g, Q) = g^t Q g (a right action).
template <class S> Matrix<S> act_on_quad(const Matrix<S> &g, const Matrix<S> &q) {
  return g.transpose() * q * g;
}

//==============================================================================
// The 21 basis elements of sp(6): Cartan duals of h1,h2,h3 and the 18 root
// vectors (long E(i,i+3); short differences/sums; negatives by transpose).
//==============================================================================

template <class S> Matrix<S> elementary6(int i, int j) {
  Matrix<S> e(6, 6);
  e(i - 1, j - 1) = scalar_of<S>(1);
  return e;
}

template <class S> struct SpBasisElement {
  std::string name;
  Matrix<S> x;
};

template <class S> std::vector<SpBasisElement<S>> sp_basis() {
  using E = SpBasisElement<S>;
  auto el = [](int i, int j) { return elementary6<S>(i, j); };
  std::vector<E> b;
  for (int i = 1; i <= 3; ++i) {
    Matrix<S> h(6, 6);
    h(i - 1, i - 1) = scalar_of<S>(1);
    h(i + 2, i + 2) = scalar_of<S>(-1);
    b.push_back({"h" + std::to_string(i), h});
  }
  std::vector<std::pair<std::string, Matrix<S>>> pos = {
      {"2h1", el(1, 4)},
      {"2h2", el(2, 5)},
      {"2h3", el(3, 6)},
      {"h1-h2", el(1, 2) - el(5, 4)},
      {"h2-h3", el(2, 3) - el(6, 5)},
      {"h1-h3", el(1, 3) - el(6, 4)},
      {"h1+h2", el(1, 5) + el(2, 4)},
      {"h2+h3", el(2, 6) + el(3, 5)},
      {"h1+h3", el(1, 6) + el(3, 4)},
  };
  for (auto &[nm, x] : pos) b.push_back({nm, x});
  for (auto &[nm, x] : pos) b.push_back({"-(" + nm + ")", x.transpose()});
  return b;
}

//==============================================================================
// Legendre transformations
//==============================================================================

//! Partial Legendre on an index set m in {1,2,3}: swaps the selected pairs
//! e_i <-> eps_i with signs e_i -> -eps_i, eps_i -> e_i; empty set = identity.
template <class S> Matrix<S> legendre(const std::vector<int> &index_set) {
  Matrix<S> g = Matrix<S>::identity(6);
  for (int i : index_set) {
    if (i < 1 || i > 3) throw Error(ErrorKind::domain, "legendre index out of range");
    g(i - 1, i - 1) = S{};
    g(i + 2, i + 2) = S{};
    g(i - 1, i + 2) = scalar_of<S>(1);
    g(i + 2, i - 1) = scalar_of<S>(-1);
  }
  return g;
}

template <class S> Matrix<S> legendre_total() { return legendre<S>({1, 2, 3}); }

//==============================================================================
// Random symplectic matrices (exact on the rational path)
//==============================================================================

//! g = [[A,0],[0,A^-t]] [[I,B],[0,I]] [[I,0],[C,I]], A invertible, B,C symmetric.
template <class S> Matrix<S> random_sp(std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix<S> a(3, 3), b(3, 3), c(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = scalar_of<S>(rng.uniform(-2, 2));
        S vb = scalar_of<S>(rng.uniform(-2, 2));
        S vc = scalar_of<S>(rng.uniform(-2, 2));
        if (j >= i) {
          b(i, j) = vb, b(j, i) = vb;
          c(i, j) = vc, c(j, i) = vc;
        }
      }
    if (scalar_abs(a.det()) < 1e-12) continue;
    Matrix<S> ait = inverse(a).transpose();
    Matrix<S> g1(6, 6), g2 = Matrix<S>::identity(6), g3 = Matrix<S>::identity(6);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        g1(i, j) = a(i, j);
        g1(i + 3, j + 3) = ait(i, j);
        g2(i, j + 3) = b(i, j);
        g3(i + 3, j) = c(i, j);
      }
    return g1 * g2 * g3;
  }
  throw Error(ErrorKind::sampling, "random_sp: could not draw an invertible A");
}

//! Random element of sp(6) with small rational block entries.
template <class S> Matrix<S> random_sp_algebra(std::uint64_t seed) {
  Rng rng(seed);
  Matrix<S> x(6, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      S s = scalar_of<S>(rng.uniform(-3, 3));
      x(i, j) = s;
      x(j + 3, i + 3) -= s; // will be overwritten consistently below
    }
  // rebuild -S^t block exactly
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x(i + 3, j + 3) = -x(j, i);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      S r = scalar_of<S>(rng.uniform(-3, 3));
      S t = scalar_of<S>(rng.uniform(-3, 3));
      x(i, j + 3) = r;
      x(j, i + 3) = r;
      x(i + 3, j) = t;
      x(j + 3, i) = t;
    }
  return x;
}

} // namespace sympde
