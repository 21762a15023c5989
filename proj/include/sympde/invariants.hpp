#pragma once

#include "sympde/forms.hpp"
#include "sympde/poly.hpp"

#include <array>

namespace sympde {

//==============================================================================
// The quadratic invariant (double contraction with the inverse symplectic
// bivector), the Hamiltonian moment map, the quartic dual-variety invariant,
// and the O/L/G/P classifier for effective 3-forms.
//==============================================================================

enum class FormClass { O, L, G, P };

inline const char *to_string(FormClass c) {
  switch (c) {
  case FormClass::O: return "O";
  case FormClass::L: return "L";
  case FormClass::G: return "G";
  case FormClass::P: return "P";
  }
  return "?";
}

namespace detail {

//! Full antisymmetric coefficient tensor of a 3-form.
template <class S> void full_tensor(const ThreeForm<S> &t, std::array<std::array<std::array<S, 6>, 6>, 6> &T) {
  for (auto &p : T)
    for (auto &q : p) q.fill(S{});
  const auto &ts = triples();
  static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  static const int psign[6] = {1, 1, 1, -1, -1, -1};
  for (int n = 0; n < 20; ++n) {
    const S &c = t.coeff_sorted(n);
    if (c == S{}) continue;
    int idx[3] = {ts[std::size_t(n)].a - 1, ts[std::size_t(n)].b - 1, ts[std::size_t(n)].c - 1};
    for (int p = 0; p < 6; ++p) {
      S v = psign[p] < 0 ? -c : c;
      T[std::size_t(idx[perm[p][0]])][std::size_t(idx[perm[p][1]])][std::size_t(idx[perm[p][2]])] = v;
    }
  }
}

//! Index paired with i (0-based) by the symplectic coupling, and its weight
//! in the inverse bivector x41 + x52 + x63.
inline int couple(int i) { return i < 3 ? i + 3 : i - 3; }
inline int couple_sign(int i) { return i < 3 ? -1 : 1; }

} // namespace detail

//! Quadratic invariant of an effective 3-form: the double contraction with
//! the inverse symplectic bivector, as a quadratic form on C (6x6 symmetric
//! matrix in the fixed dual coordinates). Sp-equivariant — the value on g.eta
//! pulled back through g equals the value on eta — and normalized so that
//! e123 + e456 maps to 4 q^(3).
template <class S> Matrix<S> quad_invariant(const EffForm<S> &f) {
  ThreeForm<S> t = embed(f);
  std::array<std::array<std::array<S, 6>, 6>, 6> T;
  detail::full_tensor(t, T);
  Matrix<S> raw(6, 6);
  for (int a = 0; a < 6; ++a)
    for (int b = a; b < 6; ++b) {
      S s{};
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          const S &u = T[std::size_t(a)][std::size_t(i)][std::size_t(j)];
          if (u == S{}) continue;
          const S &v = T[std::size_t(b)][std::size_t(detail::couple(i))][std::size_t(detail::couple(j))];
          if (v == S{}) continue;
          int sg = detail::couple_sign(i) * detail::couple_sign(j);
          S term = u * v;
          s += sg < 0 ? -term : term;
        }
      raw(a, b) = s;
      raw(b, a) = s;
    }
  Matrix<S> j = gram<S>();
  if (f.side == Side::vector_side) return j * raw * j;
  return scalar_of<S>(-1) * raw;
}

//! Derived action of an sp element on a 3-form (Leibniz on wedge factors).
template <class S>
ThreeForm<S> algebra_act_form(const Matrix<S> &x, const ThreeForm<S> &t) {
  Matrix<S> slot = t.side() == Side::vector_side ? x : scalar_of<S>(-1) * x.transpose();
  ThreeForm<S> r(t.side());
  const auto &ts = detail::triples();
  for (int n = 0; n < 20; ++n) {
    const S &c = t.coeff_sorted(n);
    if (c == S{}) continue;
    int idx[3] = {ts[std::size_t(n)].a, ts[std::size_t(n)].b, ts[std::size_t(n)].c};
    for (int s = 0; s < 3; ++s)
      for (int i = 1; i <= 6; ++i) {
        const S &w = slot(i - 1, idx[s] - 1);
        if (w == S{}) continue;
        int tri[3] = {idx[0], idx[1], idx[2]};
        tri[s] = i;
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) continue;
        r.add_term(tri[0], tri[1], tri[2], c * w);
      }
  }
  return r;
}

//! Hamiltonian moment map, computed independently of quad_invariant: the unique
//! symmetric s with tr(s X^t J) = (1/2) Omega(X.eta, eta) over the 21-element
//! basis, transported to a quadratic form on C. quad_invariant = 4 * moment_map globally.
template <class S> Matrix<S> moment_map(const EffForm<S> &f, const Tol &tol = {}) {
  ThreeForm<S> t = embed(f);
  auto basis = sp_basis<S>();
  // unknown order: s_{ab}, a <= b (21 of them)
  Matrix<S> A(21, 21), b(21, 1);
  S half = scalar_of<S>(1) / scalar_of<S>(2);
  for (int k = 0; k < 21; ++k) {
    const Matrix<S> &x = basis[std::size_t(k)].x;
    Matrix<S> m = x.transpose() * gram<S>();
    int col = 0;
    for (int a = 0; a < 6; ++a)
      for (int bb = a; bb < 6; ++bb) {
        A(k, col) = a == bb ? m(a, a) : m(a, bb) + m(bb, a);
        ++col;
      }
    b(k, 0) = half * omega_pair(algebra_act_form(x, t), t);
  }
  Matrix<S> sv = solve_linear(A, b, tol);
  Matrix<S> s(6, 6);
  int col = 0;
  for (int a = 0; a < 6; ++a)
    for (int bb = a; bb < 6; ++bb) {
      s(a, bb) = sv(col, 0);
      s(bb, a) = sv(col, 0);
      ++col;
    }
  Matrix<S> j = gram<S>();
  return j * s * j;
}

//==============================================================================
// Quartic invariant of the dual variety, with its exact gradient
//==============================================================================

namespace detail {

//! 14 coordinates in the order p123, X11,X12,X13,X22,X23,X33, Y.., p456.
inline int sym_index(int i, int j) { // 0-based, returns 0..5
  if (i > j) std::swap(i, j);
  static const int tab[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return tab[i][j];
}

template <class S> std::vector<S> quartic_coords(const EffForm<S> &f) {
  std::vector<S> x(14);
  x[0] = f.p123;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      x[std::size_t(1 + sym_index(i, j))] = f.xs(i, j);
      x[std::size_t(7 + sym_index(i, j))] = f.ys(i, j);
    }
  x[13] = f.p456;
  return x;
}

//! The invariant quartic built once as an exact 14-variable polynomial.
template <class S> const Poly<S> &quartic_poly() {
  static const Poly<S> f = [] {
    using P = Poly<S>;
    auto var = [](int k) { return P::variable(14, k); };
    P p123 = var(0), p456 = var(13);
    P X[3][3], Y[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        X[i][j] = var(1 + sym_index(i, j));
        Y[i][j] = var(7 + sym_index(i, j));
      }
    auto det3 = [](P m[3][3]) {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    auto comp2 = [](P m[3][3], int i, int j) { // det of the block complementary to row i col j
      int r[2], c[2], nr = 0, nc = 0;
      for (int k = 0; k < 3; ++k) {
        if (k != i) r[nr++] = k;
        if (k != j) c[nc++] = k;
      }
      return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]];
    };
    P trXY(14);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trXY = trXY + X[i][j] * Y[j][i];
    P four = P::constant(14, scalar_of<S>(4));
    P t1 = (p123 * p456 - trXY) * (p123 * p456 - trXY);
    P t2 = four * p123 * det3(Y);
    P t3 = four * p456 * det3(X);
    P t4(14);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t4 = t4 + comp2(X, i, j) * comp2(Y, i, j);
    return t1 + t2 + t3 - four * t4;
  }();
  return f;
}

template <class S> const std::array<Poly<S>, 14> &quartic_grad_poly() {
  static const std::array<Poly<S>, 14> g = [] {
    std::array<Poly<S>, 14> r;
    for (int k = 0; k < 14; ++k) r[std::size_t(k)] = quartic_poly<S>().derivative(k);
    return r;
  }();
  return g;
}

} // namespace detail

//! Degree-4 Sp-invariant cutting out the dual variety of the Lagrangian
//! Grassmannian; vanishes identically on Plucker images.
template <class S> S quartic_f(const EffForm<S> &f) {
  return detail::quartic_poly<S>().eval(detail::quartic_coords(f));
}

//! Exact polynomial gradient in the 14 coordinates (Euler: x . grad = 4 f).
template <class S> std::vector<S> grad_f(const EffForm<S> &f) {
  auto x = detail::quartic_coords(f);
  std::vector<S> g(14);
  for (int k = 0; k < 14; ++k) g[std::size_t(k)] = detail::quartic_grad_poly<S>()[std::size_t(k)].eval(x);
  return g;
}

//==============================================================================
// O / L / G / P classification
//==============================================================================

//! Classifies a nonzero effective 3-form into its Sp(6) orbit. Thresholds are
//! scaled by homogeneity (2 for the quadratic, 4 for the quartic, 3 for its
//! gradient); the rank of the quadratic invariant (6/3/1/0) must agree with
//! the polynomial route or a conflict is raised.
template <class S> FormClass classify_3form(const EffForm<S> &f, const Tol &tol = {}) {
  if (f.is_zero(tol)) throw Error(ErrorKind::degenerate, "classify_3form: zero form");
  double h = std::max(1.0, f.max_abs());
  Matrix<S> k = quad_invariant(f);
  auto zero_at = [&](double v, double pow) {
    double s = 1.0;
    for (int i = 0; i < int(pow); ++i) s *= h;
    return v <= tol.at_scale(s);
  };
  bool k_zero;
  if constexpr (ScalarTraits<S>::exact)
    k_zero = k.is_zero(tol);
  else
    k_zero = zero_at(k.max_abs(), 2);
  FormClass cls;
  if (k_zero) {
    cls = FormClass::P;
  } else {
    S fv = quartic_f(f);
    bool f_zero = ScalarTraits<S>::exact ? fv == S{} : zero_at(scalar_abs(fv), 4);
    if (!f_zero) {
      cls = FormClass::O;
    } else {
      auto g = grad_f(f);
      double gm = 0;
      bool g_zero = true;
      for (auto &v : g) {
        gm = std::max(gm, scalar_abs(v));
        if constexpr (ScalarTraits<S>::exact) {
          if (!(v == S{})) g_zero = false;
        }
      }
      if constexpr (!ScalarTraits<S>::exact) g_zero = zero_at(gm, 3);
      cls = g_zero ? FormClass::G : FormClass::L;
    }
  }
  int expected = cls == FormClass::O ? 6 : cls == FormClass::L ? 3 : cls == FormClass::G ? 1 : 0;
  int rk = rank(k, tol);
  if (rk != expected)
    throw Error(ErrorKind::ambiguity, std::string("classifier conflict: polynomial route gives ") +
                                          to_string(cls) + " but rank of the quadratic invariant is " +
                                          std::to_string(rk));
  return cls;
}

} // namespace sympde
