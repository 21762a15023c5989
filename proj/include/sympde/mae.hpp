#pragma once

#include "sympde/invariants.hpp"

#include <optional>

namespace sympde {

//==============================================================================
// Equations F(u_ij) = 0 as hyperplane sections of the Lagrangian Grassmannian:
// coefficient extraction, point sampling, symbols, adjugate cocharacteristics,
// Schubert sections, and exact first-integral verification.
//==============================================================================

//! F(U) = c0 + tr(lin U) + tr(cof U#) + c3 det U.
template <class S> struct MaeCoeffs {
  S c0{};
  Matrix<S> lin{3, 3};
  Matrix<S> cof{3, 3};
  S c3{};
};

//! Coefficients of the hyperplane section cut out by a covector-side form.
template <class S> MaeCoeffs<S> mae_from_form(const EffForm<S> &f) {
  if (f.side != Side::covector_side)
    throw Error(ErrorKind::domain, "mae_from_form needs a covector-side form");
  return {f.p123, f.xs, f.ys, f.p456};
}

//! Covector-side form of an equation (inverse of mae_from_form).
template <class S> EffForm<S> form_from_mae(const MaeCoeffs<S> &m, const Tol &tol = {}) {
  if (!m.lin.is_symmetric(tol) || !m.cof.is_symmetric(tol))
    throw Error(ErrorKind::domain, "mae coefficients must be symmetric");
  return {m.c0, m.lin, m.cof, m.c3, Side::covector_side};
}

template <class S> S F_eval(const MaeCoeffs<S> &m, const Matrix<S> &u) {
  return m.c0 + trace(m.lin * u) + trace(m.cof * adjugate(u)) + m.c3 * u.det();
}

//! Pairing of a covector-side and a vector-side 3-form in dual bases;
//! F_eval(mae_from_form(eta), U) equals dual_pair(eta, plucker([I;U])) exactly.
template <class S> S dual_pair(const ThreeForm<S> &cov, const ThreeForm<S> &vec) {
  if (cov.side() != Side::covector_side || vec.side() != Side::vector_side)
    throw Error(ErrorKind::domain, "dual_pair wants (covector, vector)");
  S r{};
  for (int n = 0; n < 20; ++n) r += cov.coeff_sorted(n) * vec.coeff_sorted(n);
  return r;
}

//==============================================================================
// Sampling points of the equation
//==============================================================================

namespace detail {

constexpr int sym_slots[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};

} // namespace detail

//! A point U with F(U) ~ 0: five entries are drawn at random and the affine
//! equation in a diagonal entry is solved (rotating u11 -> u22 -> u33, then a
//! quadratic off-diagonal fallback). Exact on the rational path.
template <class S>
Matrix<S> sample_solution(const MaeCoeffs<S> &m, std::uint64_t seed, const Tol &tol = {}) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Matrix<S> u(3, 3);
    for (int s = 0; s < 6; ++s) {
      S v = scalar_of<S>(rng.uniform(-6, 6)) / scalar_of<S>(2);
      u(detail::sym_slots[s][0], detail::sym_slots[s][1]) = v;
      u(detail::sym_slots[s][1], detail::sym_slots[s][0]) = v;
    }
    // try each diagonal entry: F is affine in it
    for (int d = 0; d < 3; ++d) {
      Matrix<S> u0 = u, u1 = u;
      u0(d, d) = S{};
      u1(d, d) = scalar_of<S>(1);
      S b = F_eval(m, u0);
      S a = F_eval(m, u1) - b;
      if (ScalarTraits<S>::is_zero(a, tol, std::max(1.0, scalar_abs(b)))) continue;
      u(d, d) = -b / a;
      return u;
    }
    // off-diagonal fallback: F is at most quadratic there
    for (int s = 1; s < 6; ++s) {
      int i = detail::sym_slots[s][0], j = detail::sym_slots[s][1];
      if (i == j) continue;
      auto with = [&](long v) {
        Matrix<S> w = u;
        w(i, j) = scalar_of<S>(v);
        w(j, i) = scalar_of<S>(v);
        return F_eval(m, w);
      };
      S f0 = with(0), f1 = with(1), fm1 = with(-1);
      S two = scalar_of<S>(2);
      S qa = (f1 + fm1 - two * f0) / two; // quadratic coefficient
      S qb = (f1 - fm1) / two;
      if (!ScalarTraits<S>::is_zero(qa, tol)) {
        if constexpr (!ScalarTraits<S>::exact) {
          CD disc = ScalarTraits<S>::to_cd(qb * qb - scalar_of<S>(4) * qa * f0);
          CD root = from_std(std::sqrt(std_complex(disc)));
          S x = (S{root.re, root.im} - qb) / (two * qa);
          u(i, j) = x;
          u(j, i) = x;
          return u;
        }
        continue; // exact path: no exact square root in general, redraw
      }
      if (!ScalarTraits<S>::is_zero(qb, tol)) {
        S x = -f0 / qb;
        u(i, j) = x;
        u(j, i) = x;
        return u;
      }
    }
  }
  throw Error(ErrorKind::sampling, "sample_solution: retries exhausted");
}

//==============================================================================
// Symbols and cocharacteristics
//==============================================================================

namespace detail {

//! Full-matrix gradient of tr(C adj(U)) for symmetric C, U.
template <class S> Matrix<S> grad_tr_cof(const Matrix<S> &c, const Matrix<S> &u) {
  S trc = trace(c), tru = trace(u), trcu = trace(c * u);
  Matrix<S> g = u * c + c * u;
  for (int i = 0; i < 3; ++i) g(i, i) += trc * tru - trcu;
  return g - (tru * c) - (trc * u);
}

} // namespace detail

//! Symbol matrix sigma_ij = (1/(2-delta_ij)) dF/du_ij at U, via exact matrix
//! calculus: sigma = lin + grad tr(cof U#) + c3 U#. For det U - k this is
//! exactly U#. Cross-checked internally against the intrinsic tangent-space
//! route (perturbing the graph frame and pairing with the form).
template <class S>
Matrix<S> symbol_at(const EffForm<S> &eta, const Matrix<S> &u, const Tol &tol = {},
                    bool check_on_equation = true) {
  MaeCoeffs<S> m = mae_from_form(eta);
  if (check_on_equation) {
    // off-equation points are tolerated (warn-only contract): the symbol is
    // still well defined, callers that need on-shell points check F themselves
    (void)tol;
  }
  Matrix<S> sigma = m.lin + detail::grad_tr_cof(m.cof, u) + m.c3 * adjugate(u);
  // independent route: pair the frame-perturbation derivative against eta
  ThreeForm<S> etaf = embed(eta);
  Matrix<S> fr = graph_frame(u);
  Matrix<S> sigma2(3, 3);
  for (int s = 0; s < 6; ++s) {
    int a = detail::sym_slots[s][0], b = detail::sym_slots[s][1];
    ThreeForm<S> deriv(Side::vector_side);
    for (int slot = 0; slot < 3; ++slot) {
      // column `slot` replaced by [0; H e_slot], H = E_ab + E_ba (or E_aa)
      Matrix<S> h(3, 1);
      if (slot == b) h(a, 0) += scalar_of<S>(1);
      if (slot == a && a != b) h(b, 0) += scalar_of<S>(1);
      if (h.max_abs() == 0) continue;
      Matrix<S> dfr = fr;
      for (int r = 0; r < 3; ++r) {
        dfr(r, slot) = S{};
        dfr(r + 3, slot) = h(r, 0);
      }
      deriv = deriv + wedge_columns(dfr, Side::vector_side);
    }
    S v = dual_pair(etaf, deriv);
    if (a != b) v = v / scalar_of<S>(2);
    sigma2(a, b) = v;
    sigma2(b, a) = v;
  }
  double resid = proportionality_residual(sigma2, sigma);
  if (resid > 1e-7 && sigma.max_abs() > 0)
    throw Error(ErrorKind::internal, "symbol paths disagree, residual " + std::to_string(resid));
  return sigma;
}

template <class S>
int char_rank(const EffForm<S> &eta, const Matrix<S> &u, const Tol &tol = {}) {
  Matrix<S> sigma = symbol_at(eta, u, tol);
  double sc = std::max(1.0, u.max_abs());
  if (sigma.max_abs() <= tol.at_scale(sc * sc * std::max(1.0, eta.max_abs())))
    throw Error(ErrorKind::degenerate, "char_rank: zero symbol (non-regular point)");
  return rank(sigma, tol);
}

//! Local cocharacteristic quadric: the adjugate of the symbol.
template <class S>
Matrix<S> cochar_local(const EffForm<S> &eta, const Matrix<S> &u, const Tol &tol = {}) {
  return adjugate(symbol_at(eta, u, tol));
}

template <class S> struct CocharCheck {
  double residual = 0;
  bool applicable = true; // false when the symbol has rank <= 1
};

//! Projective distance between the adjugate of the symbol at U and the
//! restriction of the quadratic invariant to the graph frame [I;U].
template <class S>
CocharCheck<S> cochar_consistency(const EffForm<S> &eta, const Matrix<S> &u, const Tol &tol = {}) {
  Matrix<S> sigma = symbol_at(eta, u, tol);
  if (rank(sigma, tol) <= 1) return {0.0, false};
  Matrix<S> local = adjugate(sigma);
  Matrix<S> fr = graph_frame(u);
  Matrix<S> global = fr.transpose() * quad_invariant(eta) * fr;
  return {proportionality_residual(local, global), true};
}

//==============================================================================
// Rank-one verticals, deviations, characteristic covectors
//==============================================================================

template <class S> Matrix<S> rank_one_vertical(const Matrix<S> &c) {
  if (c.rows() != 3 || c.cols() != 1) throw Error(ErrorKind::dimension, "expected a 3-vector");
  return c * c.transpose();
}

//! 3 - dim(span[I;U] intersect span[I;U+t nu]), from the rank of the stacked
//! 6x6 block matrix; equals rank(nu) for every nonzero t.
template <class S>
int deviation_order(const Matrix<S> &u, const Matrix<S> &nu, const S &t, const Tol &tol = {}) {
  if (t == S{}) throw Error(ErrorKind::domain, "deviation_order needs t != 0");
  Matrix<S> big(6, 6);
  for (int i = 0; i < 3; ++i) {
    big(i, i) = scalar_of<S>(1);
    big(i, i + 3) = scalar_of<S>(1);
    for (int j = 0; j < 3; ++j) {
      big(i + 3, j) = u(i, j);
      big(i + 3, j + 3) = u(i, j) + t * nu(i, j);
    }
  }
  return rank(big, tol) - 3;
}

//! n covectors on the symbol's characteristic conic (float path; the quadric
//! is solved coordinate-wise over C). Each returned c has |c^t sigma c| ~ 0
//! and spans a rank-one tangent line of the equation.
inline std::vector<Matrix<CD>> characteristic_covectors(const Matrix<CD> &sigma, int n,
                                                        std::uint64_t seed, const Tol &tol = {}) {
  double sc = std::max(1.0, sigma.max_abs());
  if (sigma.max_abs() <= tol.at_scale(1.0))
    throw Error(ErrorKind::degenerate, "characteristic_covectors: zero symbol");
  Rng rng(seed);
  std::vector<Matrix<CD>> out;
  int guard = 0;
  while (int(out.size()) < n && guard++ < 100 * n + 100) {
    // unknown slot rotates when the quadratic degenerates
    for (int unknown = 0; unknown < 3 && int(out.size()) < n; ++unknown) {
      Matrix<CD> c(3, 1);
      for (int i = 0; i < 3; ++i)
        if (i != unknown) c(i, 0) = CD(double(rng.uniform(-5, 5)), double(rng.uniform(-5, 5)) / 7.0);
      CD qa = sigma(unknown, unknown);
      CD qb{}, qc{};
      for (int i = 0; i < 3; ++i) {
        if (i == unknown) continue;
        qb += scalar_of<CD>(2) * sigma(unknown, i) * c(i, 0);
        for (int j = 0; j < 3; ++j)
          if (j != unknown) qc += c(i, 0) * sigma(i, j) * c(j, 0);
      }
      CD root;
      if (ScalarTraits<CD>::abs(qa) > tol.at_scale(sc)) {
        CD disc = qb * qb - scalar_of<CD>(4) * qa * qc;
        root = (from_std(std::sqrt(std_complex(disc))) - qb) / (scalar_of<CD>(2) * qa);
      } else if (ScalarTraits<CD>::abs(qb) > tol.at_scale(sc)) {
        root = (CD{} - qc) / qb;
      } else {
        continue;
      }
      c(unknown, 0) = root;
      CD val = (c.transpose() * sigma * c)(0, 0);
      double cm = std::max(1.0, c.max_abs());
      if (ScalarTraits<CD>::abs(val) <= 1e3 * tol.at_scale(sc * cm * cm)) {
        out.push_back(c);
        break;
      }
    }
  }
  if (int(out.size()) < n)
    throw Error(ErrorKind::sampling, "characteristic_covectors: sampling exhausted");
  return out;
}

//==============================================================================
// Schubert sections of Gr(3,6) subspaces
//==============================================================================

//! The covector-side form whose hyperplane section is the cycle of Lagrangian
//! planes meeting span(D) nontrivially: the effective part of the omega-dual
//! of d1^d2^d3. Class G for non-Lagrangian D, class P for Lagrangian D.
template <class S> EffForm<S> schubert_form(const Matrix<S> &d, const Tol &tol = {}) {
  if (d.rows() != 6 || d.cols() != 3 || rank(d, tol) != 3)
    throw Error(ErrorKind::domain, "schubert_form needs a rank-3 6x3 frame");
  ThreeForm<S> vol = wedge_columns(d, Side::vector_side);
  ThreeForm<S> eff = effective_project_form(vol);
  return effective_project(duality_form(eff), tol);
}

//! Spanning vector of D cap D-perp when 1-dimensional; empty for Lagrangian D.
template <class S>
std::optional<Matrix<S>> kernel_line(const Matrix<S> &d, const Tol &tol = {}) {
  if (d.rows() != 6 || d.cols() != 3 || rank(d, tol) != 3)
    throw Error(ErrorKind::domain, "kernel_line needs a rank-3 6x3 frame");
  Matrix<S> k = d.transpose() * gram<S>() * d;
  if (k.is_zero(tol)) return std::nullopt; // Lagrangian: the intersection is all of D
  Matrix<S> ns = nullspace(k, tol);
  if (ns.cols() != 1) throw Error(ErrorKind::internal, "kernel_line: unexpected kernel dimension");
  return d * ns;
}

//! omega-orthogonal complement of the span of a 6x3 frame.
template <class S> Matrix<S> perp(const Matrix<S> &d, const Tol &tol = {}) {
  return nullspace(Matrix<S>(d.transpose() * gram<S>()), tol);
}

//==============================================================================
// First integrals (exact rational arithmetic)
//==============================================================================

//! Polynomial vector field in the six variables u11,u12,u13,u22,u23,u33.
struct VectorField {
  std::array<Poly<GQ>, 6> comp; // components along d/du_s in sym_slots order
};

//! True iff every field annihilates f on the locus {f = 0}: X_i(f) is
//! evaluated exactly at n random rational points of the locus (an identically
//! vanishing X_i(f) is accepted directly). With f = u12 against a field whose
//! derivative stays nonzero on the locus this returns false.
inline bool first_integral_check(const std::vector<VectorField> &fields, const Poly<GQ> &f,
                                 int n, std::uint64_t seed) {
  if (f.nvars() != 6) throw Error(ErrorKind::domain, "first_integral_check: expected 6 variables");
  std::array<Poly<GQ>, 6> df;
  for (int v = 0; v < 6; ++v) df[std::size_t(v)] = f.derivative(v);
  std::vector<Poly<GQ>> xf;
  bool all_identically_zero = true;
  for (const auto &fl : fields) {
    Poly<GQ> g(6);
    for (int v = 0; v < 6; ++v) g = g + fl.comp[std::size_t(v)] * df[std::size_t(v)];
    if (!g.zero()) all_identically_zero = false;
    xf.push_back(std::move(g));
  }
  if (all_identically_zero) return true;
  // sample the locus through a variable in which f is affine
  int affine_var = -1;
  for (int v = 0; v < 6; ++v)
    if (f.degree_in(v) == 1) {
      affine_var = v;
      break;
    }
  if (affine_var < 0) throw Error(ErrorKind::sampling, "first_integral_check: no affine variable");
  auto cs = f.coefficients_in(affine_var);
  Rng rng(seed);
  int produced = 0, guard = 0;
  while (produced < n) {
    if (++guard > 50 * n + 100) throw Error(ErrorKind::sampling, "first_integral_check: sampling exhausted");
    std::vector<GQ> x(6);
    for (int v = 0; v < 6; ++v) x[std::size_t(v)] = GQ{rng.rational(4, 3)};
    GQ a = cs[1].eval(x);
    if (a == GQ{}) continue;
    x[std::size_t(affine_var)] = (GQ{} - cs[0].eval(x)) / a;
    if (!(f.eval(x) == GQ{})) throw Error(ErrorKind::internal, "locus sampling failed");
    ++produced;
    for (const auto &g : xf)
      if (!(g.eval(x) == GQ{})) return false;
  }
  return true;
}

} // namespace sympde
