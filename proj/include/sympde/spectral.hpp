#pragma once

#include "sympde/matrix.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace sympde {

//==============================================================================
// Characteristic polynomial (Faddeev–LeVerrier, division-free up to integers)
//==============================================================================

//! Coefficients c[0..n] of det(tI - M), c[n] = 1, exact on the exact path.
template <class S> std::vector<S> char_poly(const Matrix<S> &m) {
  if (!m.square()) throw Error(ErrorKind::dimension, "char_poly of non-square matrix");
  int n = m.rows();
  std::vector<S> c(static_cast<std::size_t>(n) + 1);
  c[n] = scalar_of<S>(1);
  Matrix<S> mk = Matrix<S>::identity(n);
  for (int k = 1; k <= n; ++k) {
    mk = m * mk;
    S ck = -(trace(mk) / scalar_of<S>(k));
    c[n - k] = ck;
    for (int i = 0; i < n; ++i) mk(i, i) += ck;
  }
  return c;
}

template <class S> S poly_eval(const std::vector<S> &c, const S &x) {
  S r{};
  for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

template <class S> std::vector<S> poly_derivative(const std::vector<S> &c) {
  std::vector<S> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(scalar_of<S>(long(k)) * c[k]);
  return d;
}

namespace detail {

template <class S> void poly_trim(std::vector<S> &c) {
  while (c.size() > 1 && c.back() == S{}) c.pop_back();
}

template <class S> std::vector<S> poly_monic(std::vector<S> c) {
  poly_trim(c);
  S lead = c.back();
  if (!(lead == S{}))
    for (auto &x : c) x = x / lead;
  return c;
}

//! Remainder of a by b (b monic, exact field arithmetic).
template <class S> std::vector<S> poly_rem(std::vector<S> a, const std::vector<S> &b) {
  poly_trim(a);
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == S{})) {
    S f = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    poly_trim(a);
    if (a.size() == 1 && a[0] == S{}) break;
  }
  return a;
}

//! Exact quotient a / b for an exact division (remainder must vanish).
template <class S> std::vector<S> poly_quot(std::vector<S> a, const std::vector<S> &b) {
  poly_trim(a);
  std::vector<S> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, S{});
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == S{})) {
    S f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    poly_trim(a);
    if (a.size() == 1 && a[0] == S{}) break;
  }
  if (!(a.size() == 1 && a[0] == S{}))
    throw Error(ErrorKind::internal, "poly_quot: division is not exact");
  return q;
}

//! Monic gcd by the Euclidean algorithm (exact field coefficients).
template <class S> std::vector<S> poly_gcd(std::vector<S> a, std::vector<S> b) {
  a = poly_monic(std::move(a));
  b = poly_monic(std::move(b));
  while (!(b.size() == 1 && b[0] == S{})) {
    auto r = poly_rem(a, b);
    a = std::move(b);
    b = poly_monic(std::move(r));
    if (b.size() == 1 && b[0] == S{}) break;
  }
  return a;
}

//! Square-free part p / gcd(p, p'): same roots, all simple.
template <class S> std::vector<S> poly_squarefree(const std::vector<S> &p) {
  auto g = poly_gcd(p, poly_derivative(p));
  if (g.size() == 1) return poly_monic(p);
  return poly_monic(poly_quot(poly_monic(p), g));
}

} // namespace detail

//==============================================================================
// All roots of a monic polynomial over C (degree <= 6 in this library)
//==============================================================================

//! Durand–Kerner simultaneous iteration with a final Newton polish per root.
inline std::vector<CD> all_roots(std::vector<CD> c) {
  int n = int(c.size()) - 1;
  while (n > 0 && ScalarTraits<CD>::abs(c[std::size_t(n)]) == 0.0) --n;
  if (n <= 0) return {};
  CD lead = c[std::size_t(n)];
  for (auto &x : c) x = x / lead;
  std::vector<CD> z(static_cast<std::size_t>(n));
  CD w{0.4, 0.9};
  CD p{1.0, 0.0};
  for (int i = 0; i < n; ++i) {
    p = p * w;
    z[std::size_t(i)] = p;
  }
  auto eval = [&](const CD &x) {
    CD r{};
    for (int k = n; k >= 0; --k) r = r * x + c[std::size_t(k)];
    return r;
  };
  for (int it = 0; it < 200; ++it) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      CD denom{1.0, 0.0};
      for (int j = 0; j < n; ++j)
        if (j != i) denom = denom * (z[std::size_t(i)] - z[std::size_t(j)]);
      if (ScalarTraits<CD>::abs(denom) < 1e-300) continue;
      CD step = eval(z[std::size_t(i)]) / denom;
      z[std::size_t(i)] -= step;
      moved = std::max(moved, ScalarTraits<CD>::abs(step));
    }
    if (moved < 1e-15) break;
  }
  // one Newton step sharpens simple roots without disturbing clusters
  std::vector<CD> dc(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) dc[std::size_t(k - 1)] = scalar_of<CD>(k) * c[std::size_t(k)];
  auto deval = [&](const CD &x) {
    CD r{};
    for (int k = n - 1; k >= 0; --k) r = r * x + dc[std::size_t(k)];
    return r;
  };
  for (auto &zi : z) {
    CD d = deval(zi);
    if (ScalarTraits<CD>::abs(d) > 1e-8) zi -= eval(zi) / d;
  }
  return z;
}

//==============================================================================
// Rational reconstruction of numeric roots (exact path only)
//==============================================================================

//! Best rational approximation with denominator <= max_den (continued
//! fractions). |x| is capped so every convergent stays far from overflow.
inline bool reconstruct_rational(double x, long max_den, Rational &out) {
  if (!std::isfinite(x) || std::abs(x) > 1e9 || max_den > 100000000L) return false;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    if (it > 0 && fl > 2e9) break; // the next denominator would exceed max_den
    long a = long(fl);
    long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    long p2 = a * p1 + p0;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    double frac = v - fl;
    if (frac < 1e-14) break;
    v = 1.0 / frac;
  }
  if (q1 <= 0) return false;
  Rational r(p1, q1);
  r.canonicalize();
  if (std::abs(to_double(r) - x) > 1e-6 * std::max(1.0, std::abs(x))) return false;
  out = r;
  return true;
}

//! Gaussian-rational reconstruction of a numeric root, verified exactly
//! against the polynomial. Returns false if the root is not (small) rational.
inline bool reconstruct_root(const std::vector<GQ> &poly, const CD &z, GQ &out) {
  Rational re, im;
  double zr = std::abs(z.re) < 1e-9 ? 0.0 : z.re;
  double zi = std::abs(z.im) < 1e-9 ? 0.0 : z.im;
  if (!reconstruct_rational(zr, 1000000L, re)) return false;
  if (!reconstruct_rational(zi, 1000000L, im)) return false;
  GQ cand{re, im};
  if (poly_eval(poly, cand) != GQ{}) return false;
  out = cand;
  return true;
}

//==============================================================================
// Jordan data: eigenvalue clusters plus per-cluster block partitions
//==============================================================================

template <class S> struct JordanCluster {
  S eigenvalue{};
  std::vector<int> partition; // Jordan block sizes, descending
};

template <class S> struct JordanData {
  std::vector<JordanCluster<S>> clusters;
  int algebraic_total = 0;
};

namespace detail {

//! Jordan partition of eigenvalue lam from the rank chain rank((M-lam I)^k).
//! Float path: the shifted matrix is normalized (powers of a nilpotent decay
//! to rounding dust whose own magnitude defeats a relative threshold), the
//! caller tolerance governs the first power, and higher powers use a
//! near-machine threshold so genuinely small chain amplitudes stay visible.
template <class S>
std::vector<int> partition_from_rank_chain(const Matrix<S> &m, const S &lam, const Tol &tol) {
  int n = m.rows();
  Matrix<S> b = m;
  for (int i = 0; i < n; ++i) b(i, i) -= lam;
  if constexpr (!ScalarTraits<S>::exact) {
    double norm = b.max_abs();
    if (norm <= 1e-12 * std::max(1.0, m.max_abs()))
      return std::vector<int>(std::size_t(n), 1); // the shift is pure dust
    b = S{1.0 / norm, 0.0} * b;
  }
  std::vector<int> rk{n};
  Matrix<S> p = Matrix<S>::identity(n);
  for (int k = 1; k <= n; ++k) {
    p = p * b;
    Tol power_tol = tol;
    if (!ScalarTraits<S>::exact && k > 1) power_tol = Tol{1e-12 * k, 1e-12};
    rk.push_back(rank(p, power_tol));
    if (rk[std::size_t(k)] == rk[std::size_t(k) - 1]) {
      while (int(rk.size()) <= n) rk.push_back(rk.back());
      break;
    }
  }
  std::vector<int> part;
  for (int s = n; s >= 1; --s) {
    int ge_s = rk[std::size_t(s) - 1] - rk[std::size_t(s)];
    int ge_s1 = s < n ? rk[std::size_t(s)] - rk[std::size_t(s) + 1] : 0;
    for (int c = 0; c < ge_s - ge_s1; ++c) part.push_back(s);
  }
  return part;
}

} // namespace detail

//! Exact-path jordan_data: the characteristic polynomial is reduced to its
//! square-free part exactly, so the numeric roots are simple and accurate
//! enough for exact reconstruction. Throws ErrorKind::irrational when an
//! eigenvalue is not Gaussian-rational; callers fall back to the float path.
inline JordanData<GQ> jordan_data(const Matrix<GQ> &m, const Tol &tol = {}) {
  if (!m.square() || m.rows() > 6) throw Error(ErrorKind::dimension, "jordan_data needs square n<=6");
  int n = m.rows();
  auto poly = char_poly(m);
  auto sf = detail::poly_squarefree(poly);
  std::vector<CD> cpoly(sf.size());
  for (std::size_t k = 0; k < sf.size(); ++k) cpoly[k] = ScalarTraits<GQ>::to_cd(sf[k]);
  auto numeric = all_roots(cpoly);
  std::vector<GQ> distinct;
  for (const auto &z : numeric) {
    GQ root;
    if (!reconstruct_root(sf, z, root))
      throw Error(ErrorKind::irrational, "eigenvalue is not Gaussian-rational");
    if (std::find(distinct.begin(), distinct.end(), root) == distinct.end())
      distinct.push_back(root);
  }
  JordanData<GQ> jd;
  for (const auto &lam : distinct) {
    JordanCluster<GQ> cl;
    cl.eigenvalue = lam;
    cl.partition = detail::partition_from_rank_chain(m, lam, tol);
    int mult = 0;
    for (int p : cl.partition) mult += p;
    jd.algebraic_total += mult;
    jd.clusters.push_back(std::move(cl));
  }
  if (jd.algebraic_total != n)
    throw Error(ErrorKind::internal, "jordan_data: multiplicities do not sum to n");
  return jd;
}

namespace detail {

//! Refine the center of a size-m root cluster: a true multiplicity-m root is
//! a simple root of the (m-1)-th derivative, where Newton converges fast.
inline CD refine_center(const std::vector<CD> &poly, CD z, int mult) {
  std::vector<CD> p = poly;
  for (int k = 1; k < mult; ++k) p = poly_derivative(p);
  auto dp = poly_derivative(p);
  for (int it = 0; it < 40; ++it) {
    CD d = poly_eval(dp, z);
    if (ScalarTraits<CD>::abs(d) < 1e-300) break;
    CD step = poly_eval(p, z) / d;
    z -= step;
    if (ScalarTraits<CD>::abs(step) < 1e-16 * std::max(1.0, ScalarTraits<CD>::abs(z))) break;
  }
  return z;
}

} // namespace detail

//! Float-path jordan_data. Numeric roots of a multiplicity-m eigenvalue split
//! by roughly eps^(1/m), so no single clustering radius works: a geometric
//! ladder of radii produces candidate clusterings, each validated against the
//! rank chains (cluster size must equal the algebraic multiplicity at the
//! refined center). Split constellations of one multiple eigenvalue can
//! self-validate as singletons, but their merged picture always validates as
//! well while spurious merges never do, so among all validated clusterings
//! the one with the fewest clusters wins. An ambiguity error is raised when
//! the chosen partitions flip under a 100x tighter tolerance (the input sits
//! on a classification wall).
inline JordanData<CD> jordan_data(const Matrix<CD> &m, const Tol &tol = {}) {
  if (!m.square() || m.rows() > 6) throw Error(ErrorKind::dimension, "jordan_data needs square n<=6");
  int n = m.rows();
  auto poly = char_poly(m);
  auto roots = all_roots(poly);
  double scale = std::max(1e-300, m.max_abs());
  for (const auto &z : roots) scale = std::max(scale, ScalarTraits<CD>::abs(z));
  double radius = std::max(tol.at_scale(scale) * 10, 1e-12 * scale);
  // the top exceeds both the root spread and the starting radius, so pure
  // root-finder rings (roots of an exactly nilpotent polynomial) still merge
  double top = std::max(3 * scale, radius * 100);

  JordanData<CD> best;
  bool have_best = false;
  std::size_t prev_groups = 0;
  for (int rung = 0; rung < 80 && radius <= top; ++rung, radius *= 3) {
    // single-linkage clustering at the current radius
    std::vector<std::vector<CD>> groups;
    for (const auto &z : roots) {
      std::vector<std::size_t> hits;
      for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (const auto &w : groups[gi])
          if (ScalarTraits<CD>::abs(z - w) <= radius) {
            hits.push_back(gi);
            break;
          }
      if (hits.empty()) {
        groups.push_back({z});
      } else {
        groups[hits[0]].push_back(z);
        for (std::size_t k = hits.size(); k-- > 1;) { // merge chained groups
          auto &dst = groups[hits[0]];
          auto &src = groups[hits[std::size_t(k)]];
          dst.insert(dst.end(), src.begin(), src.end());
          groups.erase(groups.begin() + long(hits[std::size_t(k)]));
        }
      }
    }
    if (rung > 0 && groups.size() == prev_groups) continue; // same picture
    prev_groups = groups.size();
    if (have_best && groups.size() >= best.clusters.size()) continue;
    // validate each cluster against its rank chain
    JordanData<CD> jd;
    bool ok = true;
    for (auto &g : groups) {
      CD mean{};
      for (const auto &z : g) mean += z;
      mean = mean / scalar_of<CD>(long(g.size()));
      CD center = detail::refine_center(poly, mean, int(g.size()));
      if (ScalarTraits<CD>::abs(center - mean) > std::max(radius * 4, tol.at_scale(scale)))
        center = mean; // refinement ran away; keep the raw mean
      if (ScalarTraits<CD>::abs(center) <= std::max(radius, tol.at_scale(scale))) center = CD{};
      JordanCluster<CD> cl;
      cl.eigenvalue = center;
      cl.partition = detail::partition_from_rank_chain(m, center, tol);
      int mult = 0;
      for (int p : cl.partition) mult += p;
      if (mult != int(g.size())) {
        ok = false;
        break;
      }
      jd.algebraic_total += mult;
      jd.clusters.push_back(std::move(cl));
    }
    if (!ok || jd.algebraic_total != n) continue;
    best = std::move(jd);
    have_best = true;
  }
  if (!have_best)
    throw Error(ErrorKind::ambiguity, "no self-consistent eigenvalue clustering found");
  // wall detection: partitions must be stable under a much tighter tolerance
  Tol tight{tol.abs_tol / 100, tol.rel_tol / 100};
  for (const auto &cl : best.clusters) {
    auto strict = detail::partition_from_rank_chain(m, cl.eigenvalue, tight);
    if (strict != cl.partition)
      throw Error(ErrorKind::ambiguity,
                  "classification sits on a tolerance wall: the Jordan partition at " +
                      std::to_string(cl.eigenvalue.re) + "+" + std::to_string(cl.eigenvalue.im) +
                      "i changes under a 100x tighter tolerance (candidate clusterings with " +
                      std::to_string(best.clusters.size()) + " or more clusters)");
  }
  return best;
}

} // namespace sympde
