#pragma once

#include "sympde/spectral.hpp"
#include "sympde/symplectic.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace sympde {

//==============================================================================
// Classification of quadratic forms on C up to Sp(6): the complete normal
// form table (7 nilpotent + 6 semisimple + 10 mixed orbits + zero), driven
// entirely by spectral invariants of phi_inv(Q).
//==============================================================================

enum class NFLabel {
  q6, q42, q412, q33, q23, q2212, q214,                     // nilpotent
  q111, q21, q11, q2, q3, q1,                               // semisimple
  q21_h12, q11_m2h1, q2_h23_m2h1, q3_h12_h23, q1_h12_m2h2,  // mixed, dim 18
  q2_h23, q2_m2h1, q3_h12, q1_h12p,                         // mixed, dim 16
  q1_2h1,                                                   // mixed, dim 14
  zero
};

struct NFInfo {
  NFLabel label;
  const char *name;
  const char *orbit_type;
  int dim;
  int nparams;
};

inline const std::vector<NFInfo> &nf_table() {
  static const std::vector<NFInfo> t = {
      {NFLabel::q6, "q[6]", "nilpotent", 18, 0},
      {NFLabel::q111, "q(111)", "semisimple", 18, 3},
      {NFLabel::q21_h12, "q(21)+X{h1-h2}", "mixed", 18, 2},
      {NFLabel::q11_m2h1, "q(11)+X{-2h1}", "mixed", 18, 2},
      {NFLabel::q2_h23_m2h1, "q(2)+X{h2-h3}+X{-2h1}", "mixed", 18, 1},
      {NFLabel::q3_h12_h23, "q(3)+X{h1-h2}+X{h2-h3}", "mixed", 18, 1},
      {NFLabel::q1_h12_m2h2, "q(1)+X{h1-h2}-X{2h2}", "mixed", 18, 1},
      {NFLabel::q42, "q[4,2]", "nilpotent", 16, 0},
      {NFLabel::q21, "q(21)", "semisimple", 16, 2},
      {NFLabel::q11, "q(11)", "semisimple", 16, 2},
      {NFLabel::q2_h23, "q(2)+X{h2-h3}", "mixed", 16, 1},
      {NFLabel::q2_m2h1, "q(2)+X{-2h1}", "mixed", 16, 1},
      {NFLabel::q3_h12, "q(3)+X{h1-h2}", "mixed", 16, 1},
      {NFLabel::q1_h12p, "q(1)-(1/2)X{h1+h2}", "mixed", 16, 1},
      {NFLabel::q412, "q[4,1^2]", "nilpotent", 14, 0},
      {NFLabel::q33, "q[3^2]", "nilpotent", 14, 0},
      {NFLabel::q2, "q(2)", "semisimple", 14, 1},
      {NFLabel::q1_2h1, "q(1)-X{2h1}", "mixed", 14, 1},
      {NFLabel::q23, "q[2^3]", "nilpotent", 12, 0},
      {NFLabel::q3, "q(3)", "semisimple", 12, 1},
      {NFLabel::q2212, "q[2^2,1^2]", "nilpotent", 10, 0},
      {NFLabel::q1, "q(1)", "semisimple", 10, 1},
      {NFLabel::q214, "q[2,1^4]", "nilpotent", 6, 0},
      {NFLabel::zero, "zero", "zero", 0, 0},
  };
  return t;
}

inline const NFInfo &nf_info(NFLabel l) {
  for (const auto &e : nf_table())
    if (e.label == l) return e;
  throw Error(ErrorKind::internal, "unknown normal form label");
}

template <class S> struct NormalForm {
  NFLabel label;
  std::vector<S> params;
  int dim;
  std::string name() const { return nf_info(label).name; }
};

//==============================================================================
// Weyl canonicalization of parameters (signed permutation group)
//==============================================================================

namespace detail {

template <class S> S sign_normalize(const S &v) {
  bool flip;
  if constexpr (ScalarTraits<S>::exact)
    flip = v.re < 0 || (v.re == 0 && v.im < 0);
  else
    flip = v.re < 0 || (v.re == 0 && v.im < 0);
  return flip ? -v : v;
}

template <class S> bool canon_less(const S &a, const S &b) { // sort descending
  double ma = ScalarTraits<S>::abs(a), mb = ScalarTraits<S>::abs(b);
  if (ma != mb) return ma > mb;
  double ra = scalar_abs(S{a.re, {}}), rb = scalar_abs(S{b.re, {}});
  if (ra != rb) return ra > rb;
  return false;
}

} // namespace detail

//! Sign-normalizes each entry into the Re > 0 (or Re = 0, Im > 0) half-plane
//! and sorts by decreasing modulus. Idempotent, invariant under signed
//! permutations of the input.
template <class S> std::vector<S> weyl_canonicalize(std::vector<S> params) {
  if (params.size() > 3) throw Error(ErrorKind::domain, "at most 3 parameters");
  for (auto &v : params) v = detail::sign_normalize(v);
  std::stable_sort(params.begin(), params.end(), detail::canon_less<S>);
  return params;
}

//==============================================================================
// Normal form representatives
//==============================================================================

namespace detail {

//! Decoded (S, R, T) block data of a table row's group element; the
//! representative quadratic form is the equivariant image phi of it.
template <class S> struct RowElement {
  Matrix<S> s{3, 3}, r{3, 3}, t{3, 3};
};

template <class S>
Matrix<S> assemble_sp(const RowElement<S> &e) {
  Matrix<S> x(6, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      x(i, j) = e.s(i, j);
      x(i, j + 3) = e.r(i, j);
      x(i + 3, j) = e.t(i, j);
      x(i + 3, j + 3) = -e.s(j, i);
    }
  return x;
}

template <class S> void require(bool ok, const char *what) {
  if (!ok) throw Error(ErrorKind::invalid_params, what);
}

template <class S> bool distinct_up_to_sign(const S &a, const S &b) {
  return !(a == b) && !(a == -b);
}

} // namespace detail

//! The table element for a label: Cartan part plus nilpotent admixture, as an
//! sp(6) matrix with the exact parameter eigenvalues.
template <class S>
Matrix<S> normal_form_element(NFLabel label, const std::vector<S> &params) {
  using detail::require;
  const NFInfo &info = nf_info(label);
  if (int(params.size()) != info.nparams)
    throw Error(ErrorKind::invalid_params, std::string("label ") + info.name + " expects " +
                                               std::to_string(info.nparams) + " parameter(s)");
  detail::RowElement<S> e;
  S one = scalar_of<S>(1);
  S half = one / scalar_of<S>(2);
  auto nz = [&](const S &v, const char *w) { require<S>(!(v == S{}), w); };
  switch (label) {
  case NFLabel::zero: break;
  case NFLabel::q6: // eps1 e2 + eps2 e3 + e3^2
    e.s(0, 1) = one;
    e.s(1, 2) = one;
    e.r(2, 2) = -one;
    break;
  case NFLabel::q42: // eps1 e3 + e2^2 + e3^2
    e.s(0, 2) = one;
    e.r(1, 1) = -one;
    e.r(2, 2) = -one;
    break;
  case NFLabel::q412: // eps1 e2 + e2^2
    e.s(0, 1) = one;
    e.r(1, 1) = -one;
    break;
  case NFLabel::q33: // eps1 e3 + e2 e3
    e.s(0, 2) = one;
    e.r(1, 2) = -half;
    e.r(2, 1) = -half;
    break;
  case NFLabel::q23: // e1^2 + e2^2 + e3^2
    for (int i = 0; i < 3; ++i) e.r(i, i) = -one;
    break;
  case NFLabel::q2212: // e1^2 + e2^2
    e.r(0, 0) = -one;
    e.r(1, 1) = -one;
    break;
  case NFLabel::q214: // e1^2
    e.r(0, 0) = -one;
    break;
  case NFLabel::q111: {
    nz(params[0], "q(111): lambda must be nonzero");
    nz(params[1], "q(111): mu must be nonzero");
    nz(params[2], "q(111): nu must be nonzero");
    require<S>(detail::distinct_up_to_sign(params[0], params[1]) &&
                   detail::distinct_up_to_sign(params[0], params[2]) &&
                   detail::distinct_up_to_sign(params[1], params[2]),
               "q(111): parameters must be pairwise distinct up to sign");
    for (int i = 0; i < 3; ++i) e.s(i, i) = params[std::size_t(i)];
    break;
  }
  case NFLabel::q21:
  case NFLabel::q21_h12: {
    nz(params[0], "q(21): mu must be nonzero");
    nz(params[1], "q(21): nu must be nonzero");
    require<S>(detail::distinct_up_to_sign(params[0], params[1]),
               "q(21): mu and nu must be distinct up to sign");
    e.s(0, 0) = params[0];
    e.s(1, 1) = params[0];
    e.s(2, 2) = params[1];
    if (label == NFLabel::q21_h12) e.s(0, 1) = one;
    break;
  }
  case NFLabel::q11:
  case NFLabel::q11_m2h1: {
    nz(params[0], "q(11): mu must be nonzero");
    nz(params[1], "q(11): nu must be nonzero");
    require<S>(detail::distinct_up_to_sign(params[0], params[1]),
               "q(11): mu and nu must be distinct up to sign");
    e.s(1, 1) = params[0];
    e.s(2, 2) = params[1];
    if (label == NFLabel::q11_m2h1) e.t(0, 0) = one;
    break;
  }
  case NFLabel::q2:
  case NFLabel::q2_h23:
  case NFLabel::q2_m2h1:
  case NFLabel::q2_h23_m2h1: {
    nz(params[0], "q(2): nu must be nonzero");
    e.s(1, 1) = params[0];
    e.s(2, 2) = params[0];
    if (label == NFLabel::q2_h23 || label == NFLabel::q2_h23_m2h1) e.s(1, 2) = one;
    if (label == NFLabel::q2_m2h1 || label == NFLabel::q2_h23_m2h1) e.t(0, 0) = one;
    break;
  }
  case NFLabel::q3:
  case NFLabel::q3_h12:
  case NFLabel::q3_h12_h23: {
    nz(params[0], "q(3): nu must be nonzero");
    for (int i = 0; i < 3; ++i) e.s(i, i) = params[0];
    if (label != NFLabel::q3) e.s(0, 1) = one;
    if (label == NFLabel::q3_h12_h23) e.s(1, 2) = one;
    break;
  }
  case NFLabel::q1:
  case NFLabel::q1_h12_m2h2:
  case NFLabel::q1_h12p:
  case NFLabel::q1_2h1: {
    nz(params[0], "q(1): nu must be nonzero");
    e.s(2, 2) = params[0];
    if (label == NFLabel::q1_h12_m2h2) {
      e.s(0, 1) = one;
      e.r(1, 1) = -one;
    } else if (label == NFLabel::q1_h12p) {
      e.r(0, 1) = -half;
      e.r(1, 0) = -half;
    } else if (label == NFLabel::q1_2h1) {
      e.r(0, 0) = -one;
    }
    break;
  }
  }
  return detail::assemble_sp(e);
}

//! Representative quadratic form of a table row (6x6 symmetric matrix).
template <class S>
Matrix<S> normal_form_rep(NFLabel label, const std::vector<S> &params) {
  return phi(normal_form_element(label, params));
}

//==============================================================================
// Spectral data of a quadratic form
//==============================================================================

template <class S> struct SpectralData {
  JordanData<S> jordan; // of phi_inv(Q), pairing enforced
  bool paired = true;
};

namespace detail {

//! Enforce closure of the spectrum under negation; partitions of a +/- pair
//! must agree. Float clusters are symmetrized by averaging.
template <class S> void enforce_pairing(JordanData<S> &jd, const Tol &tol) {
  double scale = 1.0;
  for (auto &c : jd.clusters) scale = std::max(scale, ScalarTraits<S>::abs(c.eigenvalue));
  std::vector<bool> used(jd.clusters.size(), false);
  for (std::size_t i = 0; i < jd.clusters.size(); ++i) {
    if (used[i]) continue;
    auto &ci = jd.clusters[i];
    if (ScalarTraits<S>::is_zero(ci.eigenvalue, tol, scale)) {
      used[i] = true;
      if constexpr (!ScalarTraits<S>::exact) ci.eigenvalue = S{};
      // odd parts of the zero partition must have even multiplicity
      for (int part = 1; part <= 6; part += 2) {
        int count = 0;
        for (int p : ci.partition) count += (p == part);
        if (count % 2)
          throw Error(ErrorKind::internal, "zero partition is not symplectic-admissible");
      }
      continue;
    }
    std::size_t match = i;
    double best = 1e300;
    for (std::size_t j = 0; j < jd.clusters.size(); ++j) {
      if (j == i || used[j]) continue;
      double d = ScalarTraits<S>::abs(jd.clusters[j].eigenvalue + ci.eigenvalue);
      if (d < best) best = d, match = j;
    }
    bool ok = match != i &&
              (ScalarTraits<S>::exact ? jd.clusters[match].eigenvalue == -ci.eigenvalue
                                      : best <= tol.at_scale(scale) * 100);
    if (!ok || jd.clusters[match].partition != ci.partition)
      throw Error(ErrorKind::internal, "spectrum is not closed under negation");
    used[i] = used[match] = true;
    if constexpr (!ScalarTraits<S>::exact) {
      S avg = (ci.eigenvalue - jd.clusters[match].eigenvalue) / scalar_of<S>(2);
      ci.eigenvalue = avg;
      jd.clusters[match].eigenvalue = -avg;
    }
  }
}

} // namespace detail

template <class S> SpectralData<S> spectral_data(const Matrix<S> &q, const Tol &tol = {}) {
  if (q.rows() != 6 || q.cols() != 6 || !q.is_symmetric(tol))
    throw Error(ErrorKind::domain, "spectral_data needs a symmetric 6x6 matrix");
  SpectralData<S> sd{jordan_data(phi_inv(q), tol), true};
  detail::enforce_pairing(sd.jordan, tol);
  return sd;
}

//==============================================================================
// The decision tree
//==============================================================================

template <class S> NormalForm<S> classify_quadric(const Matrix<S> &q, const Tol &tol = {}) {
  SpectralData<S> sd = spectral_data(q, tol);
  double scale = 1.0;
  for (auto &c : sd.jordan.clusters) scale = std::max(scale, ScalarTraits<S>::abs(c.eigenvalue));

  std::vector<int> zero_partition;
  struct Pair {
    S value;
    std::vector<int> partition;
    int mult;
  };
  std::vector<Pair> pairs; // one entry per +/- eigenvalue pair
  std::vector<bool> taken(sd.jordan.clusters.size(), false);
  for (std::size_t i = 0; i < sd.jordan.clusters.size(); ++i) {
    const auto &c = sd.jordan.clusters[i];
    if (ScalarTraits<S>::is_zero(c.eigenvalue, tol, scale)) {
      zero_partition = c.partition;
      taken[i] = true;
      continue;
    }
    if (taken[i]) continue;
    for (std::size_t j = i + 1; j < sd.jordan.clusters.size(); ++j)
      if (!taken[j] && sd.jordan.clusters[j].eigenvalue == -c.eigenvalue) taken[j] = true;
    int mult = 0;
    for (int p : c.partition) mult += p;
    pairs.push_back({detail::sign_normalize(c.eigenvalue), c.partition, mult});
    taken[i] = true;
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair &a, const Pair &b) { return detail::canon_less(a.value, b.value); });

  auto finish = [&](NFLabel label, std::vector<S> params) {
    return NormalForm<S>{label, std::move(params), nf_info(label).dim};
  };
  auto is_part = [](const std::vector<int> &p, std::initializer_list<int> want) {
    return p == std::vector<int>(want);
  };

  if (pairs.empty()) {
    // nilpotent (or zero): label by the partition of 6
    const auto &p = zero_partition;
    if (is_part(p, {1, 1, 1, 1, 1, 1})) return finish(NFLabel::zero, {});
    if (is_part(p, {6})) return finish(NFLabel::q6, {});
    if (is_part(p, {4, 2})) return finish(NFLabel::q42, {});
    if (is_part(p, {4, 1, 1})) return finish(NFLabel::q412, {});
    if (is_part(p, {3, 3})) return finish(NFLabel::q33, {});
    if (is_part(p, {2, 2, 2})) return finish(NFLabel::q23, {});
    if (is_part(p, {2, 2, 1, 1})) return finish(NFLabel::q2212, {});
    if (is_part(p, {2, 1, 1, 1, 1})) return finish(NFLabel::q214, {});
    throw Error(ErrorKind::internal, "nilpotent partition outside the symplectic table");
  }

  int zero_dim = 0;
  for (int p : zero_partition) zero_dim += p;

  if (pairs.size() == 3) // type (111)
    return finish(NFLabel::q111,
                  weyl_canonicalize<S>({pairs[0].value, pairs[1].value, pairs[2].value}));

  if (pairs.size() == 2 && zero_dim == 0) { // type (21)
    const Pair &dbl = pairs[0].mult == 2 ? pairs[0] : pairs[1];
    const Pair &sgl = pairs[0].mult == 2 ? pairs[1] : pairs[0];
    if (dbl.mult != 2 || sgl.mult != 1)
      throw Error(ErrorKind::internal, "unexpected multiplicities for type (21)");
    std::vector<S> params{dbl.value, sgl.value};
    if (is_part(dbl.partition, {2})) return finish(NFLabel::q21_h12, params);
    return finish(NFLabel::q21, params);
  }

  if (pairs.size() == 2 && zero_dim == 2) { // type (11)
    std::vector<S> params = weyl_canonicalize<S>({pairs[0].value, pairs[1].value});
    if (is_part(zero_partition, {2})) return finish(NFLabel::q11_m2h1, params);
    return finish(NFLabel::q11, params);
  }

  if (pairs.size() == 1) {
    const Pair &p = pairs[0];
    std::vector<S> params{p.value};
    if (p.mult == 2 && zero_dim == 2) { // type (2)
      bool nil_nu = is_part(p.partition, {2});
      bool nil_zero = is_part(zero_partition, {2});
      if (nil_nu && nil_zero) return finish(NFLabel::q2_h23_m2h1, params);
      if (nil_nu) return finish(NFLabel::q2_h23, params);
      if (nil_zero) return finish(NFLabel::q2_m2h1, params);
      return finish(NFLabel::q2, params);
    }
    if (p.mult == 3 && zero_dim == 0) { // type (3)
      if (is_part(p.partition, {3})) return finish(NFLabel::q3_h12_h23, params);
      if (is_part(p.partition, {2, 1})) return finish(NFLabel::q3_h12, params);
      return finish(NFLabel::q3, params);
    }
    if (p.mult == 1 && zero_dim == 4) { // type (1)
      if (is_part(zero_partition, {4})) return finish(NFLabel::q1_h12_m2h2, params);
      if (is_part(zero_partition, {2, 2})) return finish(NFLabel::q1_h12p, params);
      if (is_part(zero_partition, {2, 1, 1})) return finish(NFLabel::q1_2h1, params);
      return finish(NFLabel::q1, params);
    }
  }
  throw Error(ErrorKind::internal, "spectral pattern outside the classification table");
}

//==============================================================================
// Orbit dimension from the centralizer
//==============================================================================

//! dim Sp(6)-orbit of Q: the rank of Z -> [Z, phi_inv(Q)] over the 21 basis
//! elements (21 minus the centralizer dimension).
template <class S> int orbit_dimension(const Matrix<S> &q, const Tol &tol = {}) {
  Matrix<S> x = phi_inv(q);
  auto basis = sp_basis<S>();
  Matrix<S> big(36, 21);
  for (int k = 0; k < 21; ++k) {
    Matrix<S> br = basis[std::size_t(k)].x * x - x * basis[std::size_t(k)].x;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) big(i * 6 + j, k) = br(i, j);
  }
  return rank(big, tol);
}

} // namespace sympde
