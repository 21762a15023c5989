#pragma once

#include "sympde/symplectic.hpp"

#include <array>
#include <cstdlib>

namespace sympde {

//==============================================================================
// Degree-3 exterior algebra on the 6-dimensional symplectic space.
//
// A ThreeForm stores the 20 coefficients on sorted index triples i<j<k. The
// side flag says whether the symbols are e_{ijk} (vector side, elements of
// Lambda^3 C) or x^{ijk} (covector side, Lambda^3 C*). Effective forms are the
// 14-dimensional kernel of the omega insertion, coordinatized as
// (p123, X 3x3 symmetric, Y 3x3 symmetric, p456).
//==============================================================================

enum class Side { vector_side, covector_side };

inline Side opposite(Side s) {
  return s == Side::vector_side ? Side::covector_side : Side::vector_side;
}

namespace detail {

struct Triple {
  int a, b, c; // 1-based, strictly increasing
};

inline const std::array<Triple, 20> &triples() {
  static const std::array<Triple, 20> t = [] {
    std::array<Triple, 20> r{};
    int n = 0;
    for (int a = 1; a <= 6; ++a)
      for (int b = a + 1; b <= 6; ++b)
        for (int c = b + 1; c <= 6; ++c) r[std::size_t(n++)] = {a, b, c};
    return r;
  }();
  return t;
}

inline int triple_index(int a, int b, int c) {
  const auto &ts = triples();
  for (int i = 0; i < 20; ++i)
    if (ts[std::size_t(i)].a == a && ts[std::size_t(i)].b == b && ts[std::size_t(i)].c == c) return i;
  return -1;
}

//! Sorts (a,b,c) in place, returns the permutation sign; 0 on repeats.
inline int sort_sign(int &a, int &b, int &c) {
  int sign = 1;
  if (a > b) std::swap(a, b), sign = -sign;
  if (b > c) std::swap(b, c), sign = -sign;
  if (a > b) std::swap(a, b), sign = -sign;
  if (a == b || b == c) return 0;
  return sign;
}

//! Sign of the permutation (t, complement-of-t) of (1..6).
inline int complement_sign(const Triple &t, Triple &comp) {
  std::array<bool, 7> used{};
  used[std::size_t(t.a)] = used[std::size_t(t.b)] = used[std::size_t(t.c)] = true;
  std::array<int, 3> rest{};
  int n = 0;
  for (int i = 1; i <= 6; ++i)
    if (!used[std::size_t(i)]) rest[std::size_t(n++)] = i;
  comp = {rest[0], rest[1], rest[2]};
  std::array<int, 6> seq{t.a, t.b, t.c, rest[0], rest[1], rest[2]};
  int inv = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (seq[std::size_t(i)] > seq[std::size_t(j)]) ++inv;
  return inv % 2 ? -1 : 1;
}

} // namespace detail

template <class S> class ThreeForm {
public:
  explicit ThreeForm(Side side = Side::vector_side) : side_(side) { c_.fill(S{}); }

  Side side() const { return side_; }
  void set_side(Side s) { side_ = s; }

  const S &coeff_sorted(int idx) const { return c_[std::size_t(idx)]; }
  S &coeff_sorted(int idx) { return c_[std::size_t(idx)]; }

  //! Coefficient on an arbitrary triple; antisymmetry handled by sorting.
  S coeff(int a, int b, int c) const {
    int s = detail::sort_sign(a, b, c);
    if (s == 0) return S{};
    S v = c_[std::size_t(detail::triple_index(a, b, c))];
    return s < 0 ? -v : v;
  }
  void add_term(int a, int b, int c, const S &v) {
    int s = detail::sort_sign(a, b, c);
    if (s == 0) {
      if (v == S{}) return;
      throw Error(ErrorKind::domain, "repeated index in 3-form term");
    }
    c_[std::size_t(detail::triple_index(a, b, c))] += (s < 0 ? -v : v);
  }

  friend ThreeForm operator+(const ThreeForm &x, const ThreeForm &y) {
    x.check_side(y);
    ThreeForm r = x;
    for (int i = 0; i < 20; ++i) r.c_[std::size_t(i)] += y.c_[std::size_t(i)];
    return r;
  }
  friend ThreeForm operator-(const ThreeForm &x, const ThreeForm &y) {
    x.check_side(y);
    ThreeForm r = x;
    for (int i = 0; i < 20; ++i) r.c_[std::size_t(i)] -= y.c_[std::size_t(i)];
    return r;
  }
  friend ThreeForm operator*(const S &k, const ThreeForm &x) {
    ThreeForm r = x;
    for (auto &v : r.c_) v = k * v;
    return r;
  }
  friend bool operator==(const ThreeForm &x, const ThreeForm &y) {
    return x.side_ == y.side_ && x.c_ == y.c_;
  }

  double max_abs() const {
    double m = 0;
    for (auto &v : c_) m = std::max(m, scalar_abs(v));
    return m;
  }
  bool is_zero(const Tol &tol) const {
    double scale = std::max(1.0, max_abs());
    for (auto &v : c_)
      if (!ScalarTraits<S>::is_zero(v, tol, ScalarTraits<S>::exact ? 1.0 : scale)) return false;
    return true;
  }

private:
  void check_side(const ThreeForm &y) const {
    if (side_ != y.side_) throw Error(ErrorKind::domain, "mixed vector/covector 3-forms");
  }
  Side side_;
  std::array<S, 20> c_;
};

//==============================================================================
// Pairing, insertion, projection
//==============================================================================

//! Coefficient of the top form e123456 (resp. x123456) in a ^ b.
template <class S> S omega_pair(const ThreeForm<S> &x, const ThreeForm<S> &y) {
  if (x.side() != y.side()) throw Error(ErrorKind::domain, "omega_pair needs matching sides");
  S r{};
  const auto &ts = detail::triples();
  for (int i = 0; i < 20; ++i) {
    detail::Triple comp{};
    int sgn = detail::complement_sign(ts[std::size_t(i)], comp);
    S term = x.coeff_sorted(i) * y.coeff(comp.a, comp.b, comp.c);
    r += sgn < 0 ? -term : term;
  }
  return r;
}

namespace detail {

//! The side's contraction matrix: W = -J on the vector side (the inverse
//! bivector x41 + x52 + x63), J itself on the covector side.
template <class S> Matrix<S> side_pairing(Side side) {
  Matrix<S> j = gram<S>();
  if (side == Side::vector_side)
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) j(a, b) = -j(a, b);
  return j;
}

} // namespace detail

//! Insertion of omega (resp. of its inverse bivector): the linear map whose
//! kernel is the effective subspace; insert(v ^ two_form) = v.
template <class S> Matrix<S> insert_omega(const ThreeForm<S> &t) {
  Matrix<S> a = detail::side_pairing<S>(t.side());
  Matrix<S> v(6, 1);
  S quarter = scalar_of<S>(1) / scalar_of<S>(4);
  for (int k = 1; k <= 6; ++k) {
    S s{};
    for (int i = 1; i <= 6; ++i)
      for (int j = 1; j <= 6; ++j) {
        const S &w = a(i - 1, j - 1);
        if (w == S{}) continue;
        s += w * t.coeff(i, j, k);
      }
    v(k - 1, 0) = quarter * s;
  }
  return v;
}

//! v ^ (the side's invariant 2-form), a 3-form again.
template <class S> ThreeForm<S> wedge_with_pairing(const Matrix<S> &v, Side side) {
  Matrix<S> a = detail::side_pairing<S>(side);
  ThreeForm<S> r(side);
  for (int i = 1; i <= 6; ++i) {
    if (v(i - 1, 0) == S{}) continue;
    for (int j = 1; j <= 6; ++j)
      for (int k = j + 1; k <= 6; ++k) {
        if (i == j || i == k) continue; // e_i ^ e_i ^ ... = 0
        if (a(j - 1, k - 1) == S{}) continue;
        r.add_term(i, j, k, v(i - 1, 0) * a(j - 1, k - 1));
      }
  }
  return r;
}

//! Projection onto the 14-dimensional effective subspace:
//! tau - insert_omega(tau) ^ omega^{-1}. Idempotent, Sp-equivariant.
template <class S> ThreeForm<S> effective_project_form(const ThreeForm<S> &t) {
  return t - wedge_with_pairing(insert_omega(t), t.side());
}

//==============================================================================
// Effective forms in (p123, X, Y, p456) coordinates
//==============================================================================

namespace detail {

//! X[i][j] is the triple (1,2,3) with its j-th slot replaced by 3+i;
//! Y[i][j] is (4,5,6) with its j-th slot replaced by i. Sign normalizes to
//! the sorted triple (e.g. the (4,2,3) slot is +1 times the sorted (2,3,4)).
struct SlotRef {
  int sorted_idx;
  int sign;
};

inline SlotRef slot_x(int i, int j) { // i, j in 1..3
  int t[3] = {1, 2, 3};
  t[j - 1] = 3 + i;
  int a = t[0], b = t[1], c = t[2];
  int s = sort_sign(a, b, c);
  return {triple_index(a, b, c), s};
}

inline SlotRef slot_y(int i, int j) {
  int t[3] = {4, 5, 6};
  t[j - 1] = i;
  int a = t[0], b = t[1], c = t[2];
  int s = sort_sign(a, b, c);
  return {triple_index(a, b, c), s};
}

} // namespace detail

template <class S> struct EffForm {
  S p123{};
  Matrix<S> xs{3, 3};
  Matrix<S> ys{3, 3};
  S p456{};
  Side side = Side::vector_side;

  double max_abs() const {
    return std::max(std::max(scalar_abs(p123), scalar_abs(p456)),
                    std::max(xs.max_abs(), ys.max_abs()));
  }
  bool is_zero(const Tol &tol) const {
    double sc = ScalarTraits<S>::exact ? 1.0 : std::max(1.0, max_abs());
    return ScalarTraits<S>::is_zero(p123, tol, sc) && ScalarTraits<S>::is_zero(p456, tol, sc) &&
           (ScalarTraits<S>::exact ? xs.is_zero(tol) && ys.is_zero(tol)
                                   : xs.max_abs() <= tol.at_scale(sc) && ys.max_abs() <= tol.at_scale(sc));
  }

  friend EffForm operator+(const EffForm &a, const EffForm &b) {
    if (a.side != b.side) throw Error(ErrorKind::domain, "mixed sides");
    return {a.p123 + b.p123, a.xs + b.xs, a.ys + b.ys, a.p456 + b.p456, a.side};
  }
  friend EffForm operator*(const S &k, const EffForm &a) {
    return {k * a.p123, k * a.xs, k * a.ys, k * a.p456, a.side};
  }
};

//! Embed the 14 effective coordinates into the 20-dimensional space.
template <class S> ThreeForm<S> embed(const EffForm<S> &f) {
  ThreeForm<S> t(f.side);
  t.coeff_sorted(detail::triple_index(1, 2, 3)) = f.p123;
  t.coeff_sorted(detail::triple_index(4, 5, 6)) = f.p456;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      auto sx = detail::slot_x(i, j);
      auto sy = detail::slot_y(i, j);
      t.coeff_sorted(sx.sorted_idx) += (sx.sign < 0 ? -f.xs(i - 1, j - 1) : f.xs(i - 1, j - 1));
      t.coeff_sorted(sy.sorted_idx) += (sy.sign < 0 ? -f.ys(i - 1, j - 1) : f.ys(i - 1, j - 1));
    }
  return t;
}

//! Read the (p123, X, Y, p456) coordinates off a 3-form (no projection).
template <class S> EffForm<S> extract_coords(const ThreeForm<S> &t) {
  EffForm<S> f;
  f.side = t.side();
  f.p123 = t.coeff_sorted(detail::triple_index(1, 2, 3));
  f.p456 = t.coeff_sorted(detail::triple_index(4, 5, 6));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      auto sx = detail::slot_x(i, j);
      auto sy = detail::slot_y(i, j);
      S vx = t.coeff_sorted(sx.sorted_idx);
      S vy = t.coeff_sorted(sy.sorted_idx);
      f.xs(i - 1, j - 1) = sx.sign < 0 ? -vx : vx;
      f.ys(i - 1, j - 1) = sy.sign < 0 ? -vy : vy;
    }
  return f;
}

//! Project onto the effective subspace and return its 14 coordinates.
template <class S> EffForm<S> effective_project(const ThreeForm<S> &t, const Tol &tol = {}) {
  ThreeForm<S> p = effective_project_form(t);
  EffForm<S> f = extract_coords(p);
  if (!f.xs.is_symmetric(tol) || !f.ys.is_symmetric(tol))
    throw Error(ErrorKind::internal, "effective projection produced asymmetric blocks");
  // exact symmetrization of float dust
  S half = scalar_of<S>(1) / scalar_of<S>(2);
  f.xs = half * (f.xs + f.xs.transpose());
  f.ys = half * (f.ys + f.ys.transpose());
  return f;
}

//==============================================================================
// Sp action, duality, wedges of frames
//==============================================================================

//! 3-vector (or 3-form) built from the columns of a 6x3 frame.
template <class S> ThreeForm<S> wedge_columns(const Matrix<S> &fr, Side side) {
  if (fr.rows() != 6 || fr.cols() != 3) throw Error(ErrorKind::dimension, "frame must be 6x3");
  ThreeForm<S> t(side);
  const auto &ts = detail::triples();
  for (int n = 0; n < 20; ++n) {
    Matrix<S> m(3, 3);
    int rows[3] = {ts[std::size_t(n)].a, ts[std::size_t(n)].b, ts[std::size_t(n)].c};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = fr(rows[i] - 1, j);
    t.coeff_sorted(n) = m.det();
  }
  return t;
}

//! Natural Sp action extended to the exterior algebra (both sides).
template <class S>
ThreeForm<S> sp_act_form(const Matrix<S> &g, const ThreeForm<S> &t, const Tol &tol = {}) {
  if (!is_symplectic(g, tol)) throw Error(ErrorKind::domain, "sp_act_form: g is not symplectic");
  Matrix<S> act = t.side() == Side::vector_side ? g : inverse(g, tol).transpose();
  ThreeForm<S> r(t.side());
  const auto &ts = detail::triples();
  for (int n = 0; n < 20; ++n) {
    const S &c = t.coeff_sorted(n);
    if (c == S{}) continue;
    Matrix<S> fr(6, 3);
    int cols[3] = {ts[std::size_t(n)].a, ts[std::size_t(n)].b, ts[std::size_t(n)].c};
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 3; ++j) fr(i, j) = act(i, cols[j] - 1);
    ThreeForm<S> w = wedge_columns(fr, t.side());
    r = r + (c * w);
  }
  return r;
}

//! The omega-duality between the two sides: e1 -> x4, ..., e4 -> -x1, ...
//! applied triple-wise; an Sp-equivariant isomorphism, exact involution.
template <class S> ThreeForm<S> duality_form(const ThreeForm<S> &t) {
  // vector -> covector uses d = J^t (columns = omega(e_a, .)); the inverse
  // substitution (columns of J) goes back, making duality an involution.
  Matrix<S> j = gram<S>();
  Matrix<S> map = t.side() == Side::vector_side ? j.transpose() : j;
  ThreeForm<S> r(opposite(t.side()));
  const auto &ts = detail::triples();
  for (int n = 0; n < 20; ++n) {
    const S &c = t.coeff_sorted(n);
    if (c == S{}) continue;
    Matrix<S> fr(6, 3);
    int cols[3] = {ts[std::size_t(n)].a, ts[std::size_t(n)].b, ts[std::size_t(n)].c};
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < 3; ++k) fr(i, k) = map(i, cols[k] - 1);
    ThreeForm<S> w = wedge_columns(fr, opposite(t.side()));
    r = r + (c * w);
  }
  return r;
}

template <class S> EffForm<S> duality(const EffForm<S> &f, const Tol &tol = {}) {
  return effective_project(duality_form(embed(f)), tol);
}

//==============================================================================
// Lagrangian frames and the big cell
//==============================================================================

template <class S> bool is_lagrangian_frame(const Matrix<S> &fr, const Tol &tol = {}) {
  if (fr.rows() != 6 || fr.cols() != 3) return false;
  if (rank(fr, tol) != 3) return false;
  return (fr.transpose() * gram<S>() * fr).is_zero(tol);
}

//! Plucker image vol(L) of a full-rank 6x3 frame (vector side).
template <class S> ThreeForm<S> plucker_vol(const Matrix<S> &fr, const Tol &tol = {}) {
  if (fr.rows() != 6 || fr.cols() != 3 || rank(fr, tol) != 3)
    throw Error(ErrorKind::domain, "plucker_vol needs a rank-3 6x3 frame");
  return wedge_columns(fr, Side::vector_side);
}

//! Graph frame [I; U] of a point of the big cell.
template <class S> Matrix<S> graph_frame(const Matrix<S> &u) {
  Matrix<S> fr(6, 3);
  for (int i = 0; i < 3; ++i) {
    fr(i, i) = scalar_of<S>(1);
    for (int j = 0; j < 3; ++j) fr(i + 3, j) = u(i, j);
  }
  return fr;
}

//! Big-cell embedding [1 : U : U# : det U] as an effective vector-side form.
template <class S> EffForm<S> big_cell(const Matrix<S> &u, const Tol &tol = {}) {
  if (u.rows() != 3 || u.cols() != 3 || !u.is_symmetric(tol))
    throw Error(ErrorKind::domain, "big_cell needs a symmetric 3x3 matrix");
  EffForm<S> f;
  f.side = Side::vector_side;
  f.p123 = scalar_of<S>(1);
  f.xs = u;
  f.ys = adjugate(u);
  f.p456 = u.det();
  return f;
}

} // namespace sympde
