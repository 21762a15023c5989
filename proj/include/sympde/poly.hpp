#pragma once

#include "sympde/scalar.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace sympde {

//! Sparse multivariate polynomial with a fixed variable count. Just enough
//! machinery for the quartic invariant and the first-integral checks.
template <class S> class Poly {
public:
  using Mono = std::vector<std::uint8_t>;

  explicit Poly(int nvars = 0) : nvars_(nvars) {}

  static Poly constant(int nvars, const S &c) {
    Poly p(nvars);
    if (!(c == S{})) p.terms_[Mono(std::size_t(nvars), 0)] = c;
    return p;
  }
  static Poly variable(int nvars, int idx, const S &c = scalar_of<S>(1)) {
    Poly p(nvars);
    Mono m(std::size_t(nvars), 0);
    m[std::size_t(idx)] = 1;
    p.terms_[m] = c;
    return p;
  }

  int nvars() const { return nvars_; }
  bool zero() const { return terms_.empty(); }

  friend Poly operator+(const Poly &a, const Poly &b) {
    Poly r = a;
    for (auto &[m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly &a, const Poly &b) {
    Poly r = a;
    for (auto &[m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  friend Poly operator*(const Poly &a, const Poly &b) {
    Poly r(a.nvars_);
    for (auto &[ma, ca] : a.terms_)
      for (auto &[mb, cb] : b.terms_) {
        Mono m = ma;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::uint8_t(m[i] + mb[i]);
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend Poly operator*(const S &k, const Poly &a) {
    Poly r(a.nvars_);
    for (auto &[m, c] : a.terms_) r.add_term(m, k * c);
    return r;
  }
  friend Poly operator-(const Poly &a) { return scalar_of<S>(-1) * a; }

  Poly derivative(int var) const {
    Poly r(nvars_);
    for (auto &[m, c] : terms_) {
      int e = m[std::size_t(var)];
      if (e == 0) continue;
      Mono d = m;
      d[std::size_t(var)] = std::uint8_t(e - 1);
      r.add_term(d, scalar_of<S>(e) * c);
    }
    return r;
  }

  S eval(const std::vector<S> &x) const {
    S r{};
    for (auto &[m, c] : terms_) {
      S t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) t *= x[i];
      r += t;
    }
    return r;
  }

  int degree_in(int var) const {
    int d = 0;
    for (auto &[m, c] : terms_) d = std::max(d, int(m[std::size_t(var)]));
    return d;
  }

  //! Coefficient polynomials of var^0..var^d (var eliminated).
  std::vector<Poly> coefficients_in(int var) const {
    std::vector<Poly> out(std::size_t(degree_in(var)) + 1, Poly(nvars_));
    for (auto &[m, c] : terms_) {
      Mono q = m;
      int e = q[std::size_t(var)];
      q[std::size_t(var)] = 0;
      out[std::size_t(e)].add_term(q, c);
    }
    return out;
  }

private:
  void add_term(const Mono &m, const S &c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!(c == S{})) terms_[m] = c;
      return;
    }
    it->second += c;
    if (it->second == S{}) terms_.erase(it);
  }

  int nvars_;
  std::map<Mono, S> terms_;
};

} // namespace sympde
