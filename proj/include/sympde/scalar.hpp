#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sympde {

//! Exact rational number (gmp). Construct through make_rational: the raw
//! two-argument mpq_class constructor does not canonicalize.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational &q) { return q.get_d(); }

//! Error kinds surfaced by the library; the CLI maps them to exit codes.
enum class ErrorKind {
  usage,           // malformed input
  dimension,       // shape mismatch
  domain,          // precondition violated (non-symplectic g, asymmetric Q, ...)
  degenerate,      // zero / vanishing input where nonzero is required
  ambiguity,       // classification sits on a tolerance wall
  sampling,        // point sampling exhausted its retries
  inconsistent,    // linear system has no solution
  invalid_params,  // normal-form parameters violate a genericity constraint
  irrational,      // exact path: spectrum is not Gaussian-rational
  internal,        // broken internal invariant
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string &msg) : std::runtime_error(msg), kind(k) {}
};

//! Absolute/relative tolerance pair used by every float-path zero test.
struct Tol {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;

  //! Threshold for comparing against zero at a given magnitude scale.
  double at_scale(double scale) const {
    double r = rel_tol * std::abs(scale);
    return abs_tol > r ? abs_tol : r;
  }
};

//==============================================================================
// Complex numbers over an arbitrary coefficient ring
//==============================================================================

template <class T> struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)) {}
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  friend Complex operator+(const Complex &a, const Complex &b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex &a, const Complex &b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex &a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex &a, const Complex &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex &a, const Complex &b) {
    T n = b.re * b.re + b.im * b.im;
    if (n == 0) throw Error(ErrorKind::domain, "division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  Complex &operator+=(const Complex &b) { return *this = *this + b; }
  Complex &operator-=(const Complex &b) { return *this = *this - b; }
  Complex &operator*=(const Complex &b) { return *this = *this * b; }
  Complex &operator/=(const Complex &b) { return *this = *this / b; }
  friend bool operator==(const Complex &a, const Complex &b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Complex &a, const Complex &b) { return !(a == b); }

  Complex conj() const { return {re, -im}; }
};

//! Exact Gaussian-rational scalar (the exact arithmetic path).
using GQ = Complex<Rational>;
//! Floating complex scalar (the float arithmetic path).
using CD = Complex<double>;

//==============================================================================
// Scalar traits: the few hooks the generic algorithms need per path
//==============================================================================

template <class S> struct ScalarTraits;

template <> struct ScalarTraits<GQ> {
  static constexpr bool exact = true;
  static GQ from_int(long n) { return GQ(Rational(n)); }
  static double abs2(const GQ &x) {
    return to_double(x.re) * to_double(x.re) + to_double(x.im) * to_double(x.im);
  }
  static double abs(const GQ &x) { return std::sqrt(abs2(x)); }
  //! Exact path ignores tolerances entirely.
  static bool is_zero(const GQ &x, const Tol &, double /*scale*/ = 1.0) {
    return x.re == 0 && x.im == 0;
  }
  static CD to_cd(const GQ &x) { return {to_double(x.re), to_double(x.im)}; }
};

template <> struct ScalarTraits<CD> {
  static constexpr bool exact = false;
  static CD from_int(long n) { return CD(double(n)); }
  static double abs2(const CD &x) { return x.re * x.re + x.im * x.im; }
  static double abs(const CD &x) { return std::hypot(x.re, x.im); }
  static bool is_zero(const CD &x, const Tol &tol, double scale = 1.0) {
    return abs(x) <= tol.at_scale(scale);
  }
  static CD to_cd(const CD &x) { return x; }
};

template <class S> double scalar_abs(const S &x) { return ScalarTraits<S>::abs(x); }
template <class S> S scalar_of(long n) { return ScalarTraits<S>::from_int(n); }

inline std::complex<double> std_complex(const CD &x) { return {x.re, x.im}; }
inline CD from_std(const std::complex<double> &z) { return {z.real(), z.imag()}; }

//==============================================================================
// Deterministic seeded randomness (splitmix64); never any global state
//==============================================================================

//! Small deterministic RNG so that reports are byte-stable across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  //! Uniform integer in [lo, hi], inclusive.
  long uniform(long lo, long hi) {
    return lo + long(next() % std::uint64_t(hi - lo + 1));
  }

  //! Small exact rational in [-range, range] with denominator 1..max_den.
  Rational rational(long range = 5, long max_den = 4) {
    long den = uniform(1, max_den);
    long num = uniform(-range * den, range * den);
    return make_rational(num, den);
  }

  template <class S> S scalar(long range = 5, long max_den = 4);

private:
  std::uint64_t state_;
};

template <> inline GQ Rng::scalar<GQ>(long range, long max_den) {
  return GQ(rational(range, max_den), rational(range, max_den));
}
template <> inline CD Rng::scalar<CD>(long range, long max_den) {
  return CD(to_double(rational(range, max_den)), to_double(rational(range, max_den)));
}

} // namespace sympde
