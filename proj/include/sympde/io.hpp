#pragma once

#include "sympde/forms.hpp"
#include "sympde/mae.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace sympde::io {

using nlohmann::json;

inline constexpr const char *version = "0.1.0";

//==============================================================================
// Scalar encoding: complex numbers as [re, im]; rational parts as
// {"num","den"} objects on the exact path, plain numbers on the float path.
//==============================================================================

inline json encode(const Rational &q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
  json j;
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    j["num"] = q.get_num().get_si();
    j["den"] = q.get_den().get_si();
  } else {
    j["num"] = q.get_num().get_str();
    j["den"] = q.get_den().get_str();
  }
  return j;
}

inline json encode(const GQ &z) { return json::array({encode(z.re), encode(z.im)}); }
inline json encode(const CD &z) { return json::array({z.re, z.im}); }

template <class S> json encode(const Matrix<S> &m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class S> json encode_form(const EffForm<S> &f) {
  json j;
  j["side"] = f.side == Side::vector_side ? "vector" : "covector";
  j["p123"] = encode(f.p123);
  j["X"] = encode(f.xs);
  j["Y"] = encode(f.ys);
  j["p456"] = encode(f.p456);
  return j;
}

//==============================================================================
// Parsing with exactness tracking: any float entry switches the whole
// computation to the float path; integers and {"num","den"} stay exact.
//==============================================================================

struct ParsedRational {
  bool exact = true;
  Rational q;
  double d = 0;
};

inline ParsedRational parse_rational(const json &j) {
  ParsedRational r;
  if (j.is_number_integer()) {
    r.q = make_rational(j.get<long>());
    r.d = double(j.get<long>());
    return r;
  }
  if (j.is_number()) {
    r.exact = false;
    r.d = j.get<double>();
    return r;
  }
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    auto get_int = [](const json &v) -> mpz_class {
      if (v.is_number_integer()) return mpz_class(v.get<long>());
      if (v.is_string()) return mpz_class(v.get<std::string>());
      throw Error(ErrorKind::usage, "rational parts must be integers or strings");
    };
    mpz_class num = get_int(j.at("num")), den = get_int(j.at("den"));
    if (den == 0) throw Error(ErrorKind::usage, "rational with zero denominator");
    r.q = Rational(num, den);
    r.q.canonicalize();
    r.d = to_double(r.q);
    return r;
  }
  throw Error(ErrorKind::usage, "expected a number or {\"num\",\"den\"}");
}

struct ParsedScalar {
  bool exact = true;
  GQ q;
  CD d;
};

inline ParsedScalar parse_scalar(const json &j) {
  ParsedScalar s;
  if (j.is_array()) {
    if (j.size() != 2) throw Error(ErrorKind::usage, "complex values are [re, im] pairs");
    auto re = parse_rational(j.at(0)), im = parse_rational(j.at(1));
    s.exact = re.exact && im.exact;
    s.q = GQ{re.q, im.q};
    s.d = CD{re.d, im.d};
    return s;
  }
  auto re = parse_rational(j);
  s.exact = re.exact;
  s.q = GQ{re.q};
  s.d = CD{re.d};
  return s;
}

struct ParsedMatrix {
  bool exact = true;
  Matrix<GQ> q;
  Matrix<CD> d;
};

inline ParsedMatrix parse_matrix(const json &j, int rows, int cols) {
  if (!j.is_array() || int(j.size()) != rows)
    throw Error(ErrorKind::usage, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  ParsedMatrix m{true, Matrix<GQ>(rows, cols), Matrix<CD>(rows, cols)};
  for (int i = 0; i < rows; ++i) {
    const json &row = j.at(std::size_t(i));
    if (!row.is_array() || int(row.size()) != cols)
      throw Error(ErrorKind::usage, "matrix rows must have " + std::to_string(cols) + " entries");
    for (int k = 0; k < cols; ++k) {
      auto s = parse_scalar(row.at(std::size_t(k)));
      m.exact = m.exact && s.exact;
      m.q(i, k) = s.q;
      m.d(i, k) = s.d;
    }
  }
  return m;
}

//==============================================================================
// Conversions between the two arithmetic paths
//==============================================================================

inline Matrix<CD> to_cd(const Matrix<GQ> &m) {
  Matrix<CD> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = ScalarTraits<GQ>::to_cd(m(i, j));
  return r;
}

inline EffForm<CD> to_cd(const EffForm<GQ> &f) {
  return {ScalarTraits<GQ>::to_cd(f.p123), to_cd(f.xs), to_cd(f.ys),
          ScalarTraits<GQ>::to_cd(f.p456), f.side};
}

//==============================================================================
// Form input documents: {"effective": ...} | {"mae": ...} | {"triples": ...}
//==============================================================================

struct ParsedForm {
  bool exact = true;
  EffForm<GQ> q;
  EffForm<CD> d;
};

namespace detail {

template <class S>
EffForm<S> effective_from_parts(const S &p123, const Matrix<S> &x, const Matrix<S> &y,
                                const S &p456, Side side, const Tol &tol) {
  if (!x.is_symmetric(tol) || !y.is_symmetric(tol))
    throw Error(ErrorKind::usage, "effective form blocks X and Y must be symmetric");
  return EffForm<S>{p123, x, y, p456, side};
}

} // namespace detail

inline ParsedForm parse_form(const json &doc, const Tol &tol) {
  int variants = int(doc.contains("effective")) + int(doc.contains("mae")) + int(doc.contains("triples"));
  if (variants != 1)
    throw Error(ErrorKind::usage, "exactly one of \"effective\", \"mae\", \"triples\" must be present");
  ParsedForm out;
  if (doc.contains("effective")) {
    const json &e = doc.at("effective");
    Side side = Side::vector_side;
    if (e.contains("side")) {
      std::string s = e.at("side").get<std::string>();
      if (s == "vector")
        side = Side::vector_side;
      else if (s == "covector")
        side = Side::covector_side;
      else
        throw Error(ErrorKind::usage, "side must be \"vector\" or \"covector\"");
    }
    auto p123 = parse_scalar(e.at("p123"));
    auto p456 = parse_scalar(e.at("p456"));
    auto x = parse_matrix(e.at("X"), 3, 3);
    auto y = parse_matrix(e.at("Y"), 3, 3);
    out.exact = p123.exact && p456.exact && x.exact && y.exact;
    out.q = detail::effective_from_parts(p123.q, x.q, y.q, p456.q, side, tol);
    out.d = detail::effective_from_parts(p123.d, x.d, y.d, p456.d, side, tol);
    return out;
  }
  if (doc.contains("mae")) {
    const json &e = doc.at("mae");
    auto c0 = parse_scalar(e.at("c0"));
    auto c3 = parse_scalar(e.at("c3"));
    auto lin = parse_matrix(e.at("lin"), 3, 3);
    auto cof = parse_matrix(e.at("cof"), 3, 3);
    out.exact = c0.exact && c3.exact && lin.exact && cof.exact;
    out.q = form_from_mae(MaeCoeffs<GQ>{c0.q, lin.q, cof.q, c3.q}, tol);
    out.d = form_from_mae(MaeCoeffs<CD>{c0.d, lin.d, cof.d, c3.d}, tol);
    return out;
  }
  // triples: keys "ijk" over 1..6 with distinct digits (vector side)
  ThreeForm<GQ> tq(Side::vector_side);
  ThreeForm<CD> td(Side::vector_side);
  for (auto it = doc.at("triples").begin(); it != doc.at("triples").end(); ++it) {
    const std::string &key = it.key();
    if (key.size() != 3) throw Error(ErrorKind::usage, "triple keys are three digits, e.g. \"123\"");
    int a = key[0] - '0', b = key[1] - '0', c = key[2] - '0';
    if (a < 1 || a > 6 || b < 1 || b > 6 || c < 1 || c > 6 || a == b || b == c || a == c)
      throw Error(ErrorKind::usage, "triple indices must be distinct digits in 1..6");
    auto s = parse_scalar(it.value());
    out.exact = out.exact && s.exact;
    tq.add_term(a, b, c, s.q);
    td.add_term(a, b, c, s.d);
  }
  out.q = effective_project(tq, tol);
  out.d = effective_project(td, tol);
  return out;
}

//==============================================================================
// Report documents
//==============================================================================

//! FNV-1a 64-bit digest of the canonical input serialization.
inline std::string digest(const json &j) {
  std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json make_report(const std::string &command, const json &input, bool exact,
                        std::uint64_t seed, const Tol &tol) {
  json r;
  r["command"] = command;
  r["input_digest"] = digest(input);
  r["arithmetic"] = exact ? "exact" : "float";
  r["seed"] = seed;
  r["tolerance"] = {{"abs", tol.abs_tol}, {"rel", tol.rel_tol}};
  r["version"] = version;
  return r;
}

} // namespace sympde::io
