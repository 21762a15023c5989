// Command line surface: classification, verification suites, and the
// normal-form atlas; JSON in, JSON (or Markdown) out, deterministic seeding.
#include "sympde/io.hpp"
#include "sympde/selftest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace sympde;
using sympde::io::json;

int exit_code_for(const Error &e) {
  switch (e.kind) {
  case ErrorKind::usage:
  case ErrorKind::dimension:
  case ErrorKind::domain:
  case ErrorKind::invalid_params: return 2;
  case ErrorKind::degenerate: return 3;
  case ErrorKind::ambiguity: return 4;
  case ErrorKind::sampling: return 5;
  default: return 1;
  }
}

json read_input(const std::string &path) {
  try {
    if (path == "-" ) {
      return json::parse(std::cin);
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::usage, "cannot open input file " + path);
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw Error(ErrorKind::usage, std::string("malformed JSON: ") + e.what());
  }
}

struct CommonOpts {
  std::string input = "-";
  double tol_abs = 1e-10;
  double tol_rel = 1e-9;
  std::uint64_t seed = 1;
  int points = 50;
  std::string format = "json";
  bool force_exact = false;

  Tol tol() const { return Tol{tol_abs, tol_rel}; }
};

void add_common(CLI::App *cmd, CommonOpts &o, bool with_input = true) {
  if (with_input)
    cmd->add_option("input", o.input, "input JSON file, or - for standard input");
  cmd->add_option("--tol-abs", o.tol_abs, "absolute tolerance");
  cmd->add_option("--tol-rel", o.tol_rel, "relative tolerance");
  cmd->add_option("--seed", o.seed, "deterministic seed");
  cmd->add_option("--points", o.points, "number of sampled points");
  cmd->add_option("--format", o.format, "output format: json or markdown");
  cmd->add_flag("--exact", o.force_exact, "require the exact rational path");
}

void require_exactable(bool exact, const CommonOpts &o) {
  if (o.force_exact && !exact)
    throw Error(ErrorKind::usage, "--exact given but the input has non-rational entries");
}

void emit(const json &report) { std::cout << report.dump(1) << "\n"; }

//==============================================================================
// classify-form
//==============================================================================

template <class S>
json classify_form_result(const EffForm<S> &f, const Tol &tol) {
  json res;
  FormClass cls = classify_3form(f, tol);
  res["class"] = to_string(cls);
  res["quartic"] = io::encode(quartic_f(f));
  Matrix<S> k = quad_invariant(f);
  Matrix<S> m = moment_map(f, tol);
  res["invariant"] = io::encode(k);
  res["moment"] = io::encode(m);
  res["proportionality_residual"] = proportionality_residual(k, Matrix<S>(scalar_of<S>(4) * m));
  res["invariant_rank"] = rank(k, tol);
  if (cls != FormClass::P) {
    NormalForm<S> nf = classify_quadric(k, tol);
    json img;
    img["label"] = nf.name();
    img["dim"] = nf.dim;
    json ps = json::array();
    for (auto &p : nf.params) ps.push_back(io::encode(p));
    img["params"] = ps;
    res["invariant_image"] = img;
  }
  return res;
}

int cmd_classify_form(const CommonOpts &o) {
  json input = read_input(o.input);
  auto parsed = io::parse_form(input, o.tol());
  require_exactable(parsed.exact, o);
  if ((parsed.exact ? parsed.q.is_zero(o.tol()) : parsed.d.is_zero(o.tol())))
    throw Error(ErrorKind::degenerate, "zero form");
  json report = io::make_report("classify-form", input, parsed.exact, o.seed, o.tol());
  json res;
  if (parsed.exact) {
    try {
      res = classify_form_result(parsed.q, o.tol());
    } catch (const Error &e) {
      if (e.kind != ErrorKind::irrational) throw;
      report["arithmetic"] = "float"; // spectrum forced the float path
      res = classify_form_result(parsed.d, o.tol());
    }
  } else {
    res = classify_form_result(parsed.d, o.tol());
  }
  report["results"] = res;
  emit(report);
  return 0;
}

//==============================================================================
// classify-quadric
//==============================================================================

template <class S>
json classify_quadric_result(const Matrix<S> &q, const Tol &tol) {
  json res;
  NormalForm<S> nf = classify_quadric(q, tol);
  res["label"] = nf.name();
  res["orbit_type"] = nf_info(nf.label).orbit_type;
  res["dim"] = nf.dim;
  json ps = json::array();
  for (auto &p : nf.params) ps.push_back(io::encode(p));
  res["params"] = ps;
  res["orbit_dimension"] = orbit_dimension(q, tol);
  json clusters = json::array();
  auto sd = spectral_data(q, tol);
  for (auto &c : sd.jordan.clusters) {
    json cl;
    cl["eigenvalue"] = io::encode(c.eigenvalue);
    cl["partition"] = c.partition;
    clusters.push_back(cl);
  }
  res["spectral"] = clusters;
  return res;
}

int cmd_classify_quadric(const CommonOpts &o) {
  json input = read_input(o.input);
  const json &mat = input.is_object() && input.contains("matrix") ? input.at("matrix") : input;
  auto parsed = io::parse_matrix(mat, 6, 6);
  require_exactable(parsed.exact, o);
  if (!(parsed.exact ? parsed.q.is_symmetric(o.tol()) : parsed.d.is_symmetric(o.tol())))
    throw Error(ErrorKind::domain, "input matrix must be symmetric");
  json report = io::make_report("classify-quadric", input, parsed.exact, o.seed, o.tol());
  json res;
  if (parsed.exact) {
    try {
      res = classify_quadric_result(parsed.q, o.tol());
    } catch (const Error &e) {
      if (e.kind != ErrorKind::irrational) throw;
      report["arithmetic"] = "float";
      res = classify_quadric_result(parsed.d, o.tol());
    }
  } else {
    res = classify_quadric_result(parsed.d, o.tol());
  }
  report["results"] = res;
  emit(report);
  return 0;
}

//==============================================================================
// cochar-verify
//==============================================================================

template <class S>
json cochar_verify_result(const EffForm<S> &eta, int npoints, std::uint64_t seed, const Tol &tol) {
  EffForm<S> cov = eta.side == Side::covector_side ? eta : duality(eta, tol);
  auto m = mae_from_form(cov);
  json points = json::array();
  double max_resid = 0;
  bool any_trivial = false;
  int found = 0;
  for (std::uint64_t s = 0; found < npoints && s < 60 * std::uint64_t(npoints) + 200; ++s) {
    Matrix<S> u;
    try {
      u = sample_solution(m, seed + 7919 * s, tol);
    } catch (const Error &) {
      continue;
    }
    Matrix<S> sigma = symbol_at(cov, u, tol);
    double sc = std::max(1.0, u.max_abs());
    if (sigma.max_abs() <= tol.at_scale(sc * sc)) continue; // not a regular point
    ++found;
    auto chk = cochar_consistency(cov, u, tol);
    json pt;
    pt["char_rank"] = rank(sigma, tol);
    pt["cochar_trivial"] = !chk.applicable;
    pt["residual"] = chk.residual;
    points.push_back(pt);
    any_trivial = any_trivial || !chk.applicable;
    max_resid = std::max(max_resid, chk.residual);
  }
  if (found < npoints) throw Error(ErrorKind::sampling, "could not sample enough smooth points");
  json res;
  res["points"] = points;
  res["max_residual"] = max_resid;
  res["trivial_cochar"] = any_trivial;
  res["pass"] = max_resid < 1e-8;
  return res;
}

int cmd_cochar_verify(const CommonOpts &o) {
  json input = read_input(o.input);
  auto parsed = io::parse_form(input, o.tol());
  require_exactable(parsed.exact, o);
  json report = io::make_report("cochar-verify", input, parsed.exact, o.seed, o.tol());
  report["results"] = parsed.exact ? cochar_verify_result(parsed.q, o.points, o.seed, o.tol())
                                   : cochar_verify_result(parsed.d, o.points, o.seed, o.tol());
  emit(report);
  return 0;
}

//==============================================================================
// schubert
//==============================================================================

template <class S>
json schubert_result(const Matrix<S> &frame, const Tol &tol) {
  json res;
  EffForm<S> eta = schubert_form(frame, tol);
  res["eta"] = io::encode_form(eta);
  auto m = mae_from_form(eta);
  res["mae"] = {{"c0", io::encode(m.c0)},
                {"lin", io::encode(m.lin)},
                {"cof", io::encode(m.cof)},
                {"c3", io::encode(m.c3)}};
  FormClass cls = classify_3form(eta, tol);
  res["class"] = to_string(cls);
  auto line = kernel_line(frame, tol);
  if (line)
    res["kernel_line"] = io::encode(*line);
  else
    res["kernel_line"] = nullptr;
  if (cls == FormClass::G) {
    // the invariant quadric is c * w w^t: report the covector direction w
    Matrix<S> k = quad_invariant(eta);
    int piv = 0;
    double best = 0;
    for (int i = 0; i < 6; ++i)
      if (scalar_abs(k(i, i)) > best) best = scalar_abs(k(i, i)), piv = i;
    Matrix<S> w(6, 1);
    for (int i = 0; i < 6; ++i) w(i, 0) = k(piv, i) / k(piv, piv);
    res["cochar_covector"] = io::encode(w);
  }
  return res;
}

int cmd_schubert(const CommonOpts &o) {
  json input = read_input(o.input);
  const json &mat = input.is_object() && input.contains("frame") ? input.at("frame") : input;
  auto parsed = io::parse_matrix(mat, 6, 3);
  require_exactable(parsed.exact, o);
  if ((parsed.exact ? rank(parsed.q, o.tol()) : rank(parsed.d, o.tol())) != 3)
    throw Error(ErrorKind::domain, "frame must have rank 3");
  json report = io::make_report("schubert", input, parsed.exact, o.seed, o.tol());
  report["results"] =
      parsed.exact ? schubert_result(parsed.q, o.tol()) : schubert_result(parsed.d, o.tol());
  emit(report);
  return 0;
}

//==============================================================================
// atlas
//==============================================================================

json atlas_json() {
  json quadrics = json::array();
  const char *pnames[3] = {"lambda", "mu", "nu"};
  for (const auto &row : sympde::nf_table()) {
    if (row.label == NFLabel::zero) continue;
    json r;
    r["label"] = row.name;
    r["orbit_type"] = row.orbit_type;
    r["dim"] = row.dim;
    json ps = json::array();
    // the (21)/(11) families use (mu, nu); single-parameter families use nu
    for (int k = 0; k < row.nparams; ++k)
      ps.push_back(pnames[row.nparams == 3 ? k : k + (3 - row.nparams)]);
    r["parameters"] = ps;
    auto params = sympde::selftest::detail::generic_params(row.nparams);
    json pv = json::array();
    for (auto &p : params) pv.push_back(io::encode(p));
    r["params_used"] = pv;
    r["representative"] = io::encode(normal_form_rep(row.label, params));
    quadrics.push_back(r);
  }
  json forms = json::array();
  auto push_form = [&](const char *cls, const char *rep, int dim, const char *image,
                       const char *fiber, const char *pde) {
    json r;
    r["class"] = cls;
    r["representative"] = rep;
    r["dim"] = dim;
    r["image"] = image;
    r["fiber"] = fiber;
    r["pde"] = pde;
    forms.push_back(r);
  };
  push_form("O", "e123 + e456", 13, "q(3)", "C^x", "det|u_ij| = 1");
  push_form("L", "e423 + e126 + e153 + e123", 12, "q[2^3]", "C^1", "u11 + u22 + u33 = 0");
  push_form("G", "e163 + e125", 9, "q[2,1^4]", "P^4 minus LG(2,4)", "u23 = 0");
  push_form("P", "e123", 6, "zero", "none", "u11 = 0");
  json out;
  out["quadrics"] = quadrics;
  out["forms"] = forms;
  json dims = json::array();
  for (const auto &row : sympde::nf_table())
    if (row.label != NFLabel::zero) dims.push_back(row.dim);
  out["dimension_column"] = dims;
  return out;
}

std::string atlas_markdown() {
  std::ostringstream os;
  os << "# Normal form atlas\n\n";
  os << "## Quadratic forms under Sp(6)\n\n";
  os << "| label | orbit type | dim | parameters |\n";
  os << "|---|---|---|---|\n";
  const char *pnames[3] = {"lambda", "mu", "nu"};
  for (const auto &row : sympde::nf_table()) {
    if (row.label == NFLabel::zero) continue;
    os << "| " << row.name << " | " << row.orbit_type << " | " << row.dim << " | ";
    for (int k = 0; k < row.nparams; ++k)
      os << pnames[row.nparams == 3 ? k : k + (3 - row.nparams)] << (k + 1 < row.nparams ? ", " : "");
    if (row.nparams == 0) os << "-";
    os << " |\n";
  }
  os << "\n## Effective 3-form orbits\n\n";
  os << "| class | dim | representative | image | fiber | equation |\n";
  os << "|---|---|---|---|---|---|\n";
  os << "| O | 13 | e123 + e456 | q(3) | C^x | det|u_ij| = 1 |\n";
  os << "| L | 12 | e423 + e126 + e153 + e123 | q[2^3] | C^1 | u11 + u22 + u33 = 0 |\n";
  os << "| G | 9 | e163 + e125 | q[2,1^4] | P^4 minus LG(2,4) | u23 = 0 |\n";
  os << "| P | 6 | e123 | zero | none | u11 = 0 |\n";
  return os.str();
}

int cmd_atlas(const CommonOpts &o) {
  if (o.format == "markdown") {
    std::cout << atlas_markdown();
    return 0;
  }
  if (o.format != "json") throw Error(ErrorKind::usage, "format must be json or markdown");
  json report = io::make_report("atlas", json::object(), true, o.seed, o.tol());
  report["results"] = atlas_json();
  emit(report);
  return 0;
}

//==============================================================================
// selftest
//==============================================================================

int cmd_selftest(const std::string &level, std::uint64_t seed) {
  if (level != "quick" && level != "full")
    throw Error(ErrorKind::usage, "level must be quick or full");
  auto results = sympde::selftest::run_all(level == "quick", seed);
  bool all = true;
  json out;
  json arr = json::array();
  for (const auto &r : results) {
    json c;
    c["id"] = r.id;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["detail"] = r.detail;
    arr.push_back(c);
    all = all && r.pass;
    std::fprintf(stderr, "criterion %2d [%s] (%5.2fs) %s\n", r.id, r.pass ? "pass" : "FAIL",
                 r.seconds, r.name.c_str());
  }
  out["criteria"] = arr;
  out["pass"] = all;
  out["level"] = level;
  out["seed"] = seed;
  out["version"] = io::version;
  emit(out);
  return all ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"invariants and normal forms of symplectic second-order sections"};
  app.require_subcommand(1);

  CommonOpts o_form, o_quad, o_cochar, o_schubert, o_atlas;
  std::string level = "quick";
  std::uint64_t st_seed = 1;

  auto *c1 = app.add_subcommand("classify-form", "orbit class and invariants of an effective 3-form");
  add_common(c1, o_form);
  auto *c2 = app.add_subcommand("classify-quadric", "normal form of a quadratic form under Sp(6)");
  add_common(c2, o_quad);
  auto *c3 = app.add_subcommand("cochar-verify", "adjugate/invariant consistency at sampled points");
  add_common(c3, o_cochar);
  auto *c4 = app.add_subcommand("schubert", "hyperplane section attached to a 3-dimensional subspace");
  add_common(c4, o_schubert);
  auto *c5 = app.add_subcommand("atlas", "the full normal-form tables");
  add_common(c5, o_atlas, /*with_input=*/false);
  auto *c6 = app.add_subcommand("selftest", "run the acceptance suites");
  c6->add_option("--level", level, "quick or full");
  c6->add_option("--seed", st_seed, "deterministic seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c1->parsed()) return cmd_classify_form(o_form);
    if (c2->parsed()) return cmd_classify_quadric(o_quad);
    if (c3->parsed()) return cmd_cochar_verify(o_cochar);
    if (c4->parsed()) return cmd_schubert(o_schubert);
    if (c5->parsed()) return cmd_atlas(o_atlas);
    if (c6->parsed()) return cmd_selftest(level, st_seed);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
