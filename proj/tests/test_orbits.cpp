#include "doctest.h"

#include "sympde/orbits.hpp"

using namespace sympde;

namespace {

std::vector<GQ> generic_params(int n) {
  // generic rational parameters, pairwise distinct up to sign
  std::vector<GQ> ps = {scalar_of<GQ>(3), scalar_of<GQ>(2), GQ{make_rational(5, 4)}};
  ps.resize(std::size_t(n));
  return ps;
}

} // namespace

TEST_CASE("weyl_canonicalize") {
  auto r = weyl_canonicalize<GQ>({scalar_of<GQ>(-1), scalar_of<GQ>(3), scalar_of<GQ>(2)});
  CHECK(r == std::vector<GQ>{scalar_of<GQ>(3), scalar_of<GQ>(2), scalar_of<GQ>(1)});
  GQ i{Rational(0), Rational(1)};
  auto r2 = weyl_canonicalize<GQ>({i, -i, GQ{}});
  CHECK(r2 == std::vector<GQ>{i, i, GQ{}});
  auto r3 = weyl_canonicalize<GQ>({GQ{}, GQ{}, GQ{}});
  CHECK(r3 == std::vector<GQ>{GQ{}, GQ{}, GQ{}});
  // idempotent, permutation and sign invariant
  CHECK(weyl_canonicalize<GQ>(r) == r);
  auto r4 = weyl_canonicalize<GQ>({scalar_of<GQ>(2), scalar_of<GQ>(-3), scalar_of<GQ>(1)});
  CHECK(r4 == r);
}

TEST_CASE("spectral_data on pinned forms") {
  // the principal nilpotent row: one cluster (0, [6])
  auto sd = spectral_data(normal_form_rep<GQ>(NFLabel::q6, {}));
  REQUIRE(sd.jordan.clusters.size() == 1);
  CHECK(sd.jordan.clusters[0].eigenvalue == GQ{});
  CHECK(sd.jordan.clusters[0].partition == std::vector<int>{6});

  // Cartan (1,2,3): six simple eigenvalues, closed under negation
  auto sd2 = spectral_data(normal_form_rep<GQ>(NFLabel::q111, generic_params(3)));
  CHECK(sd2.jordan.clusters.size() == 6);
  for (auto &c : sd2.jordan.clusters) CHECK(c.partition == std::vector<int>{1});

  // e1^2 (the matrix with 1 in the (4,4) slot): partition [2,1,1,1,1]
  Matrix<GQ> e1sq(6, 6);
  e1sq(3, 3) = scalar_of<GQ>(1);
  auto sd3 = spectral_data(e1sq);
  REQUIRE(sd3.jordan.clusters.size() == 1);
  CHECK(sd3.jordan.clusters[0].partition == std::vector<int>{2, 1, 1, 1, 1});
}

TEST_CASE("spectral pairing holds on random quadratic forms") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto q = phi(random_sp_algebra<GQ>(s));
    SpectralData<GQ> sd;
    try {
      sd = spectral_data(q);
    } catch (const Error &e) {
      if (e.kind == ErrorKind::irrational) continue; // only rational spectra stay exact
      throw;
    }
    for (auto &c : sd.jordan.clusters) {
      bool found = false;
      for (auto &d : sd.jordan.clusters)
        if (d.eigenvalue == -c.eigenvalue && d.partition == c.partition) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("full table round trip with generic parameters") {
  for (const auto &row : nf_table()) {
    auto params = generic_params(row.nparams);
    auto rep = normal_form_rep(row.label, params);
    CHECK(rep.is_symmetric({}));
    auto nf = classify_quadric(rep);
    CHECK(nf.label == row.label);
    CHECK(nf.dim == row.dim);
    CHECK(nf.params == weyl_canonicalize<GQ>(params));
  }
}

TEST_CASE("round trip with a second, fractional parameter set") {
  std::vector<GQ> alt = {GQ{make_rational(7, 2)}, GQ{make_rational(-4, 3)}, GQ{make_rational(1, 5)}};
  for (const auto &row : nf_table()) {
    std::vector<GQ> params(alt.begin(), alt.begin() + row.nparams);
    auto nf = classify_quadric(normal_form_rep(row.label, params));
    CHECK(nf.label == row.label);
    CHECK(nf.params == weyl_canonicalize<GQ>(params));
  }
}

TEST_CASE("conjugation invariance of the classification (exact)") {
  for (const auto &row : nf_table()) {
    if (row.label == NFLabel::zero) continue;
    auto rep = normal_form_rep(row.label, generic_params(row.nparams));
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto g = random_sp<GQ>(31 * std::uint64_t(row.label) + s);
      auto nf = classify_quadric(act_on_quad(g, rep));
      CHECK(nf.label == row.label);
    }
  }
}

TEST_CASE("orbit dimensions match the table for every row") {
  for (const auto &row : nf_table()) {
    auto rep = normal_form_rep(row.label, generic_params(row.nparams));
    CHECK(orbit_dimension(rep) == row.dim);
  }
}

TEST_CASE("matrix ranks of degenerate representatives") {
  CHECK(rank(normal_form_rep<GQ>(NFLabel::q214, {})) == 1);
  CHECK(rank(normal_form_rep<GQ>(NFLabel::q2212, {})) == 2);
  CHECK(rank(normal_form_rep<GQ>(NFLabel::q23, {})) == 3);
}

TEST_CASE("the pinned classification examples") {
  // eps1 e2 + eps2 e3 + e3^2 classifies as the principal nilpotent, dim 18
  auto nf = classify_quadric(normal_form_rep<GQ>(NFLabel::q6, {}));
  CHECK(nf.name() == "q[6]");
  CHECK(nf.dim == 18);
  // e1^2 -> the minimal nilpotent, dim 6
  Matrix<GQ> e1sq(6, 6);
  e1sq(3, 3) = scalar_of<GQ>(1);
  auto nf2 = classify_quadric(e1sq);
  CHECK(nf2.name() == "q[2,1^4]");
  CHECK(nf2.dim == 6);
  CHECK(orbit_dimension(e1sq) == 6);
  // the mixed (21) row with mu=1, nu=2, dim 18
  auto nf3 = classify_quadric(
      normal_form_rep<GQ>(NFLabel::q21_h12, {scalar_of<GQ>(1), scalar_of<GQ>(2)}));
  CHECK(nf3.name() == "q(21)+X{h1-h2}");
  CHECK(nf3.dim == 18);
  // q[4,2] under a random conjugation
  auto g = random_sp<GQ>(4242);
  auto nf4 = classify_quadric(act_on_quad(g, normal_form_rep<GQ>(NFLabel::q42, {})));
  CHECK(nf4.name() == "q[4,2]");
  // zero
  auto nf5 = classify_quadric(Matrix<GQ>(6, 6));
  CHECK(nf5.label == NFLabel::zero);
  CHECK(nf5.dim == 0);
  CHECK(orbit_dimension(Matrix<GQ>(6, 6)) == 0);
}

TEST_CASE("literal coordinate expressions classify to their rows") {
  // mu(eps1 e1 + eps2 e2) + nu eps3 e3 + eps1 e2 at mu=1, nu=2, written as a
  // literal matrix (halves on symmetric products), lands on the mixed row
  Matrix<GQ> q(6, 6);
  GQ half{make_rational(1, 2)};
  GQ mu = scalar_of<GQ>(1), nu = scalar_of<GQ>(2);
  q(0, 3) = half * mu;
  q(3, 0) = half * mu;
  q(1, 4) = half * mu;
  q(4, 1) = half * mu;
  q(2, 5) = half * nu;
  q(5, 2) = half * nu;
  q(0, 4) = half; // eps1 e2 = x1 x5
  q(4, 0) = half;
  auto nf = classify_quadric(q);
  CHECK(nf.name() == "q(21)+X{h1-h2}");
  CHECK(nf.dim == 18);
  CHECK(nf.params == std::vector<GQ>{mu, nu});
  CHECK(orbit_dimension(q) == 18);
}

TEST_CASE("canonical parameter order on the Cartan row") {
  std::vector<GQ> params = {scalar_of<GQ>(1), scalar_of<GQ>(2), scalar_of<GQ>(3)};
  auto nf = classify_quadric(normal_form_rep<GQ>(NFLabel::q111, params));
  CHECK(nf.params == std::vector<GQ>{scalar_of<GQ>(3), scalar_of<GQ>(2), scalar_of<GQ>(1)});
}

TEST_CASE("parameter constraints raise invalid_params") {
  // q(111) with lambda = mu collides with type (21)
  std::vector<GQ> bad = {scalar_of<GQ>(1), scalar_of<GQ>(1), scalar_of<GQ>(2)};
  CHECK_THROWS_AS(normal_form_rep<GQ>(NFLabel::q111, bad), Error);
  // zero parameter
  CHECK_THROWS_AS(normal_form_rep<GQ>(NFLabel::q3, {GQ{}}), Error);
  // arity mismatch
  CHECK_THROWS_AS(normal_form_rep<GQ>(NFLabel::q21, {scalar_of<GQ>(1)}), Error);
  // sign-collision: mu = -nu is the same wall
  CHECK_THROWS_AS(normal_form_rep<GQ>(NFLabel::q21, {scalar_of<GQ>(2), scalar_of<GQ>(-2)}), Error);
}

TEST_CASE("float-path classification of a conjugated representative") {
  auto repq = normal_form_rep<GQ>(NFLabel::q42, {});
  auto g = random_sp<GQ>(99);
  auto moved = act_on_quad(g, repq);
  Matrix<CD> qf(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) qf(i, j) = ScalarTraits<GQ>::to_cd(moved(i, j));
  auto nf = classify_quadric(qf);
  CHECK(nf.label == NFLabel::q42);
  CHECK(orbit_dimension(qf) == 16);
}

TEST_CASE("classification walls raise ambiguity on the float path") {
  // mu and nu differ by 1e-10: (21) against (111) is undecidable
  Matrix<CD> q(6, 6);
  double mu = 1.0, nu = 1.0 + 1e-10;
  double d[3] = {mu, nu, 2.0};
  for (int i = 0; i < 3; ++i) {
    q(i, i + 3) = CD{d[i] / 2, 0};
    q(i + 3, i) = CD{d[i] / 2, 0};
  }
  CHECK_THROWS_AS(classify_quadric(q), Error);
}

TEST_CASE("float path classifies every conjugated table row") {
  for (const auto &row : nf_table()) {
    if (row.label == NFLabel::zero) continue;
    auto rep = normal_form_rep(row.label, generic_params(row.nparams));
    auto g = random_sp<GQ>(17 * std::uint64_t(row.label) + 5);
    auto moved = act_on_quad(g, rep);
    Matrix<CD> qf(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) qf(i, j) = ScalarTraits<GQ>::to_cd(moved(i, j));
    auto nf = classify_quadric(qf);
    CHECK(nf.label == row.label);
    CHECK(orbit_dimension(qf) == row.dim);
  }
}
