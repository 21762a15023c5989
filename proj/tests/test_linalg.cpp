#include "doctest.h"

#include "sympde/matrix.hpp"
#include "sympde/spectral.hpp"

using namespace sympde;

namespace {

Matrix<GQ> diag6(std::initializer_list<long> d) {
  Matrix<GQ> m(int(d.size()), int(d.size()));
  int i = 0;
  for (long v : d) m(i, i) = scalar_of<GQ>(v), ++i;
  return m;
}

template <class S> Matrix<S> random_matrix(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix<S> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.template scalar<S>(3, 2);
  return m;
}

} // namespace

TEST_CASE("adjugate basics") {
  CHECK(adjugate(Matrix<GQ>::identity(3)) == Matrix<GQ>::identity(3));
  // diag(1,2,3) -> diag(6,3,2), the hand cofactor expansion
  CHECK(adjugate(diag6({1, 2, 3})) == diag6({6, 3, 2}));
  // rank-one symmetric 3x3: every 2x2 minor vanishes
  Matrix<GQ> v(3, 1);
  v(0, 0) = scalar_of<GQ>(2);
  v(1, 0) = scalar_of<GQ>(-1);
  v(2, 0) = scalar_of<GQ>(3);
  Matrix<GQ> r1 = v * v.transpose();
  CHECK(adjugate(r1) == Matrix<GQ>::zero(3, 3));
}

TEST_CASE("adjugate identity M adj(M) = det(M) I") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    auto m = random_matrix<GQ>(4, s);
    CHECK(m * adjugate(m) == Matrix<GQ>(m.det() * Matrix<GQ>::identity(4)));
  }
  // adj(adj(M)) = det(M)^{n-2} M for invertible 3x3
  for (std::uint64_t s = 20; s < 25; ++s) {
    auto m = random_matrix<GQ>(3, s);
    GQ d = m.det();
    if (d == GQ{}) continue;
    CHECK(adjugate(adjugate(m)) == Matrix<GQ>(d * m));
  }
}

TEST_CASE("rank") {
  CHECK(rank(Matrix<GQ>::zero(3, 3)) == 0);
  CHECK(rank(diag6({1, 1, 0})) == 2);
  Matrix<GQ> v(3, 1);
  v(0, 0) = scalar_of<GQ>(1);
  v(1, 0) = scalar_of<GQ>(2);
  v(2, 0) = scalar_of<GQ>(-5);
  CHECK(rank(Matrix<GQ>(v * v.transpose())) == 1);
  // rank + nullity = cols on the exact path
  for (std::uint64_t s = 0; s < 8; ++s) {
    auto m = random_matrix<GQ>(4, 100 + s);
    if (s % 2) { // force a rank drop
      for (int j = 0; j < 4; ++j) m(3, j) = m(0, j) + m(1, j);
    }
    CHECK(rank(m) + nullspace(m).cols() == 4);
  }
}

TEST_CASE("solve_linear") {
  Matrix<GQ> b(2, 1);
  b(0, 0) = scalar_of<GQ>(2);
  b(1, 0) = scalar_of<GQ>(4);
  CHECK(solve_linear(Matrix<GQ>::identity(2), b) == b);
  Matrix<GQ> d = diag6({2, 4});
  auto x = solve_linear(d, b);
  CHECK(x(0, 0) == scalar_of<GQ>(1));
  CHECK(x(1, 0) == scalar_of<GQ>(1));
  // construct-then-solve on a random invertible 6x6
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto a = random_matrix<GQ>(6, 200 + s);
    if (a.det() == GQ{}) continue;
    auto x0 = random_matrix<GQ>(6, 300 + s).submatrix(0, 0, 6, 1);
    CHECK(solve_linear(a, Matrix<GQ>(a * x0)) == x0);
  }
  // inconsistent system reports an error
  Matrix<GQ> a(2, 1);
  a(0, 0) = scalar_of<GQ>(1);
  a(1, 0) = scalar_of<GQ>(1);
  Matrix<GQ> rhs(2, 1);
  rhs(0, 0) = scalar_of<GQ>(1);
  rhs(1, 0) = scalar_of<GQ>(2);
  CHECK_THROWS_AS(solve_linear(a, rhs), Error);
}

TEST_CASE("char_poly and roots") {
  auto m = diag6({1, 2, 3, -1, -2, -3});
  auto p = char_poly(m);
  // even polynomial: odd coefficients vanish
  CHECK(p[1] == GQ{});
  CHECK(p[3] == GQ{});
  CHECK(p[5] == GQ{});
  CHECK(p[6] == scalar_of<GQ>(1));
  // roots recovered numerically then reconstructed exactly
  std::vector<CD> pc(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) pc[i] = ScalarTraits<GQ>::to_cd(p[i]);
  auto roots = all_roots(pc);
  REQUIRE(roots.size() == 6);
  for (auto &z : roots) {
    GQ r;
    REQUIRE(reconstruct_root(p, z, r));
    CHECK(r.im == Rational(0));
  }
}

TEST_CASE("jordan_data exact: nilpotent blocks [4,2]") {
  // matrix with chains e2->e1->0 extended: blocks of sizes 4 and 2
  Matrix<GQ> m(6, 6);
  auto one = scalar_of<GQ>(1);
  m(0, 1) = one; // 4-chain: e4 -> e3 -> e2 -> e1 -> 0
  m(1, 2) = one;
  m(2, 3) = one;
  m(4, 5) = one; // 2-chain: e6 -> e5 -> 0
  auto jd = jordan_data(m);
  REQUIRE(jd.clusters.size() == 1);
  CHECK(jd.clusters[0].eigenvalue == GQ{});
  CHECK(jd.clusters[0].partition == std::vector<int>{4, 2});
  // rank chain oracle by direct multiplication: rank(M^k) = 6 - k - min(k,2)
  Matrix<GQ> p = Matrix<GQ>::identity(6);
  for (int k = 1; k <= 4; ++k) {
    p = p * m;
    CHECK(rank(p) == 6 - k - std::min(k, 2));
  }
}

TEST_CASE("jordan_data exact: simple spectrum and identity") {
  auto jd = jordan_data(diag6({1, 2, 3, -1, -2, -3}));
  CHECK(jd.clusters.size() == 6);
  for (auto &c : jd.clusters) CHECK(c.partition == std::vector<int>{1});

  auto jd2 = jordan_data(Matrix<GQ>::identity(6));
  REQUIRE(jd2.clusters.size() == 1);
  CHECK(jd2.clusters[0].eigenvalue == scalar_of<GQ>(1));
  CHECK(jd2.clusters[0].partition == std::vector<int>{1, 1, 1, 1, 1, 1});
}

TEST_CASE("jordan_data float: multiple eigenvalue with Jordan block") {
  Matrix<CD> m(6, 6);
  // eigenvalue 2 with blocks [2,1], eigenvalue -1 with [2,1]
  auto set = [&](int i, int j, double v) { m(i, j) = CD{v, 0}; };
  set(0, 0, 2), set(0, 1, 1), set(1, 1, 2), set(2, 2, 2);
  set(3, 3, -1), set(3, 4, 1), set(4, 4, -1), set(5, 5, -1);
  auto jd = jordan_data(m);
  REQUIRE(jd.clusters.size() == 2);
  for (auto &c : jd.clusters) CHECK(c.partition == std::vector<int>{2, 1});
}

TEST_CASE("jordan_data float: nilpotent matrix clusters at zero") {
  Matrix<CD> m(6, 6);
  m(0, 1) = CD{1, 0};
  m(1, 2) = CD{1, 0};
  m(2, 3) = CD{1, 0};
  m(3, 4) = CD{1, 0};
  m(4, 5) = CD{1, 0}; // single block [6]
  auto jd = jordan_data(m);
  REQUIRE(jd.clusters.size() == 1);
  CHECK(ScalarTraits<CD>::abs(jd.clusters[0].eigenvalue) == 0.0);
  CHECK(jd.clusters[0].partition == std::vector<int>{6});
}

TEST_CASE("jordan_data ambiguity on a near-degenerate pair") {
  Matrix<CD> m(6, 6);
  double eps = 1e-9;
  m(0, 0) = CD{1, 0};
  m(1, 1) = CD{1 + eps, 0};
  m(2, 2) = CD{3, 0};
  m(3, 3) = CD{4, 0};
  m(4, 4) = CD{5, 0};
  m(5, 5) = CD{6, 0};
  CHECK_THROWS_AS(jordan_data(m), Error);
}

TEST_CASE("jordan_data float: zero and scalar matrices") {
  auto jd = jordan_data(Matrix<CD>(6, 6));
  REQUIRE(jd.clusters.size() == 1);
  CHECK(ScalarTraits<CD>::abs(jd.clusters[0].eigenvalue) == 0.0);
  CHECK(jd.clusters[0].partition == std::vector<int>{1, 1, 1, 1, 1, 1});
  Matrix<CD> s = Matrix<CD>::identity(6);
  for (int i = 0; i < 6; ++i) s(i, i) = CD{-2.5, 0};
  auto jd2 = jordan_data(s);
  REQUIRE(jd2.clusters.size() == 1);
  CHECK(ScalarTraits<CD>::abs(jd2.clusters[0].eigenvalue - CD{-2.5, 0}) < 1e-9);
}
