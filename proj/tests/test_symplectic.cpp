#include "doctest.h"

#include "sympde/symplectic.hpp"
#include "sympde/spectral.hpp"

using namespace sympde;

TEST_CASE("is_symplectic") {
  CHECK(is_symplectic(Matrix<GQ>::identity(6)));
  CHECK(is_symplectic(legendre_total<GQ>()));
  Matrix<GQ> d = Matrix<GQ>::identity(6);
  d(0, 0) = scalar_of<GQ>(2);
  CHECK_FALSE(is_symplectic(d));
}

TEST_CASE("gram squares to minus identity") {
  auto j = gram<GQ>();
  CHECK(Matrix<GQ>(j * j) == Matrix<GQ>(scalar_of<GQ>(-1) * Matrix<GQ>::identity(6)));
}

TEST_CASE("sp_basis: 21 elements, all in the algebra, expected root vectors") {
  auto b = sp_basis<GQ>();
  REQUIRE(b.size() == 21);
  for (auto &e : b) {
    CHECK(in_sp_algebra(e.x));
    CHECK(Matrix<GQ>(gram<GQ>() * e.x).is_symmetric({}));
  }
  auto find = [&](const std::string &n) -> const Matrix<GQ> & {
    for (auto &e : b)
      if (e.name == n) return e.x;
    throw std::runtime_error("missing " + n);
  };
  CHECK(find("2h1") == elementary6<GQ>(1, 4));
  CHECK(find("h1-h2") == Matrix<GQ>(elementary6<GQ>(1, 2) - elementary6<GQ>(5, 4)));
  CHECK(find("-(2h1)") == elementary6<GQ>(4, 1));
}

TEST_CASE("phi maps the Cartan to the literal diagonal form") {
  Matrix<GQ> h(6, 6);
  long d[3] = {1, 2, 3};
  for (int i = 0; i < 3; ++i) {
    h(i, i) = scalar_of<GQ>(d[i]);
    h(i + 3, i + 3) = scalar_of<GQ>(-d[i]);
  }
  auto q = phi(h);
  Matrix<GQ> expect(6, 6);
  for (int i = 0; i < 3; ++i) {
    expect(i, i + 3) = GQ{make_rational(d[i], 2)};
    expect(i + 3, i) = GQ{make_rational(d[i], 2)};
  }
  CHECK(q == expect);
  CHECK(phi_inv(q) == h);
}

TEST_CASE("phi round trip and linearity") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto x = random_sp_algebra<GQ>(s);
    REQUIRE(in_sp_algebra(x));
    auto q = phi(x);
    CHECK(q.is_symmetric({}));
    CHECK(phi_inv(q) == x);
  }
  CHECK(phi(Matrix<GQ>(6, 6)) == Matrix<GQ>(6, 6));
  CHECK(phi_inv(phi(elementary6<GQ>(1, 4))) == elementary6<GQ>(1, 4));
}

TEST_CASE("phi equivariance: phi(g^-1 X g) = act_on_quad(g, phi(X))") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto g = random_sp<GQ>(1000 + s);
    auto x = random_sp_algebra<GQ>(2000 + s);
    auto gi = inverse(g);
    CHECK(phi(Matrix<GQ>(gi * x * g)) == act_on_quad(g, phi(x)));
  }
}

TEST_CASE("act_on_quad is a right action with inverse round trip") {
  auto g = random_sp<GQ>(7);
  auto h = random_sp<GQ>(8);
  auto q = phi(random_sp_algebra<GQ>(9));
  CHECK(act_on_quad(Matrix<GQ>(g * h), q) == act_on_quad(h, act_on_quad(g, q)));
  CHECK(act_on_quad(inverse(g), act_on_quad(g, q)) == q);
  CHECK(act_on_quad(Matrix<GQ>::identity(6), q) == q);
}

TEST_CASE("legendre transformations") {
  CHECK(legendre<GQ>({}) == Matrix<GQ>::identity(6));
  auto t = legendre_total<GQ>();
  CHECK(is_symplectic(t));
  // coordinates map (x1..x6) -> (x4,x5,x6,-x1,-x2,-x3): e4 -> e1, e1 -> -e4
  Matrix<GQ> e1(6, 1), e4(6, 1);
  e1(0, 0) = scalar_of<GQ>(1);
  e4(3, 0) = scalar_of<GQ>(1);
  CHECK(Matrix<GQ>(t * e4) == e1);
  CHECK(Matrix<GQ>(t * e1) == Matrix<GQ>(scalar_of<GQ>(-1) * e4));
  for (int i = 1; i <= 3; ++i) CHECK(is_symplectic(legendre<GQ>({i})));
  // partial on {1} leaves the (2,3) pairs alone
  auto p1 = legendre<GQ>({1});
  Matrix<GQ> e2(6, 1);
  e2(1, 0) = scalar_of<GQ>(1);
  CHECK(Matrix<GQ>(p1 * e2) == e2);
}

TEST_CASE("random_sp: exactly symplectic, distinct across seeds") {
  int distinct = 0;
  Matrix<GQ> prev(6, 6);
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto g = random_sp<GQ>(s);
    CHECK(is_symplectic(g));
    if (!(g == prev)) ++distinct;
    prev = g;
  }
  CHECK(distinct >= 99);
}

TEST_CASE("characteristic polynomial of algebra elements is even") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto x = random_sp_algebra<GQ>(5000 + s);
    auto p = char_poly(x);
    CHECK(p[1] == GQ{});
    CHECK(p[3] == GQ{});
    CHECK(p[5] == GQ{});
  }
}
