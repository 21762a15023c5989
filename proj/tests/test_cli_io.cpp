#include "doctest.h"

#include "sympde/io.hpp"

using namespace sympde;
using sympde::io::json;

TEST_CASE("scalar parsing tracks exactness") {
  auto a = io::parse_rational(json(3));
  CHECK(a.exact);
  CHECK(a.q == make_rational(3));
  auto b = io::parse_rational(json(0.5));
  CHECK_FALSE(b.exact);
  CHECK(b.d == 0.5);
  auto c = io::parse_rational(json::parse("{\"num\": 1, \"den\": 3}"));
  CHECK(c.exact);
  CHECK(c.q == make_rational(1, 3));
  CHECK_THROWS_AS(io::parse_rational(json::parse("{\"num\": 1, \"den\": 0}")), Error);
  CHECK_THROWS_AS(io::parse_rational(json("x")), Error);

  auto z = io::parse_scalar(json::parse("[1, {\"num\": -2, \"den\": 5}]"));
  CHECK(z.exact);
  CHECK(z.q == GQ{make_rational(1), make_rational(-2, 5)});
  CHECK_THROWS_AS(io::parse_scalar(json::parse("[1, 2, 3]")), Error);
}

TEST_CASE("rational encoding round trips") {
  for (long num : {0L, 7L, -3L}) {
    auto j = io::encode(make_rational(num));
    CHECK(j.is_number_integer());
    CHECK(io::parse_rational(j).q == make_rational(num));
  }
  auto j = io::encode(make_rational(22, 7));
  CHECK(j.is_object());
  CHECK(io::parse_rational(j).q == make_rational(22, 7));
  // big values fall back to strings but still round trip
  Rational big = make_rational(1);
  for (int i = 0; i < 5; ++i) big *= make_rational(1000000007);
  auto jb = io::encode(big);
  CHECK(io::parse_rational(jb).q == big);
}

TEST_CASE("matrix parse/encode round trip") {
  Rng rng(5);
  Matrix<GQ> m(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = GQ{rng.rational(), rng.rational()};
  auto parsed = io::parse_matrix(io::encode(m), 6, 6);
  CHECK(parsed.exact);
  CHECK(parsed.q == m);
  CHECK_THROWS_AS(io::parse_matrix(io::encode(m), 3, 3), Error);
}

TEST_CASE("form documents: the three variants") {
  Tol tol;
  // triples, including non-increasing keys like "163"
  auto f = io::parse_form(json::parse("{\"triples\": {\"163\": 1, \"125\": 1}}"), tol);
  CHECK(f.exact);
  CHECK(f.q.side == Side::vector_side);
  CHECK(f.q.xs(2, 1) == scalar_of<GQ>(1)); // the (3,2) and (2,3) dictionary slots
  CHECK(f.q.xs(1, 2) == scalar_of<GQ>(1));
  CHECK_THROWS_AS(io::parse_form(json::parse("{\"triples\": {\"166\": 1}}"), tol), Error);
  CHECK_THROWS_AS(io::parse_form(json::parse("{\"triples\": {\"127\": 1}}"), tol), Error);

  // effective with an explicit side
  json eff = json::parse(R"({"effective": {"side": "covector", "p123": 1,
    "X": [[0,0,0],[0,0,0],[0,0,0]], "Y": [[0,0,0],[0,0,0],[0,0,0]], "p456": 2}})");
  auto g = io::parse_form(eff, tol);
  CHECK(g.q.side == Side::covector_side);
  CHECK(g.q.p456 == scalar_of<GQ>(2));

  // mae with an asymmetric block is rejected
  json bad = json::parse(R"({"mae": {"c0": 0, "c3": 0,
    "lin": [[0,1,0],[0,0,0],[0,0,0]], "cof": [[0,0,0],[0,0,0],[0,0,0]]}})");
  CHECK_THROWS_AS(io::parse_form(bad, tol), Error);

  // exactly one variant must be present
  CHECK_THROWS_AS(io::parse_form(json::parse("{}"), tol), Error);

  // a single float entry flips the whole document to the float path
  auto h = io::parse_form(json::parse("{\"triples\": {\"123\": 0.25}}"), tol);
  CHECK_FALSE(h.exact);
  CHECK(h.d.p123 == CD{0.25, 0});
}

TEST_CASE("digest is deterministic and input sensitive") {
  json a = json::parse("{\"triples\": {\"123\": 1}}");
  json b = json::parse("{\"triples\": {\"124\": 1}}");
  CHECK(io::digest(a) == io::digest(a));
  CHECK(io::digest(a) != io::digest(b));
  CHECK(io::digest(a).size() == 16);
}

TEST_CASE("form encode/parse round trip") {
  Rng rng(11);
  EffForm<GQ> f;
  f.side = Side::covector_side;
  f.p123 = GQ{rng.rational()};
  f.p456 = GQ{rng.rational()};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      GQ x{rng.rational()}, y{rng.rational()};
      f.xs(i, j) = x;
      f.xs(j, i) = x;
      f.ys(i, j) = y;
      f.ys(j, i) = y;
    }
  json doc;
  doc["effective"] = io::encode_form(f);
  auto back = io::parse_form(doc, Tol{});
  CHECK(back.exact);
  CHECK(back.q.side == f.side);
  CHECK(back.q.p123 == f.p123);
  CHECK(back.q.xs == f.xs);
  CHECK(back.q.ys == f.ys);
  CHECK(back.q.p456 == f.p456);
}
