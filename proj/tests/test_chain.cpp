#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace kt;

namespace {

RPoly rp(const TowerPtr& F, std::vector<long> c) {
  RPoly r;
  for (long x : c) r.push_back(F->from_long(x));
  return r;
}

}  // namespace

TEST_CASE("standard expansions and truncations") {
  auto q = FieldSpec::rationals(2);
  KeyChain c(q, V(1, 2));
  c.append(P(q, "x^2-2"), Value::infinity());
  auto e = c.expand(P(q, "x^3+x"), 2);
  REQUIRE(e.coeffs.size() == 2);
  CHECK(e.coeffs[0] == P(q, "3*x"));
  CHECK(e.coeffs[1] == P(q, "x"));
  CHECK(e.reconstruct(c.level(2).Q) == P(q, "x^3+x"));
  auto e2 = c.expand(P(q, "x^2-2"), 2);
  CHECK(e2.coeffs.size() == 2);
  CHECK(e2.coeffs[0].is_zero());
  CHECK(c.expand(P(q, "x+1"), 2).coeffs.size() == 1);
  CHECK(c.truncation(P(q, "x^2-2"), 1) == V(1));
  CHECK(c.truncation(P(q, "6"), 1) == V(1));
  CHECK(c.truncation(P(q, "x^3+x"), 2) == V(1, 2));
  CHECK(c.truncation(P(q, "x^2-2"), 2).is_infinite());

  KeyChain c1(q, V(1));
  CHECK(c1.truncation(P(q, "x^2+2*x+4"), 1) == V(2));
}

TEST_CASE("support sets, sides and newton polygons") {
  auto q = FieldSpec::rationals(2);
  KeyChain half(q, V(1, 2));
  CHECK(support_set(half, P(q, "x^2-2"), 1, V(1, 2)) == std::vector<int>{0, 2});
  KeyChain two(q, V(2));
  CHECK(support_set(two, P(q, "x^3+2*x+8"), 1, V(2)) == std::vector<int>{0, 1});
  CHECK(support_set(two, P(q, "x^5"), 1, V(2)) == std::vector<int>{5});
  Poly h = P(q, "x^3+2*x+8");
  CHECK(determines_side(two, h, 1, V(1, 2)));
  CHECK(support_set(two, h, 1, V(1, 2)) == std::vector<int>{1, 3});
  CHECK(!determines_side(two, h, 1, V(1)));
  CHECK(!determines_side(two, P(q, "x^4"), 1, V(3)));

  NewtonPolygon np = newton_polygon(two, h, 1);
  REQUIRE(np.hull.size() == 3);
  CHECK(np.hull[0] == std::pair<int, Value>{0, V(3)});
  CHECK(np.hull[1] == std::pair<int, Value>{1, V(1)});
  CHECK(np.hull[2] == std::pair<int, Value>{3, V(0)});
  REQUIRE(np.sides.size() == 2);
  CHECK(np.sides[0].slope == V(-2));
  CHECK(np.sides[1].slope == V(-1, 2));
  CHECK(newton_polygon(two, P(q, "x^4"), 1).sides.empty());
  CHECK(newton_polygon(two, P(q, "6"), 1).points == std::vector<std::pair<int, Value>>{{0, V(1)}});
}

TEST_CASE("initial forms") {
  auto q = FieldSpec::rationals(2);
  KeyChain c(q, V(1));
  auto g = initial_form(c, P(q, "x^2+2*x+4"), 1);
  CHECK(g.value == V(2));
  CHECK(g.support == std::vector<int>{0, 1, 2});
  auto F2 = g.field;
  CHECK(g.residual == rp(F2, {1, 1, 1}));
  KeyChain h(q, V(1, 2));
  auto g2 = initial_form(h, P(q, "x^2-2"), 1);
  CHECK(g2.value == V(1));
  CHECK(g2.support == std::vector<int>{0, 2});
  CHECK(g2.residual == rp(F2, {1, 0, 1}));
  CHECK(g2.reduced == rp(F2, {1, 1}));
  auto g3 = initial_form(h, P(q, "12"), 1);
  CHECK(g3.value == V(2));
  CHECK(g3.residual == rp(F2, {1}));
}

TEST_CASE("integral relation lifts") {
  auto q = FieldSpec::rationals(2);
  KeyChain c(q, V(1, 2));
  auto F2 = c.residue_field(0);
  CHECK(integral_relation_lift(c, rp(F2, {1, 1})) == P(q, "x^2-2"));
  auto f3 = FieldSpec::fp_t(3);
  KeyChain d(f3, V(2, 3));
  auto F3 = d.residue_field(0);
  CHECK(integral_relation_lift(d, rp(F3, {-1, 1})) == P(f3, "x^3-t^2"));
  auto q5 = FieldSpec::rationals(5);
  KeyChain e(q5, V(1));
  CHECK(integral_relation_lift(e, rp(e.residue_field(0), {-1, 1})).degree() == 1);
  CHECK_THROWS_AS(integral_relation_lift(c, rp(F2, {1, 0, 1})), Error);
}

TEST_CASE("appending validates key polynomials") {
  auto q = FieldSpec::rationals(2);
  KeyChain c(q, V(1, 2));
  CHECK_THROWS_AS(c.append(P(q, "x^2-2"), V(1)), Error);
  CHECK_THROWS_AS(c.append(P(q, "x^2-4"), V(3)), Error);
  c.append(P(q, "x^2-2"), V(5, 2));
  CHECK(c.level(2).alpha == 2);
  CHECK(c.level(1).abar == 2);
  CHECK(c.group(2).contains(V(5, 2)));
  CHECK_THROWS_AS(KeyChain(q, V(0)), Error);
  // residue field extension: x^2+x+1 over F_2 at beta 0-level analog
  KeyChain r(q, V(1));
  c = r;
  c.append(P(q, "x^2+2*x+4"), V(7, 2));
  CHECK(c.residue_field(1)->degree() == 2);
  auto g = initial_form(c, P(q, "x^2+2*x+4"), 2);
  CHECK(g.value == V(7, 2));
}
