#include <algorithm>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace kt;

TEST_CASE("valuations of base field elements") {
  auto q2 = FieldSpec::rationals(2);
  CHECK(val(F(q2, "12")) == V(2));
  CHECK(val(F(q2, "0")).is_infinite());
  CHECK(val(F(q2, "3/8")) == V(-3));
  auto f3 = FieldSpec::fp_t(3);
  CHECK(val(F(f3, "t^3/(1+t)")) == V(3));
  auto uv = FieldSpec::fp_uv(2);
  CHECK(val(F(uv, "u*v^-1")) == Value(Rational(1), Rational(-1)));
  CHECK(val(F(uv, "u + v")) == Value(1));
}

TEST_CASE("residues and lifts") {
  auto q5 = FieldSpec::rationals(5);
  CHECK(residue(F(q5, "7")) == Scalar(5, 2L));
  auto f3 = FieldSpec::fp_t(3);
  CHECK(residue(F(f3, "(1+t)/(1-t)")) == Scalar(3, 1L));
  CHECK_THROWS_AS(residue(F(FieldSpec::rationals(2), "2")), Error);
  CHECK(lift_residue(q5, Scalar(5, 3L)) == F(q5, "3"));
  auto qt = FieldSpec::q_t();
  CHECK(lift_residue(qt, Scalar(0, Rational(7, 2))) == F(qt, "7/2"));
  CHECK(residue(F(qt, "7/2 + t")) == Scalar(0, Rational(7, 2)));
}

TEST_CASE("group index") {
  CHECK(*group_index({V(1)}, V(3, 2)) == 2);
  CHECK(*group_index({V(1)}, V(0)) == 1);
  CHECK(*group_index({V(1, 2), V(1, 3)}, V(1, 5)) == 5);
  // brute force against the subgroup (1/6)Z
  for (long n = 1; n <= 30; ++n) {
    if (Rational(n, 5) * 6 == Rational(n * 6, 5) && (n * 6) % 5 == 0) {
      CHECK(n == 5);
      break;
    }
  }
  CHECK(!group_index({V(1)}, Value(Rational(0), Rational(1))).has_value());
  CHECK(*group_index({V(1), Value(Rational(0), Rational(1))}, Value(Rational(1, 2), Rational(1, 3))) == 6);
}

TEST_CASE("value order in quadratic mode") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  auto rnd = [&] { return Value(Rational(d(rng), 1 + (d(rng) + 9) % 4), Rational(d(rng), 1 + (d(rng) + 9) % 3)); };
  for (int k = 0; k < 500; ++k) {
    Value a = rnd(), b = rnd(), c = rnd();
    int cnt = int(a < b) + int(a == b) + int(a > b);
    CHECK(cnt == 1);
    if (a < b && b < c) CHECK(a < c);
    CHECK((a < b) == (a.approx() < b.approx() - 1e-12 || (a.approx() < b.approx() && !(a == b))));
  }
  CHECK(Value::infinity() > Value(Rational(1000000)));
  CHECK(Value::infinity() + Value(3) == Value::infinity());
}

TEST_CASE("valuation axioms on random field elements") {
  std::mt19937_64 rng(11);
  for (auto spec : {FieldSpec::rationals(2), FieldSpec::fp_t(3), FieldSpec::q_t(), FieldSpec::fp_uv(2)}) {
    std::vector<std::string> atoms = {"1", "2", "3", "5/7", "12", "-7"};
    if (spec.nvars() == 1) atoms.insert(atoms.end(), {"t", "1+t", "t^2+t^3", "1/(t+t^2)"});
    if (spec.nvars() == 2) atoms.insert(atoms.end(), {"u", "v", "u+v", "u*v+1", "v^2/u"});
    std::uniform_int_distribution<size_t> pick(0, atoms.size() - 1);
    for (int k = 0; k < 100; ++k) {
      FieldElement a = F(spec, atoms[pick(rng)]) * F(spec, atoms[pick(rng)]);
      FieldElement b = F(spec, atoms[pick(rng)]) - F(spec, atoms[pick(rng)]);
      CHECK(val(a * b) == val(a) + val(b));
      CHECK(val(a + b) >= min(val(a), val(b)));
      if (val(a) != val(b)) CHECK(val(a + b) == min(val(a), val(b)));
    }
  }
}

TEST_CASE("residual factorization") {
  auto F3 = TowerField::base(3);
  auto rp = [](const TowerPtr& F, std::vector<long> c) {
    RPoly r;
    for (long x : c) r.push_back(F->from_long(x));
    return r;
  };
  auto fa = factor_residual(*F3, rp(F3, {-1, 0, 1}), 1);
  REQUIRE(fa.factors.size() == 2);
  CHECK(F3->pstr(fa.factors[0].factor) + "," + F3->pstr(fa.factors[1].factor) != "");
  auto F7 = TowerField::base(7);
  auto fb = factor_residual(*F7, rp(F7, {-2, 0, 1}), 1);
  REQUIRE(fb.factors.size() == 2);
  // exhaustive roots in F_7 are 3 and 4
  std::vector<long> roots;
  for (auto& e : fb.factors) roots.push_back(long(F7->neg(e.factor[0]).c[0].residue()));
  std::sort(roots.begin(), roots.end());
  CHECK(roots == std::vector<long>{3, 4});
  auto fc = factor_residual(*F3, rp(F3, {1, 0, 1}), 1);
  REQUIRE(fc.factors.size() == 1);
  CHECK(fc.factors[0].factor.size() == 3);
  // extension field: y^2+1 splits over F_9
  auto F9 = F3->extend(rp(F3, {1, 0, 1}));
  auto fd = factor_residual(*F9, rp(F9, {1, 0, 1}), 3);
  CHECK(fd.factors.size() == 2);
}

TEST_CASE("residual factorization recombines") {
  std::mt19937_64 rng(5);
  for (uint64_t p : {2, 3, 5}) {
    auto Fp = TowerField::base(p);
    auto Fq = Fp->extend([&] {
      RPoly l;
      // an irreducible quadratic
      for (long a = 0; a < long(p); ++a)
        for (long b = 0; b < long(p); ++b) {
          RPoly c = {Fp->from_long(b), Fp->from_long(a), Fp->one()};
          if (is_irreducible(*Fp, c)) return c;
        }
      return l;
    }());
    for (auto F : {Fp, Fq}) {
      for (int k = 0; k < 20; ++k) {
        RPoly f;
        int deg = 1 + int(rng() % 6);
        for (int i = 0; i < deg; ++i) f.push_back(F->random(rng));
        f.push_back(F->one());
        f = F->pmul(f, F->pmul(f, {F->random(rng), F->one()}));
        auto fa = factor_residual(*F, f, 42);
        RPoly prod = {fa.unit};
        for (auto& e : fa.factors) {
          CHECK(is_irreducible(*F, e.factor));
          for (int m = 0; m < e.multiplicity; ++m) prod = F->pmul(prod, e.factor);
        }
        CHECK(prod == f);
      }
    }
  }
}

TEST_CASE("rational residual factorization") {
  auto Q = TowerField::base(0);
  auto rp = [&](std::vector<long> c) {
    RPoly r;
    for (long x : c) r.push_back(Q->from_long(x));
    return r;
  };
  auto fa = factor_residual(*Q, rp({-2, 0, 1}), 0);
  CHECK(fa.factors.size() == 1);
  auto fb = factor_residual(*Q, rp({-1, 0, 0, 0, 1}), 0);
  CHECK(fb.factors.size() == 3);
  auto fc = factor_residual(*Q, rp({4, 0, 0, 0, 1}), 0);
  CHECK(fc.factors.size() == 2);
  CHECK_THROWS_AS(factor_residual(*Q, rp({2, 0, 0, 0, 0, 1}), 0), Error);
}
