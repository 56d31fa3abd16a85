#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewpbw/coeff.hpp"

using namespace spbw;

namespace {

LaurentPoly lp(int np, std::initializer_list<std::pair<std::vector<int>, mpq_class>> terms) {
  LaurentPoly r(np);
  for (const auto& [e, c] : terms) r.add_term(e, c);
  return r;
}

}  // namespace

TEST_CASE("laurent polynomial arithmetic") {
  // (q + 1)(q - 1) = q^2 - 1
  LaurentPoly a = lp(1, {{{1}, 1}, {{0}, 1}});
  LaurentPoly b = lp(1, {{{1}, 1}, {{0}, -1}});
  CHECK(a * b == lp(1, {{{2}, 1}, {{0}, -1}}));
  CHECK(a + b == lp(1, {{{1}, 2}}));
  CHECK(a - a == LaurentPoly(1));
  CHECK((-a) + a == LaurentPoly(1));
  CHECK(a.pow(2) == lp(1, {{{2}, 1}, {{1}, 2}, {{0}, 1}}));
  CHECK(a.pow(0) == LaurentPoly(1, 1));

  LaurentPoly m = LaurentPoly::monomial(1, {3}, mpq_class(2));
  CHECK(m.pow(-2) == LaurentPoly::monomial(1, {-6}, mpq_class(1, 4)));
  CHECK_THROWS_AS(a.pow(-1), NotAUnit);

  CHECK(a.shifted({-1}) == lp(1, {{{0}, 1}, {{-1}, 1}}));
  LaurentPoly two = lp(2, {{{1, -2}, 3}, {{0, 1}, 1}});
  CHECK(two.min_exps() == std::vector<int>{0, -2});
}

TEST_CASE("laurent scalar queries") {
  CHECK(LaurentPoly(2).is_zero());
  CHECK(LaurentPoly(2).as_scalar() == mpq_class(0));
  CHECK(LaurentPoly(2, 5).as_scalar() == mpq_class(5));
  CHECK(!lp(2, {{{1, 0}, 1}}).as_scalar().has_value());
  CHECK(lp(1, {{{2}, 3}}).is_single_term());
  CHECK(!lp(1, {{{2}, 3}, {{0}, 1}}).is_single_term());
}

TEST_CASE("exact division") {
  LaurentPoly a = lp(1, {{{1}, 1}, {{0}, 1}});   // q + 1
  LaurentPoly b = lp(1, {{{1}, 1}, {{0}, -1}});  // q - 1
  auto quot = laurent_try_divide(a * b, a);
  REQUIRE(quot.has_value());
  CHECK(*quot == b);
  CHECK(!laurent_try_divide(a, b).has_value());
  // Laurent shift: (q^2 - 1) q^-3 divided by (q+1) q^-1
  auto q2 = laurent_try_divide((a * b).shifted({-3}), a.shifted({-1}));
  REQUIRE(q2.has_value());
  CHECK(*q2 == b.shifted({-2}));

  // two parameters
  LaurentPoly s = lp(2, {{{1, 0}, 1}, {{0, 1}, 1}});   // a + b
  LaurentPoly d = lp(2, {{{1, 0}, 1}, {{0, 1}, -1}});  // a - b
  auto q3 = laurent_try_divide(s * s * d, s * d);
  REQUIRE(q3.has_value());
  CHECK(*q3 == s);
}

TEST_CASE("gcd is monic and correct") {
  LaurentPoly a = lp(1, {{{1}, 1}, {{0}, 1}});
  LaurentPoly b = lp(1, {{{1}, 1}, {{0}, -1}});
  // gcd(3(q+1)(q-1), 2(q-1)^2) = q - 1
  CHECK(laurent_gcd(a * b * LaurentPoly(1, 3), b * b * LaurentPoly(1, 2)) == b);
  CHECK(laurent_gcd(a, b) == LaurentPoly(1, 1));
  CHECK(laurent_gcd(LaurentPoly(1), b * LaurentPoly(1, 7)) == b);
  CHECK(laurent_gcd(LaurentPoly(1), LaurentPoly(1)) == LaurentPoly(1));

  LaurentPoly s = lp(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  LaurentPoly d = lp(2, {{{1, 0}, 1}, {{0, 1}, -1}});
  CHECK(laurent_gcd(s * d, s * s) == s);
  // coprime multivariate pair
  CHECK(laurent_gcd(s, d) == LaurentPoly(2, 1));
  // content split: gcd(2a(a+b), 4a^2) = a (monic over Q kills the 2)
  LaurentPoly va = lp(2, {{{1, 0}, 1}});
  CHECK(laurent_gcd(va * s * LaurentPoly(2, 2), va * va * LaurentPoly(2, 4)) == va);
}

TEST_CASE("fraction canonical form") {
  LaurentPoly a = lp(1, {{{1}, 1}, {{0}, 1}});
  LaurentPoly b = lp(1, {{{1}, 1}, {{0}, -1}});
  FractionValue f = reduce_fraction(a * b, b);
  CHECK(f.num == a);
  CHECK(f.den == LaurentPoly(1, 1));

  // (2q + 2)/(4q) = 1/2 + (1/2) q^-1 over a trivial denominator
  FractionValue g = reduce_fraction(lp(1, {{{1}, 2}, {{0}, 2}}), lp(1, {{{1}, 4}}));
  CHECK(g.num == lp(1, {{{0}, mpq_class(1, 2)}, {{-1}, mpq_class(1, 2)}}));
  CHECK(g.den == LaurentPoly(1, 1));

  // denominator normalized monic with minimum exponent zero
  FractionValue h = reduce_fraction(LaurentPoly(1, 1), a.shifted({2}) * LaurentPoly(1, 3));
  CHECK(h.den == a);
  CHECK(h.num == LaurentPoly::monomial(1, {-2}, mpq_class(1, 3)));

  // same value, different presentations, equal canonical forms
  FractionValue u = reduce_fraction(a * a * b, a * b * b);
  FractionValue v = reduce_fraction(a.shifted({1}), b.shifted({1}));
  CHECK(u == v);

  CHECK(reduce_fraction(LaurentPoly(1), b).num.is_zero());
  CHECK(reduce_fraction(LaurentPoly(1), b).den == LaurentPoly(1, 1));
  CHECK_THROWS_AS(reduce_fraction(a, LaurentPoly(1)), NotAUnit);
}

TEST_CASE("rational backend") {
  CoeffBackend B = CoeffBackend::rational();
  Coeff x = B.from_rational(mpq_class(3, 2));
  Coeff y = B.from_int(-2);
  CHECK(B.render(B.add(x, y)) == "-1/2");
  CHECK(B.render(B.mul(x, y)) == "-3");
  CHECK(B.render(B.inv(x)) == "2/3");
  CHECK(B.render(B.pow(y, 3)) == "-8");
  CHECK(B.render(B.pow(y, -2)) == "1/4");
  CHECK(B.is_unit(x));
  CHECK(!B.is_unit(B.zero()));
  CHECK(B.is_one(B.div(x, x)));
  CHECK_THROWS_AS(B.inv(B.zero()), NotAUnit);
  CHECK_THROWS_AS(B.add(x, Coeff(LaurentPoly(1, 1))), BackendMismatch);
}

TEST_CASE("prime field backend") {
  CHECK_THROWS_AS(CoeffBackend::prime_field(6), NotAPrime);
  CoeffBackend F = CoeffBackend::prime_field(13);
  CHECK(*F.from_int(-1).residue() == 12);
  CHECK(*F.inv(F.from_int(2)).residue() == 7);
  CHECK(*F.from_rational(mpq_class(1, 2)).residue() == 7);
  CHECK(*F.mul(F.from_int(5), F.from_int(8)).residue() == 1);
  CHECK(F.torsion_order() == 12);
  CHECK(F.primitive_root() == 2);
  CHECK(F.discrete_log(11) == 7);  // 2^7 = 128 = 11 (mod 13)
  CHECK(F.discrete_log(1) == 0);
  CHECK_THROWS_AS(F.discrete_log(0), NotAUnit);

  CoeffBackend F5 = CoeffBackend::prime_field(5);
  CHECK(F5.primitive_root() == 2);
  CHECK(F5.discrete_log(3) == 3);  // 2^3 = 8 = 3 (mod 5)
}

TEST_CASE("laurent backend arithmetic and units") {
  CoeffBackend B = CoeffBackend::laurent_field({"q"});
  Coeff q = B.monomial({1}, 1);
  Coeff one = B.one();
  Coeff s = B.add(q, one);
  CHECK(B.render(s) == "q + 1");
  CHECK(B.render(B.mul(s, s)) == "q^2 + 2*q + 1");
  CHECK(B.render(B.pow(q, -2)) == "q^-2");
  CHECK(B.is_unit(B.monomial({-3}, mpq_class(3, 2))));
  CHECK(!B.is_unit(s));
  CHECK_THROWS_AS(B.inv(s), NotAUnit);
  CHECK(B.render(B.inv(B.monomial({2}, 2))) == "1/2*q^-2");
  CHECK(B.render(B.neg(B.monomial({1}, mpq_class(3, 2)))) == "-3/2*q");
  CHECK(B.render(B.sub(one, q)) == "-q + 1");
  CHECK(B.render(B.zero()) == "0");
}

TEST_CASE("sigma scale action") {
  CoeffBackend B = CoeffBackend::laurent_field({"q"});
  SigmaAction scale2;
  scale2.identity = false;
  scale2.perm = {0};
  scale2.scale = {2};
  B.attach_actions(1, {scale2}, {DeltaAction{}});
  Coeff q = B.monomial({1}, 1);
  CHECK(B.apply_sigma(0, q) == B.monomial({1}, 2));
  CHECK(B.apply_sigma(0, q, 3) == B.monomial({1}, 8));
  CHECK(B.apply_sigma(0, q, -1) == B.monomial({1}, mpq_class(1, 2)));
  CHECK(B.apply_sigma(0, B.pow(q, -1)) == B.monomial({-1}, mpq_class(1, 2)));
  // sigma(q + 3) = 2q + 3
  CHECK(B.apply_sigma(0, B.add(q, B.from_int(3))) == B.add(B.monomial({1}, 2), B.from_int(3)));
  // round trip
  CHECK(B.apply_sigma(0, B.apply_sigma(0, q, -4), 4) == q);
}

TEST_CASE("sigma permutation action") {
  CoeffBackend B = CoeffBackend::laurent_field({"a", "b"});
  SigmaAction swap;
  swap.identity = false;
  swap.perm = {1, 0};
  swap.scale = {1, mpq_class(3)};
  // a -> b, b -> 3a
  B.attach_actions(1, {swap}, {DeltaAction{}});
  Coeff a = B.monomial({1, 0}, 1);
  Coeff b = B.monomial({0, 1}, 1);
  CHECK(B.apply_sigma(0, a) == b);
  CHECK(B.apply_sigma(0, b) == B.monomial({1, 0}, 3));
  CHECK(B.apply_sigma(0, a, 2) == B.monomial({1, 0}, 3));
  CHECK(B.apply_sigma(0, b, -1) == a);
  CHECK(B.apply_sigma(0, a, -1) == B.monomial({0, 1}, mpq_class(1, 3)));
  CHECK(B.apply_sigma(0, B.apply_sigma(0, B.add(a, b), -7), 7) == B.add(a, b));
}

TEST_CASE("delta action with identity sigma") {
  CoeffBackend B = CoeffBackend::laurent_field({"q"});
  DeltaAction d;
  d.zero = false;
  d.images = {LaurentPoly(1, 1)};  // delta(q) = 1
  B.attach_actions(1, {SigmaAction{}}, {d});
  Coeff q = B.monomial({1}, 1);
  CHECK(B.apply_delta(0, q) == B.one());
  CHECK(B.apply_delta(0, B.mul(q, q)) == B.monomial({1}, 2));
  CHECK(B.apply_delta(0, B.pow(q, 3)) == B.monomial({2}, 3));
  CHECK(B.apply_delta(0, B.from_int(5)) == B.zero());
  // delta(q^-1) = -q^-2
  CHECK(B.apply_delta(0, B.pow(q, -1)) == B.monomial({-2}, -1));
}

TEST_CASE("delta action alongside a scaling sigma") {
  CoeffBackend B = CoeffBackend::laurent_field({"q"});
  SigmaAction s;
  s.identity = false;
  s.perm = {0};
  s.scale = {2};
  DeltaAction d;
  d.zero = false;
  d.images = {LaurentPoly(1, 1)};
  B.attach_actions(1, {s}, {d});
  Coeff q = B.monomial({1}, 1);
  // delta(q^2) = sigma(q) delta(q) + delta(q) q = 3q
  CHECK(B.apply_delta(0, B.mul(q, q)) == B.monomial({1}, 3));
  // delta(q^-1) = -sigma(q)^-1 delta(q) q^-1 = -(1/2) q^-2
  CHECK(B.apply_delta(0, B.pow(q, -1)) == B.monomial({-2}, mpq_class(-1, 2)));
}

TEST_CASE("inconsistent delta tables are rejected") {
  CoeffBackend B = CoeffBackend::laurent_field({"a", "b"});
  SigmaAction s;  // a -> a, b -> 2b
  s.identity = false;
  s.perm = {0, 1};
  s.scale = {1, 2};
  DeltaAction d;  // delta(a) = 1, delta(b) = 0: delta(ab) != delta(ba)
  d.zero = false;
  d.images = {LaurentPoly(2, 1), LaurentPoly(2)};
  CHECK_THROWS_AS(B.attach_actions(1, {s}, {d}), InvalidAction);
}

TEST_CASE("action table validation") {
  CoeffBackend B = CoeffBackend::laurent_field({"a", "b"});
  SigmaAction bad;
  bad.identity = false;
  bad.perm = {0, 0};
  bad.scale = {1, 1};
  CHECK_THROWS_AS(B.attach_actions(1, {bad}, {DeltaAction{}}), InvalidAction);
  bad.perm = {0, 1};
  bad.scale = {1, 0};
  CHECK_THROWS_AS(B.attach_actions(1, {bad}, {DeltaAction{}}), InvalidAction);
  CHECK_THROWS_AS(B.attach_actions(2, {SigmaAction{}}, {DeltaAction{}}), InvalidAction);

  CoeffBackend R = CoeffBackend::rational();
  SigmaAction nonid;
  nonid.identity = false;
  CHECK_THROWS_AS(R.attach_actions(1, {nonid}, {DeltaAction{}}), InvalidAction);
  DeltaAction dq;
  dq.zero = false;
  CHECK_THROWS_AS(R.attach_actions(1, {SigmaAction{}}, {dq}), InvalidAction);
}

TEST_CASE("fraction backend") {
  CoeffBackend L = CoeffBackend::laurent_field({"q"});
  CoeffBackend B = CoeffBackend::fraction_of(L);
  CHECK(B.kind() == BackendKind::fraction_field);
  LaurentPoly q = LaurentPoly::monomial(1, {1}, 1);
  LaurentPoly one(1, 1);
  Coeff f = B.make_fraction(one, q + one);  // 1/(q+1)
  Coeff g = B.make_fraction(q, q + one);    // q/(q+1)
  CHECK(B.add(f, g) == B.one());
  CHECK(B.is_unit(f));
  CHECK(B.render(f) == "(1)/(q + 1)");
  CHECK(B.render(B.inv(f)) == "q + 1");
  Coeff h = B.div(B.one(), B.from_laurent(q));
  CHECK(h == B.from_laurent(q.pow(-1)));
  // cancellation through arithmetic
  Coeff prod = B.mul(B.make_fraction(q * q - one, one), B.make_fraction(one, q - one));
  CHECK(prod == B.from_laurent(q + one));
  CHECK_THROWS_AS(B.div(f, B.zero()), NotAUnit);

  // rational base collapses, prime fields refuse
  CHECK(CoeffBackend::fraction_of(CoeffBackend::rational()).kind() == BackendKind::rational);
  CHECK_THROWS_AS(CoeffBackend::fraction_of(CoeffBackend::prime_field(5)), NotADomain);
}

TEST_CASE("fraction backend inherits actions") {
  CoeffBackend L = CoeffBackend::laurent_field({"q"});
  SigmaAction s;
  s.identity = false;
  s.perm = {0};
  s.scale = {2};
  DeltaAction d;
  d.zero = false;
  d.images = {LaurentPoly(1, 1)};
  L.attach_actions(1, {s}, {d});
  CoeffBackend B = CoeffBackend::fraction_of(L);
  LaurentPoly q = LaurentPoly::monomial(1, {1}, 1);
  LaurentPoly one(1, 1);
  // sigma on a genuine fraction: sigma(1/(q+1)) = 1/(2q+1) shifted monic
  Coeff f = B.make_fraction(one, q + one);
  Coeff sf = B.apply_sigma(0, f);
  CHECK(B.mul(sf, B.from_laurent(q * LaurentPoly(1, 2) + one)) == B.one());
  // delta respects delta(1) = 0
  CHECK(B.apply_delta(0, B.one()) == B.zero());
  // delta(1/q) = -(delta(q)/(sigma(q) q)) = -(1/2) q^-2
  CHECK(B.apply_delta(0, B.from_laurent(q.pow(-1))) ==
        B.from_laurent(LaurentPoly::monomial(1, {-2}, mpq_class(-1, 2))));
  // quotient-rule identity on a/s with a = q^2+q, s = q+1 reduces to q
  Coeff red = B.make_fraction(q * q + q, q + one);
  CHECK(red == B.from_laurent(q));
  CHECK(B.apply_delta(0, red) == B.one());
}

TEST_CASE("unit decomposition") {
  CoeffBackend R = CoeffBackend::rational();
  auto p = unit_parts(R, R.from_rational(mpq_class(-12, 5)));
  REQUIRE(p.has_value());
  CHECK(p->sign == -1);
  CHECK(p->num == 12);
  CHECK(p->den == 5);
  CHECK(!unit_parts(R, R.zero()).has_value());

  CoeffBackend L = CoeffBackend::laurent_field({"a", "b"});
  auto u = unit_parts(L, L.monomial({2, -1}, mpq_class(3, 2)));
  REQUIRE(u.has_value());
  CHECK(u->sign == 1);
  CHECK(u->num == 3);
  CHECK(u->den == 2);
  CHECK(u->param_exps == std::vector<int>{2, -1});
  CHECK(!unit_parts(L, L.add(L.one(), L.monomial({1, 0}, 1))).has_value());

  CoeffBackend B = CoeffBackend::fraction_of(L);
  auto v = unit_parts(B, B.monomial({0, 3}, -2));
  REQUIRE(v.has_value());
  CHECK(v->sign == -1);
  CHECK(v->num == 2);
  CHECK(v->param_exps == std::vector<int>{0, 3});
  LaurentPoly a = LaurentPoly::monomial(2, {1, 0}, 1);
  CHECK(!unit_parts(B, B.make_fraction(LaurentPoly(2, 1), a + LaurentPoly(2, 1))).has_value());
}

TEST_CASE("generators and compatibility") {
  CoeffBackend R = CoeffBackend::rational();
  CHECK(R.generators().size() == 2);
  CoeffBackend L = CoeffBackend::laurent_field({"a", "b"});
  CHECK(L.generators().size() == 2);
  CHECK(L.generators()[0] == L.monomial({1, 0}, 1));
  CHECK(L.compatible(CoeffBackend::laurent_field({"a", "b"})));
  CHECK(!L.compatible(CoeffBackend::laurent_field({"a"})));
  CHECK(!L.compatible(R));
}
