#include <catch2/catch_amalgamated.hpp>

#include "uat/fields.hpp"
#include "uat/finite_ring.hpp"

using namespace uat;

namespace {

TowerPtr make_qi() {
  TowerPtr q = FieldTower::rationals();
  // t^2 + 1
  std::vector<FieldElement> mp{q->one(), q->zero(), q->one()};
  return q->extend("i", mp);
}

TowerPtr make_f4() {
  TowerPtr f2 = FieldTower::prime_field(2);
  // t^2 + t + 1
  std::vector<FieldElement> mp{f2->one(), f2->one(), f2->one()};
  return f2->extend("w", mp);
}

}  // namespace

TEST_CASE("rational base arithmetic") {
  TowerPtr q = FieldTower::rationals();
  FieldElement a = q->from_rational(Rational(2, 3));
  CHECK(a.inverse() == q->from_rational(Rational(3, 2)));
  CHECK((a * a.inverse()).is_one());
  CHECK(q->from_integer(0).is_zero());
  CHECK_THROWS_AS(q->zero().inverse(), DivisionByZero);
}

TEST_CASE("extension towers") {
  TowerPtr qi = make_qi();
  FieldElement i = qi->generator(0);
  CHECK((i * i) == -qi->one());
  CHECK(i.inverse() == -i);  // i * (-i) = 1
  CHECK(qi->cardinality() == std::nullopt);

  // degree-1 extension behaves like the base: a = 5
  TowerPtr q = FieldTower::rationals();
  TowerPtr qa = q->extend("a", {q->from_integer(-5), q->one()});
  CHECK(qa->generator(0) == qa->from_integer(5));

  CHECK_THROWS_AS(q->extend("b", {q->one()}), MalformedExtension);
  CHECK_THROWS_AS(
      q->extend("b", {q->one(), q->zero(), q->from_integer(2)}),
      MalformedExtension);
}

TEST_CASE("F4 arithmetic cross-checked against the exhaustive oracle") {
  TowerPtr f4 = make_f4();
  FieldElement w = f4->generator(0);
  FieldElement one = f4->one();

  // Build the same field in the oracle: GF(2)[x]/(x^2+x+1), elements indexed
  // by coefficient tuples, and read off inverse(1+w) there.
  FiniteRing R = FiniteRing::poly_quotient(2, {1, 1, 1});
  REQUIRE(R.size() == 4);
  // oracle indices: c0 + 2*c1 encodes c0 + c1*x
  std::size_t one_plus_w = 1 + 2;  // 1 + x
  auto inv = R.inverse(one_plus_w);
  REQUIRE(inv.has_value());
  CHECK(*inv == 2);  // oracle says (1+x)^(-1) = x

  CHECK((one + w).inverse() == w);
  CHECK(((one + w) * w).is_one());

  auto all = f4->enumerate();
  CHECK(all.size() == 4);
  for (const auto& x : all)
    for (const auto& y : all) {
      CHECK(x * y == y * x);
      CHECK(x + y == y + x);
    }
}

TEST_CASE("frobenius powers") {
  TowerPtr f4 = make_f4();
  FieldElement w = f4->generator(0);
  CHECK(w.frobenius_power(1) == w * w);
  CHECK(f4->one().frobenius_power(7) == f4->one());
  // Frobenius has order 2 on F4
  CHECK((w + f4->one()).frobenius_power(2) == w + f4->one());
  // additivity of Frobenius on random pairs
  std::mt19937_64 rng(7);
  for (int k = 0; k < 25; ++k) {
    FieldElement x = f4->random_element(rng);
    FieldElement y = f4->random_element(rng);
    CHECK((x + y).frobenius_power(1) ==
          x.frobenius_power(1) + y.frobenius_power(1));
  }
  TowerPtr q = FieldTower::rationals();
  CHECK_THROWS_AS(q->one().frobenius_power(1), InapplicableOperation);
}

TEST_CASE("field axioms on random samples") {
  TowerPtr qi = make_qi();
  std::mt19937_64 rng(42);
  for (int k = 0; k < 40; ++k) {
    FieldElement a = qi->random_element(rng);
    FieldElement b = qi->random_element(rng);
    FieldElement c = qi->random_element(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
  }
}

TEST_CASE("reducible minimal polynomial surfaces as a zero divisor") {
  TowerPtr q = FieldTower::rationals();
  // t^2 - 1 = (t-1)(t+1) is not irreducible
  TowerPtr bad = q->extend("s", {q->from_integer(-1), q->zero(), q->one()});
  FieldElement s = bad->generator(0);
  CHECK_THROWS_AS((s - bad->one()).inverse(), ZeroDivisorDetected);
}

TEST_CASE("tower of depth two") {
  TowerPtr qi = make_qi();
  // adjoin j with j^2 = i
  TowerPtr qij = qi->extend("j", {-qi->generator(0).embed_into(qi), qi->zero(),
                                  qi->one()});
  REQUIRE(qij->depth() == 2);
  FieldElement j = qij->generator(1);
  FieldElement i = qij->generator(0);
  CHECK(j * j == i);
  CHECK((j.pow(4)) == -qij->one());
  CHECK(((j + i) * (j + i).inverse()).is_one());
  CHECK(qij->absolute_degree() == 4);
}
