#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "uat/fundamentality.hpp"

using namespace uat;
using namespace uat::test;

TEST_CASE("nonvanishing on the closure") {
  auto c = ctx(qq(), {"X"});
  IdealContext zero = IdealContext::make(c, {P(c, "0")});
  CHECK_FALSE(nonvanishing_on_closure(P(c, "X^2 + 4"), zero));
  CHECK(nonvanishing_on_closure(P(c, "X - 2"), ideal(c, {"X^2 - X"})));
  CHECK(nonvanishing_on_closure(P(c, "1"), ideal(c, {"X^2 - X"})));
  CHECK(nonvanishing_on_closure(P(c, "1"), zero));
}

TEST_CASE("fundamentality refutation on the two-point set") {
  auto c = ctx(qq(), {"X"});
  IdealPtr I = share(ideal(c, {"X^2 - X"}));
  SearchParams params;
  params.max_degree = 1;
  params.pool = small_pool(qq());
  FundamentalSearch rep = fundamental_refute(I, params);
  REQUIRE(rep.outcome == WitnessReport::Outcome::witness);
  // the first hit in enumeration order is X + 1 = X - (-1); the family X - c
  // with c outside {0, 1} consists exactly of the degree-1 witnesses
  CHECK(poly_to_string(*rep.witness) == "X + 1");
  std::string why;
  CHECK(verify_fundamental_witness(*I, *rep.witness, params.pool, &why));
  // X - 2 passes the same three checks
  CHECK(verify_fundamental_witness(*I, P(c, "X - 2"), params.pool, &why));
  CHECK_FALSE(is_constant_mod(P(c, "X - 2"), *I).has_value());
  CHECK(nonvanishing_on_closure(P(c, "X - 2"), *I));
}

TEST_CASE("the affine line has no refutation") {
  auto c = ctx(qq(), {"X"});
  IdealPtr I = share(IdealContext::make(c, {P(c, "0")}));
  SearchParams params;
  params.max_degree = 2;
  params.pool = small_pool(qq());
  FundamentalSearch rep = fundamental_refute(I, params);
  CHECK(rep.outcome == WitnessReport::Outcome::exhausted);
}

TEST_CASE("circle over QQ: consistency exhaustion") {
  auto c = ctx(qq(), {"X", "Y"});
  IdealPtr I = share(ideal(c, {"X^2 + Y^2 - 1"}));
  SearchParams params;
  params.max_degree = 1;
  params.pool.description = "{0, 1, -1}";
  for (int v : {0, 1, -1}) params.pool.values.push_back(qq()->from_integer(v));
  CHECK(fundamental_refute(I, params).outcome ==
        WitnessReport::Outcome::exhausted);
}

TEST_CASE("finite point sets") {
  auto q = qq();
  PointSet two = PointSet::make(q, 1, {{q->from_integer(0)}, {q->from_integer(1)}});
  FundamentalityVerdict v = finite_set_decide(two);
  CHECK(v.fundamental == Tri::no);
  CHECK(v.locally_fundamental == Tri::yes);
  REQUIRE(v.witness.has_value());
  REQUIRE(v.witness_values.size() == 2);
  CHECK(v.witness_values[0] != v.witness_values[1]);

  auto f2 = gf(2);
  PointSet twof2 =
      PointSet::make(f2, 1, {{f2->from_integer(0)}, {f2->from_integer(1)}});
  CHECK(finite_set_decide(twof2).fundamental == Tri::yes);

  PointSet single = PointSet::make(q, 1, {{q->from_integer(3)}});
  CHECK(finite_set_decide(single).fundamental == Tri::yes);

  PointSet empty = PointSet::make(q, 1, {});
  FundamentalityVerdict ve = finite_set_decide(empty);
  CHECK(ve.fundamental == Tri::yes);
  CHECK(ve.locally_fundamental == Tri::yes);

  CHECK_THROWS_AS(
      PointSet::make(q, 1, {{q->from_integer(0)}, {q->from_integer(0)}}),
      Error);
}

TEST_CASE("finite sets agree with the ideal-side refuter") {
  auto q = qq();
  PointSet two = PointSet::make(q, 1, {{q->from_integer(0)}, {q->from_integer(1)}});
  FundamentalityVerdict v = finite_set_decide(two);
  auto c = ctx(q, {"X"});
  IdealContext vi = vanishing_ideal(two, c);
  CHECK(ideal_equal(vi, ideal(c, {"X^2 - X"})));
  // the refuter over the vanishing ideal also refutes, and the interpolated
  // witness is itself a valid refutation witness there
  SearchParams params;
  params.max_degree = 1;
  params.pool = small_pool(q);
  CHECK(fundamental_refute(share(vi), params).outcome ==
        WitnessReport::Outcome::witness);
  std::string why;
  CHECK(verify_fundamental_witness(vi, v.witness->transport(c), params.pool, &why));
}

TEST_CASE("bridge from unit-additivity verdicts") {
  auto c = ctx(qq(), {"X"});
  IdealPtr I = share(ideal(c, {"X^2 - X"}));
  UAVerdict ua = zero_dim_ua_decide(I);
  FundamentalityVerdict f = bridge_report(I, ua);
  CHECK(f.fundamental == Tri::no);
  CHECK(f.locally_fundamental == Tri::yes);
  bool has_assumption = false;
  for (const auto& n : f.notes)
    has_assumption = has_assumption || n.find("vanishing ideal") != std::string::npos;
  CHECK(has_assumption);

  // polynomial rings: fundamental affine space
  auto c2 = ctx(qq(), {"X", "Y"});
  IdealPtr Z = share(IdealContext::make(c2, {parse_poly("0", c2)}));
  auto pv = polynomial_ring_verdict(*Z);
  REQUIRE(pv.has_value());
  CHECK(bridge_report(Z, *pv).fundamental == Tri::yes);

  UAVerdict unk;
  CHECK(bridge_report(I, unk).fundamental == Tri::unknown);

  auto cf = ctx(gf(2), {"X"});
  IdealPtr F = share(ideal(cf, {"X^2 + X"}));
  CHECK_THROWS_AS(bridge_report(F, ua), HypothesisViolation);
}

TEST_CASE("local constancy across a decomposition") {
  auto c = ctx(qq(), {"X", "Y"});
  IdealPtr I = share(ideal(c, {"X^2 - X"}));
  DecompositionCertificate cert = split_by_idempotent(I, P(c, "X"));
  CHECK(locally_constant_mod(P(c, "X"), cert));
  CHECK_FALSE(locally_constant_mod(P(c, "Y"), cert));
  CHECK(locally_constant_mod(P(c, "5"), cert));

  // single-component certificates: locally constant iff constant
  auto c1 = ctx(qq(), {"X"});
  IdealPtr J = share(ideal(c1, {"X^2 + 1"}));
  DecompositionCertificate solo;
  solo.ambient = J;
  solo.components.push_back(J);
  solo = verify_crt(std::move(solo));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 15; ++k) {
    MultiPoly f = random_poly(c1, rng, 3, 3);
    CHECK(locally_constant_mod(f, solo) ==
          is_constant_mod(f, *J).has_value());
  }
}
