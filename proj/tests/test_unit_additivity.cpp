#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "uat/unit_additivity.hpp"

using namespace uat;
using namespace uat::test;
using Outcome = WitnessReport::Outcome;

TEST_CASE("candidate enumeration is exhaustive and duplicate-free") {
  auto c = ctx(qq(), {"X", "Y"});
  IdealContext I = ideal(c, {"X^2 + Y^2 - 1"});
  auto monos = normal_form_monomials(I, 1);  // X, Y, 1
  REQUIRE(monos.size() == 3);
  CoeffPool pool = small_pool(qq());  // 5 values
  long count = 0;
  std::vector<std::string> seen;
  enumerate_candidates(c, monos, pool, 1000000, count,
                       [&](const MultiPoly& u) {
                         seen.push_back(poly_to_string(u));
                         return false;
                       });
  CHECK(count == 125);  // pool^monomials
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("enumeration order starts with the leading variable") {
  auto c = ctx(qq(), {"X", "Y", "Z"});
  IdealContext I = ideal(c, {"X*Y - 1"});
  auto monos = normal_form_monomials(I, 1);
  CoeffPool pool = small_pool(qq());
  std::vector<std::string> first;
  long count = 0;
  enumerate_candidates(c, monos, pool, 1000, count, [&](const MultiPoly& u) {
    first.push_back(poly_to_string(u));
    return first.size() >= 3;
  });
  CHECK(first[0] == "0");
  CHECK(first[1] == "X");
  CHECK(first[2] == "X + Y");
}

TEST_CASE("circle over QQ(i): witness at degree 1 with the gaussian pool") {
  auto c = ctx(qq_i(), {"X", "Y"});
  IdealPtr S = share(ideal(c, {"X^2 + Y^2 - 1"}));
  SearchParams params;
  params.max_degree = 1;
  params.pool = gaussian_pool(qq_i());
  WitnessReport rep = ua_refute(S, params);
  REQUIRE(rep.outcome == Outcome::witness);
  CHECK(*rep.witness == P(c, "X + i*Y"));
  REQUIRE(rep.witness_inverse.has_value());
  CHECK(S->reduce(*rep.witness_inverse) == S->reduce(P(c, "X - i*Y")));
  REQUIRE(rep.successor.has_value());
  CHECK(rep.successor->verdict == Classification::Verdict::neither);
}

TEST_CASE("circle over QQ: degree-2 search exhausts with constant units only") {
  auto c = ctx(qq(), {"X", "Y"});
  IdealPtr R = share(ideal(c, {"X^2 + Y^2 - 1"}));
  SearchParams params;
  params.max_degree = 2;
  params.pool = small_pool(qq());
  WitnessReport rep = ua_refute(R, params);
  REQUIRE(rep.outcome == Outcome::exhausted);
  CHECK(rep.candidates_tried == 3125);  // 5 monomials, 5 pool values
  CHECK(rep.units_found == 4);          // the nonzero constants 1, -1, 2, -2
}

TEST_CASE("hyperbola factor: witness x at degree 1") {
  auto c = ctx(qq(), {"X", "Y", "Z"});
  IdealPtr R = share(ideal(c, {"X*Y - 1"}));
  SearchParams params;
  params.max_degree = 1;
  params.pool = small_pool(qq());
  WitnessReport rep = ua_refute(R, params);
  REQUIRE(rep.outcome == Outcome::witness);
  CHECK(*rep.witness == P(c, "X"));
  CHECK(R->reduce(*rep.witness_inverse) == P(c, "Y"));
}

TEST_CASE("uu refutation") {
  auto c = ctx(qq(), {"X"});
  IdealPtr R = share(IdealContext::make(c, {P(c, "0")}));
  SearchParams params;
  params.max_degree = 0;
  params.pool.description = "{0, 1, -1, 2}";
  for (int v : {0, 1, -1, 2}) params.pool.values.push_back(qq()->from_integer(v));
  WitnessReport rep = uu_refute(R, params);
  REQUIRE(rep.outcome == Outcome::witness);
  CHECK(*rep.witness == P(c, "-1"));  // first non-1 constant in pool order

  // F_2[X]: the only unit is 1, so the search exhausts at any bound
  auto c2 = ctx(gf(2), {"X"});
  IdealPtr F = share(IdealContext::make(c2, {P(c2, "0")}));
  SearchParams p2;
  p2.max_degree = 2;
  p2.pool = all_elements_pool(gf(2));
  WitnessReport r2 = uu_refute(F, p2);
  REQUIRE(r2.outcome == Outcome::exhausted);
  CHECK(r2.units_found == 1);

  // F_4 presented over F_2: w is a unit and w - 1 is a unit, not nilpotent
  IdealPtr F4 = share(ideal(c2, {"X^2 + X + 1"}));
  SearchParams p3;
  p3.max_degree = 1;
  p3.pool = all_elements_pool(gf(2));
  WitnessReport r3 = uu_refute(F4, p3);
  REQUIRE(r3.outcome == Outcome::witness);
  CHECK(*r3.witness == P(c2, "X"));
}

TEST_CASE("witness symmetry under negation") {
  auto c = ctx(qq_i(), {"X", "Y"});
  IdealPtr S = share(ideal(c, {"X^2 + Y^2 - 1"}));
  for (const char* expr : {"X + i*Y", "i*X + Y", "X - i*Y"}) {
    MultiPoly u = P(c, expr);
    MultiPoly one = P(c, "1");
    Classification a = classify(QuotientElement::make(S, u + one));
    Classification b = classify(QuotientElement::make(S, -(u + one)));
    CHECK(a.verdict == b.verdict);
  }
}

TEST_CASE("zero-dimensional decisions") {
  auto c = ctx(qq(), {"X"});
  UAVerdict v1 = zero_dim_ua_decide(share(ideal(c, {"X^2 - X"})));
  CHECK(v1.ua == Tri::no);
  CHECK(v1.locally_ua == Tri::yes);
  CHECK(v1.uu == Tri::no);
  REQUIRE(v1.witness.has_value());
  CHECK(verify_ua_witness(share(ideal(c, {"X^2 - X"})), *v1.witness));

  auto c2 = ctx(gf(2), {"X"});
  UAVerdict v2 = zero_dim_ua_decide(share(ideal(c2, {"X^2 - X"})));
  CHECK(v2.ua == Tri::yes);
  CHECK(v2.uu == Tri::yes);

  UAVerdict v3 = zero_dim_ua_decide(share(ideal(c, {"X^2 + 1"})));
  CHECK(v3.ua == Tri::yes);
  CHECK(v3.uu == Tri::no);  // the field QQ(i) has units besides 1

  // non-reduced: unknown with the non-reduced reason
  UAVerdict v4 = zero_dim_ua_decide(share(ideal(c2, {"X^3 + X"})));
  CHECK(v4.ua == Tri::unknown);
  CHECK(v4.reason.find("non-reduced") != std::string::npos);

  // char 2 with a component bigger than F_2
  UAVerdict v5 = zero_dim_ua_decide(share(ideal(c2, {"X^3 + X^2 + X"})));
  // x^3+x^2+x = x (x^2+x+1) over F_2: components F_2 and F_4
  CHECK(v5.ua == Tri::no);
  REQUIRE(v5.witness.has_value());
  CHECK(verify_ua_witness(share(ideal(c2, {"X^3 + X^2 + X"})), *v5.witness));
}

TEST_CASE("polynomial ring recognition") {
  auto c = ctx(qq(), {"X", "Y"});
  auto pr = recognize_polynomial_ring(ideal(c, {"X"}));
  REQUIRE(pr.has_value());
  REQUIRE(pr->size() == 1);
  CHECK((*pr)[0] == "Y");

  auto zero_ring = IdealContext::make(c, {P(c, "0")});
  auto pr2 = recognize_polynomial_ring(zero_ring);
  REQUIRE(pr2.has_value());
  CHECK(pr2->size() == 2);

  CHECK_FALSE(recognize_polynomial_ring(ideal(c, {"X*Y - 1"})).has_value());
  CHECK_FALSE(recognize_polynomial_ring(ideal(c, {"X^2 + Y^2 - 1"})).has_value());
  // substitution presentations count when the order makes X the leading
  // variable; under grevlex the same ideal leads with Y^2 and is missed
  // (the recognizer is conservative, never wrong)
  auto clex = ctx(qq(), {"X", "Y"}, MonomialOrder::lex());
  CHECK(recognize_polynomial_ring(ideal(clex, {"X - Y^2"})).has_value());
  CHECK_FALSE(recognize_polynomial_ring(ideal(c, {"X - Y^2"})).has_value());

  auto v = polynomial_ring_verdict(ideal(c, {"X"}));
  REQUIRE(v.has_value());
  CHECK(v->ua == Tri::yes);
  CHECK(v->uu == Tri::no);
  auto c2 = ctx(gf(2), {"U", "T"});
  auto v2 = polynomial_ring_verdict(ideal(c2, {"U - 1"}));
  REQUIRE(v2.has_value());
  CHECK(v2->uu == Tri::yes);  // F_2[T]
}

TEST_CASE("product rule over a verified decomposition") {
  auto c = ctx(gf(2), {"U", "T"});
  IdealPtr I = share(ideal(c, {"U^2 - U", "T*(U - 1)"}));
  DecompositionCertificate cert = split_by_idempotent(I, P(c, "U"));
  std::vector<UAVerdict> per;
  for (const auto& comp : cert.components) {
    if (auto v = polynomial_ring_verdict(*comp)) {
      per.push_back(*v);
    } else {
      per.push_back(zero_dim_ua_decide(comp));
    }
  }
  UAVerdict v = locally_ua_from_decomposition(cert, per);
  CHECK(v.locally_ua == Tri::yes);
  CHECK(v.ua == Tri::yes);  // product of UU components
  CHECK(v.uu == Tri::yes);

  // QQ x QQ: locally unit-additive but not unit-additive
  auto cq = ctx(qq(), {"X"});
  IdealPtr J = share(ideal(cq, {"X^2 - X"}));
  DecompositionCertificate cert2 = split_by_idempotent(J, P(cq, "X"));
  std::vector<UAVerdict> per2{zero_dim_ua_decide(cert2.components[0]),
                              zero_dim_ua_decide(cert2.components[1])};
  UAVerdict v2 = locally_ua_from_decomposition(cert2, per2);
  CHECK(v2.locally_ua == Tri::yes);
  CHECK(v2.ua == Tri::no);
  // and the direct zero-dimensional decision agrees
  CHECK(zero_dim_ua_decide(J).ua == Tri::no);

  // single component: the verdict is the component verdict
  DecompositionCertificate solo;
  solo.ambient = J;
  solo.components.push_back(J);
  solo = verify_crt(std::move(solo));
  UAVerdict v3 =
      locally_ua_from_decomposition(solo, {zero_dim_ua_decide(solo.components[0])});
  CHECK(v3.ua == Tri::no);
  CHECK(v3.locally_ua == Tri::yes);

  // unverified certificates are rejected
  DecompositionCertificate raw;
  raw.ambient = J;
  raw.components.push_back(J);
  CHECK_THROWS_AS(locally_ua_from_decomposition(raw, {UAVerdict{}}),
                  CertificateError);
}

TEST_CASE("minimal-primes inference") {
  auto c = ctx(qq(), {"X", "Y"});
  IdealPtr I = share(ideal(c, {"X*Y"}));
  std::vector<IdealPtr> primes{share(ideal(c, {"X"})), share(ideal(c, {"Y"}))};
  std::vector<UAVerdict> per;
  for (const auto& p : primes) {
    auto v = polynomial_ring_verdict(*p);
    REQUIRE(v.has_value());
    per.push_back(*v);
  }
  ConnectednessEvidence conn;
  conn.kind = ConnectednessEvidence::Kind::caller_asserted;
  conn.note = "the axes meet at the origin";
  UAVerdict v = infer_ua_from_min_primes(I, primes, per, conn);
  CHECK(v.ua == Tri::yes);
  CHECK(v.provenance == "minimal-primes inference");

  // consistency: a bounded refutation search finds nothing
  SearchParams params;
  params.max_degree = 2;
  params.pool = small_pool(qq());
  CHECK(ua_refute(I, params).outcome == Outcome::exhausted);

  // one quotient not unit-additive: inapplicable, not a refutation
  auto c3 = ctx(qq(), {"X", "Y", "Z"});
  IdealPtr R = share(ideal(c3, {"X*Y*Z - Z"}));
  std::vector<IdealPtr> primes3{share(ideal(c3, {"X*Y - 1"})),
                                share(ideal(c3, {"Z"}))};
  SearchParams p3;
  p3.max_degree = 1;
  p3.pool = small_pool(qq());
  WitnessReport w = ua_refute(primes3[0], p3);
  REQUIRE(w.outcome == Outcome::witness);
  UAVerdict not_ua;
  not_ua.ua = Tri::no;
  not_ua.witness = w.witness;
  auto poly_ring = polynomial_ring_verdict(*primes3[1]);
  REQUIRE(poly_ring.has_value());
  UAVerdict v3 = infer_ua_from_min_primes(R, primes3, {not_ua, *poly_ring}, conn);
  CHECK(v3.ua == Tri::unknown);
  CHECK(v3.reason.find("one-directional") != std::string::npos);

  // disconnected zero-dimensional input is rejected despite the assertion
  auto c1 = ctx(qq(), {"X"});
  IdealPtr D = share(ideal(c1, {"X^2 - X"}));
  std::vector<IdealPtr> dp{share(ideal(c1, {"X"})), share(ideal(c1, {"X - 1"}))};
  std::vector<UAVerdict> dper{zero_dim_ua_decide(dp[0]), zero_dim_ua_decide(dp[1])};
  UAVerdict v4 = infer_ua_from_min_primes(D, dp, dper, conn);
  CHECK(v4.ua == Tri::unknown);
  CHECK(v4.reason.find("2 components") != std::string::npos);
}

TEST_CASE("localization") {
  auto c = ctx(qq(), {"T"});
  IdealPtr I = share(IdealContext::make(c, {P(c, "0")}));
  LocalizationResult loc = localize(I, P(c, "T"));
  CHECK_FALSE(loc.zero_ring);
  CHECK(loc.fresh_var == "Y");
  REQUIRE(loc.localized->gb().size() == 1);

  SearchParams params;
  params.max_degree = 1;
  params.pool.description = "{0, 1, -1}";
  for (int v : {0, 1, -1}) params.pool.values.push_back(qq()->from_integer(v));
  WitnessReport rep = ua_refute(loc.localized, params);
  REQUIRE(rep.outcome == Outcome::witness);
  CHECK(poly_to_string(*rep.witness) == "T");

  // localizing at 1 keeps the ring (up to the extra variable)
  auto c2 = ctx(qq(), {"X"});
  IdealPtr J = share(ideal(c2, {"X^2"}));
  LocalizationResult at_one = localize(J, P(c2, "1"));
  CHECK_FALSE(at_one.zero_ring);
  CHECK(member(parse_poly("Y - 1", at_one.localized->ctx()), *at_one.localized));

  // localizing at a nilpotent gives the zero ring, flagged not thrown
  LocalizationResult dead = localize(J, P(c2, "X"));
  CHECK(dead.zero_ring);
}
