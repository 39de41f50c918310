#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "uat/base_change.hpp"

using namespace uat;
using namespace uat::test;

namespace {

UPoly t2_plus_1(const TowerPtr& tw) {
  return UPoly(tw, {tw->one(), tw->zero(), tw->one()});
}

}  // namespace

TEST_CASE("scalar extension re-reads generators") {
  auto c = ctx(qq(), {"X", "Y"});
  IdealPtr circle = share(ideal(c, {"X^2 + Y^2 - 1"}));
  IdealPtr over_qi = extend_scalars(circle, "i", t2_plus_1(qq()));
  CHECK(over_qi->ctx()->tower->depth() == 1);
  CHECK(over_qi->gb().size() == 1);
  CHECK(extension_preserves_leading_monomials(*circle, *over_qi));
  // the re-read ideal sees the new units
  CHECK(is_unit(QuotientElement::make(
                    over_qi, parse_poly("X + i*Y", over_qi->ctx())))
            .unit);

  // degree-1 extensions change nothing structural
  UPoly lin(qq(), {-qq()->one(), qq()->one()});  // t - 1
  IdealPtr same = extend_scalars(circle, "a", lin);
  CHECK(extension_preserves_leading_monomials(*circle, *same));

  CHECK_THROWS_AS(extend_scalars(circle, "X", t2_plus_1(qq())),
                  MalformedExtension);
}

TEST_CASE("extension keeps leading monomials on worked ideals") {
  auto c3 = ctx(qq(), {"X", "Y", "Z"});
  IdealPtr I = share(ideal(c3, {"X*Y*Z - Z", "X^2 - Y"}));
  IdealPtr I2 = extend_scalars(I, "i", t2_plus_1(qq()));
  CHECK(extension_preserves_leading_monomials(*I, *I2));
}

TEST_CASE("geometric probe on the circle") {
  auto c = ctx(qq(), {"X", "Y"});
  IdealPtr circle = share(ideal(c, {"X^2 + Y^2 - 1"}));
  SearchParams params;
  params.max_degree = 1;
  params.pool = small_pool(qq());

  ExtensionProbe probe =
      geometric_ua_refute(circle, {{"i", t2_plus_1(qq())}}, params);
  REQUIRE(probe.probes.size() == 1);
  CHECK(probe.witness_found);
  const auto& rep = probe.probes[0].report;
  REQUIRE(rep.outcome == WitnessReport::Outcome::witness);
  CHECK(poly_to_string(*rep.witness) == "X + i*Y");
  // the witness re-verifies in its own extension context
  CHECK(verify_ua_witness(probe.probes[0].ideal, *rep.witness));

  // a degree-1 extension adds nothing: exhausted
  UPoly lin(qq(), {-qq()->one(), qq()->one()});
  ExtensionProbe trivial = geometric_ua_refute(circle, {{"a", lin}}, params);
  CHECK_FALSE(trivial.witness_found);
  CHECK(trivial.probes[0].report.outcome == WitnessReport::Outcome::exhausted);
}

TEST_CASE("polynomial rings stay exhausted under extension probes") {
  auto c = ctx(qq(), {"X"});
  IdealPtr Z = share(IdealContext::make(c, {P(c, "0")}));
  SearchParams params;
  params.max_degree = 2;
  params.pool.description = "{0, 1, -1}";
  for (int v : {0, 1, -1}) params.pool.values.push_back(qq()->from_integer(v));
  UPoly cube_minus_2(qq(), {qq()->from_integer(-2), qq()->zero(), qq()->zero(),
                            qq()->one()});
  ExtensionProbe probe = geometric_ua_refute(
      Z, {{"i", t2_plus_1(qq())}, {"c", cube_minus_2}}, params);
  CHECK_FALSE(probe.witness_found);
  for (const auto& pe : probe.probes)
    CHECK(pe.report.outcome == WitnessReport::Outcome::exhausted);
}

TEST_CASE("a witness over the base stays a witness over extensions") {
  auto c = ctx(qq(), {"T"});
  IdealPtr I = share(IdealContext::make(c, {P(c, "0")}));
  LocalizationResult loc = localize(I, P(c, "T"));
  MultiPoly t = parse_poly("T", loc.localized->ctx());
  REQUIRE(verify_ua_witness(loc.localized, t));
  IdealPtr ext = extend_scalars(loc.localized, "i",
                                t2_plus_1(loc.localized->ctx()->tower));
  CHECK(verify_ua_witness(ext, t.transport(ext->ctx())));
}

TEST_CASE("units constant mod nilpotents") {
  auto c = ctx(qq(), {"X"});
  IdealPtr R = share(ideal(c, {"X^2"}));
  QuotientElement u = QuotientElement::make(R, P(c, "1 + X"));
  CoeffPool pool;
  pool.description = "{0, 1, -1}";
  for (int v : {0, 1, -1}) pool.values.push_back(qq()->from_integer(v));
  ConstantModNilpotentsVerdict v =
      units_in_L_mod_nilpotents_check(u, std::nullopt, pool);
  REQUIRE(v.state == ConstantModNilpotentsVerdict::State::yes);
  CHECK(*v.constant == qq()->one());
  CHECK_FALSE(v.candidate_from_point);

  // on the circle over QQ(i), x + iy is a unit but never constant mod
  // nilpotents; the rational point (1, 0) supplies the first candidate
  auto cqi = ctx(qq_i(), {"X", "Y"});
  IdealPtr S = share(ideal(cqi, {"X^2 + Y^2 - 1"}));
  QuotientElement xy = QuotientElement::make(S, P(cqi, "X + i*Y"));
  CoeffPool pool2;
  pool2.description = "{0, 1, -1}";
  auto qi = cqi->tower;
  for (int w : {0, 1, -1}) pool2.values.push_back(qi->from_integer(w));
  std::vector<FieldElement> pt{qi->one(), qi->zero()};
  ConstantModNilpotentsVerdict v2 =
      units_in_L_mod_nilpotents_check(xy, pt, pool2);
  CHECK(v2.state == ConstantModNilpotentsVerdict::State::no_for_all_candidates);

  QuotientElement five = QuotientElement::make(R, P(c, "5"));
  CoeffPool pool3;
  pool3.description = "{0, 1, 5}";
  for (int w : {0, 1, 5}) pool3.values.push_back(qq()->from_integer(w));
  ConstantModNilpotentsVerdict v3 =
      units_in_L_mod_nilpotents_check(five, std::nullopt, pool3);
  REQUIRE(v3.state == ConstantModNilpotentsVerdict::State::yes);
  CHECK(*v3.constant == qq()->from_integer(5));

  // a point off the zero set is rejected
  std::vector<FieldElement> off{qi->one(), qi->one()};
  CHECK_THROWS_AS(units_in_L_mod_nilpotents_check(xy, off, pool2), Error);
}

TEST_CASE("purely inseparable unit checks") {
  auto c = ctx(gf(2), {"X"});
  IdealPtr R = share(ideal(c, {"X^2"}));
  PurelyInseparableVerdict v =
      purely_inseparable_unit_check(QuotientElement::make(R, P(c, "1 + X")), 3);
  REQUIRE(v.within_bound);
  CHECK(v.exponent == 1);
  CHECK(v.constant->is_one());

  // constants of a polynomial ring over F_4 are already constant: e = 0
  auto c4 = ctx(gf4(), {"T"});
  IdealPtr F = share(IdealContext::make(c4, {parse_poly("0", c4)}));
  PurelyInseparableVerdict v2 = purely_inseparable_unit_check(
      QuotientElement::make(F, parse_poly("w", c4)), 2);
  REQUIRE(v2.within_bound);
  CHECK(v2.exponent == 0);

  // t in the localized line: t^(2^e) never becomes constant
  auto ct = ctx(gf(2), {"T"});
  IdealPtr L = share(IdealContext::make(ct, {parse_poly("0", ct)}));
  LocalizationResult loc = localize(L, parse_poly("T", ct));
  PurelyInseparableVerdict v3 = purely_inseparable_unit_check(
      QuotientElement::make(loc.localized,
                            parse_poly("T", loc.localized->ctx())),
      4);
  CHECK_FALSE(v3.within_bound);

  auto cq = ctx(qq(), {"X"});
  IdealPtr Q = share(ideal(cq, {"X^2"}));
  CHECK_THROWS_AS(
      purely_inseparable_unit_check(
          QuotientElement::make(Q, parse_poly("1 + X", cq)), 2),
      InapplicableOperation);
}
