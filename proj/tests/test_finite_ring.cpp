#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "uat/cross_check.hpp"
#include "uat/finite_ring.hpp"

using namespace uat;
using namespace uat::test;

TEST_CASE("Z/8 is UU hence unit-additive") {
  FiniteRing R = FiniteRing::mod_n(8);
  CHECK(R.units() == std::vector<std::uint64_t>{1, 3, 5, 7});
  CHECK(decide_uu(R));
  CHECK(decide_ua(R));
  CHECK(decide_ua_via_plus_one(R));
  CHECK(decide_locally_ua(R));
}

TEST_CASE("Z/6 is neither UU nor unit-additive") {
  FiniteRing R = FiniteRing::mod_n(6);
  CHECK_FALSE(decide_uu(R));   // 5 - 1 = 4 is not nilpotent
  CHECK_FALSE(decide_ua(R));   // 1 + 1 = 2 is neither
  CHECK_FALSE(decide_ua_via_plus_one(R));
}

TEST_CASE("fields") {
  CHECK(decide_ua(FiniteRing::mod_n(5)));
  FiniteRing F4 = FiniteRing::poly_quotient(2, {1, 1, 1});
  CHECK(decide_ua(F4));
  CHECK_FALSE(decide_uu(F4));  // w - 1 = w + 1 is a unit
  FiniteRing F2 = FiniteRing::mod_n(2);
  CHECK(decide_uu(F2));
}

TEST_CASE("products") {
  FiniteRing F2 = FiniteRing::mod_n(2);
  FiniteRing F4 = FiniteRing::poly_quotient(2, {1, 1, 1});
  FiniteRing R = FiniteRing::product({F2, F4});
  CHECK_FALSE(decide_ua(R));       // F4 is not UU
  CHECK(decide_locally_ua(R));     // both factors are unit-additive

  FiniteRing F3 = FiniteRing::mod_n(3);
  FiniteRing S = FiniteRing::product({F3, F3});
  CHECK_FALSE(decide_ua(S));
  CHECK(decide_locally_ua(S));
}

TEST_CASE("the two unit-additivity computations agree everywhere") {
  std::vector<FiniteRing> roster;
  for (std::uint64_t n = 2; n <= 24; ++n) roster.push_back(FiniteRing::mod_n(n));
  roster.push_back(FiniteRing::poly_quotient(2, {0, 0, 1}));     // x^2
  roster.push_back(FiniteRing::poly_quotient(2, {0, 1, 1}));     // x^2+x
  roster.push_back(FiniteRing::poly_quotient(3, {1, 0, 1}));     // x^2+1
  roster.push_back(FiniteRing::poly_quotient(5, {0, 1, 0, 1}));  // x^3+x
  for (const auto& R : roster)
    CHECK(decide_ua(R) == decide_ua_via_plus_one(R));
}

TEST_CASE("product rules on sampled pairs") {
  std::vector<FiniteRing> roster{
      FiniteRing::mod_n(2),
      FiniteRing::mod_n(4),
      FiniteRing::mod_n(6),
      FiniteRing::mod_n(8),
      FiniteRing::poly_quotient(2, {1, 1, 1}),
      FiniteRing::poly_quotient(2, {0, 0, 1}),
      FiniteRing::mod_n(3),
  };
  for (const auto& S : roster)
    for (const auto& T : roster) {
      FiniteRing R = FiniteRing::product({S, T});
      CHECK(decide_ua(R) == (decide_uu(S) && decide_uu(T)));
      CHECK(decide_locally_ua(R) ==
            (decide_locally_ua(S) && decide_locally_ua(T)));
      if (decide_ua(R)) CHECK(decide_locally_ua(R));
    }
}

TEST_CASE("unit-additive implies locally unit-additive on the roster") {
  for (std::uint64_t n = 2; n <= 16; ++n) {
    FiniteRing R = FiniteRing::mod_n(n);
    if (decide_ua(R)) CHECK(decide_locally_ua(R));
  }
}

TEST_CASE("roster specification strings") {
  FiniteRing a = parse_ring_spec("Zmod(8)");
  CHECK(a.size() == 8);
  CHECK(a.describe() == "Zmod(8)");

  FiniteRing b = parse_ring_spec("GFpoly(2, x^2+x)");
  CHECK(b.size() == 4);

  FiniteRing c = parse_ring_spec("prod(Zmod(4), GFpoly(2, x^2+x+1))");
  CHECK(c.size() == 16);
  CHECK(c.describe() == "prod(Zmod(4), GFpoly(2, x^2+x+1))");

  CHECK_THROWS_AS(parse_ring_spec("Zmod(1)"), Error);
  CHECK_THROWS_AS(parse_ring_spec("GFpoly(4, x^2)"), Error);
  CHECK_THROWS_AS(parse_ring_spec("nonsense(3)"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Zmod(8) junk"), ParseError);
}

TEST_CASE("labels and element helpers") {
  FiniteRing F4 = FiniteRing::poly_quotient(2, {1, 1, 1});
  CHECK(F4.label(0) == "0");
  CHECK(F4.label(1) == "1");
  CHECK(F4.label(2) == "x");
  CHECK(F4.label(3) == "1+x");
  auto inv = F4.inverse(3);
  REQUIRE(inv.has_value());
  CHECK(*inv == 2);  // (1+x) x = x + x^2 = 1
  CHECK(F4.is_idempotent(0));
  CHECK(F4.is_idempotent(1));
  CHECK_FALSE(F4.is_idempotent(2));
}

TEST_CASE("oracle bridge agreement") {
  struct Case {
    std::uint32_t p;
    std::string poly;
  };
  for (const auto& cs : std::vector<Case>{{2, "X^2 - X"},
                                          {2, "X^2"},
                                          {3, "X^2 - X"},
                                          {2, "X^3 + X"}}) {
    auto c = ctx(gf(cs.p), {"X"});
    IdealPtr I = share(ideal(c, {cs.poly}));
    CrossCheckReport rep = cross_check(I);
    INFO(cs.poly << " over GF(" << cs.p << ")");
    CHECK(rep.agree);
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < quotient_basis(*I).size(); ++i)
      expected *= cs.p;
    CHECK(rep.elements_checked == expected);
    CHECK(rep.mismatches.empty());
  }
  // a two-variable quotient over F_2
  auto c2 = ctx(gf(2), {"U", "T"});
  IdealPtr J = share(ideal(c2, {"U^2 - U", "T^2"}));
  CrossCheckReport rep = cross_check(J);
  CHECK(rep.agree);
  CHECK(rep.elements_checked == 16);
}
