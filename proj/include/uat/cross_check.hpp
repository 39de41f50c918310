#pragma once

#include <string>
#include <vector>

#include "uat/finite_ring.hpp"
#include "uat/unit_additivity.hpp"

namespace uat {

struct CrossCheckReport {
  bool agree = false;
  std::uint64_t elements_checked = 0;
  std::vector<std::string> mismatches;
  std::string oracle_description;
  Tri groebner_ua = Tri::unknown;
  bool oracle_ua = false;
  bool ua_compared = false;
  std::vector<std::string> notes;
};

/// Build the finite ring with the same structure constants as a
/// zero-dimensional quotient over a finite tower (staircase basis plus
/// multiplication table) and compare verdicts element by element.
inline CrossCheckReport cross_check(const IdealPtr& I,
                                    std::uint64_t size_budget = 256) {
  if (!is_zero_dimensional(*I)) throw NotZeroDimensional();
  quotient_detail::require_proper(*I);
  const TowerPtr& tw = I->ctx()->tower;
  if (!tw->cardinality())
    throw InapplicableOperation("cross check needs a finite coefficient field");
  std::vector<FieldElement> elems = tw->enumerate();
  const std::uint64_t q = elems.size();
  std::vector<Monomial> basis = quotient_basis(*I);
  const std::size_t D = basis.size();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < D; ++i) {
    size *= q;
    if (size > size_budget)
      throw BudgetExceeded("quotient too large for the oracle bridge",
                           BudgetDiagnostics{0, 0, "size " + std::to_string(size)});
  }
  auto elem_index = [&](const FieldElement& e) -> std::uint64_t {
    for (std::uint64_t i = 0; i < q; ++i)
      if (elems[i] == e) return i;
    throw InternalInconsistency("coefficient outside the tower enumeration");
  };
  auto coords_of = [&](const MultiPoly& nf) {
    std::vector<std::uint64_t> c(D, 0);
    for (const auto& t : nf.terms()) {
      std::size_t pos = D;
      for (std::size_t i = 0; i < D; ++i)
        if (basis[i] == t.mono) {
          pos = i;
          break;
        }
      if (pos == D)
        throw InternalInconsistency(
            "structural bug: normal form leaves the staircase (dimension mismatch)");
      c[pos] = elem_index(t.coeff);
    }
    return c;
  };
  auto index_of = [&](const std::vector<std::uint64_t>& c) {
    std::uint64_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < D; ++i) {
      idx += c[i] * stride;
      stride *= q;
    }
    return idx;
  };
  auto rep_of = [&](std::uint64_t idx) {
    MultiPoly p = MultiPoly::zero(I->ctx());
    for (std::size_t i = 0; i < D; ++i) {
      std::uint64_t digit = idx % q;
      idx /= q;
      if (digit)
        p = p + MultiPoly::monomial(I->ctx(), basis[i], elems[digit]);
    }
    return p;
  };

  std::vector<std::vector<std::uint64_t>> add(size,
                                              std::vector<std::uint64_t>(size, 0));
  std::vector<std::vector<std::uint64_t>> mul(size,
                                              std::vector<std::uint64_t>(size, 0));
  std::vector<std::string> labels(size);
  std::vector<MultiPoly> reps;
  reps.reserve(size);
  for (std::uint64_t a = 0; a < size; ++a) {
    reps.push_back(rep_of(a));
    labels[a] = poly_to_string(reps[a]);
  }
  for (std::uint64_t a = 0; a < size; ++a)
    for (std::uint64_t b = 0; b < size; ++b) {
      add[a][b] = index_of(coords_of(reps[a] + reps[b]));
      mul[a][b] = index_of(coords_of(I->reduce(reps[a] * reps[b])));
    }
  MultiPoly one = MultiPoly::constant(I->ctx(), tw->one());
  FiniteRing oracle =
      FiniteRing::from_tables(std::move(add), std::move(mul),
                              index_of(coords_of(one)), std::move(labels));

  CrossCheckReport rep;
  rep.oracle_description =
      "structure-constant table ring, " + std::to_string(size) + " elements";
  for (std::uint64_t a = 0; a < size; ++a) {
    Classification cl = classify(QuotientElement::make(I, reps[a]));
    bool o_unit = oracle.is_unit(a);
    bool o_nilp = oracle.is_nilpotent(a);
    std::string expected = o_unit ? "unit" : (o_nilp ? "nilpotent" : "neither");
    if (cl.verdict_name() != expected)
      rep.mismatches.push_back("element " + oracle.label(a) + ": basis side says " +
                               cl.verdict_name() + ", oracle says " + expected);
    ++rep.elements_checked;
  }
  rep.oracle_ua = decide_ua(oracle);
  UAVerdict v = zero_dim_ua_decide(I);
  rep.groebner_ua = v.ua;
  if (v.ua != Tri::unknown) {
    rep.ua_compared = true;
    if ((v.ua == Tri::yes) != rep.oracle_ua)
      rep.mismatches.push_back("unit-additivity verdicts disagree");
  } else {
    rep.notes.push_back("symbolic unit-additivity verdict unknown (" + v.reason +
                        "); element-wise comparison still performed");
  }
  rep.agree = rep.mismatches.empty();
  return rep;
}

}  // namespace uat
