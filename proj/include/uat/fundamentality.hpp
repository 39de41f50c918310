#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uat/unit_additivity.hpp"

namespace uat {

/// A finite list of pairwise distinct points with coordinates in one tower.
struct PointSet {
  TowerPtr tower;
  std::size_t nvars = 0;
  std::vector<std::vector<FieldElement>> points;

  static PointSet make(TowerPtr tower, std::size_t nvars,
                       std::vector<std::vector<FieldElement>> pts) {
    PointSet v;
    v.tower = std::move(tower);
    v.nvars = nvars;
    for (const auto& p : pts)
      if (p.size() != nvars)
        throw DimensionMismatch("point dimension does not match the ambient");
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (pts[i] == pts[j]) throw Error("points must be pairwise distinct");
    v.points = std::move(pts);
    return v;
  }
  std::size_t size() const { return points.size(); }
};

struct FundamentalityVerdict {
  Tri fundamental = Tri::unknown;
  Tri locally_fundamental = Tri::unknown;
  std::string provenance;
  std::string reason;
  std::optional<MultiPoly> witness;  // nonconstant on V, nonvanishing on the closure
  std::vector<std::string> witness_values;  // evaluations at the points, if any
  std::vector<std::string> notes;
};

/// f does not vanish on the closure of V over the algebraic closure iff
/// 1 lies in I + (f); decided over the base field by basis computation.
inline bool nonvanishing_on_closure(const MultiPoly& f, const IdealContext& I) {
  quotient_detail::require_proper(I);
  if (auto c = I.reduce(f).constant_value(); c && !c->is_zero()) return true;
  return ideal_sum(I, f).is_unit_ideal();
}

/// All three witness checks, recomputed from scratch.
inline bool verify_fundamental_witness(const IdealContext& I, const MultiPoly& f,
                                       const CoeffPool& pool,
                                       std::string* why = nullptr) {
  if (is_constant_mod(f, I).has_value()) {
    if (why) *why = "witness is constant mod the ideal";
    return false;
  }
  for (const auto& c : pool.values) {
    if (I.contains(f - MultiPoly::constant(f.ctx(), c))) {
      if (why) *why = "witness differs from a pool constant by an ideal element";
      return false;
    }
  }
  if (!nonvanishing_on_closure(f, I)) {
    if (why) *why = "witness vanishes on the closure";
    return false;
  }
  return true;
}

struct FundamentalSearch {
  WitnessReport::Outcome outcome = WitnessReport::Outcome::aborted;
  std::optional<MultiPoly> witness;
  long candidates_tried = 0;
  std::string search_space;
  std::string diagnostics;
};

/// Bounded search for a polynomial nonconstant mod I and nonvanishing on the
/// closure; a hit refutes fundamentality of V(I) (with I read as the full
/// vanishing ideal, a caller-side assumption recorded in reports).
/// Exhaustion is consistency evidence only.
inline FundamentalSearch fundamental_refute(const IdealPtr& I,
                                            const SearchParams& params) {
  quotient_detail::require_proper(*I);
  params.pool.validate();
  FundamentalSearch rep;
  std::vector<Monomial> monos = normal_form_monomials(*I, params.max_degree);
  rep.search_space = "degree <= " + std::to_string(params.max_degree) + ", " +
                     std::to_string(monos.size()) +
                     " normal-form monomials, pool " + params.pool.description;
  bool found = false;
  try {
    enumerate_candidates(
        I->ctx(), monos, params.pool, params.max_candidates,
        rep.candidates_tried, [&](const MultiPoly& f) -> bool {
          if (f.is_zero()) return false;
          if (is_constant_mod(f, *I).has_value()) return false;
          if (!nonvanishing_on_closure(f, *I)) return false;
          rep.witness = f;
          found = true;
          return true;
        });
  } catch (const BudgetExceeded& e) {
    rep.outcome = WitnessReport::Outcome::aborted;
    rep.diagnostics = e.what();
    return rep;
  }
  if (found) {
    std::string why;
    if (!verify_fundamental_witness(*I, *rep.witness, params.pool, &why))
      throw InternalInconsistency("fundamentality witness failed re-verification: " +
                                  why);
    rep.outcome = WitnessReport::Outcome::witness;
  } else {
    rep.outcome = WitnessReport::Outcome::exhausted;
  }
  return rep;
}

/// Vanishing ideal of a finite point set: the intersection of the maximal
/// ideals of its points.
inline IdealContext vanishing_ideal(const PointSet& V, const CtxPtr& ctx) {
  if (ctx->nvars() != V.nvars)
    throw DimensionMismatch("context does not match the point dimension");
  if (V.points.empty())
    return IdealContext::make(ctx, {MultiPoly::constant(ctx, ctx->tower->one())});
  std::optional<IdealContext> acc;
  for (const auto& p : V.points) {
    std::vector<MultiPoly> gens;
    for (std::size_t v = 0; v < V.nvars; ++v)
      gens.push_back(MultiPoly::variable(ctx, v) -
                     MultiPoly::constant(ctx, p[v]));
    IdealContext m = IdealContext::make(ctx, std::move(gens));
    acc = acc ? intersect(*acc, m) : m;
  }
  return *acc;
}

/// Exact decision for an explicit finite point set. Discreteness makes every
/// function locally constant, so the set is always locally fundamental; it is
/// fundamental iff it has at most one point or the coefficient field has only
/// one nonzero value. Otherwise an interpolated witness taking two distinct
/// nonzero values is constructed and verified.
inline FundamentalityVerdict finite_set_decide(const PointSet& V) {
  FundamentalityVerdict out;
  out.locally_fundamental = Tri::yes;
  out.provenance = "finite point set decision";
  if (V.points.empty()) {
    out.fundamental = Tri::yes;
    out.notes.push_back("empty point set: vacuously fundamental");
    return out;
  }
  out.notes.push_back("discrete set: every function is locally constant");
  if (V.size() == 1) {
    out.fundamental = Tri::yes;
    out.notes.push_back("single point: every function is constant");
    return out;
  }
  auto card = V.tower->cardinality();
  if (card && *card == 2) {
    out.fundamental = Tri::yes;
    out.notes.push_back(
        "the 2-element field admits only the constant 1 as a nonvanishing "
        "value, so nonvanishing functions are constant");
    return out;
  }
  // witness: indicator interpolation taking values 1 and w (w not 0 or 1)
  std::vector<std::string> names;
  for (std::size_t v = 0; v < V.nvars; ++v)
    names.push_back(V.nvars == 1 ? "X" : "X" + std::to_string(v + 1));
  CtxPtr ctx = make_context(V.tower, names);
  const TowerPtr& tw = V.tower;
  FieldElement w = tw->zero();
  std::vector<FieldElement> candidates{-tw->one(), tw->from_integer(2),
                                       tw->from_integer(3)};
  for (std::size_t s = 0; s < tw->depth(); ++s) {
    candidates.push_back(tw->generator(s));
    candidates.push_back(tw->generator(s) + tw->one());
  }
  for (const auto& c : candidates)
    if (!c.is_zero() && !c.is_one()) {
      w = c;
      break;
    }
  if (w.is_zero())
    throw InternalInconsistency("no second nonzero value in a field of size > 2");
  MultiPoly f = MultiPoly::zero(ctx);
  for (std::size_t i = 0; i < V.size(); ++i) {
    // coordinate-separation indicator: 1 at point i, 0 at the others
    MultiPoly e = MultiPoly::constant(ctx, tw->one());
    for (std::size_t j = 0; j < V.size(); ++j) {
      if (j == i) continue;
      std::size_t coord = 0;
      while (coord < V.nvars && V.points[i][coord] == V.points[j][coord])
        ++coord;
      FieldElement denom = V.points[i][coord] - V.points[j][coord];
      e = e * (MultiPoly::variable(ctx, coord) -
               MultiPoly::constant(ctx, V.points[j][coord]))
               .scalar_mul(denom.inverse());
    }
    f = f + e.scalar_mul(i == 1 ? w : tw->one());
  }
  // verify: nonvanishing with two distinct values among the points
  bool two_values = false;
  for (std::size_t i = 0; i < V.size(); ++i) {
    FieldElement val = f.evaluate(V.points[i]);
    if (val.is_zero())
      throw InternalInconsistency("interpolated witness vanishes at a point");
    out.witness_values.push_back(val.to_string());
    if (!(val == f.evaluate(V.points[0]))) two_values = true;
  }
  if (!two_values)
    throw InternalInconsistency("interpolated witness is constant");
  out.fundamental = Tri::no;
  out.witness = f;
  out.notes.push_back(
      "the closure of a finite set is the set itself, so pointwise "
      "nonvanishing decides nonvanishing on the closure");
  return out;
}

/// Translate a unit-additivity verdict for R = k[X]/I into a fundamentality
/// verdict for V(I), one-for-one. Requires an infinite base field; the ideal
/// is treated as the full vanishing ideal (caller-asserted, recorded).
inline FundamentalityVerdict bridge_report(const IdealPtr& I, const UAVerdict& ua) {
  if (I->ctx()->tower->cardinality().has_value())
    throw HypothesisViolation(
        "the fundamentality bridge requires an infinite base field");
  FundamentalityVerdict out;
  out.fundamental = ua.ua;
  out.locally_fundamental = ua.locally_ua;
  out.witness = ua.witness;
  out.provenance = "unit-additivity bridge (" + ua.provenance + ")";
  out.reason = ua.reason;
  out.notes = ua.notes;
  out.notes.push_back(
      "assumption: the ideal is the full vanishing ideal of its zero set "
      "(caller-asserted; radicality is not computed)");
  return out;
}

/// f is locally constant on a verified decomposition iff it is constant on
/// every component.
inline bool locally_constant_mod(const MultiPoly& f,
                                 const DecompositionCertificate& cert) {
  if (!cert.verified)
    throw CertificateError("decomposition certificate is not verified");
  for (const auto& comp : cert.components)
    if (!is_constant_mod(f.transport(comp->ctx()), *comp).has_value())
      return false;
  return true;
}

}  // namespace uat
