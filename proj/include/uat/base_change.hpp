#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uat/unit_additivity.hpp"

namespace uat {

/// Scalar extension by a simple extension step: the same generators re-read
/// over the extended tower.
inline IdealPtr extend_scalars(const IdealPtr& I, const std::string& gen_name,
                               const UPoly& minpoly) {
  if (minpoly.deg() < 1 || !minpoly.lc().is_one())
    throw MalformedExtension("scalar extension needs a monic minimal polynomial");
  for (const auto& v : I->ctx()->vars)
    if (v == gen_name)
      throw MalformedExtension("generator name '" + gen_name +
                               "' clashes with a ring variable");
  TowerPtr t2 = I->ctx()->tower->extend(gen_name, minpoly.coeffs());
  CtxPtr c2 = make_context(t2, I->ctx()->vars, I->ctx()->order);
  std::vector<MultiPoly> gens;
  for (const auto& g : I->gens()) gens.push_back(g.transport(c2));
  return share(IdealContext::make(c2, std::move(gens), I->budget()));
}

/// The computational face of faithful flatness used by the bridge: the
/// reduced basis of the re-read generators keeps the same leading monomials.
inline bool extension_preserves_leading_monomials(const IdealContext& base,
                                                  const IdealContext& extended) {
  if (base.gb().size() != extended.gb().size()) return false;
  for (std::size_t i = 0; i < base.gb().size(); ++i)
    if (!(base.gb()[i].leading_monomial() ==
          extended.gb()[i].leading_monomial()))
      return false;
  return true;
}

struct ExtensionProbe {
  struct PerExtension {
    std::string gen_name;
    std::string minpoly_text;
    IdealPtr ideal;
    WitnessReport report;
  };
  std::vector<PerExtension> probes;
  bool witness_found = false;
};

/// Probe geometric unit-additivity by refutation over each listed simple
/// extension, with the pool enlarged by the residues of the new generator's
/// powers. Any witness in any extension refutes; exhaustion everywhere is
/// consistency evidence only.
inline ExtensionProbe geometric_ua_refute(
    const IdealPtr& I, const std::vector<std::pair<std::string, UPoly>>& extensions,
    const SearchParams& base_params) {
  quotient_detail::require_proper(*I);
  ExtensionProbe out;
  for (const auto& [name, minpoly] : extensions) {
    IdealPtr I2 = extend_scalars(I, name, minpoly);
    const TowerPtr& t2 = I2->ctx()->tower;
    SearchParams params = base_params;
    params.pool.values.clear();
    for (const auto& v : base_params.pool.values)
      params.pool.values.push_back(v.embed_into(t2));
    FieldElement g = t2->generator(t2->depth() - 1);
    FieldElement gp = g;
    for (std::int64_t e = 1; e < minpoly.deg(); ++e) {
      for (const auto& w : {gp, -gp}) {
        bool dup = false;
        for (const auto& v : params.pool.values) dup = dup || v == w;
        if (!dup) params.pool.values.push_back(w);
      }
      gp = gp * g;
    }
    params.pool.description =
        base_params.pool.description + " + powers of " + name;
    WitnessReport rep = ua_refute(I2, params);
    out.witness_found |=
        rep.outcome == WitnessReport::Outcome::witness;
    out.probes.push_back(ExtensionProbe::PerExtension{
        name, minpoly.to_string(name), I2, std::move(rep)});
  }
  return out;
}

struct ConstantModNilpotentsVerdict {
  enum class State { yes, no_for_all_candidates, unknown } state =
      State::unknown;
  std::optional<FieldElement> constant;
  bool candidate_from_point = false;
  std::vector<std::string> notes;
};

/// Is the unit u congruent to a constant modulo nilpotents? Candidates come
/// from evaluating at a supplied rational point of V first, then from the
/// pool; each candidate c is tested exactly via u - c in the radical of I.
inline ConstantModNilpotentsVerdict units_in_L_mod_nilpotents_check(
    const QuotientElement& u, const std::optional<std::vector<FieldElement>>& point,
    const CoeffPool& pool) {
  const IdealContext& I = *u.ring;
  if (!is_unit(u).unit)
    throw Error("units_in_L_mod_nilpotents_check requires a verified unit");
  ConstantModNilpotentsVerdict out;
  std::vector<std::pair<FieldElement, bool>> candidates;
  if (point) {
    for (const auto& g : I.gens())
      if (!g.evaluate(*point).is_zero())
        throw Error("supplied point does not lie on the zero set");
    candidates.emplace_back(u.rep.evaluate(*point), true);
  }
  for (const auto& c : pool.values) candidates.emplace_back(c, false);
  std::vector<FieldElement> tested;
  for (const auto& [c, from_point] : candidates) {
    bool dup = false;
    for (const auto& t : tested) dup = dup || t == c;
    if (dup) continue;
    tested.push_back(c);
    MultiPoly diff = u.rep - MultiPoly::constant(u.rep.ctx(), c);
    if (radical_member(diff, I)) {
      out.state = ConstantModNilpotentsVerdict::State::yes;
      out.constant = c;
      out.candidate_from_point = from_point;
      out.notes.push_back(std::string("candidate source: ") +
                          (from_point ? "rational-point evaluation" : "pool sweep"));
      return out;
    }
  }
  out.state = ConstantModNilpotentsVerdict::State::no_for_all_candidates;
  out.notes.push_back("every candidate failed the nilpotency test; this bounds "
                      "the sweep, it does not decide all constants");
  return out;
}

struct PurelyInseparableVerdict {
  bool within_bound = false;
  long exponent = 0;       // least e with u^(p^e) constant
  std::optional<FieldElement> constant;
};

/// Characteristic-p purely-inseparable unit check: least e <= e_max with
/// u^(p^e) constant mod I.
inline PurelyInseparableVerdict purely_inseparable_unit_check(
    const QuotientElement& u, long e_max) {
  if (u.ring->ctx()->tower->characteristic() == 0)
    throw InapplicableOperation(
        "purely-inseparable checks require characteristic p > 0");
  if (!is_unit(u).unit)
    throw Error("purely_inseparable_unit_check requires a verified unit");
  PurelyInseparableVerdict out;
  if (auto r = pth_power_constant(u, e_max)) {
    out.within_bound = true;
    out.exponent = r->first;
    out.constant = r->second;
  }
  return out;
}

}  // namespace uat
