#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uat/spectrum.hpp"

namespace uat {

enum class Tri { yes, no, unknown };

inline std::string tri_name(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Coefficient pools and candidate enumeration
// ---------------------------------------------------------------------------

/// Finite coefficient pool for bounded witness searches. values[0] must be 0
/// and 1 must be present; the listed order drives the search order.
struct CoeffPool {
  std::vector<FieldElement> values;
  std::string description;

  void validate() const {
    if (values.empty() || !values[0].is_zero())
      throw Error("coefficient pool must start with 0");
    bool has_one = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i].is_zero()) throw Error("coefficient pool repeats 0");
      if (values[i].is_one()) has_one = true;
      for (std::size_t j = i + 1; j < values.size(); ++j)
        if (values[i] == values[j])
          throw Error("coefficient pool has duplicate entries");
    }
    if (!has_one) throw Error("coefficient pool must contain 1");
  }
};

inline CoeffPool small_pool(const TowerPtr& tower) {
  CoeffPool p;
  p.description = "small {0, 1, -1, 2, -2}";
  for (int v : {0, 1, -1, 2, -2}) p.values.push_back(tower->from_integer(v));
  if (tower->characteristic() != 0) {
    // collapse duplicates mod p while keeping the order
    CoeffPool q;
    q.description = "small mod " + std::to_string(tower->characteristic());
    for (const auto& v : p.values) {
      bool dup = false;
      for (const auto& w : q.values) dup = dup || w == v;
      if (!dup) q.values.push_back(v);
    }
    return q;
  }
  return p;
}

inline CoeffPool all_elements_pool(const TowerPtr& tower) {
  CoeffPool p;
  p.description = "all field elements";
  p.values.push_back(tower->zero());
  for (const auto& v : tower->enumerate())
    if (!v.is_zero()) p.values.push_back(v);
  return p;
}

/// {0, +-1, +-g, +-1 +- g} for the top tower generator g.
inline CoeffPool gaussian_pool(const TowerPtr& tower) {
  if (tower->depth() == 0)
    throw Error("gaussian pool needs a tower with at least one generator");
  FieldElement g = tower->generator(tower->depth() - 1);
  FieldElement one = tower->one();
  CoeffPool p;
  p.description = "unit box around the top generator";
  p.values = {tower->zero(), one, -one, g, -g, one + g, one - g, -one + g,
              -one - g};
  return p;
}

/// Normal-form monomials of total degree <= bound (not divisible by any
/// leading monomial of the reduced basis), sorted descending.
inline std::vector<Monomial> normal_form_monomials(const IdealContext& I,
                                                   long degree_bound) {
  const std::size_t n = I.ctx()->nvars();
  std::vector<Monomial> out;
  Monomial m = Monomial::unit(n);
  while (true) {
    if (m.total_degree() <= static_cast<std::uint64_t>(degree_bound)) {
      bool reducible = false;
      for (const auto& g : I.gb())
        if (g.leading_monomial().divides(m)) {
          reducible = true;
          break;
        }
      if (!reducible) out.push_back(m);
    }
    std::size_t v = 0;
    while (v < n && ++m.e[v] > static_cast<std::uint32_t>(degree_bound))
      m.e[v++] = 0;
    if (v == n) break;
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return I.ctx()->order.greater(a, b);
  });
  return out;
}

/// Enumerates all pool-coefficient combinations over the given monomials,
/// smallest candidate first: zero, then by (pool index of the leading
/// coefficient, leading monomial from the largest down, recursively on the
/// tail). The visitor returns true to stop. Exhaustive and duplicate-free:
/// the candidate count is pool^monomials.
inline bool enumerate_candidates(
    const CtxPtr& ctx, const std::vector<Monomial>& monos,
    const CoeffPool& pool, long max_candidates, long& count,
    const std::function<bool(const MultiPoly&)>& visit) {
  count = 0;
  MultiPoly zero = MultiPoly::zero(ctx);
  ++count;
  if (visit(zero)) return true;
  std::function<bool(std::size_t, const MultiPoly&)> gen =
      [&](std::size_t from, const MultiPoly& prefix) -> bool {
    for (std::size_t li = 1; li < pool.values.size(); ++li) {
      for (std::size_t j = from; j < monos.size(); ++j) {
        MultiPoly cand =
            prefix + MultiPoly::monomial(ctx, monos[j], pool.values[li]);
        ++count;
        if (count > max_candidates)
          throw BudgetExceeded("candidate budget exceeded",
                               BudgetDiagnostics{0, 0,
                                                 std::to_string(count) +
                                                     " candidates visited"});
        if (visit(cand)) return true;
        if (gen(j + 1, cand)) return true;
      }
    }
    return false;
  };
  return gen(0, zero);
}

// ---------------------------------------------------------------------------
// Witness search
// ---------------------------------------------------------------------------

struct SearchParams {
  long max_degree = 2;
  CoeffPool pool;
  long max_candidates = 2000000;
  bool point_screen = true;
};

struct WitnessReport {
  enum class Outcome { witness, exhausted, aborted };
  Outcome outcome = Outcome::aborted;
  std::optional<MultiPoly> witness;
  std::optional<MultiPoly> witness_inverse;
  std::optional<Classification> successor;  // classify(u+1) for the ua search
  long candidates_tried = 0;
  long units_found = 0;
  std::string search_space;
  std::string diagnostics;
};

/// Rational points of V(I) on a small integer grid; exact evaluations only.
/// Used as a sound pre-filter: a candidate vanishing at a point of V is
/// provably not a unit mod I.
inline std::vector<std::vector<FieldElement>> integer_grid_points(
    const IdealContext& I, int range = 2, std::size_t limit = 60) {
  const std::size_t n = I.ctx()->nvars();
  std::vector<std::vector<FieldElement>> out;
  if (n == 0 || n > 4) return out;
  const TowerPtr& tw = I.ctx()->tower;
  std::vector<int> v(n, -range);
  while (true) {
    std::vector<FieldElement> pt;
    for (auto x : v) pt.push_back(tw->from_integer(x));
    bool on_v = true;
    for (const auto& g : I.gens())
      if (!g.evaluate(pt).is_zero()) {
        on_v = false;
        break;
      }
    if (on_v) {
      out.push_back(std::move(pt));
      if (out.size() >= limit) return out;
    }
    std::size_t i = 0;
    while (i < n && ++v[i] > range) v[i++] = -range;
    if (i == n) break;
  }
  return out;
}

/// Re-checks a refutation witness from scratch: u must be a unit and u+1 must
/// classify "neither". Used after every search and by the report audit.
inline bool verify_ua_witness(const IdealPtr& I, const MultiPoly& u,
                              std::string* why = nullptr) {
  QuotientElement qu = QuotientElement::make(I, u);
  UnitCheck uc = is_unit(qu);
  if (!uc.unit) {
    if (why) *why = "witness is not a unit";
    return false;
  }
  MultiPoly one = MultiPoly::constant(u.ctx(), u.ctx()->tower->one());
  Classification cl = classify(QuotientElement::make(I, u + one));
  if (cl.verdict != Classification::Verdict::neither) {
    if (why) *why = "witness successor classifies " + cl.verdict_name();
    return false;
  }
  return true;
}

inline bool verify_uu_witness(const IdealPtr& I, const MultiPoly& u,
                              std::string* why = nullptr) {
  QuotientElement qu = QuotientElement::make(I, u);
  if (!is_unit(qu).unit) {
    if (why) *why = "witness is not a unit";
    return false;
  }
  MultiPoly one = MultiPoly::constant(u.ctx(), u.ctx()->tower->one());
  if (is_nilpotent(QuotientElement::make(I, u - one)).nilpotent) {
    if (why) *why = "u - 1 is nilpotent";
    return false;
  }
  return true;
}

namespace search_detail {

enum class Mode { ua, uu };

inline WitnessReport refute_search(const IdealPtr& I, const SearchParams& params,
                                   Mode mode) {
  quotient_detail::require_proper(*I);
  params.pool.validate();
  WitnessReport rep;
  std::vector<Monomial> monos = normal_form_monomials(*I, params.max_degree);
  rep.search_space = "degree <= " + std::to_string(params.max_degree) + ", " +
                     std::to_string(monos.size()) + " normal-form monomials, pool " +
                     params.pool.description + " (" +
                     std::to_string(params.pool.values.size()) + " values)";
  auto screen = params.point_screen
                    ? integer_grid_points(*I)
                    : std::vector<std::vector<FieldElement>>{};
  MultiPoly one = MultiPoly::constant(I->ctx(), I->ctx()->tower->one());
  bool found = false;
  try {
    enumerate_candidates(
        I->ctx(), monos, params.pool, params.max_candidates, rep.candidates_tried,
        [&](const MultiPoly& u) -> bool {
          if (u.is_zero()) return false;
          for (const auto& pt : screen)
            if (u.evaluate(pt).is_zero()) return false;  // provably not a unit
          UnitCheck uc = is_unit(QuotientElement::make(I, u));
          if (!uc.unit) return false;
          ++rep.units_found;
          if (mode == Mode::ua) {
            Classification cl = classify(QuotientElement::make(I, u + one));
            if (cl.verdict == Classification::Verdict::unknown)
              throw BudgetExceeded("classification budget exceeded on candidate " +
                                       poly_to_string(u),
                                   BudgetDiagnostics{});
            if (cl.verdict != Classification::Verdict::neither) return false;
            rep.witness = u;
            rep.witness_inverse = uc.inverse;
            rep.successor = cl;
          } else {
            NilpotentCheck nc =
                is_nilpotent(QuotientElement::make(I, u - one));
            if (nc.nilpotent) return false;
            rep.witness = u;
            rep.witness_inverse = uc.inverse;
          }
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
    bool ok = mode == Mode::ua ? verify_ua_witness(I, *rep.witness, &why)
                               : verify_uu_witness(I, *rep.witness, &why);
    if (!ok)
      throw InternalInconsistency("search witness failed re-verification: " + why);
    rep.outcome = WitnessReport::Outcome::witness;
  } else {
    rep.outcome = WitnessReport::Outcome::exhausted;
  }
  return rep;
}

}  // namespace search_detail

/// Bounded search for a unit u with u+1 neither a unit nor nilpotent.
/// A witness refutes unit-additivity; exhaustion proves nothing and is
/// reported as consistency evidence only.
inline WitnessReport ua_refute(const IdealPtr& I, const SearchParams& params) {
  return search_detail::refute_search(I, params, search_detail::Mode::ua);
}

/// Bounded search for a unit u with u-1 not nilpotent (refutes the
/// units-are-unipotent property).
inline WitnessReport uu_refute(const IdealPtr& I, const SearchParams& params) {
  return search_detail::refute_search(I, params, search_detail::Mode::uu);
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

/// Three-valued verdict triple for one presented algebra, with provenance and
/// re-checkable evidence. `ua` is unit-additivity, `locally_ua` the finite
/// product version, `uu` the units-are-unipotent property.
struct UAVerdict {
  Tri ua = Tri::unknown;
  Tri locally_ua = Tri::unknown;
  Tri uu = Tri::unknown;
  std::string provenance;
  std::string reason;
  std::optional<MultiPoly> witness;
  std::optional<Classification> witness_successor;
  std::shared_ptr<DecompositionCertificate> cert;
  std::vector<std::string> notes;
};

/// Recognize quotients that are polynomial rings over the coefficient field:
/// every basis element has a degree-1 single variable as leading term and a
/// tail in the remaining variables. Returns the free variables.
inline std::optional<std::vector<std::string>> recognize_polynomial_ring(
    const IdealContext& I) {
  if (I.is_unit_ideal()) return std::nullopt;
  const std::size_t n = I.ctx()->nvars();
  std::vector<char> leading(n, 0);
  for (const auto& g : I.gb()) {
    const Monomial& lm = g.leading_monomial();
    std::size_t var = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (lm.e[v] == 0) continue;
      if (lm.e[v] > 1 || var != n) return std::nullopt;
      var = v;
    }
    if (var == n) return std::nullopt;  // constant leading term
    leading[var] = 1;
  }
  for (const auto& g : I.gb()) {
    bool first = true;
    for (const auto& term : g.terms()) {
      if (first) {
        first = false;
        continue;
      }
      for (std::size_t v = 0; v < n; ++v)
        if (leading[v] && term.mono.e[v]) return std::nullopt;
    }
  }
  std::vector<std::string> free_vars;
  for (std::size_t v = 0; v < n; ++v)
    if (!leading[v]) free_vars.push_back(I.ctx()->vars[v]);
  return free_vars;
}

/// Axiom-class verdict: a polynomial ring over a field is unit-additive
/// (its units are the nonzero constants, which form a field).
inline std::optional<UAVerdict> polynomial_ring_verdict(const IdealContext& I) {
  auto free_vars = recognize_polynomial_ring(I);
  if (!free_vars) return std::nullopt;
  UAVerdict v;
  v.ua = Tri::yes;
  v.locally_ua = Tri::yes;
  auto card = I.ctx()->tower->cardinality();
  v.uu = (card && *card == 2) ? Tri::yes : Tri::no;
  v.provenance = "axiom class: polynomial ring over a field (units are the "
                 "nonzero constants)";
  std::string vars;
  for (const auto& s : *free_vars) vars += (vars.empty() ? "" : ", ") + s;
  v.notes.push_back("quotient is a polynomial ring in [" + vars + "]");
  return v;
}

/// Decision for zero-dimensional quotients via connected-component
/// decomposition. Requires the computed components to certify reducedness
/// (squarefree swept minimal polynomials), otherwise reports unknown.
inline UAVerdict zero_dim_ua_decide(const IdealPtr& I) {
  UAVerdict v;
  if (!is_zero_dimensional(*I)) throw NotZeroDimensional();
  quotient_detail::require_proper(*I);
  std::shared_ptr<DecompositionCertificate> cert;
  try {
    cert = std::make_shared<DecompositionCertificate>(zero_dim_components(I));
  } catch (const FactorizationBudget& e) {
    v.reason = std::string("factorization budget: ") + e.what();
    v.provenance = "zero-dimensional decomposition (incomplete)";
    return v;
  }
  v.cert = cert;
  if (!cert->squarefree_minpolys) {
    v.reason = "non-reduced-unverified: a swept minimal polynomial is not "
               "squarefree";
    v.provenance = "zero-dimensional decomposition";
    return v;
  }
  const TowerPtr& tw = I->ctx()->tower;
  auto card = tw->cardinality();
  const bool tower_is_f2 = card && *card == 2;
  std::size_t non_f2 = 0;
  std::vector<std::size_t> dims;
  for (const auto& comp : cert->components) {
    std::size_t d = quotient_basis(*comp).size();
    dims.push_back(d);
    if (!(tower_is_f2 && d == 1)) ++non_f2;
  }
  v.locally_ua = Tri::yes;  // a finite product of fields
  if (cert->components.size() == 1) {
    v.ua = Tri::yes;
    v.uu = (tower_is_f2 && dims[0] == 1) ? Tri::yes : Tri::no;
    v.provenance = "zero-dimensional decomposition: single component field";
    return v;
  }
  if (non_f2 == 0) {
    v.ua = Tri::yes;
    v.uu = Tri::yes;
    v.provenance =
        "zero-dimensional decomposition: every component is the 2-element "
        "field, a finite product of such rings is unit-additive";
    return v;
  }
  // at least two components, one of them bigger than F_2: build a witness
  v.uu = Tri::no;
  std::vector<MultiPoly> idems = component_idempotents(*cert);
  std::size_t j = 0;
  for (; j < cert->components.size(); ++j)
    if (!(tower_is_f2 && dims[j] == 1)) break;
  MultiPoly one = MultiPoly::constant(I->ctx(), tw->one());
  MultiPoly c = MultiPoly::zero(I->ctx());
  if (tw->characteristic() != 2) {
    c = MultiPoly::constant(I->ctx(), -tw->one());
  } else if (!tower_is_f2) {
    std::size_t step = 0;
    while (step < tw->depth() && tw->step_degree(step) < 2) ++step;
    c = MultiPoly::constant(I->ctx(), tw->generator(step));
  } else {
    // component j has dimension >= 2: its first non-unit staircase monomial
    // is a non-constant field element there
    auto cb = quotient_basis(*cert->components[j]);
    std::size_t bi = 0;
    while (bi < cb.size() && cb[bi].is_unit()) ++bi;
    c = MultiPoly::monomial(I->ctx(), cb[bi], tw->one());
  }
  MultiPoly u = I->reduce(one + (c - one) * idems[j]);
  std::string why;
  if (!verify_ua_witness(I, u, &why)) {
    v.reason = "constructed witness failed verification: " + why;
    v.provenance = "zero-dimensional decomposition";
    return v;
  }
  v.ua = Tri::no;
  v.witness = u;
  v.witness_successor = classify(QuotientElement::make(I, u + one));
  v.provenance = "zero-dimensional decomposition: witness from a component "
                 "unit";
  return v;
}

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::yes && b == Tri::yes) return Tri::yes;
  return Tri::unknown;
}

/// Combine per-component verdicts over a verified decomposition using the
/// product rules: the ring is locally unit-additive iff every component is,
/// it is UU iff every component is, and (for two or more components) it is
/// unit-additive iff every component is UU. Only decided verdicts propagate;
/// refutation-search exhaustion is not a decision.
inline UAVerdict locally_ua_from_decomposition(
    const DecompositionCertificate& cert,
    const std::vector<UAVerdict>& per_component) {
  if (!cert.verified)
    throw CertificateError("decomposition certificate is not verified");
  if (per_component.size() != cert.components.size())
    throw DimensionMismatch("one verdict per component required");
  UAVerdict v;
  v.cert = std::make_shared<DecompositionCertificate>(cert);
  v.provenance = "product rule on a verified decomposition";
  if (cert.components.size() == 1) {
    v.ua = per_component[0].ua;
    v.locally_ua = per_component[0].locally_ua;
    v.uu = per_component[0].uu;
    v.witness = per_component[0].witness;
    v.notes.push_back("single component: the verdict is the component verdict");
    return v;
  }
  v.locally_ua = Tri::yes;
  v.uu = Tri::yes;
  for (const auto& pc : per_component) {
    v.locally_ua = tri_and(v.locally_ua, pc.locally_ua);
    v.uu = tri_and(v.uu, pc.uu);
  }
  v.ua = v.uu;  // a product of two or more rings is unit-additive iff all UU
  if (v.ua == Tri::yes)
    v.notes.push_back("every component is UU, so the product is unit-additive");
  if (v.ua == Tri::no && v.locally_ua == Tri::yes)
    v.notes.push_back(
        "locally unit-additive but not unit-additive: a component has a unit "
        "other than 1 mod nilpotents");
  if (v.locally_ua == Tri::unknown || v.ua == Tri::unknown)
    v.reason = "a component verdict is undecided";
  return v;
}

struct ConnectednessEvidence {
  enum class Kind { caller_asserted, zero_dim_certificate } kind =
      Kind::caller_asserted;
  std::string note;
};

/// One-directional inference: if every quotient by a claimed minimal prime is
/// unit-additive and the spectrum is connected, the ring is unit-additive.
/// Never concludes the converse.
inline UAVerdict infer_ua_from_min_primes(
    const IdealPtr& I, const std::vector<IdealPtr>& claimed,
    const std::vector<UAVerdict>& per_quotient,
    const ConnectednessEvidence& connectedness) {
  UAVerdict v;
  v.provenance = "minimal-primes inference";
  if (per_quotient.size() != claimed.size())
    throw DimensionMismatch("one verdict per claimed prime required");
  MinimalPrimesReport rep = verify_minimal_primes(*I, claimed);
  if (!rep.passed) {
    v.reason = "claimed minimal primes failed verification";
    for (const auto& c : rep.checks)
      if (!c.ok) v.notes.push_back(c.name + " witness " + c.witness);
    return v;
  }
  v.notes.push_back(rep.caveat);
  if (is_zero_dimensional(*I)) {
    // connectedness is decidable here; a caller assertion is not accepted
    try {
      DecompositionCertificate cert = zero_dim_components(I);
      if (cert.components.size() != 1) {
        v.reason = "rejected: the zero-dimensional connectedness check found " +
                   std::to_string(cert.components.size()) + " components";
        return v;
      }
      v.notes.push_back("connectedness verified by zero-dimensional decomposition");
    } catch (const FactorizationBudget& e) {
      v.reason = std::string("connectedness check hit the factorization budget: ") +
                 e.what();
      return v;
    }
  } else {
    if (connectedness.kind != ConnectednessEvidence::Kind::caller_asserted) {
      v.reason = "no connectedness evidence for a positive-dimensional input";
      return v;
    }
    v.notes.push_back("connected spectrum asserted by the caller" +
                      (connectedness.note.empty() ? "" : ": " + connectedness.note));
  }
  for (std::size_t j = 0; j < per_quotient.size(); ++j) {
    if (per_quotient[j].ua == Tri::yes) continue;
    if (per_quotient[j].ua == Tri::no)
      v.reason = "inference inapplicable: the quotient by claimed prime " +
                 std::to_string(j) +
                 " is not unit-additive; the rule is one-directional and "
                 "decides nothing here";
    else
      v.reason = "inference inapplicable: the quotient by claimed prime " +
                 std::to_string(j) + " is undecided";
    return v;
  }
  v.ua = Tri::yes;
  v.locally_ua = Tri::yes;
  return v;
}

// ---------------------------------------------------------------------------
// Localization
// ---------------------------------------------------------------------------

struct LocalizationResult {
  IdealPtr localized;     // I + (a*y - 1) with one fresh variable y
  std::string fresh_var;
  bool zero_ring = false;  // a lies in the radical of I
};

/// Presentation of the localization at a single element: adjoin y with
/// a*y = 1. Used by generic-unit-additivity probing.
inline LocalizationResult localize(const IdealPtr& I, const MultiPoly& a) {
  LocalizationResult out;
  std::string y = fresh_var_name(*I->ctx(), "Y");
  CtxPtr ctx2 = context_with_var(I->ctx(), y, /*prepend=*/false,
                                 MonomialOrder::grevlex());
  std::vector<MultiPoly> gens;
  for (const auto& g : I->gens()) gens.push_back(g.transport(ctx2));
  MultiPoly yv = MultiPoly::variable(ctx2, ctx2->nvars() - 1);
  MultiPoly one = MultiPoly::constant(ctx2, ctx2->tower->one());
  gens.push_back(a.transport(ctx2) * yv - one);
  out.localized = share(IdealContext::make(ctx2, std::move(gens), I->budget()));
  out.fresh_var = y;
  // 1 in I + (a*y - 1) exactly when a lies in the radical of I, in which
  // case the localization is the zero ring; flagged, not an error
  out.zero_ring = out.localized->is_unit_ideal();
  return out;
}

}  // namespace uat
