#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uat/ideals.hpp"

namespace uat {

using IdealPtr = std::shared_ptr<const IdealContext>;

inline IdealPtr share(IdealContext I) {
  return std::make_shared<const IdealContext>(std::move(I));
}

/// Residue class in k[X1..Xn]/I, kept in normal form. Equality of elements is
/// equality of normal forms.
struct QuotientElement {
  IdealPtr ring;
  MultiPoly rep;  // == its own normal form

  static QuotientElement make(IdealPtr ring, const MultiPoly& f) {
    MultiPoly nf = ring->reduce(f);
    return QuotientElement{std::move(ring), std::move(nf)};
  }
  bool operator==(const QuotientElement& o) const { return rep == o.rep; }
};

struct UnitCheck {
  bool unit = false;
  std::optional<MultiPoly> inverse;       // verified: u * inverse == 1 mod I
  std::vector<MultiPoly> basis_evidence;  // reduced basis of I + (u) when not a unit
};

struct NilpotentCheck {
  bool nilpotent = false;
  std::optional<long> exponent;           // least e with u^e in I
  std::vector<MultiPoly> basis_evidence;  // auxiliary-variable basis when not nilpotent
};

/// Verdict for one residue class, with re-checkable evidence attached.
struct Classification {
  enum class Verdict { unit, nilpotent, neither, unknown };
  Verdict verdict = Verdict::unknown;
  std::optional<MultiPoly> inverse;
  std::optional<long> nilpotent_exponent;
  std::vector<MultiPoly> non_unit_evidence;
  std::vector<MultiPoly> non_nilpotent_evidence;
  std::string diagnostics;

  std::string verdict_name() const {
    switch (verdict) {
      case Verdict::unit: return "unit";
      case Verdict::nilpotent: return "nilpotent";
      case Verdict::neither: return "neither";
      case Verdict::unknown: return "unknown";
    }
    return "?";
  }
};

namespace quotient_detail {

inline void require_proper(const IdealContext& I) {
  if (I.is_unit_ideal())
    throw Error("operation requires a proper ideal (1 lies in it)");
}

}  // namespace quotient_detail

/// 1 in I + (u)? On success the inverse is extracted from cofactor tracking
/// and re-verified before returning, so tracking bugs surface as errors, not
/// wrong answers.
inline UnitCheck is_unit(const QuotientElement& u) {
  const IdealContext& I = *u.ring;
  quotient_detail::require_proper(I);
  UnitCheck out;
  if (u.rep.is_zero()) {
    out.basis_evidence = I.gb();
    return out;
  }
  if (auto c = u.rep.constant_value(); c && !c->is_zero()) {
    out.unit = true;
    out.inverse = MultiPoly::constant(u.rep.ctx(), c->inverse());
    return out;
  }
  std::vector<MultiPoly> gens = I.gens();
  gens.push_back(u.rep);
  IdealContext J = IdealContext::make(I.ctx(), gens, I.budget());
  if (!J.is_unit_ideal()) {
    out.basis_evidence = J.gb();
    return out;
  }
  GroebnerResult tracked = groebner_basis_tracked(gens, I.budget());
  std::optional<MultiPoly> inverse;
  for (std::size_t i = 0; i < tracked.basis.size(); ++i) {
    auto c = tracked.basis[i].constant_value();
    if (!c || c->is_zero()) continue;
    // basis[i] = sum cof_j * gens_j with basis[i] = 1 after monic scaling
    inverse = I.reduce(tracked.cofactors[i].back());
    break;
  }
  if (!inverse)
    throw InternalInconsistency("unit ideal without a constant basis element");
  MultiPoly check = I.reduce(u.rep * *inverse);
  auto cv = check.constant_value();
  if (!cv || !cv->is_one())
    throw InternalInconsistency("extracted inverse failed verification");
  out.unit = true;
  out.inverse = *inverse;
  return out;
}

/// Radical membership, then the least exponent by doubling and bisection.
inline NilpotentCheck is_nilpotent(const QuotientElement& u) {
  const IdealContext& I = *u.ring;
  quotient_detail::require_proper(I);
  NilpotentCheck out;

  // auxiliary-variable test, keeping the basis as evidence
  std::string y = fresh_var_name(*I.ctx(), "y");
  CtxPtr ctx2 = context_with_var(I.ctx(), y, /*prepend=*/false,
                                 MonomialOrder::grevlex());
  std::vector<MultiPoly> gens;
  for (const auto& g : I.gens()) gens.push_back(g.transport(ctx2));
  MultiPoly one2 = MultiPoly::constant(ctx2, ctx2->tower->one());
  MultiPoly yv = MultiPoly::variable(ctx2, ctx2->nvars() - 1);
  gens.push_back(one2 - yv * u.rep.transport(ctx2));
  IdealContext J = IdealContext::make(ctx2, std::move(gens), I.budget());
  if (!J.is_unit_ideal()) {
    out.basis_evidence = J.gb();
    return out;
  }
  out.nilpotent = true;

  long cap = I.budget().max_nilpotent_exponent;
  if (is_zero_dimensional(I)) {
    // nilpotency index is at most the vector-space dimension
    cap = static_cast<long>(quotient_basis(I).size());
    if (cap == 0) cap = 1;
  }
  auto power_nf = [&](long e) {
    MultiPoly r = MultiPoly::constant(I.ctx(), I.ctx()->tower->one());
    MultiPoly base = u.rep;
    long k = e;
    while (k > 0) {
      if (k & 1) r = I.reduce(r * base);
      k >>= 1;
      if (k) base = I.reduce(base * base);
    }
    return r;
  };
  long hi = 1;
  MultiPoly q = u.rep;
  while (!q.is_zero()) {
    if (hi > 2 * cap)
      throw InternalInconsistency(
          "radical membership succeeded but no exponent within cap " +
          std::to_string(cap));
    q = I.reduce(q * q);
    hi *= 2;
  }
  long lo = hi == 1 ? 1 : hi / 2 + 1;
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (power_nf(mid).is_zero())
      hi = mid;
    else
      lo = mid + 1;
  }
  out.exponent = lo;
  return out;
}

/// Unit / nilpotent / neither trichotomy with certificates; budget overruns
/// surface as the unknown verdict.
inline Classification classify(const QuotientElement& u) {
  Classification out;
  try {
    UnitCheck uc = is_unit(u);
    if (uc.unit) {
      out.verdict = Classification::Verdict::unit;
      out.inverse = uc.inverse;
      return out;
    }
    out.non_unit_evidence = uc.basis_evidence;
    NilpotentCheck nc = is_nilpotent(u);
    if (nc.nilpotent) {
      out.verdict = Classification::Verdict::nilpotent;
      out.nilpotent_exponent = nc.exponent;
      return out;
    }
    out.non_nilpotent_evidence = nc.basis_evidence;
    out.verdict = Classification::Verdict::neither;
    return out;
  } catch (const BudgetExceeded& e) {
    out.verdict = Classification::Verdict::unknown;
    out.diagnostics = e.what();
    return out;
  }
}

inline bool is_idempotent(const QuotientElement& u) {
  quotient_detail::require_proper(*u.ring);
  return u.ring->contains(u.rep * u.rep - u.rep);
}

/// The constant c with u == c mod I, if any. With a reduced basis this is
/// exactly "the normal form is a constant".
inline std::optional<FieldElement> is_constant_mod(const QuotientElement& u) {
  quotient_detail::require_proper(*u.ring);
  return u.rep.constant_value();
}

inline std::optional<FieldElement> is_constant_mod(const MultiPoly& f,
                                                   const IdealContext& I) {
  quotient_detail::require_proper(I);
  return I.reduce(f).constant_value();
}

/// Smallest e <= e_max with u^(p^e) constant mod I, characteristic p > 0.
inline std::optional<std::pair<long, FieldElement>> pth_power_constant(
    const QuotientElement& u, long e_max) {
  const IdealContext& I = *u.ring;
  quotient_detail::require_proper(I);
  const std::uint32_t p = I.ctx()->tower->characteristic();
  if (p == 0)
    throw InapplicableOperation("p-th power probing requires characteristic p > 0");
  MultiPoly q = u.rep;
  for (long e = 0; e <= e_max; ++e) {
    if (auto c = q.constant_value()) return std::make_pair(e, *c);
    q = I.reduce(q.pow(p));
  }
  return std::nullopt;
}

}  // namespace uat
