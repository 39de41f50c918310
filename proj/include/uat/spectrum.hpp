#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uat/linalg.hpp"
#include "uat/poly_io.hpp"
#include "uat/quotient.hpp"
#include "uat/univariate.hpp"

namespace uat {

/// Comaximality witness for a component pair: a + b = 1 with a in I_j and
/// b in I_k. Everything needed to re-verify lives in the certificate itself.
struct PairCofactor {
  std::size_t j, k;  // j < k
  MultiPoly a, b;
};

struct DecompositionCertificate {
  IdealPtr ambient;
  std::vector<IdealPtr> components;
  std::vector<PairCofactor> cofactors;
  bool verified = false;
  bool squarefree_minpolys = true;  // all swept minimal polynomials squarefree
  std::vector<std::string> notes;
};

/// Evaluate a univariate polynomial at a quotient element, reducing as we go.
inline MultiPoly upoly_at(const UPoly& m, const MultiPoly& g,
                          const IdealContext& I) {
  MultiPoly acc = MultiPoly::zero(g.ctx());
  for (std::int64_t i = m.deg(); i >= 0; --i) {
    acc = I.reduce(acc * g +
                   MultiPoly::constant(g.ctx(), m.coeff(static_cast<std::size_t>(i))));
  }
  return acc;
}

/// Minimal polynomial of the multiplication class of g in a zero-dimensional
/// quotient, by incremental linear algebra over the staircase basis.
inline UPoly minimal_polynomial(const MultiPoly& g, const IdealContext& I) {
  if (!is_zero_dimensional(I)) throw NotZeroDimensional();
  std::vector<Monomial> basis = quotient_basis(I);
  const std::size_t D = basis.size();
  if (D == 0) throw Error("zero ring has no minimal polynomials");
  std::map<std::vector<std::uint32_t>, std::size_t> pos;
  for (std::size_t i = 0; i < D; ++i) pos[basis[i].e] = i;
  const TowerPtr& tw = I.ctx()->tower;
  auto coords = [&](const MultiPoly& p) {
    std::vector<FieldElement> v(D, tw->zero());
    for (const auto& t : p.terms()) {
      auto it = pos.find(t.mono.e);
      if (it == pos.end())
        throw InternalInconsistency("normal form leaves the staircase span");
      v[it->second] = t.coeff;
    }
    return v;
  };
  DependenceFinder df(D, tw);
  MultiPoly p = MultiPoly::constant(I.ctx(), tw->one());
  MultiPoly gn = I.reduce(g);
  for (std::size_t k = 0; k <= D; ++k) {
    if (auto dep = df.feed(coords(p))) {
      return UPoly(tw, *dep);  // monic by construction
    }
    p = I.reduce(p * gn);
  }
  throw InternalInconsistency("no dependence within dimension bound");
}

// ---------------------------------------------------------------------------
// Certificate verification
// ---------------------------------------------------------------------------

/// Runs every invariant check; returns the certificate stamped verified or
/// throws CertificateError naming the first failing check.
inline DecompositionCertificate verify_crt(DecompositionCertificate cert) {
  if (cert.components.empty())
    throw CertificateError("certificate has no components");
  const IdealContext& I = *cert.ambient;
  // containment: I inside every component
  for (std::size_t j = 0; j < cert.components.size(); ++j)
    for (const auto& g : I.gens())
      if (!cert.components[j]->contains(g))
        throw CertificateError("containment-failure: component " +
                               std::to_string(j) + " misses generator " +
                               poly_to_string(g));
  // pairwise comaximality with exact cofactors
  std::vector<std::vector<char>> have(cert.components.size(),
                                      std::vector<char>(cert.components.size(), 0));
  MultiPoly one = MultiPoly::constant(I.ctx(), I.ctx()->tower->one());
  for (const auto& pc : cert.cofactors) {
    if (pc.j >= pc.k || pc.k >= cert.components.size())
      throw CertificateError("malformed cofactor pair indices");
    if (!(pc.a + pc.b == one))
      throw CertificateError("comaximality-failure(" + std::to_string(pc.j) +
                             "," + std::to_string(pc.k) + "): cofactors do not sum to 1");
    if (!cert.components[pc.j]->contains(pc.a))
      throw CertificateError("comaximality-failure(" + std::to_string(pc.j) +
                             "," + std::to_string(pc.k) + "): a is not in component " +
                             std::to_string(pc.j));
    if (!cert.components[pc.k]->contains(pc.b))
      throw CertificateError("comaximality-failure(" + std::to_string(pc.j) +
                             "," + std::to_string(pc.k) + "): b is not in component " +
                             std::to_string(pc.k));
    have[pc.j][pc.k] = 1;
  }
  for (std::size_t j = 0; j < cert.components.size(); ++j)
    for (std::size_t k = j + 1; k < cert.components.size(); ++k)
      if (!have[j][k])
        throw CertificateError("comaximality-failure(" + std::to_string(j) + "," +
                               std::to_string(k) + "): no cofactor pair recorded");
  // the intersection of the components has the same radical as I
  IdealContext inter = *cert.components[0];
  for (std::size_t j = 1; j < cert.components.size(); ++j)
    inter = intersect(inter, *cert.components[j]);
  for (const auto& g : inter.gb())
    if (!radical_member(g, I))
      throw CertificateError("intersection-not-in-radical: witness " +
                             poly_to_string(g));
  cert.verified = true;
  return cert;
}

// ---------------------------------------------------------------------------
// Idempotent splitting
// ---------------------------------------------------------------------------

/// Split I along an idempotent e (e^2 = e mod I, e nontrivial) into
/// (I + (e), I + (e-1)) with cofactors (e, 1-e); verified before returning.
inline DecompositionCertificate split_by_idempotent(const IdealPtr& I,
                                                    const MultiPoly& e) {
  quotient_detail::require_proper(*I);
  MultiPoly en = I->reduce(e);
  MultiPoly one = MultiPoly::constant(I->ctx(), I->ctx()->tower->one());
  if (!I->contains(en * en - en))
    throw NotAnIdempotent("e^2 - e does not lie in the ideal");
  if (en.is_zero() || I->reduce(en - one).is_zero())
    throw TrivialIdempotent("idempotent is 0 or 1 modulo the ideal");
  DecompositionCertificate cert;
  cert.ambient = I;
  cert.components.push_back(share(ideal_sum(*I, en)));
  cert.components.push_back(share(ideal_sum(*I, en - one)));
  cert.cofactors.push_back(PairCofactor{0, 1, en, one - en});
  cert.notes.push_back("split along idempotent " + poly_to_string(en));
  return verify_crt(std::move(cert));
}

// ---------------------------------------------------------------------------
// Zero-dimensional decomposition
// ---------------------------------------------------------------------------

namespace spectrum_detail {

/// Candidate separating elements: staircase monomials first, then small
/// integer combinations ordered by max-coefficient then lexicographic.
inline std::vector<MultiPoly> separating_candidates(const IdealContext& I,
                                                    long combo_cap = 2000) {
  std::vector<Monomial> basis = quotient_basis(I);
  std::vector<MultiPoly> out;
  std::vector<Monomial> nonunit;
  for (const auto& m : basis)
    if (!m.is_unit()) nonunit.push_back(m);
  const TowerPtr& tw = I.ctx()->tower;
  for (const auto& m : nonunit)
    out.push_back(MultiPoly::monomial(I.ctx(), m, tw->one()));
  const std::size_t D = nonunit.size();
  if (D < 2) return out;
  for (std::uint32_t maxc = 1; maxc <= 2; ++maxc) {
    std::vector<std::uint32_t> c(D, 0);
    while (true) {
      bool uses_max = false;
      std::size_t nonzero = 0;
      for (auto x : c) {
        if (x == maxc) uses_max = true;
        if (x) ++nonzero;
      }
      if (uses_max && nonzero >= 2) {
        MultiPoly g = MultiPoly::zero(I.ctx());
        for (std::size_t i = 0; i < D; ++i)
          if (c[i])
            g = g + MultiPoly::monomial(I.ctx(), nonunit[i],
                                        tw->from_integer(c[i]));
        out.push_back(std::move(g));
        if (static_cast<long>(out.size()) > combo_cap) return out;
      }
      std::size_t pos = 0;
      while (pos < D && ++c[pos] > maxc) c[pos++] = 0;
      if (pos == D) break;
    }
  }
  return out;
}

struct WorkComponent {
  IdealPtr ideal;
  bool final = false;
};

}  // namespace spectrum_detail

/// Connected-component decomposition of a zero-dimensional quotient: sweeps
/// separating elements, factors their minimal polynomials over the base
/// field, and splits along coprime factor pairs until nothing splits.
/// Budget overruns raise FactorizationBudget (callers report unknown).
inline DecompositionCertificate zero_dim_components(const IdealPtr& I) {
  if (!is_zero_dimensional(*I)) throw NotZeroDimensional();
  quotient_detail::require_proper(*I);
  const TowerPtr& tw = I->ctx()->tower;
  const Budget& budget = I->budget();

  std::vector<spectrum_detail::WorkComponent> comps{{I, false}};
  std::map<std::pair<std::size_t, std::size_t>, std::pair<MultiPoly, MultiPoly>>
      cof;  // (j,k) j<k -> (a in I_j, b in I_k)
  bool squarefree_ok = true;

  auto record_cof = [&](std::size_t j, std::size_t k, MultiPoly a, MultiPoly b) {
    if (j > k) {
      std::swap(j, k);
      std::swap(a, b);
    }
    cof[{j, k}] = {std::move(a), std::move(b)};
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      if (comps[ci].final) continue;
      const IdealContext& C = *comps[ci].ideal;
      std::vector<Monomial> basis = quotient_basis(C);
      if (basis.size() <= 1) {
        comps[ci].final = true;
        continue;
      }
      bool split_here = false;
      for (const auto& g : spectrum_detail::separating_candidates(C)) {
        UPoly m = minimal_polynomial(g, C);
        if (!is_squarefree(m)) squarefree_ok = false;
        if (m.deg() < 2) continue;
        std::vector<UFactor> factors = factor_univariate(m, budget);
        if (factors.size() < 2) continue;
        // moduli m_i^{e_i} are pairwise coprime in k[t]
        std::vector<UPoly> moduli;
        for (const auto& fa : factors) {
          UPoly pw = UPoly::constant(tw, tw->one());
          for (long e = 0; e < fa.multiplicity; ++e) pw = pw * fa.factor;
          moduli.push_back(pw);
        }
        std::vector<std::size_t> new_idx;
        for (const auto& mod : moduli) {
          IdealContext Cj = ideal_sum(C, upoly_at(mod, g, C));
          new_idx.push_back(comps.size());
          comps.push_back({share(std::move(Cj)), false});
        }
        // cofactors among the new components come from extended gcd in k[t]
        for (std::size_t a = 0; a < moduli.size(); ++a)
          for (std::size_t b = a + 1; b < moduli.size(); ++b) {
            auto [gg, s, t] = UPoly::ext_gcd(moduli[a], moduli[b]);
            if (gg.deg() != 0)
              throw InternalInconsistency("moduli not coprime in the split");
            MultiPoly pa = C.reduce(upoly_at(s * moduli[a], g, C));
            MultiPoly pb = C.reduce(upoly_at(t * moduli[b], g, C));
            record_cof(new_idx[a], new_idx[b], std::move(pa), std::move(pb));
          }
        // cofactors against every other component are inherited from ci
        for (std::size_t other = 0; other < comps.size(); ++other) {
          if (other == ci) continue;
          bool is_new = false;
          for (auto ni : new_idx) is_new = is_new || ni == other;
          if (is_new) continue;
          auto key = std::minmax(ci, other);
          auto it = cof.find({key.first, key.second});
          if (it == cof.end()) continue;
          MultiPoly a = it->second.first, b = it->second.second;
          if (key.first != ci) std::swap(a, b);  // a belongs to ci's side
          for (auto ni : new_idx) record_cof(ni, other, a, b);
        }
        comps[ci].final = true;  // replaced by the new components
        comps[ci].ideal = nullptr;
        split_here = true;
        progress = true;
        break;
      }
      if (!split_here) comps[ci].final = true;
    }
  }

  // collect survivors, deterministic order by printed reduced basis
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (comps[i].ideal) alive.push_back(i);
  auto basis_key = [&](std::size_t i) {
    std::string s;
    for (const auto& g : comps[i].ideal->gb()) s += poly_to_string(g) + ";";
    return s;
  };
  std::sort(alive.begin(), alive.end(), [&](std::size_t a, std::size_t b) {
    return basis_key(a) < basis_key(b);
  });

  DecompositionCertificate cert;
  cert.ambient = I;
  cert.squarefree_minpolys = squarefree_ok;
  std::map<std::size_t, std::size_t> newpos;
  for (std::size_t i = 0; i < alive.size(); ++i) {
    newpos[alive[i]] = i;
    cert.components.push_back(comps[alive[i]].ideal);
  }
  for (const auto& [key, ab] : cof) {
    auto jt = newpos.find(key.first);
    auto kt = newpos.find(key.second);
    if (jt == newpos.end() || kt == newpos.end()) continue;  // stale pair
    std::size_t j = jt->second, k = kt->second;
    MultiPoly a = ab.first, b = ab.second;
    if (j > k) {
      std::swap(j, k);
      std::swap(a, b);
    }
    cert.cofactors.push_back(PairCofactor{j, k, std::move(a), std::move(b)});
  }
  if (!squarefree_ok)
    cert.notes.push_back(
        "a swept minimal polynomial was not squarefree: the quotient is not "
        "verified reduced");
  return verify_crt(std::move(cert));
}

/// Idempotent lifts e_j (1 mod the j-th component, 0 mod the others), built
/// from the certificate's own cofactors.
inline std::vector<MultiPoly> component_idempotents(
    const DecompositionCertificate& cert) {
  if (!cert.verified) throw CertificateError("certificate not verified");
  const IdealContext& I = *cert.ambient;
  std::vector<MultiPoly> out;
  for (std::size_t j = 0; j < cert.components.size(); ++j) {
    MultiPoly e = MultiPoly::constant(I.ctx(), I.ctx()->tower->one());
    for (const auto& pc : cert.cofactors) {
      if (pc.j == j)
        e = I.reduce(e * pc.b);  // b is 0 mod I_k, 1 mod I_j
      else if (pc.k == j)
        e = I.reduce(e * pc.a);
    }
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Claimed minimal primes
// ---------------------------------------------------------------------------

struct MinimalPrimesReport {
  bool passed = false;
  struct Check {
    std::string name;
    bool ok;
    std::string witness;
  };
  std::vector<Check> checks;
  std::string caveat =
      "primality of the claimed ideals is NOT verified; only containment and "
      "radical identities are checked";
};

/// Verifies (a) I lies in every claimed prime, (b) every generator of the
/// intersection of the claimed primes lies in the radical of I. Primality
/// itself is never certified.
inline MinimalPrimesReport verify_minimal_primes(
    const IdealContext& I, const std::vector<IdealPtr>& claimed) {
  if (claimed.empty()) throw Error("claimed minimal prime list is empty");
  MinimalPrimesReport rep;
  bool all = true;
  for (std::size_t j = 0; j < claimed.size(); ++j) {
    for (const auto& g : I.gens()) {
      bool ok = claimed[j]->contains(g);
      if (!ok)
        rep.checks.push_back({"containment(component " + std::to_string(j) + ")",
                              false, poly_to_string(g)});
      all = all && ok;
    }
    if (claimed[j]->is_unit_ideal()) {
      rep.checks.push_back(
          {"properness(component " + std::to_string(j) + ")", false, "1"});
      all = false;
    }
  }
  if (all)
    rep.checks.push_back({"containment", true, ""});
  IdealContext inter = *claimed[0];
  for (std::size_t j = 1; j < claimed.size(); ++j)
    inter = intersect(inter, *claimed[j]);
  bool rad_ok = true;
  for (const auto& g : inter.gb())
    if (!radical_member(g, I)) {
      rep.checks.push_back({"intersection-in-radical", false, poly_to_string(g)});
      rad_ok = false;
    }
  if (rad_ok) rep.checks.push_back({"intersection-in-radical", true, ""});
  rep.passed = all && rad_ok;
  return rep;
}

}  // namespace uat
