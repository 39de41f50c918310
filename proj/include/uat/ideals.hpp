#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "uat/poly.hpp"

namespace uat {

// ---------------------------------------------------------------------------
// Normal form and Buchberger engine
// ---------------------------------------------------------------------------

namespace gb_detail {

struct DegreeGuard {
  long cap;
  long* max_seen;
  void check(const MultiPoly& p, const BudgetDiagnostics& diag) const {
    auto d = p.total_degree();
    if (!d) return;
    if (*max_seen < static_cast<long>(*d)) *max_seen = static_cast<long>(*d);
    if (static_cast<long>(*d) > cap)
      throw BudgetExceeded("total degree cap exceeded during reduction", diag);
  }
};

}  // namespace gb_detail

/// Full normal form of f with respect to a list of nonzero polynomials.
/// Deterministic: the first listed divisor is used at every step.
inline MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis) {
  MultiPoly r = MultiPoly::zero(f.ctx());
  MultiPoly p = f;
  while (!p.is_zero()) {
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (g.leading_monomial().divides(p.leading_monomial())) {
        Monomial q = p.leading_monomial().divide(g.leading_monomial());
        FieldElement c = p.leading_coeff() * g.leading_coeff().inverse();
        p = p - g.mono_mul(q, c);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      r = r + p.leading_term();
      p = p - p.leading_term();
    }
  }
  return r;
}

/// Buchberger with the product and chain criteria. Pair selection is by
/// (lcm total degree, generator index pair), so runs are reproducible.
/// When `track` is set, every basis element carries its representation in
/// terms of the input generators.
struct GroebnerResult {
  std::vector<MultiPoly> basis;                  // reduced, monic, ascending LM
  std::vector<std::vector<MultiPoly>> cofactors; // per basis element, per input gen
  BudgetDiagnostics diag;
};

inline GroebnerResult groebner_core(const std::vector<MultiPoly>& input,
                                    const Budget& budget, bool track) {
  if (input.empty()) throw Error("groebner: no generators supplied");
  CtxPtr ctx = input[0].ctx();
  for (const auto& g : input)
    if (!g.ctx()->same_as(*ctx))
      throw DimensionMismatch("generators live in different contexts");

  GroebnerResult res;
  res.diag = {};
  gb_detail::DegreeGuard guard{budget.max_total_degree, &res.diag.max_degree_seen};

  struct Entry {
    MultiPoly p;
    std::vector<MultiPoly> rep;  // only when tracking
  };
  std::vector<Entry> basis;
  const std::size_t ngens = input.size();
  auto unit_rep = [&](std::size_t i) {
    std::vector<MultiPoly> rep;
    if (!track) return rep;
    rep.assign(ngens, MultiPoly::zero(ctx));
    rep[i] = MultiPoly::constant(ctx, ctx->tower->one());
    return rep;
  };

  // reduce f (with rep) fully against the current basis
  auto reduce = [&](MultiPoly f, std::vector<MultiPoly> rep)
      -> std::pair<MultiPoly, std::vector<MultiPoly>> {
    MultiPoly r = MultiPoly::zero(ctx);
    while (!f.is_zero()) {
      guard.check(f, res.diag);
      bool hit = false;
      for (const auto& e : basis) {
        if (e.p.is_zero()) continue;
        if (e.p.leading_monomial().divides(f.leading_monomial())) {
          Monomial q = f.leading_monomial().divide(e.p.leading_monomial());
          FieldElement c = f.leading_coeff() * e.p.leading_coeff().inverse();
          f = f - e.p.mono_mul(q, c);
          if (track)
            for (std::size_t k = 0; k < ngens; ++k)
              rep[k] = rep[k] - e.rep[k].mono_mul(q, c);
          hit = true;
          break;
        }
      }
      if (!hit) {
        r = r + f.leading_term();
        f = f - f.leading_term();
      }
    }
    return {r, std::move(rep)};
  };

  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i].is_zero()) continue;
    guard.check(input[i], res.diag);
    basis.push_back(Entry{input[i], unit_rep(i)});
  }
  if (basis.empty()) return res;  // zero ideal

  struct Pair {
    std::uint64_t lcm_deg;
    std::size_t i, j;
    bool operator>(const Pair& o) const {
      if (lcm_deg != o.lcm_deg) return lcm_deg > o.lcm_deg;
      if (i != o.i) return i > o.i;
      return j > o.j;
    }
  };
  std::priority_queue<Pair, std::vector<Pair>, std::greater<Pair>> queue;
  std::set<std::pair<std::size_t, std::size_t>> done;
  auto push_pair = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    Monomial l = Monomial::lcm(basis[i].p.leading_monomial(),
                               basis[j].p.leading_monomial());
    queue.push(Pair{l.total_degree(), i, j});
  };
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) push_pair(i, j);

  bool have_unit = false;
  for (const auto& e : basis)
    if (e.p.is_constant()) have_unit = true;

  while (!queue.empty() && !have_unit) {
    Pair pr = queue.top();
    queue.pop();
    if (done.count({pr.i, pr.j})) continue;
    done.insert({pr.i, pr.j});
    const MultiPoly& fi = basis[pr.i].p;
    const MultiPoly& fj = basis[pr.j].p;
    const Monomial& lmi = fi.leading_monomial();
    const Monomial& lmj = fj.leading_monomial();
    if (Monomial::coprime(lmi, lmj)) continue;  // product criterion
    Monomial l = Monomial::lcm(lmi, lmj);
    // chain criterion
    bool skip = false;
    for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j || basis[k].p.is_zero()) continue;
      if (!basis[k].p.leading_monomial().divides(l)) continue;
      auto key_ik = std::minmax(pr.i, k);
      auto key_jk = std::minmax(pr.j, k);
      if (done.count({key_ik.first, key_ik.second}) &&
          done.count({key_jk.first, key_jk.second}))
        skip = true;
    }
    if (skip) continue;

    if (++res.diag.pair_reductions > budget.max_pair_reductions)
      throw BudgetExceeded("pair reduction cap exceeded", res.diag);

    FieldElement ci = fi.leading_coeff().inverse();
    FieldElement cj = fj.leading_coeff().inverse();
    MultiPoly spoly = fi.mono_mul(l.divide(lmi), ci) - fj.mono_mul(l.divide(lmj), cj);
    std::vector<MultiPoly> srep;
    if (track) {
      srep.assign(ngens, MultiPoly::zero(ctx));
      for (std::size_t k = 0; k < ngens; ++k)
        srep[k] = basis[pr.i].rep[k].mono_mul(l.divide(lmi), ci) -
                  basis[pr.j].rep[k].mono_mul(l.divide(lmj), cj);
    }
    auto [h, hrep] = reduce(std::move(spoly), std::move(srep));
    if (h.is_zero()) continue;
    std::size_t m = basis.size();
    basis.push_back(Entry{std::move(h), std::move(hrep)});
    if (basis[m].p.is_constant()) have_unit = true;
    for (std::size_t i = 0; i < m; ++i)
      if (!basis[i].p.is_zero()) push_pair(i, m);
  }

  // minimalize: drop entries whose LM is divisible by another surviving LM
  std::vector<char> keep(basis.size(), 1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!keep[i]) continue;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j || !keep[j]) continue;
      const Monomial& li = basis[i].p.leading_monomial();
      const Monomial& lj = basis[j].p.leading_monomial();
      if (lj.divides(li) && !(li == lj && j > i)) {
        keep[i] = 0;
        break;
      }
    }
  }
  std::vector<Entry> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(basis[i]));

  // inter-reduce tails until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<MultiPoly> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j].p);
      // track the same rewrites on the representation
      MultiPoly f = minimal[i].p;
      std::vector<MultiPoly> rep = minimal[i].rep;
      MultiPoly r = MultiPoly::zero(ctx);
      bool touched = false;
      while (!f.is_zero()) {
        bool hit = false;
        for (std::size_t j = 0; j < minimal.size(); ++j) {
          if (j == i || minimal[j].p.is_zero()) continue;
          const auto& g = minimal[j].p;
          if (g.leading_monomial().divides(f.leading_monomial())) {
            Monomial q = f.leading_monomial().divide(g.leading_monomial());
            FieldElement c = f.leading_coeff() * g.leading_coeff().inverse();
            f = f - g.mono_mul(q, c);
            if (track)
              for (std::size_t k = 0; k < ngens; ++k)
                rep[k] = rep[k] - minimal[j].rep[k].mono_mul(q, c);
            hit = true;
            touched = true;
            break;
          }
        }
        if (!hit) {
          r = r + f.leading_term();
          f = f - f.leading_term();
        }
      }
      if (touched) {
        minimal[i].p = std::move(r);
        minimal[i].rep = std::move(rep);
        changed = true;
      }
    }
  }

  // monic normalization and canonical ascending order
  for (auto& e : minimal) {
    if (e.p.is_zero()) continue;
    FieldElement inv = e.p.leading_coeff().inverse();
    e.p = e.p.scalar_mul(inv);
    if (track)
      for (auto& r : e.rep) r = r.scalar_mul(inv);
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < minimal.size(); ++i)
    if (!minimal[i].p.is_zero()) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return ctx->order.less(minimal[a].p.leading_monomial(),
                           minimal[b].p.leading_monomial());
  });
  for (auto i : idx) {
    res.basis.push_back(minimal[i].p);
    if (track) res.cofactors.push_back(minimal[i].rep);
  }
  return res;
}

inline std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens,
                                             const Budget& budget = {}) {
  return groebner_core(gens, budget, /*track=*/false).basis;
}

inline GroebnerResult groebner_basis_tracked(const std::vector<MultiPoly>& gens,
                                             const Budget& budget = {}) {
  return groebner_core(gens, budget, /*track=*/true);
}

// ---------------------------------------------------------------------------
// IdealContext
// ---------------------------------------------------------------------------

/// An ideal with its reduced Groebner basis, computed once at construction.
/// Immutable afterwards; unrestricted concurrent reads.
class IdealContext {
 public:
  static IdealContext make(CtxPtr ctx, std::vector<MultiPoly> gens,
                           Budget budget = {}) {
    IdealContext I;
    I.ctx_ = std::move(ctx);
    for (auto& g : gens)
      if (!g.is_zero()) I.gens_.push_back(std::move(g));
    if (I.gens_.empty()) {
      I.budget_ = budget;
      return I;  // zero ideal, empty basis
    }
    I.gb_ = groebner_basis(I.gens_, budget);
    I.budget_ = budget;
    return I;
  }

  const CtxPtr& ctx() const { return ctx_; }
  const std::vector<MultiPoly>& gens() const { return gens_; }
  const std::vector<MultiPoly>& gb() const { return gb_; }
  const Budget& budget() const { return budget_; }

  bool is_unit_ideal() const {
    return gb_.size() == 1 && gb_[0].is_constant();
  }
  bool is_proper() const { return !is_unit_ideal(); }
  bool is_zero_ideal() const { return gb_.empty(); }

  MultiPoly reduce(const MultiPoly& f) const {
    if (!f.ctx()->same_as(*ctx_))
      throw DimensionMismatch("polynomial context mismatch");
    return gb_.empty() ? f : normal_form(f, gb_);
  }

  bool contains(const MultiPoly& f) const { return reduce(f).is_zero(); }

 private:
  CtxPtr ctx_;
  std::vector<MultiPoly> gens_;
  std::vector<MultiPoly> gb_;
  Budget budget_;
};

inline bool member(const MultiPoly& f, const IdealContext& I) {
  return I.contains(f);
}

// ---------------------------------------------------------------------------
// Context surgery helpers
// ---------------------------------------------------------------------------

inline std::string fresh_var_name(const PolyContext& ctx, const std::string& hint) {
  auto taken = [&](const std::string& n) {
    return ctx.var_index(n).has_value() || ctx.tower->has_generator(n);
  };
  if (!taken(hint)) return hint;
  for (int k = 1;; ++k) {
    std::string n = hint + std::to_string(k);
    if (!taken(n)) return n;
  }
}

/// New context with one extra variable appended (or prepended).
inline CtxPtr context_with_var(const CtxPtr& ctx, const std::string& name,
                               bool prepend, MonomialOrder order) {
  std::vector<std::string> vars = ctx->vars;
  if (prepend)
    vars.insert(vars.begin(), name);
  else
    vars.push_back(name);
  return make_context(ctx->tower, std::move(vars), order);
}

// ---------------------------------------------------------------------------
// Ideal-level predicates and operations
// ---------------------------------------------------------------------------

/// Rabinowitsch: f lies in the radical of I iff 1 lies in I + (1 - y f).
inline bool radical_member(const MultiPoly& f, const IdealContext& I) {
  if (I.contains(f)) return true;
  std::string y = fresh_var_name(*I.ctx(), "y");
  CtxPtr ctx2 = context_with_var(I.ctx(), y, /*prepend=*/false,
                                 MonomialOrder::grevlex());
  std::vector<MultiPoly> gens;
  for (const auto& g : I.gens()) gens.push_back(g.transport(ctx2));
  MultiPoly one = MultiPoly::constant(ctx2, ctx2->tower->one());
  MultiPoly yv = MultiPoly::variable(ctx2, ctx2->nvars() - 1);
  gens.push_back(one - yv * f.transport(ctx2));
  IdealContext J = IdealContext::make(ctx2, std::move(gens), I.budget());
  return J.is_unit_ideal();
}

inline IdealContext ideal_sum(const IdealContext& I, const IdealContext& J) {
  if (!I.ctx()->same_as(*J.ctx()))
    throw DimensionMismatch("ideal contexts differ");
  std::vector<MultiPoly> gens = I.gens();
  for (const auto& g : J.gens()) gens.push_back(g);
  return IdealContext::make(I.ctx(), std::move(gens), I.budget());
}

inline IdealContext ideal_sum(const IdealContext& I, const MultiPoly& f) {
  std::vector<MultiPoly> gens = I.gens();
  gens.push_back(f);
  return IdealContext::make(I.ctx(), std::move(gens), I.budget());
}

/// Generators of I ∩ J via elimination of a fresh variable t from tI + (1-t)J.
inline IdealContext intersect(const IdealContext& I, const IdealContext& J) {
  if (!I.ctx()->same_as(*J.ctx()))
    throw DimensionMismatch("ideal contexts differ");
  if (I.is_unit_ideal()) return J;
  if (J.is_unit_ideal()) return I;
  if (I.is_zero_ideal() || J.is_zero_ideal())
    return IdealContext::make(I.ctx(), {}, I.budget());
  std::string t = fresh_var_name(*I.ctx(), "t");
  CtxPtr ctx2 = context_with_var(I.ctx(), t, /*prepend=*/true,
                                 MonomialOrder::block_elimination(1));
  MultiPoly tv = MultiPoly::variable(ctx2, 0);
  MultiPoly one = MultiPoly::constant(ctx2, ctx2->tower->one());
  std::vector<MultiPoly> gens;
  for (const auto& g : I.gens()) gens.push_back(tv * g.transport(ctx2));
  for (const auto& h : J.gens()) gens.push_back((one - tv) * h.transport(ctx2));
  IdealContext K = IdealContext::make(ctx2, std::move(gens), I.budget());
  std::vector<MultiPoly> out;
  for (const auto& g : K.gb())
    if (g.free_of({0})) out.push_back(g.transport(I.ctx()));
  return IdealContext::make(I.ctx(), std::move(out), I.budget());
}

/// Intersection with the subring generated by the variables behind the front
/// block, computed with a block elimination order.
inline IdealContext eliminate(const IdealContext& I, std::size_t front) {
  if (front == 0 || front >= I.ctx()->nvars())
    throw DimensionMismatch("elimination block must be a proper nonempty prefix");
  CtxPtr ctx2 = make_context(I.ctx()->tower, I.ctx()->vars,
                             MonomialOrder::block_elimination(front));
  std::vector<MultiPoly> gens;
  for (const auto& g : I.gens()) gens.push_back(g.transport(ctx2));
  IdealContext J = IdealContext::make(ctx2, std::move(gens), I.budget());
  std::vector<std::size_t> front_vars;
  for (std::size_t i = 0; i < front; ++i) front_vars.push_back(i);
  std::vector<MultiPoly> out;
  for (const auto& g : J.gb())
    if (g.free_of(front_vars)) out.push_back(g.transport(I.ctx()));
  return IdealContext::make(I.ctx(), std::move(out), I.budget());
}

/// Exact division by a single polynomial; throws when not exactly divisible.
inline MultiPoly divide_exact(const MultiPoly& f, const MultiPoly& d) {
  if (d.is_zero()) throw DivisionByZero();
  MultiPoly q = MultiPoly::zero(f.ctx());
  MultiPoly r = f;
  while (!r.is_zero()) {
    if (!d.leading_monomial().divides(r.leading_monomial()))
      throw InternalInconsistency("division is not exact");
    Monomial m = r.leading_monomial().divide(d.leading_monomial());
    FieldElement c = r.leading_coeff() * d.leading_coeff().inverse();
    q = q + MultiPoly::monomial(f.ctx(), m, c);
    r = r - d.mono_mul(m, c);
  }
  return q;
}

/// Ideal quotient I : f = (I ∩ (f)) / f.
inline IdealContext ideal_quotient(const IdealContext& I, const MultiPoly& f) {
  if (f.is_zero()) throw DivisionByZero();
  IdealContext F = IdealContext::make(I.ctx(), {f}, I.budget());
  IdealContext M = intersect(I, F);
  std::vector<MultiPoly> gens;
  for (const auto& g : M.gb()) gens.push_back(divide_exact(g, f));
  return IdealContext::make(I.ctx(), std::move(gens), I.budget());
}

inline bool ideal_equal(const IdealContext& I, const IdealContext& J) {
  if (!I.ctx()->same_as(*J.ctx()))
    throw DimensionMismatch("ideal contexts differ");
  const auto& a = I.gb();
  const auto& b = J.gb();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

/// Saturation I : f^infinity by iterating quotients to stabilization.
inline IdealContext saturate(const IdealContext& I, const MultiPoly& f) {
  IdealContext cur = I;
  while (true) {
    IdealContext next = ideal_quotient(cur, f);
    if (ideal_equal(next, cur)) return cur;
    cur = std::move(next);
  }
}

/// True iff every variable has a pure power among the leading terms of the
/// reduced basis; the unit ideal counts as zero-dimensional.
inline bool is_zero_dimensional(const IdealContext& I) {
  if (I.is_unit_ideal()) return true;
  const std::size_t n = I.ctx()->nvars();
  for (std::size_t v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& g : I.gb()) {
      const Monomial& lm = g.leading_monomial();
      bool pure = lm.e[v] > 0;
      for (std::size_t w = 0; w < n && pure; ++w)
        if (w != v && lm.e[w]) pure = false;
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Staircase monomials (a vector-space basis of the quotient), ascending.
inline std::vector<Monomial> quotient_basis(const IdealContext& I) {
  if (I.is_unit_ideal()) return {};
  if (!is_zero_dimensional(I)) throw NotZeroDimensional();
  const std::size_t n = I.ctx()->nvars();
  std::vector<std::uint32_t> bound(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& g : I.gb()) {
      const Monomial& lm = g.leading_monomial();
      bool pure = lm.e[v] > 0;
      for (std::size_t w = 0; w < n && pure; ++w)
        if (w != v && lm.e[w]) pure = false;
      if (pure && (bound[v] == 0 || lm.e[v] < bound[v])) bound[v] = lm.e[v];
    }
  }
  std::vector<Monomial> out;
  Monomial m = Monomial::unit(n);
  while (true) {
    bool reducible = false;
    for (const auto& g : I.gb())
      if (g.leading_monomial().divides(m)) {
        reducible = true;
        break;
      }
    if (!reducible) out.push_back(m);
    std::size_t v = 0;
    while (v < n && ++m.e[v] == bound[v]) m.e[v++] = 0;
    if (v == n) break;
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return I.ctx()->order.less(a, b);
  });
  return out;
}

}  // namespace uat
