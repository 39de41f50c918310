#pragma once

#include <random>
#include <string>
#include <vector>

#include "uat/fields.hpp"
#include "uat/ideals.hpp"
#include "uat/linalg.hpp"
#include "uat/poly.hpp"
#include "uat/poly_io.hpp"

namespace uat::test {

inline TowerPtr qq() { return FieldTower::rationals(); }

inline TowerPtr qq_i() {
  TowerPtr q = FieldTower::rationals();
  return q->extend("i", {q->one(), q->zero(), q->one()});  // i^2 + 1
}

inline TowerPtr gf(std::uint32_t p) { return FieldTower::prime_field(p); }

inline TowerPtr gf4() {
  TowerPtr f2 = gf(2);
  return f2->extend("w", {f2->one(), f2->one(), f2->one()});  // w^2 + w + 1
}

inline CtxPtr ctx(TowerPtr tower, std::vector<std::string> vars,
                  MonomialOrder order = MonomialOrder::grevlex()) {
  return make_context(std::move(tower), std::move(vars), order);
}

inline MultiPoly P(const CtxPtr& c, const std::string& text) {
  return parse_poly(text, c);
}

inline IdealContext ideal(const CtxPtr& c, std::vector<std::string> gens,
                          Budget budget = {}) {
  std::vector<MultiPoly> gs;
  for (const auto& g : gens) gs.push_back(P(c, g));
  return IdealContext::make(c, std::move(gs), budget);
}

/// Independent membership oracle: solve sum h_i g_i = f with deg h_i <= d by
/// linear algebra over the coefficient field. Never touches the Groebner path.
inline bool member_bruteforce(const MultiPoly& f,
                              const std::vector<MultiPoly>& gens,
                              std::uint32_t cofactor_deg) {
  const CtxPtr& c = f.ctx();
  const std::size_t n = c->nvars();
  // enumerate cofactor monomials of total degree <= cofactor_deg
  std::vector<Monomial> cof_monos;
  Monomial m = Monomial::unit(n);
  while (true) {
    if (m.total_degree() <= cofactor_deg) cof_monos.push_back(m);
    std::size_t v = 0;
    while (v < n && ++m.e[v] > cofactor_deg) m.e[v++] = 0;
    if (v == n) break;
  }
  // row space: all monomials appearing in any m*g or in f
  struct VecCmp {
    bool operator()(const std::vector<std::uint32_t>& a,
                    const std::vector<std::uint32_t>& b) const {
      return a < b;
    }
  };
  std::map<std::vector<std::uint32_t>, std::size_t, VecCmp> row_of;
  auto row_index = [&](const Monomial& mo) {
    auto it = row_of.find(mo.e);
    if (it != row_of.end()) return it->second;
    std::size_t idx = row_of.size();
    row_of.emplace(mo.e, idx);
    return idx;
  };
  std::vector<MultiPoly> columns;
  for (const auto& g : gens)
    for (const auto& cm : cof_monos)
      columns.push_back(g.mono_mul(cm, c->tower->one()));
  for (const auto& col : columns)
    for (const auto& t : col.terms()) row_index(t.mono);
  for (const auto& t : f.terms()) row_index(t.mono);
  const std::size_t rows = row_of.size();
  FieldMatrix A(rows, std::vector<FieldElement>(columns.size(), c->tower->zero()));
  std::vector<FieldElement> b(rows, c->tower->zero());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& t : columns[j].terms())
      A[row_of[t.mono.e]][j] = t.coeff;
  for (const auto& t : f.terms()) b[row_of[t.mono.e]] = t.coeff;
  return solve_linear(std::move(A), std::move(b), c->tower).has_value();
}

/// Random sparse polynomial with small integer coefficients, degree <= maxdeg.
inline MultiPoly random_poly(const CtxPtr& c, std::mt19937_64& rng,
                             std::uint32_t maxdeg, int nterms) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<std::uint32_t> expo(0, maxdeg);
  MultiPoly acc = MultiPoly::zero(c);
  for (int t = 0; t < nterms; ++t) {
    Monomial m = Monomial::unit(c->nvars());
    std::uint32_t budget = maxdeg;
    for (std::size_t v = 0; v < c->nvars(); ++v) {
      std::uint32_t e = expo(rng) % (budget + 1);
      m.e[v] = e;
      budget -= e;
    }
    int cf = coeff(rng);
    if (cf == 0) continue;
    acc = acc + MultiPoly::monomial(c, m, c->tower->from_integer(cf));
  }
  return acc;
}

/// Buchberger postcondition: every S-polynomial of the basis reduces to zero.
inline bool spolys_reduce_to_zero(const std::vector<MultiPoly>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Monomial l = Monomial::lcm(basis[i].leading_monomial(),
                                 basis[j].leading_monomial());
      MultiPoly s =
          basis[i].mono_mul(l.divide(basis[i].leading_monomial()),
                            basis[i].leading_coeff().inverse()) -
          basis[j].mono_mul(l.divide(basis[j].leading_monomial()),
                            basis[j].leading_coeff().inverse());
      if (!normal_form(s, basis).is_zero()) return false;
    }
  return true;
}

}  // namespace uat::test
