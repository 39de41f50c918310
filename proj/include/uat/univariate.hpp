#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "uat/fields.hpp"

namespace uat {

/// Dense univariate polynomial over a field tower, ascending coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(TowerPtr tower) : tower_(std::move(tower)) {}
  UPoly(TowerPtr tower, std::vector<FieldElement> coeffs)
      : tower_(std::move(tower)), c_(std::move(coeffs)) {
    trim();
  }

  static UPoly zero(TowerPtr t) { return UPoly(std::move(t)); }
  static UPoly constant(TowerPtr t, const FieldElement& a) {
    UPoly p(t);
    if (!a.is_zero()) p.c_.push_back(a);
    return p;
  }
  static UPoly x(TowerPtr t) {
    UPoly p(t);
    p.c_.push_back(t->zero());
    p.c_.push_back(t->one());
    return p;
  }

  const TowerPtr& tower() const { return tower_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  std::int64_t deg() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  const FieldElement& lc() const { return c_.back(); }
  FieldElement coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : tower_->zero();
  }

  bool operator==(const UPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  UPoly operator+(const UPoly& o) const {
    UPoly r(tower_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), tower_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
    r.trim();
    return r;
  }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  UPoly operator-(const UPoly& o) const { return *this + (-o); }
  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(tower_);
    UPoly r(tower_);
    r.c_.assign(c_.size() + o.c_.size() - 1, tower_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    r.trim();
    return r;
  }
  UPoly scale(const FieldElement& a) const {
    if (a.is_zero()) return zero(tower_);
    UPoly r = *this;
    for (auto& x : r.c_) x = x * a;
    return r;
  }
  UPoly shift(std::size_t k) const {  // multiply by x^k
    if (is_zero()) return *this;
    UPoly r(tower_);
    r.c_.assign(k, tower_->zero());
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

  UPoly monic() const {
    if (is_zero() || lc().is_one()) return *this;
    return scale(lc().inverse());
  }

  UPoly derivative() const {
    UPoly r(tower_);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_.push_back(c_[i] * tower_->from_integer(static_cast<long>(i)));
    r.trim();
    return r;
  }

  FieldElement eval(const FieldElement& a) const {
    FieldElement acc = tower_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * a + c_[i];
    return acc;
  }

  static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.is_zero()) throw DivisionByZero();
    q = zero(a.tower_);
    r = a;
    const FieldElement li = b.lc().inverse();
    while (!r.is_zero() && r.c_.size() >= b.c_.size()) {
      std::size_t shift = r.c_.size() - b.c_.size();
      FieldElement f = r.lc() * li;
      if (q.c_.size() < shift + 1) q.c_.resize(shift + 1, a.tower_->zero());
      q.c_[shift] = q.c_[shift] + f;
      for (std::size_t i = 0; i < b.c_.size(); ++i)
        r.c_[shift + i] = r.c_[shift + i] - f * b.c_[i];
      r.trim();
    }
  }
  UPoly operator/(const UPoly& o) const {
    UPoly q, r;
    divmod(*this, o, q, r);
    if (!r.is_zero()) throw InternalInconsistency("inexact univariate division");
    return q;
  }
  UPoly operator%(const UPoly& o) const {
    UPoly q, r;
    divmod(*this, o, q, r);
    return r;
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Extended gcd: returns (g, s, t) monic with s*a + t*b = g.
  static std::tuple<UPoly, UPoly, UPoly> ext_gcd(const UPoly& a, const UPoly& b) {
    TowerPtr tw = a.tower_;
    UPoly r0 = a, r1 = b;
    UPoly s0 = constant(tw, tw->one()), s1 = zero(tw);
    UPoly t0 = zero(tw), t1 = constant(tw, tw->one());
    while (!r1.is_zero()) {
      UPoly q, r;
      divmod(r0, r1, q, r);
      r0 = r1;
      r1 = r;
      UPoly sn = s0 - q * s1;
      s0 = s1;
      s1 = sn;
      UPoly tn = t0 - q * t1;
      t0 = t1;
      t1 = tn;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    FieldElement inv = r0.lc().inverse();
    return {r0.scale(inv), s0.scale(inv), t0.scale(inv)};
  }

  UPoly pow_mod(const BigInt& e, const UPoly& mod) const {
    UPoly result = constant(tower_, tower_->one()) % mod;
    UPoly base = *this % mod;
    BigInt k = e;
    while (k > 0) {
      if (boost::multiprecision::bit_test(k, 0)) result = (result * base) % mod;
      k >>= 1;
      if (k > 0) base = (base * base) % mod;
    }
    return result;
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      std::string cs = c_[i].to_string();
      bool neg = false;
      bool compound = cs.find(" + ") != std::string::npos ||
                      cs.find(" - ") != std::string::npos;
      if (compound)
        cs = "(" + cs + ")";
      else if (!cs.empty() && cs[0] == '-') {
        neg = true;
        cs = cs.substr(1);
      }
      std::string mono;
      if (i > 0) {
        mono = var;
        if (i > 1) mono += "^" + std::to_string(i);
      }
      std::string piece;
      if (mono.empty())
        piece = cs;
      else if (cs == "1")
        piece = mono;
      else
        piece = cs + "*" + mono;
      if (first) {
        out += (neg ? "-" : "") + piece;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + piece;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  TowerPtr tower_;
  std::vector<FieldElement> c_;
};

inline bool is_squarefree(const UPoly& f) {
  if (f.deg() <= 1) return true;
  return UPoly::gcd(f, f.derivative()).deg() == 0;
}

struct UFactor {
  UPoly factor;  // monic, certified irreducible
  long multiplicity;
};

namespace ufact_detail {

/// p-th root of f = g(x^p) over a finite tower (perfect field).
inline UPoly pth_root(const UPoly& f) {
  const TowerPtr& tw = f.tower();
  const std::uint32_t p = tw->characteristic();
  const std::size_t m = tw->absolute_degree();
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i * p <= static_cast<std::size_t>(f.deg()); ++i) {
    FieldElement c = f.coeff(i * p);
    // c^(p^(m-1)) is the p-th root in F_{p^m}
    out.push_back(m >= 1 ? c.frobenius_power(m - 1) : c);
  }
  return UPoly(tw, std::move(out));
}

/// Squarefree decomposition, any characteristic, monic input.
inline std::vector<std::pair<UPoly, long>> squarefree_decomposition(UPoly f) {
  const TowerPtr& tw = f.tower();
  std::vector<std::pair<UPoly, long>> out;
  if (f.deg() <= 0) return out;
  f = f.monic();
  if (tw->characteristic() == 0) {
    // Yun
    UPoly d = f.derivative();
    UPoly a = UPoly::gcd(f, d);
    UPoly b = f / a;
    UPoly c = d / a;
    long i = 1;
    while (b.deg() > 0) {
      UPoly w = c - b.derivative();
      UPoly g = UPoly::gcd(b, w);
      if (g.deg() > 0) out.emplace_back(g.monic(), i);
      b = b / g;
      c = w / g;
      ++i;
    }
    return out;
  }
  const std::uint32_t p = tw->characteristic();
  UPoly d = f.derivative();
  if (d.is_zero()) {
    auto sub = squarefree_decomposition(pth_root(f));
    for (auto& [g, m] : sub) out.emplace_back(g, m * p);
    return out;
  }
  UPoly c = UPoly::gcd(f, d);
  UPoly w = f / c;
  long i = 1;
  while (w.deg() > 0) {
    UPoly y = UPoly::gcd(w, c);
    UPoly z = w / y;
    if (z.deg() > 0) out.emplace_back(z.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.deg() > 0) {
    auto sub = squarefree_decomposition(pth_root(c));
    for (auto& [g, m] : sub) out.emplace_back(g, m * p);
  }
  return out;
}

// ---- finite fields: distinct-degree then equal-degree splitting ----

inline void edf(const UPoly& f, std::int64_t d, std::mt19937_64& rng,
                const Budget& budget, std::vector<UPoly>& out) {
  if (f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  const TowerPtr& tw = f.tower();
  const BigInt q = *tw->cardinality();
  const BigInt qd = boost::multiprecision::pow(q, static_cast<unsigned>(d));
  UPoly split = UPoly::zero(tw);
  long attempts = 0;
  while (true) {
    ++attempts;
    UPoly r(tw);
    if (attempts <= 40) {
      std::vector<FieldElement> cs;
      for (std::int64_t i = 0; i < f.deg(); ++i)
        cs.push_back(tw->random_element(rng));
      r = UPoly(tw, std::move(cs));
    } else {
      // deterministic fallback sweep: x + c, then x^2 + c, ... over the field
      long k = attempts - 41;
      auto elems = tw->enumerate();
      long which = k % static_cast<long>(elems.size());
      long degree = 1 + k / static_cast<long>(elems.size());
      if (degree > f.deg())
        throw FactorizationBudget("equal-degree splitting sweep exhausted");
      r = UPoly::x(tw).shift(static_cast<std::size_t>(degree - 1)) +
          UPoly::constant(tw, elems[static_cast<std::size_t>(which)]);
    }
    if (r.deg() < 1) continue;
    UPoly g;
    if (tw->characteristic() == 2) {
      // trace map: r + r^2 + r^4 + ... (deg * m terms)
      const std::size_t m = tw->absolute_degree();
      UPoly tr = UPoly::zero(tw);
      UPoly cur = r % f;
      for (std::size_t k2 = 0; k2 < static_cast<std::size_t>(d) * m; ++k2) {
        tr = tr + cur;
        cur = (cur * cur) % f;
      }
      g = UPoly::gcd(tr, f);
    } else {
      UPoly s = r.pow_mod((qd - 1) / 2, f);
      g = UPoly::gcd(s - UPoly::constant(tw, tw->one()), f);
    }
    if (g.deg() > 0 && g.deg() < f.deg()) {
      split = g;
      break;
    }
  }
  edf(split, d, rng, budget, out);
  edf(f / split, d, rng, budget, out);
}

inline std::vector<UPoly> factor_squarefree_finite(const UPoly& f,
                                                   const Budget& budget) {
  const TowerPtr& tw = f.tower();
  const BigInt q = *tw->cardinality();
  std::mt19937_64 rng(budget.seed);
  std::vector<UPoly> out;
  UPoly rest = f.monic();
  UPoly h = UPoly::x(tw) % rest;
  for (std::int64_t d = 1; rest.deg() > 0 && d <= rest.deg() / 2; ++d) {
    h = h.pow_mod(q, rest);
    UPoly g = UPoly::gcd(h - UPoly::x(tw), rest);
    if (g.deg() > 0) {
      edf(g, d, rng, budget, out);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.deg() > 0) out.push_back(rest.monic());
  return out;
}

// ---- rationals: root stripping plus bounded interpolation search ----

inline std::vector<BigInt> divisors(const BigInt& n, const Budget&) {
  BigInt a = n < 0 ? BigInt(-n) : n;
  if (a == 0) throw InternalInconsistency("divisors of zero requested");
  if (a > BigInt("1000000000000"))
    throw FactorizationBudget("coefficient too large for divisor enumeration");
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
  return small;
}

/// Rational roots of a squarefree rational polynomial.
inline std::vector<Rational> rational_roots(const UPoly& f, const Budget& budget) {
  const TowerPtr& tw = f.tower();
  std::vector<Rational> roots;
  UPoly g = f;
  // pull out the root 0 first
  if (g.coeff(0).is_zero()) roots.push_back(0);
  while (g.coeff(0).is_zero() && g.deg() > 0)
    g = g / UPoly::x(tw);
  if (g.deg() < 1) return roots;
  // clear denominators to an integer polynomial
  BigInt den_lcm = 1;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(g.deg()); ++i) {
    auto r = g.coeff(i).as_rational();
    if (!r) throw FactorizationBudget("rational root search needs base-field coefficients");
    den_lcm = boost::multiprecision::lcm(den_lcm,
                                         boost::multiprecision::denominator(*r));
  }
  std::vector<BigInt> ic;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(g.deg()); ++i) {
    Rational r = *g.coeff(i).as_rational() * Rational(den_lcm);
    ic.push_back(boost::multiprecision::numerator(r));
  }
  auto ps = divisors(ic.front(), budget);
  auto qs = divisors(ic.back(), budget);
  for (const auto& pnum : ps)
    for (const auto& qden : qs) {
      for (int sign : {1, -1}) {
        Rational cand(sign * pnum, qden);
        if (g.eval(tw->from_rational(cand)).is_zero()) {
          bool dup = false;
          for (const auto& r : roots) dup = dup || r == cand;
          if (!dup) roots.push_back(cand);
        }
      }
    }
  return roots;
}

/// One nontrivial factor of a squarefree rational polynomial with no rational
/// roots, found by divisor interpolation up to the degree budget; nullopt
/// certifies irreducibility (all factor degrees up to deg/2 were covered).
/// Works on the primitive integer form so that factor values divide
/// polynomial values over the integers.
inline std::optional<UPoly> interpolation_factor(const UPoly& f,
                                                 const Budget& budget) {
  const TowerPtr& tw = f.tower();
  if (f.deg() / 2 > budget.factor_degree_budget)
    throw FactorizationBudget(
        "factor degree budget too small to certify irreducibility of degree " +
        std::to_string(f.deg()));
  // clear denominators and content
  BigInt den_lcm = 1;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(f.deg()); ++i) {
    auto r = f.coeff(i).as_rational();
    if (!r) throw FactorizationBudget("interpolation needs base-field coefficients");
    den_lcm = boost::multiprecision::lcm(den_lcm,
                                         boost::multiprecision::denominator(*r));
  }
  std::vector<FieldElement> fc;
  BigInt content = 0;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(f.deg()); ++i) {
    Rational r = *f.coeff(i).as_rational() * Rational(den_lcm);
    content = boost::multiprecision::gcd(content,
                                         boost::multiprecision::numerator(r));
  }
  for (std::size_t i = 0; i <= static_cast<std::size_t>(f.deg()); ++i) {
    Rational r = *f.coeff(i).as_rational() * Rational(den_lcm) / Rational(content);
    fc.push_back(tw->from_rational(r));
  }
  UPoly F(tw, std::move(fc));  // primitive integer form of f
  for (std::int64_t d = 2; d <= F.deg() / 2; ++d) {
    // evaluation points 0, 1, -1, 2, -2, ...
    std::vector<BigInt> pts;
    for (std::int64_t k = 0; static_cast<std::int64_t>(pts.size()) <= d; ++k) {
      if (k == 0)
        pts.push_back(0);
      else {
        pts.push_back(k);
        if (static_cast<std::int64_t>(pts.size()) <= d) pts.push_back(-k);
      }
    }
    std::vector<std::vector<BigInt>> value_choices;
    long combos = 1;
    for (const auto& x : pts) {
      auto vr = F.eval(tw->from_integer(x)).as_rational();
      // no rational roots remain, so all values are nonzero integers
      BigInt num = boost::multiprecision::numerator(*vr);
      std::vector<BigInt> ds;
      for (const auto& dv : divisors(num, budget)) {
        ds.push_back(dv);
        ds.push_back(-dv);
      }
      value_choices.push_back(std::move(ds));
      combos *= static_cast<long>(value_choices.back().size());
      if (combos > budget.factor_combination_budget)
        throw FactorizationBudget("interpolation combination budget exceeded");
    }
    // fix the first value positive: factors come in +- pairs
    std::vector<std::size_t> idx(pts.size(), 0);
    while (true) {
      bool first_positive = value_choices[0][idx[0]] > 0;
      if (first_positive) {
        // Lagrange interpolation through (pts[i], w_i)
        std::vector<FieldElement> xs, ws;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          xs.push_back(tw->from_integer(pts[i]));
          ws.push_back(tw->from_integer(value_choices[i][idx[i]]));
        }
        UPoly g = UPoly::zero(tw);
        for (std::size_t i = 0; i < xs.size(); ++i) {
          UPoly li = UPoly::constant(tw, tw->one());
          FieldElement denom = tw->one();
          for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            li = li * (UPoly::x(tw) - UPoly::constant(tw, xs[j]));
            denom = denom * (xs[i] - xs[j]);
          }
          g = g + li.scale(ws[i] * denom.inverse());
        }
        if (g.deg() == d) {
          UPoly q, r;
          UPoly::divmod(F, g, q, r);
          if (r.is_zero()) return g.monic();
        }
      }
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == value_choices[pos].size())
        idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return std::nullopt;
}

inline void factor_squarefree_rational(const UPoly& f, const Budget& budget,
                                       std::vector<UPoly>& out) {
  const TowerPtr& tw = f.tower();
  UPoly rest = f.monic();
  for (const auto& root : rational_roots(rest, budget)) {
    UPoly lin = UPoly::x(tw) - UPoly::constant(tw, tw->from_rational(root));
    rest = rest / lin;
    out.push_back(lin);
  }
  if (rest.deg() == 0) return;
  if (rest.deg() == 1) {
    out.push_back(rest.monic());
    return;
  }
  auto g = interpolation_factor(rest, budget);
  if (!g) {
    out.push_back(rest);  // certified irreducible
    return;
  }
  factor_squarefree_rational(*g, budget, out);
  factor_squarefree_rational(rest / *g, budget, out);
}

}  // namespace ufact_detail

/// Full factorization into monic irreducibles with multiplicities.
/// Over finite towers: squarefree + distinct-degree + equal-degree splitting.
/// Over the rationals: squarefree + root stripping + bounded interpolation
/// search. Over proper extension towers of the rationals only degree-1 parts
/// split; anything larger raises FactorizationBudget rather than guessing.
inline std::vector<UFactor> factor_univariate(const UPoly& f,
                                              const Budget& budget = {}) {
  if (f.deg() < 1) throw Error("cannot factor a constant");
  const TowerPtr& tw = f.tower();
  std::vector<UFactor> out;
  for (const auto& [part, mult] : ufact_detail::squarefree_decomposition(f)) {
    std::vector<UPoly> irr;
    if (part.deg() == 1) {
      irr.push_back(part.monic());
    } else if (tw->characteristic() > 0) {
      irr = ufact_detail::factor_squarefree_finite(part, budget);
    } else if (tw->depth() == 0) {
      ufact_detail::factor_squarefree_rational(part, budget, irr);
    } else {
      throw FactorizationBudget(
          "factorization over extension towers of the rationals is not supported");
    }
    for (auto& g : irr) out.push_back(UFactor{g.monic(), mult});
  }
  // deterministic output order
  std::sort(out.begin(), out.end(), [](const UFactor& a, const UFactor& b) {
    if (a.factor.deg() != b.factor.deg()) return a.factor.deg() < b.factor.deg();
    return a.factor.to_string() < b.factor.to_string();
  });
  return out;
}

}  // namespace uat
