#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "uat/errors.hpp"

namespace uat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

/// Recursive dense value: at level 0 the scalar is used, at level k > 0 the
/// coefficient vector (entries are level k-1 values, trailing zeros trimmed,
/// zero == empty vector). Interpretation is relative to a tower and a level;
/// FieldElement pairs a full-depth value with its tower.
struct FVal {
  Rational scalar = 0;
  std::vector<FVal> coeffs;

  bool operator==(const FVal& o) const {
    return scalar == o.scalar && coeffs == o.coeffs;
  }
};

class FieldElement;

/// A base field (rationals or a prime field) together with a chain of simple
/// extensions by monic minimal polynomials. Towers are immutable; extend()
/// returns a new tower. Irreducibility of minimal polynomials is not checked
/// here: inversion detects reducibility lazily and reports the factor found.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  struct Step {
    std::string name;
    std::vector<FVal> minpoly;  // dense ascending, monic, entries at the level below
  };

  static TowerPtr rationals() {
    return std::shared_ptr<FieldTower>(new FieldTower(0));
  }

  static TowerPtr prime_field(std::uint32_t p) {
    if (p < 2 || !is_prime(p))
      throw MalformedExtension("characteristic must be a prime, got " +
                               std::to_string(p));
    return std::shared_ptr<FieldTower>(new FieldTower(p));
  }

  TowerPtr extend(const std::string& name,
                  const std::vector<FieldElement>& minpoly) const;

  std::uint32_t characteristic() const { return p_; }
  std::size_t depth() const { return steps_.size(); }
  const Step& step(std::size_t i) const { return steps_.at(i); }
  std::size_t step_degree(std::size_t i) const {
    return steps_.at(i).minpoly.size() - 1;
  }

  /// Product of the extension degrees.
  std::size_t absolute_degree() const {
    std::size_t d = 1;
    for (const auto& s : steps_) d *= s.minpoly.size() - 1;
    return d;
  }

  /// Number of elements, or nullopt when infinite (characteristic zero).
  std::optional<BigInt> cardinality() const {
    if (p_ == 0) return std::nullopt;
    return boost::multiprecision::pow(BigInt(p_), static_cast<unsigned>(absolute_degree()));
  }

  bool same_as(const FieldTower& o) const {
    if (this == &o) return true;
    if (p_ != o.p_ || steps_.size() != o.steps_.size()) return false;
    for (std::size_t i = 0; i < steps_.size(); ++i)
      if (steps_[i].name != o.steps_[i].name ||
          steps_[i].minpoly != o.steps_[i].minpoly)
        return false;
    return true;
  }

  /// True when o extends this tower by zero or more further steps.
  bool is_prefix_of(const FieldTower& o) const {
    if (p_ != o.p_ || steps_.size() > o.steps_.size()) return false;
    for (std::size_t i = 0; i < steps_.size(); ++i)
      if (steps_[i].name != o.steps_[i].name ||
          steps_[i].minpoly != o.steps_[i].minpoly)
        return false;
    return true;
  }

  bool has_generator(const std::string& name) const {
    for (const auto& s : steps_)
      if (s.name == name) return true;
    return false;
  }

  std::optional<std::size_t> generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < steps_.size(); ++i)
      if (steps_[i].name == name) return i;
    return std::nullopt;
  }

  // ---- element factories ----
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_integer(const BigInt& n) const;
  FieldElement from_rational(const Rational& q) const;
  FieldElement generator(std::size_t step_index) const;

  /// All elements of a finite tower, in a fixed enumeration order.
  std::vector<FieldElement> enumerate() const;

  FieldElement random_element(std::mt19937_64& rng) const;

  // ---- level-aware value arithmetic (used internally and by FieldElement) --
  bool v_is_zero(const FVal& v, std::size_t lvl) const {
    return lvl == 0 ? v.scalar == 0 : v.coeffs.empty();
  }
  FVal v_zero(std::size_t lvl) const {
    FVal v;
    (void)lvl;
    return v;
  }
  FVal v_one(std::size_t lvl) const { return v_from_rational(1, lvl); }
  FVal v_from_rational(const Rational& q, std::size_t lvl) const {
    if (lvl == 0) {
      FVal v;
      v.scalar = norm_scalar(q);
      return v;
    }
    FVal lower = v_from_rational(q, lvl - 1);
    FVal v;
    if (!v_is_zero(lower, lvl - 1)) v.coeffs.push_back(std::move(lower));
    return v;
  }
  FVal v_add(const FVal& a, const FVal& b, std::size_t lvl) const {
    if (lvl == 0) {
      FVal r;
      r.scalar = norm_scalar(a.scalar + b.scalar);
      return r;
    }
    FVal r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
      const FVal* x = i < a.coeffs.size() ? &a.coeffs[i] : nullptr;
      const FVal* y = i < b.coeffs.size() ? &b.coeffs[i] : nullptr;
      if (x && y)
        r.coeffs[i] = v_add(*x, *y, lvl - 1);
      else if (x)
        r.coeffs[i] = *x;
      else
        r.coeffs[i] = *y;
    }
    trim(r.coeffs, lvl - 1);
    return r;
  }
  FVal v_neg(const FVal& a, std::size_t lvl) const {
    if (lvl == 0) {
      FVal r;
      r.scalar = norm_scalar(-a.scalar);
      return r;
    }
    FVal r;
    r.coeffs.reserve(a.coeffs.size());
    for (const auto& c : a.coeffs) r.coeffs.push_back(v_neg(c, lvl - 1));
    return r;
  }
  FVal v_sub(const FVal& a, const FVal& b, std::size_t lvl) const {
    return v_add(a, v_neg(b, lvl), lvl);
  }
  FVal v_mul(const FVal& a, const FVal& b, std::size_t lvl) const {
    if (lvl == 0) {
      FVal r;
      r.scalar = norm_scalar(a.scalar * b.scalar);
      return r;
    }
    if (a.coeffs.empty() || b.coeffs.empty()) return v_zero(lvl);
    std::vector<FVal> prod(a.coeffs.size() + b.coeffs.size() - 1,
                           v_zero(lvl - 1));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j)
        prod[i + j] = v_add(prod[i + j],
                            v_mul(a.coeffs[i], b.coeffs[j], lvl - 1), lvl - 1);
    reduce_mod_step(prod, lvl);
    FVal r;
    r.coeffs = std::move(prod);
    trim(r.coeffs, lvl - 1);
    return r;
  }
  FVal v_inv(const FVal& a, std::size_t lvl) const;
  FVal v_pow(const FVal& a, const BigInt& e, std::size_t lvl) const {
    if (e < 0) return v_pow(v_inv(a, lvl), -e, lvl);
    FVal result = v_one(lvl);
    FVal base = a;
    BigInt k = e;
    while (k > 0) {
      if (boost::multiprecision::bit_test(k, 0))
        result = v_mul(result, base, lvl);
      k >>= 1;
      if (k > 0) base = v_mul(base, base, lvl);
    }
    return result;
  }

  /// Expand a value into (generator exponent vector, rational) terms.
  void v_expand(const FVal& v, std::size_t lvl, std::vector<std::uint32_t>& exps,
                std::vector<std::pair<std::vector<std::uint32_t>, Rational>>& out)
      const {
    if (lvl == 0) {
      if (v.scalar != 0) out.emplace_back(exps, v.scalar);
      return;
    }
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
      exps[lvl - 1] = static_cast<std::uint32_t>(i);
      v_expand(v.coeffs[i], lvl - 1, exps, out);
    }
    exps[lvl - 1] = 0;
  }

  std::string v_to_string(const FVal& v, std::size_t lvl) const;

 private:
  explicit FieldTower(std::uint32_t p) : p_(p) {}
  FieldTower(std::uint32_t p, std::vector<Step> steps)
      : p_(p), steps_(std::move(steps)) {}

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  Rational norm_scalar(const Rational& q) const {
    if (p_ == 0) return q;
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt pm = p_;
    BigInt dn = den % pm;
    if (dn < 0) dn += pm;
    if (dn == 0)
      throw Error("coefficient denominator divisible by the characteristic");
    BigInt nn = num % pm;
    if (nn < 0) nn += pm;
    if (dn != 1) {
      std::int64_t inv = mod_inverse_int(static_cast<std::int64_t>(dn),
                                         static_cast<std::int64_t>(p_));
      nn = (nn * inv) % pm;
    }
    return Rational(nn);
  }

  static std::int64_t mod_inverse_int(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (r != 1) throw DivisionByZero();
    return ((t % p) + p) % p;
  }

  void trim(std::vector<FVal>& cs, std::size_t entry_lvl) const {
    while (!cs.empty() && v_is_zero(cs.back(), entry_lvl)) cs.pop_back();
  }

  /// Reduce a dense level-lvl coefficient vector modulo the step's monic
  /// minimal polynomial.
  void reduce_mod_step(std::vector<FVal>& cs, std::size_t lvl) const {
    const auto& mp = steps_[lvl - 1].minpoly;
    const std::size_t d = mp.size() - 1;
    while (cs.size() > d) {
      FVal lead = cs.back();
      cs.pop_back();
      if (v_is_zero(lead, lvl - 1)) continue;
      const std::size_t shift = cs.size() - d;
      for (std::size_t i = 0; i < d; ++i)
        cs[shift + i] =
            v_sub(cs[shift + i], v_mul(lead, mp[i], lvl - 1), lvl - 1);
    }
    trim(cs, lvl - 1);
  }

  // dense polynomial helpers over level-lvl values (used by v_inv)
  struct VPoly {
    std::vector<FVal> c;  // ascending
  };
  std::size_t vp_deg(const VPoly& f) const { return f.c.size() - 1; }
  bool vp_zero(const VPoly& f) const { return f.c.empty(); }
  void vp_trim(VPoly& f, std::size_t lvl) const { trim(f.c, lvl); }
  VPoly vp_sub(const VPoly& a, const VPoly& b, std::size_t lvl) const {
    VPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), v_zero(lvl));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i)
      r.c[i] = v_sub(r.c[i], b.c[i], lvl);
    vp_trim(r, lvl);
    return r;
  }
  VPoly vp_mul(const VPoly& a, const VPoly& b, std::size_t lvl) const {
    if (vp_zero(a) || vp_zero(b)) return {};
    VPoly r;
    r.c.resize(a.c.size() + b.c.size() - 1, v_zero(lvl));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j)
        r.c[i + j] = v_add(r.c[i + j], v_mul(a.c[i], b.c[j], lvl), lvl);
    vp_trim(r, lvl);
    return r;
  }
  /// Division with remainder; coefficient inversions recurse downward.
  void vp_divmod(const VPoly& a, const VPoly& b, VPoly& q, VPoly& r,
                 std::size_t lvl) const {
    q = {};
    r = a;
    vp_trim(r, lvl);
    if (vp_zero(b)) throw DivisionByZero();
    const FVal lead_inv = v_inv(b.c.back(), lvl);
    while (!vp_zero(r) && r.c.size() >= b.c.size()) {
      const std::size_t shift = r.c.size() - b.c.size();
      FVal factor = v_mul(r.c.back(), lead_inv, lvl);
      if (q.c.size() < shift + 1) q.c.resize(shift + 1, v_zero(lvl));
      q.c[shift] = v_add(q.c[shift], factor, lvl);
      for (std::size_t i = 0; i < b.c.size(); ++i)
        r.c[shift + i] =
            v_sub(r.c[shift + i], v_mul(factor, b.c[i], lvl), lvl);
      vp_trim(r, lvl);
    }
  }

  std::uint32_t p_ = 0;
  std::vector<Step> steps_;

  friend class FieldElement;
};

/// An element of a field tower, always at full depth.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(TowerPtr tower, FVal v) : tower_(std::move(tower)), v_(std::move(v)) {}

  const TowerPtr& tower() const { return tower_; }
  const FVal& value() const { return v_; }

  bool is_zero() const { return tower_->v_is_zero(v_, tower_->depth()); }
  bool is_one() const { return *this == tower_->one(); }

  bool operator==(const FieldElement& o) const {
    check_same(o);
    return v_ == o.v_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement operator+(const FieldElement& o) const {
    check_same(o);
    return {tower_, tower_->v_add(v_, o.v_, lvl())};
  }
  FieldElement operator-(const FieldElement& o) const {
    check_same(o);
    return {tower_, tower_->v_sub(v_, o.v_, lvl())};
  }
  FieldElement operator*(const FieldElement& o) const {
    check_same(o);
    return {tower_, tower_->v_mul(v_, o.v_, lvl())};
  }
  FieldElement operator-() const { return {tower_, tower_->v_neg(v_, lvl())}; }

  /// Multiplicative inverse by extended Euclid at the top level, recursing
  /// downward. Throws DivisionByZero on zero and ZeroDivisorDetected when a
  /// reducible minimal polynomial surfaces.
  FieldElement inverse() const {
    if (is_zero()) throw DivisionByZero();
    return {tower_, tower_->v_inv(v_, lvl())};
  }

  FieldElement pow(const BigInt& e) const {
    return {tower_, tower_->v_pow(v_, e, lvl())};
  }

  /// x^(p^e); characteristic p > 0 only.
  FieldElement frobenius_power(std::uint64_t e) const {
    if (tower_->characteristic() == 0)
      throw InapplicableOperation(
          "frobenius power requires positive characteristic");
    BigInt exp = boost::multiprecision::pow(BigInt(tower_->characteristic()),
                                            static_cast<unsigned>(e));
    return pow(exp);
  }

  /// The rational value when the element lies in the base field.
  std::optional<Rational> as_rational() const {
    const FVal* v = &v_;
    for (std::size_t l = tower_->depth(); l > 0; --l) {
      if (v->coeffs.empty()) return Rational(0);
      if (v->coeffs.size() > 1) return std::nullopt;
      v = &v->coeffs[0];
    }
    return v->scalar;
  }

  /// Terms (exponents over the tower generators, rational coefficient).
  std::vector<std::pair<std::vector<std::uint32_t>, Rational>> expand() const {
    std::vector<std::pair<std::vector<std::uint32_t>, Rational>> out;
    std::vector<std::uint32_t> exps(tower_->depth(), 0);
    tower_->v_expand(v_, tower_->depth(), exps, out);
    return out;
  }

  /// Re-read this element in a tower extending the current one.
  FieldElement embed_into(const TowerPtr& bigger) const {
    if (!tower_->is_prefix_of(*bigger))
      throw MalformedExtension("embedding target is not an extension tower");
    FVal v = v_;
    for (std::size_t l = tower_->depth(); l < bigger->depth(); ++l) {
      FVal w;
      if (!bigger->v_is_zero(v, l)) w.coeffs.push_back(std::move(v));
      v = std::move(w);
    }
    return {bigger, std::move(v)};
  }

  std::string to_string() const {
    return tower_->v_to_string(v_, tower_->depth());
  }

 private:
  std::size_t lvl() const { return tower_->depth(); }
  void check_same(const FieldElement& o) const {
    if (tower_.get() == o.tower_.get()) return;
    if (!tower_ || !o.tower_ || !tower_->same_as(*o.tower_))
      throw DimensionMismatch("field elements live in different towers");
  }

  TowerPtr tower_;
  FVal v_;
};

inline FVal FieldTower::v_inv(const FVal& a, std::size_t lvl) const {
  if (lvl == 0) {
    if (a.scalar == 0) throw DivisionByZero();
    if (p_ == 0) {
      FVal r;
      r.scalar = 1 / a.scalar;
      return r;
    }
    FVal r;
    r.scalar = mod_inverse_int(
        static_cast<std::int64_t>(boost::multiprecision::numerator(a.scalar)),
        static_cast<std::int64_t>(p_));
    return r;
  }
  if (a.coeffs.empty()) throw DivisionByZero();
  // extended Euclid against the step's minimal polynomial
  VPoly r0, r1, t0, t1;
  r0.c = steps_[lvl - 1].minpoly;
  r1.c = a.coeffs;
  t1.c.push_back(v_one(lvl - 1));
  while (!vp_zero(r1)) {
    VPoly q, rem;
    vp_divmod(r0, r1, q, rem, lvl - 1);
    r0 = r1;
    r1 = rem;
    VPoly tnew = vp_sub(t0, vp_mul(q, t1, lvl - 1), lvl - 1);
    t0 = t1;
    t1 = tnew;
  }
  if (vp_deg(r0) >= 1) {
    // make the factor monic for the report
    FVal li = v_inv(r0.c.back(), lvl - 1);
    VPoly monic;
    for (const auto& c : r0.c) monic.c.push_back(v_mul(c, li, lvl - 1));
    FVal as_val;
    as_val.coeffs = monic.c;
    throw ZeroDivisorDetected(steps_[lvl - 1].name, v_to_string(as_val, lvl));
  }
  FVal cinv = v_inv(r0.c[0], lvl - 1);
  FVal result;
  result.coeffs.reserve(t0.c.size());
  for (const auto& c : t0.c) result.coeffs.push_back(v_mul(c, cinv, lvl - 1));
  trim(result.coeffs, lvl - 1);
  return result;
}

inline TowerPtr FieldTower::extend(const std::string& name,
                                   const std::vector<FieldElement>& minpoly) const {
  if (minpoly.size() < 2)
    throw MalformedExtension("minimal polynomial must have degree >= 1");
  if (minpoly.back().is_zero() || !(minpoly.back() == one()))
    throw MalformedExtension("minimal polynomial must be monic");
  if (has_generator(name))
    throw MalformedExtension("generator name '" + name + "' already in use");
  for (const auto& c : minpoly)
    if (!c.tower()->same_as(*this))
      throw MalformedExtension("minimal polynomial coefficients must lie in the tower");
  Step s;
  s.name = name;
  for (const auto& c : minpoly) s.minpoly.push_back(c.value());
  std::vector<Step> steps = steps_;
  steps.push_back(std::move(s));
  return std::shared_ptr<FieldTower>(new FieldTower(p_, std::move(steps)));
}

inline FieldElement FieldTower::zero() const {
  return {shared_from_this(), v_zero(depth())};
}
inline FieldElement FieldTower::one() const {
  return {shared_from_this(), v_one(depth())};
}
inline FieldElement FieldTower::from_integer(const BigInt& n) const {
  return from_rational(Rational(n));
}
inline FieldElement FieldTower::from_rational(const Rational& q) const {
  return {shared_from_this(), v_from_rational(q, depth())};
}
inline FieldElement FieldTower::generator(std::size_t step_index) const {
  if (step_index >= steps_.size())
    throw DimensionMismatch("no such generator");
  // the generator of step i, reduced and embedded to full depth
  FVal v;
  v.coeffs.push_back(v_zero(step_index));
  v.coeffs.push_back(v_one(step_index));
  reduce_mod_step(v.coeffs, step_index + 1);
  for (std::size_t l = step_index + 1; l < depth(); ++l) {
    FVal w;
    w.coeffs.push_back(std::move(v));
    v = std::move(w);
  }
  return {shared_from_this(), std::move(v)};
}

inline std::vector<FieldElement> FieldTower::enumerate() const {
  if (p_ == 0)
    throw InapplicableOperation("cannot enumerate an infinite field");
  std::vector<FVal> values;
  values.push_back(v_zero(0));
  for (std::uint32_t s = 1; s < p_; ++s) values.push_back(v_from_rational(s, 0));
  for (std::size_t lvl = 1; lvl <= depth(); ++lvl) {
    const std::size_t d = step_degree(lvl - 1);
    std::vector<FVal> next;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      FVal v;
      for (std::size_t i = 0; i < d; ++i) v.coeffs.push_back(values[idx[i]]);
      trim(v.coeffs, lvl - 1);
      next.push_back(std::move(v));
      std::size_t pos = 0;
      while (pos < d && ++idx[pos] == values.size()) idx[pos++] = 0;
      if (pos == d) break;
    }
    values = std::move(next);
  }
  std::vector<FieldElement> out;
  out.reserve(values.size());
  for (auto& v : values) out.emplace_back(shared_from_this(), std::move(v));
  return out;
}

inline FieldElement FieldTower::random_element(std::mt19937_64& rng) const {
  if (p_ == 0) {
    std::uniform_int_distribution<int> dist(-4, 4);
    return from_integer(dist(rng));
  }
  std::uniform_int_distribution<std::uint32_t> dist(0, p_ - 1);
  FieldElement r = zero();
  // random coordinates over the monomial basis of the tower
  std::vector<FieldElement> basis{one()};
  for (std::size_t i = 0; i < depth(); ++i) {
    std::vector<FieldElement> next = basis;
    FieldElement g = generator(i);
    FieldElement gp = g;
    for (std::size_t e = 1; e < step_degree(i); ++e) {
      for (const auto& b : basis) next.push_back(b * gp);
      gp = gp * g;
    }
    basis = std::move(next);
  }
  for (const auto& b : basis) r = r + from_integer(dist(rng)) * b;
  return r;
}

inline std::string FieldTower::v_to_string(const FVal& v, std::size_t lvl) const {
  std::vector<std::pair<std::vector<std::uint32_t>, Rational>> terms;
  std::vector<std::uint32_t> exps(lvl, 0);
  v_expand(v, lvl, exps, terms);
  if (terms.empty()) return "0";
  // sort: total degree descending, then exponents lexicographic descending
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    std::uint64_t da = 0, db = 0;
    for (auto e : a.first) da += e;
    for (auto e : b.first) db += e;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    Rational a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += steps_[i].name;
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += a.str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace uat
