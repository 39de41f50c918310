#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uat/fields.hpp"

namespace uat {

inline constexpr std::uint32_t kMaxExponent = 1u << 31;

/// Exponent vector, one entry per ring variable.
struct Monomial {
  std::vector<std::uint32_t> e;

  static Monomial unit(std::size_t nvars) { return Monomial{std::vector<std::uint32_t>(nvars, 0)}; }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_unit() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::uint64_t s = std::uint64_t(r.e[i]) + o.e[i];
      if (s >= kMaxExponent) throw DegreeOverflow("monomial exponent overflow");
      r.e[i] = static_cast<std::uint32_t>(s);
    }
    return r;
  }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Monomial divide(const Monomial& o) const {  // this / o
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
    return r;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
};

enum class OrderKind { lex, grevlex, block };

/// Monomial order: lex, grevlex, or a block elimination order (grevlex on the
/// front block, tie broken by grevlex on the rest).
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::size_t front = 0;  // block size when kind == block

  static MonomialOrder lex() { return {OrderKind::lex, 0}; }
  static MonomialOrder grevlex() { return {OrderKind::grevlex, 0}; }
  static MonomialOrder block_elimination(std::size_t front) {
    return {OrderKind::block, front};
  }

  // +1 if a > b, 0 if equal, -1 if a < b
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case OrderKind::lex:
        return lex_cmp(a.e.data(), b.e.data(), a.e.size());
      case OrderKind::grevlex:
        return grevlex_cmp(a.e.data(), b.e.data(), a.e.size());
      case OrderKind::block: {
        int c = grevlex_cmp(a.e.data(), b.e.data(), front);
        if (c != 0) return c;
        return grevlex_cmp(a.e.data() + front, b.e.data() + front,
                           a.e.size() - front);
      }
    }
    return 0;
  }
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string name() const {
    switch (kind) {
      case OrderKind::lex: return "lex";
      case OrderKind::grevlex: return "grevlex";
      case OrderKind::block: return "block(" + std::to_string(front) + ")";
    }
    return "?";
  }

 private:
  static int lex_cmp(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
  }
  static int grevlex_cmp(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = 0; i < n; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = n; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }
};

/// Shared ring context: coefficient tower, variable names, monomial order.
struct PolyContext {
  TowerPtr tower;
  std::vector<std::string> vars;
  MonomialOrder order;

  PolyContext(TowerPtr t, std::vector<std::string> v, MonomialOrder o)
      : tower(std::move(t)), vars(std::move(v)), order(o) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (tower->has_generator(vars[i]))
        throw Error("variable '" + vars[i] + "' clashes with a field generator");
      for (std::size_t j = i + 1; j < vars.size(); ++j)
        if (vars[i] == vars[j]) throw Error("duplicate variable '" + vars[i] + "'");
    }
    if (order.kind == OrderKind::block && order.front >= vars.size())
      throw Error("elimination block must be smaller than the variable count");
  }

  std::size_t nvars() const { return vars.size(); }
  std::optional<std::size_t> var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return i;
    return std::nullopt;
  }
  bool same_as(const PolyContext& o) const {
    return tower->same_as(*o.tower) && vars == o.vars &&
           order.kind == o.order.kind && order.front == o.order.front;
  }
};

using CtxPtr = std::shared_ptr<const PolyContext>;

inline CtxPtr make_context(TowerPtr tower, std::vector<std::string> vars,
                           MonomialOrder order = MonomialOrder::grevlex()) {
  return std::make_shared<const PolyContext>(std::move(tower), std::move(vars), order);
}

/// Sparse multivariate polynomial: term list sorted strictly descending in the
/// context order, no zero coefficients, no duplicate monomials. Equality of
/// values is equality of term lists.
class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    FieldElement coeff;
  };

  MultiPoly() = default;
  static MultiPoly zero(CtxPtr ctx) { return MultiPoly(std::move(ctx), {}); }
  static MultiPoly constant(CtxPtr ctx, const FieldElement& c) {
    if (c.is_zero()) return zero(std::move(ctx));
    Monomial m = Monomial::unit(ctx->nvars());
    return MultiPoly(std::move(ctx), {Term{m, c}});
  }
  static MultiPoly from_integer(CtxPtr ctx, const BigInt& n) {
    FieldElement c = ctx->tower->from_integer(n);
    return constant(std::move(ctx), c);
  }
  static MultiPoly variable(CtxPtr ctx, std::size_t i, std::uint32_t power = 1) {
    if (i >= ctx->nvars()) throw DimensionMismatch("variable index out of range");
    if (power == 0) return constant(std::move(ctx), ctx->tower->one());
    Monomial m = Monomial::unit(ctx->nvars());
    m.e[i] = power;
    return MultiPoly(std::move(ctx), {Term{m, ctx->tower->one()}});
  }
  static MultiPoly monomial(CtxPtr ctx, Monomial m, FieldElement c) {
    if (c.is_zero()) return zero(std::move(ctx));
    return MultiPoly(std::move(ctx), {Term{std::move(m), std::move(c)}});
  }

  const CtxPtr& ctx() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_unit());
  }
  /// The constant value when the polynomial is constant.
  std::optional<FieldElement> constant_value() const {
    if (terms_.empty()) return ctx_->tower->zero();
    if (terms_.size() == 1 && terms_[0].mono.is_unit()) return terms_[0].coeff;
    return std::nullopt;
  }

  /// Total degree; nullopt is the distinguished "minus infinity" of the zero
  /// polynomial.
  std::optional<std::uint64_t> total_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_[0].mono;
  }
  const FieldElement& leading_coeff() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_[0].coeff;
  }
  MultiPoly leading_term() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return MultiPoly(ctx_, {terms_[0]});
  }

  MultiPoly operator+(const MultiPoly& o) const {
    check_ctx(o);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      int c = ctx_->order.compare(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        out.push_back(terms_[i++]);
      } else if (c < 0) {
        out.push_back(o.terms_[j++]);
      } else {
        FieldElement s = terms_[i].coeff + o.terms_[j].coeff;
        if (!s.is_zero()) out.push_back(Term{terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
    return MultiPoly(ctx_, std::move(out));
  }
  MultiPoly operator-() const {
    std::vector<Term> out = terms_;
    for (auto& t : out) t.coeff = -t.coeff;
    return MultiPoly(ctx_, std::move(out));
  }
  MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }

  MultiPoly operator*(const MultiPoly& o) const {
    check_ctx(o);
    if (is_zero() || o.is_zero()) return zero(ctx_);
    struct Cmp {
      const MonomialOrder* ord;
      bool operator()(const Monomial& a, const Monomial& b) const {
        return ord->greater(a, b);  // descending
      }
    };
    std::map<Monomial, FieldElement, Cmp> acc{Cmp{&ctx_->order}};
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) {
        Monomial m = a.mono * b.mono;
        FieldElement c = a.coeff * b.coeff;
        auto it = acc.find(m);
        if (it == acc.end()) {
          if (!c.is_zero()) acc.emplace(std::move(m), std::move(c));
        } else {
          it->second = it->second + c;
          if (it->second.is_zero()) acc.erase(it);
        }
      }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc) out.push_back(Term{m, c});
    return MultiPoly(ctx_, std::move(out));
  }

  MultiPoly scalar_mul(const FieldElement& c) const {
    if (c.is_zero()) return zero(ctx_);
    std::vector<Term> out = terms_;
    for (auto& t : out) t.coeff = t.coeff * c;
    return MultiPoly(ctx_, std::move(out));
  }

  MultiPoly mono_mul(const Monomial& m, const FieldElement& c) const {
    if (c.is_zero()) return zero(ctx_);
    std::vector<Term> out = terms_;
    for (auto& t : out) {
      t.mono = t.mono * m;
      t.coeff = t.coeff * c;
    }
    return MultiPoly(ctx_, std::move(out));
  }

  /// Power by repeated squaring.
  MultiPoly pow(std::uint64_t e) const {
    MultiPoly result = constant(ctx_, ctx_->tower->one());
    MultiPoly base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Exact evaluation; point entries may live in an extension of the
  /// coefficient tower.
  FieldElement evaluate(const std::vector<FieldElement>& point) const {
    if (point.size() != ctx_->nvars())
      throw DimensionMismatch("point dimension does not match variable count");
    TowerPtr target = point.empty() ? ctx_->tower : point[0].tower();
    for (const auto& c : point)
      if (!c.tower()->same_as(*target))
        throw DimensionMismatch("point coordinates live in different towers");
    if (!ctx_->tower->same_as(*target) && !ctx_->tower->is_prefix_of(*target))
      throw DimensionMismatch("point tower does not extend the coefficient tower");
    FieldElement acc = target->zero();
    for (const auto& t : terms_) {
      FieldElement v = ctx_->tower->same_as(*target)
                           ? t.coeff
                           : t.coeff.embed_into(target);
      for (std::size_t i = 0; i < point.size(); ++i)
        if (t.mono.e[i]) v = v * point[i].pow(t.mono.e[i]);
      acc = acc + v;
    }
    return acc;
  }

  bool operator==(const MultiPoly& o) const {
    check_ctx(o);
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].mono == o.terms_[i].mono) ||
          !(terms_[i].coeff == o.terms_[i].coeff))
        return false;
    return true;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  /// Normalize an unsorted term list (merge duplicates, drop zeros).
  static MultiPoly from_terms(CtxPtr ctx, std::vector<Term> terms) {
    MonomialOrder ord = ctx->order;
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
      return ord.greater(a.mono, b.mono);
    });
    std::vector<Term> out;
    for (auto& t : terms) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = out.back().coeff + t.coeff;
        if (out.back().coeff.is_zero()) out.pop_back();
      } else if (!t.coeff.is_zero()) {
        out.push_back(std::move(t));
      }
    }
    return MultiPoly(std::move(ctx), std::move(out));
  }

  /// Re-read the polynomial in another context; vars map by name, coefficients
  /// embed when the target tower extends the source tower. A source variable
  /// may be missing from the target only when the polynomial never uses it.
  MultiPoly transport(const CtxPtr& target) const {
    constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
    std::vector<std::size_t> map(ctx_->nvars(), kMissing);
    for (std::size_t i = 0; i < ctx_->nvars(); ++i) {
      auto idx = target->var_index(ctx_->vars[i]);
      if (idx) {
        map[i] = *idx;
      } else if (!free_of({i})) {
        throw DimensionMismatch("variable '" + ctx_->vars[i] +
                                "' missing in target context");
      }
    }
    const bool same_tower = ctx_->tower->same_as(*target->tower);
    if (!same_tower && !ctx_->tower->is_prefix_of(*target->tower))
      throw DimensionMismatch("target tower does not extend the source tower");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m = Monomial::unit(target->nvars());
      for (std::size_t i = 0; i < ctx_->nvars(); ++i)
        if (map[i] != kMissing) m.e[map[i]] = t.mono.e[i];
      FieldElement c = same_tower ? t.coeff : t.coeff.embed_into(target->tower);
      out.push_back(Term{std::move(m), std::move(c)});
    }
    return from_terms(target, std::move(out));
  }

  /// True when no term involves any of the given variables.
  bool free_of(const std::vector<std::size_t>& var_indices) const {
    for (const auto& t : terms_)
      for (auto i : var_indices)
        if (t.mono.e[i]) return false;
    return true;
  }

 private:
  MultiPoly(CtxPtr ctx, std::vector<Term> terms)
      : ctx_(std::move(ctx)), terms_(std::move(terms)) {}
  void check_ctx(const MultiPoly& o) const {
    if (ctx_.get() == o.ctx_.get()) return;
    if (!ctx_ || !o.ctx_ || !ctx_->same_as(*o.ctx_))
      throw DimensionMismatch("polynomials live in different contexts");
  }

  CtxPtr ctx_;
  std::vector<Term> terms_;
};

}  // namespace uat
