#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "uat/errors.hpp"

namespace uat {

/// A fully enumerable commutative ring: Z/n, F_p[x]/(f), finite products, or
/// an explicit structure-constant table. Elements are indices 0..size-1.
/// Everything is decided by exhaustive enumeration; this is the independent
/// ground-truth oracle for the symbolic side.
class FiniteRing {
 public:
  enum class Kind { mod_n, poly_quotient, product, table };

  static FiniteRing mod_n(std::uint64_t n) {
    if (n < 2) throw Error("Zmod requires n >= 2");
    FiniteRing r;
    r.kind_ = Kind::mod_n;
    r.n_ = n;
    r.size_ = n;
    r.finish_init();
    return r;
  }

  /// F_p[x]/(f) with f monic of degree >= 1, coefficients ascending.
  static FiniteRing poly_quotient(std::uint32_t p, std::vector<std::uint32_t> f) {
    if (p < 2) throw Error("GFpoly requires a prime p");
    for (std::uint32_t d = 2; d < p; ++d)
      if (p % d == 0) throw Error("GFpoly requires a prime p");
    while (f.size() > 1 && f.back() % p == 0) f.pop_back();
    if (f.size() < 2) throw Error("GFpoly modulus must have degree >= 1");
    for (auto& c : f) c %= p;
    if (f.back() != 1) throw Error("GFpoly modulus must be monic");
    FiniteRing r;
    r.kind_ = Kind::poly_quotient;
    r.p_ = p;
    r.modulus_ = std::move(f);
    std::uint64_t size = 1;
    for (std::size_t i = 0; i + 1 < r.modulus_.size(); ++i) size *= p;
    r.size_ = size;
    r.finish_init();
    return r;
  }

  static FiniteRing product(std::vector<FiniteRing> factors) {
    if (factors.empty()) throw Error("empty product");
    if (factors.size() == 1) return factors[0];
    FiniteRing r;
    r.kind_ = Kind::product;
    std::uint64_t size = 1;
    for (const auto& f : factors) size *= f.size();
    r.size_ = size;
    r.factors_ = std::move(factors);
    r.finish_init();
    return r;
  }

  /// Ring given by explicit add/mul tables (used by the structure-constant
  /// bridge from zero-dimensional quotients).
  static FiniteRing from_tables(std::vector<std::vector<std::uint64_t>> add,
                                std::vector<std::vector<std::uint64_t>> mul,
                                std::uint64_t one_index,
                                std::vector<std::string> labels = {}) {
    FiniteRing r;
    r.kind_ = Kind::table;
    r.size_ = add.size();
    r.add_table_ = std::move(add);
    r.mul_table_ = std::move(mul);
    r.one_ = one_index;
    r.labels_ = std::move(labels);
    r.tables_ready_ = true;
    r.check_axioms();
    return r;
  }

  std::uint64_t size() const { return size_; }
  std::uint64_t zero() const { return 0; }
  std::uint64_t one() const { return one_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (tables_ready_) return add_table_[a][b];
    switch (kind_) {
      case Kind::mod_n:
        return (a + b) % n_;
      case Kind::poly_quotient:
        return zip_poly(a, b, /*mul=*/false);
      case Kind::product: {
        std::uint64_t out = 0, stride = 1;
        for (const auto& f : factors_) {
          out += stride * f.add(a % f.size(), b % f.size());
          stride *= f.size();
          a /= f.size();
          b /= f.size();
        }
        return out;
      }
      case Kind::table:
        return add_table_[a][b];
    }
    return 0;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (tables_ready_) return mul_table_[a][b];
    switch (kind_) {
      case Kind::mod_n:
        return (a * b) % n_;
      case Kind::poly_quotient:
        return zip_poly(a, b, /*mul=*/true);
      case Kind::product: {
        std::uint64_t out = 0, stride = 1;
        for (const auto& f : factors_) {
          out += stride * f.mul(a % f.size(), b % f.size());
          stride *= f.size();
          a /= f.size();
          b /= f.size();
        }
        return out;
      }
      case Kind::table:
        return mul_table_[a][b];
    }
    return 0;
  }

  std::uint64_t neg(std::uint64_t a) const {
    // -a found by scanning only once per ring (cached)
    ensure_flags();
    return neg_[a];
  }

  bool is_unit(std::uint64_t a) const {
    ensure_flags();
    return unit_[a];
  }
  std::optional<std::uint64_t> inverse(std::uint64_t a) const {
    ensure_flags();
    if (!unit_[a]) return std::nullopt;
    return inv_[a];
  }
  /// Squaring chain: a is nilpotent iff it squares to zero within
  /// ceil(log2 |R|) + 1 steps (nilpotency index is at most |R|).
  bool is_nilpotent(std::uint64_t a) const {
    ensure_flags();
    return nilp_[a];
  }
  bool is_idempotent(std::uint64_t a) const { return mul(a, a) == a; }

  std::vector<std::uint64_t> units() const {
    ensure_flags();
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < size_; ++a)
      if (unit_[a]) out.push_back(a);
    return out;
  }

  std::vector<std::uint64_t> idempotents() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < size_; ++a)
      if (is_idempotent(a)) out.push_back(a);
    return out;
  }

  std::string label(std::uint64_t a) const {
    switch (kind_) {
      case Kind::mod_n:
        return std::to_string(a);
      case Kind::poly_quotient: {
        std::string s;
        std::uint64_t v = a;
        for (std::size_t i = 0; i + 1 < modulus_.size(); ++i) {
          std::uint64_t c = v % p_;
          v /= p_;
          if (!c) continue;
          std::string t;
          if (i == 0)
            t = std::to_string(c);
          else {
            if (c != 1) t = std::to_string(c) + "*";
            t += "x";
            if (i > 1) t += "^" + std::to_string(i);
          }
          if (!s.empty()) s += "+";
          s += t;
        }
        return s.empty() ? "0" : s;
      }
      case Kind::product: {
        std::string s = "(";
        std::uint64_t v = a;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          if (i) s += ", ";
          s += factors_[i].label(v % factors_[i].size());
          v /= factors_[i].size();
        }
        return s + ")";
      }
      case Kind::table:
        return a < labels_.size() ? labels_[a] : "#" + std::to_string(a);
    }
    return "?";
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::mod_n:
        return "Zmod(" + std::to_string(n_) + ")";
      case Kind::poly_quotient: {
        std::string f;
        for (std::size_t i = modulus_.size(); i-- > 0;) {
          if (!modulus_[i]) continue;
          if (!f.empty()) f += "+";
          if (i == 0)
            f += std::to_string(modulus_[i]);
          else {
            if (modulus_[i] != 1) f += std::to_string(modulus_[i]) + "*";
            f += "x";
            if (i > 1) f += "^" + std::to_string(i);
          }
        }
        return "GFpoly(" + std::to_string(p_) + ", " + f + ")";
      }
      case Kind::product: {
        std::string s = "prod(";
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          if (i) s += ", ";
          s += factors_[i].describe();
        }
        return s + ")";
      }
      case Kind::table:
        return "table(" + std::to_string(size_) + ")";
    }
    return "?";
  }

 private:
  void finish_init() {
    if (kind_ == Kind::poly_quotient) {
      // one = constant polynomial 1
      one_ = 1;
    } else if (kind_ == Kind::product) {
      std::uint64_t out = 0, stride = 1;
      for (const auto& f : factors_) {
        out += stride * f.one();
        stride *= f.size();
      }
      one_ = out;
    } else if (kind_ == Kind::mod_n) {
      one_ = 1 % n_;
    }
    if (size_ <= 1024 && kind_ != Kind::table) build_tables();
    check_axioms();
  }

  void build_tables() {
    // tables_ready_ is still false here, so add/mul dispatch structurally
    add_table_.assign(size_, std::vector<std::uint64_t>(size_, 0));
    mul_table_.assign(size_, std::vector<std::uint64_t>(size_, 0));
    for (std::uint64_t a = 0; a < size_; ++a)
      for (std::uint64_t b = 0; b < size_; ++b) {
        add_table_[a][b] = add(a, b);
        mul_table_[a][b] = mul(a, b);
      }
    tables_ready_ = true;
  }

  std::uint64_t zip_poly(std::uint64_t a, std::uint64_t b, bool is_mul) const {
    const std::size_t d = modulus_.size() - 1;
    std::vector<std::uint64_t> ca(d, 0), cb(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      ca[i] = a % p_;
      a /= p_;
      cb[i] = b % p_;
      b /= p_;
    }
    std::vector<std::uint64_t> out;
    if (!is_mul) {
      out.resize(d, 0);
      for (std::size_t i = 0; i < d; ++i) out[i] = (ca[i] + cb[i]) % p_;
    } else {
      out.assign(2 * d - 1, 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          out[i + j] = (out[i + j] + ca[i] * cb[j]) % p_;
      for (std::size_t k = out.size(); k-- > d;) {
        std::uint64_t lead = out[k];
        if (!lead) continue;
        out[k] = 0;
        for (std::size_t i = 0; i < d; ++i) {
          std::uint64_t sub = (lead * modulus_[i]) % p_;
          out[k - d + i] = (out[k - d + i] + p_ - sub) % p_;
        }
      }
      out.resize(d);
    }
    std::uint64_t enc = 0, stride = 1;
    for (std::size_t i = 0; i < d; ++i) {
      enc += stride * out[i];
      stride *= p_;
    }
    return enc;
  }

  void ensure_flags() const {
    if (!flags_ready_) {
      const_cast<FiniteRing*>(this)->compute_flags();
    }
  }

  void compute_flags() {
    unit_.assign(size_, false);
    inv_.assign(size_, 0);
    nilp_.assign(size_, false);
    neg_.assign(size_, 0);
    for (std::uint64_t a = 0; a < size_; ++a) {
      for (std::uint64_t b = a; b < size_; ++b) {
        if (mul(a, b) == one_) {
          unit_[a] = unit_[b] = true;
          inv_[a] = b;
          inv_[b] = a;
        }
        if (add(a, b) == 0) {
          neg_[a] = b;
          neg_[b] = a;
        }
      }
      std::uint64_t x = a;
      std::uint64_t steps = 1;
      std::uint64_t cap = 1;
      while ((std::uint64_t(1) << cap) < size_) ++cap;
      for (std::uint64_t k = 0; k <= cap + 1 && x != 0; ++k) {
        x = mul(x, x);
        ++steps;
      }
      (void)steps;
      nilp_[a] = (x == 0);
    }
    flags_ready_ = true;
  }

  void check_axioms() const {
    // Exhaustive triple checks up to 64 elements; deterministic sampling above.
    auto check_triple = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
      if (add(a, b) != add(b, a)) throw InternalInconsistency("ring: + not commutative");
      if (mul(a, b) != mul(b, a)) throw InternalInconsistency("ring: * not commutative");
      if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
        throw InternalInconsistency("ring: distributivity fails");
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw InternalInconsistency("ring: * not associative");
      if (add(add(a, b), c) != add(a, add(b, c)))
        throw InternalInconsistency("ring: + not associative");
    };
    for (std::uint64_t a = 0; a < size_; ++a) {
      if (mul(a, one_) != a) throw InternalInconsistency("ring: 1 is not neutral");
      if (add(a, 0) != a) throw InternalInconsistency("ring: 0 is not neutral");
    }
    if (size_ <= 64) {
      for (std::uint64_t a = 0; a < size_; ++a)
        for (std::uint64_t b = 0; b < size_; ++b)
          for (std::uint64_t c = 0; c < size_; ++c) check_triple(a, b, c);
    } else {
      std::uint64_t x = 1;
      for (int k = 0; k < 512; ++k) {
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        std::uint64_t a = (x >> 33) % size_;
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        std::uint64_t b = (x >> 33) % size_;
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        std::uint64_t c = (x >> 33) % size_;
        check_triple(a, b, c);
      }
    }
  }

  Kind kind_ = Kind::mod_n;
  std::uint64_t size_ = 0;
  std::uint64_t n_ = 0;                    // mod_n
  std::uint32_t p_ = 0;                    // poly_quotient
  std::vector<std::uint32_t> modulus_;     // poly_quotient, ascending
  std::vector<FiniteRing> factors_;        // product
  std::uint64_t one_ = 1;
  std::vector<std::string> labels_;

  bool tables_ready_ = false;
  std::vector<std::vector<std::uint64_t>> add_table_, mul_table_;

  bool flags_ready_ = false;
  std::vector<bool> unit_, nilp_;
  std::vector<std::uint64_t> inv_, neg_;
};

// ---------------------------------------------------------------------------
// Exhaustive decisions
// ---------------------------------------------------------------------------

inline void oracle_check_budget(const FiniteRing& R, std::uint64_t budget = 4096) {
  if (R.size() > budget)
    throw BudgetExceeded("ring too large for the exhaustive oracle",
                         BudgetDiagnostics{0, 0, R.describe()});
}

/// Unit-additivity by scanning all unit pairs.
inline bool decide_ua(const FiniteRing& R) {
  oracle_check_budget(R);
  auto units = R.units();
  for (auto u : units)
    for (auto v : units) {
      std::uint64_t s = R.add(u, v);
      if (!R.is_unit(s) && !R.is_nilpotent(s)) return false;
    }
  return true;
}

/// Unit-additivity via the u+1 criterion, computed independently.
inline bool decide_ua_via_plus_one(const FiniteRing& R) {
  oracle_check_budget(R);
  for (auto u : R.units()) {
    std::uint64_t s = R.add(u, R.one());
    if (!R.is_unit(s) && !R.is_nilpotent(s)) return false;
  }
  return true;
}

/// UU: u - 1 nilpotent for every unit u.
inline bool decide_uu(const FiniteRing& R) {
  oracle_check_budget(R);
  std::uint64_t minus_one = R.neg(R.one());
  for (auto u : R.units())
    if (!R.is_nilpotent(R.add(u, minus_one))) return false;
  return true;
}

namespace detail {

/// Units of the factor ring eR (identity e), and the factor's UA status,
/// computed exhaustively inside eR.
inline bool factor_ring_ua(const FiniteRing& R, std::uint64_t e) {
  std::vector<std::uint64_t> elems;
  std::vector<bool> seen(R.size(), false);
  for (std::uint64_t r = 0; r < R.size(); ++r) {
    std::uint64_t x = R.mul(e, r);
    if (!seen[x]) {
      seen[x] = true;
      elems.push_back(x);
    }
  }
  std::vector<std::uint64_t> units;
  for (auto u : elems)
    for (auto v : elems)
      if (R.mul(u, v) == e) {
        units.push_back(u);
        break;
      }
  auto nilpotent_in_factor = [&](std::uint64_t x) {
    // e is the identity of eR and eR is closed under multiplication, so
    // nilpotency inside eR agrees with nilpotency in R.
    return R.is_nilpotent(x);
  };
  for (auto u : units)
    for (auto v : units) {
      std::uint64_t s = R.add(u, v);
      bool unit_in_factor = false;
      for (auto w : elems)
        if (R.mul(s, w) == e) {
          unit_in_factor = true;
          break;
        }
      if (!unit_in_factor && !nilpotent_in_factor(s)) return false;
    }
  return true;
}

}  // namespace detail

/// Enumerates ALL idempotents, forms the finest orthogonal decomposition
/// (primitive idempotents), and checks every factor for unit-additivity.
inline bool decide_locally_ua(const FiniteRing& R) {
  oracle_check_budget(R);
  auto idems = R.idempotents();
  // primitive = minimal nonzero under e <= f  iff  e*f == e
  std::vector<std::uint64_t> atoms;
  for (auto e : idems) {
    if (e == 0) continue;
    bool minimal = true;
    for (auto g : idems) {
      if (g == 0 || g == e) continue;
      if (R.mul(g, e) == g) {
        minimal = false;
        break;
      }
    }
    if (minimal) atoms.push_back(e);
  }
  // sanity: atoms are orthogonal and sum to 1
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    sum = R.add(sum, atoms[i]);
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (R.mul(atoms[i], atoms[j]) != 0)
        throw InternalInconsistency("primitive idempotents not orthogonal");
  }
  if (sum != R.one())
    throw InternalInconsistency("primitive idempotents do not sum to 1");
  for (auto e : atoms)
    if (!detail::factor_ring_ua(R, e)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Roster specification parser: Zmod(8), GFpoly(2, x^2+x), prod(A, B, ...)
// ---------------------------------------------------------------------------

namespace detail {

inline void skip_spaces(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline std::uint64_t parse_uint(const std::string& s, std::size_t& i) {
  skip_spaces(s, i);
  std::size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == start) throw ParseError("expected an integer in ring spec", 1, start + 1);
  return std::stoull(s.substr(start, i - start));
}

/// Univariate polynomial over F_p in the variable x, ascending coefficients.
inline std::vector<std::uint32_t> parse_gf_poly(const std::string& s,
                                                std::size_t& i,
                                                std::uint32_t p) {
  std::vector<std::uint32_t> coeffs;
  auto bump = [&](std::size_t deg, std::int64_t c) {
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
    std::int64_t v = (coeffs[deg] + c) % p;
    if (v < 0) v += p;
    coeffs[deg] = static_cast<std::uint32_t>(v);
  };
  int sign = 1;
  skip_spaces(s, i);
  while (i < s.size() && s[i] != ')' && s[i] != ',') {
    if (s[i] == '+') {
      sign = 1;
      ++i;
      skip_spaces(s, i);
      continue;
    }
    if (s[i] == '-') {
      sign = -1;
      ++i;
      skip_spaces(s, i);
      continue;
    }
    std::int64_t c = 1;
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = static_cast<std::int64_t>(parse_uint(s, i));
      saw_coeff = true;
      skip_spaces(s, i);
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_spaces(s, i);
      }
    }
    std::size_t deg = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      deg = 1;
      skip_spaces(s, i);
      if (i < s.size() && s[i] == '^') {
        ++i;
        deg = static_cast<std::size_t>(parse_uint(s, i));
      }
    } else if (!saw_coeff) {
      throw ParseError("expected a term in GFpoly modulus", 1, i + 1);
    }
    bump(deg, sign * c);
    sign = 1;
    skip_spaces(s, i);
  }
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

inline FiniteRing parse_ring_spec_at(const std::string& s, std::size_t& i) {
  skip_spaces(s, i);
  auto starts = [&](const char* kw) {
    return s.compare(i, std::string(kw).size(), kw) == 0;
  };
  if (starts("Zmod")) {
    i += 4;
    skip_spaces(s, i);
    if (i >= s.size() || s[i] != '(') throw ParseError("expected '(' after Zmod", 1, i + 1);
    ++i;
    std::uint64_t n = parse_uint(s, i);
    skip_spaces(s, i);
    if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", 1, i + 1);
    ++i;
    return FiniteRing::mod_n(n);
  }
  if (starts("GFpoly")) {
    i += 6;
    skip_spaces(s, i);
    if (i >= s.size() || s[i] != '(') throw ParseError("expected '(' after GFpoly", 1, i + 1);
    ++i;
    std::uint64_t p = parse_uint(s, i);
    skip_spaces(s, i);
    if (i >= s.size() || s[i] != ',') throw ParseError("expected ',' in GFpoly", 1, i + 1);
    ++i;
    auto f = parse_gf_poly(s, i, static_cast<std::uint32_t>(p));
    skip_spaces(s, i);
    if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", 1, i + 1);
    ++i;
    return FiniteRing::poly_quotient(static_cast<std::uint32_t>(p), f);
  }
  if (starts("prod")) {
    i += 4;
    skip_spaces(s, i);
    if (i >= s.size() || s[i] != '(') throw ParseError("expected '(' after prod", 1, i + 1);
    ++i;
    std::vector<FiniteRing> factors;
    while (true) {
      factors.push_back(parse_ring_spec_at(s, i));
      skip_spaces(s, i);
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", 1, i + 1);
    ++i;
    if (factors.size() > 3)
      throw Error("products are limited to 3 factors");
    return FiniteRing::product(std::move(factors));
  }
  throw ParseError("expected Zmod(...), GFpoly(...) or prod(...)", 1, i + 1);
}

}  // namespace detail

inline FiniteRing parse_ring_spec(const std::string& s) {
  std::size_t i = 0;
  FiniteRing r = detail::parse_ring_spec_at(s, i);
  detail::skip_spaces(s, i);
  if (i != s.size()) throw ParseError("trailing input in ring spec", 1, i + 1);
  return r;
}

}  // namespace uat
