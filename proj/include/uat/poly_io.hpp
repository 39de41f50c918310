#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "uat/poly.hpp"

namespace uat {

/// Recursive-descent parser for polynomial expressions over a context.
/// Grammar: integers (and n/d rational literals), field-generator symbols,
/// variables, + - * ^ and parentheses. Implicit multiplication is a syntax
/// error. Errors carry line/column.
class PolyParser {
 public:
  PolyParser(std::string text, CtxPtr ctx)
      : text_(std::move(text)), ctx_(std::move(ctx)) {}

  MultiPoly parse() {
    skip_ws();
    MultiPoly p = parse_expr();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError("unexpected trailing input", line_, col_);
    return p;
  }

 private:
  MultiPoly parse_expr() {
    bool neg = false;
    skip_ws();
    if (peek() == '-') {
      advance();
      neg = true;
    } else if (peek() == '+') {
      advance();
    }
    MultiPoly acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      char c = peek();
      if (c == '+') {
        advance();
        acc = acc + parse_term();
      } else if (c == '-') {
        advance();
        acc = acc - parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly parse_term() {
    MultiPoly acc = parse_factor();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        advance();
        acc = acc * parse_factor();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly parse_factor() {
    MultiPoly base = parse_atom();
    skip_ws();
    if (peek() == '^') {
      advance();
      skip_ws();
      std::size_t l = line_, c = col_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("exponent must be a nonnegative integer", l, c);
      BigInt e = parse_natural();
      if (e >= kMaxExponent) throw DegreeOverflow("exponent exceeds 2^31");
      return base.pow(static_cast<std::uint64_t>(e));
    }
    return base;
  }

  MultiPoly parse_atom() {
    skip_ws();
    std::size_t l = line_, c = col_;
    char ch = peek();
    if (ch == '\0') throw ParseError("unexpected end of input", l, c);
    if (ch == '(') {
      advance();
      MultiPoly inner = parse_expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", line_, col_);
      advance();
      return inner;
    }
    if (ch == '-') {
      advance();
      return -parse_factor();
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      BigInt num = parse_natural();
      if (peek() == '/') {  // rational literal n/d, no spaces
        advance();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
          throw ParseError("expected denominator digits after '/'", line_, col_);
        BigInt den = parse_natural();
        if (den == 0) throw ParseError("zero denominator", l, c);
        return MultiPoly::constant(ctx_,
                                   ctx_->tower->from_rational(Rational(num, den)));
      }
      return MultiPoly::from_integer(ctx_, num);
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string sym;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        sym += peek();
        advance();
      }
      if (auto vi = ctx_->var_index(sym))
        return MultiPoly::variable(ctx_, *vi);
      if (auto gi = ctx_->tower->generator_index(sym))
        return MultiPoly::constant(ctx_, ctx_->tower->generator(*gi));
      throw UnknownSymbolError(sym, l, c);
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
  }

  BigInt parse_natural() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    return BigInt(digits);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }

  std::string text_;
  CtxPtr ctx_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1, col_ = 1;
};

inline MultiPoly parse_poly(const std::string& text, const CtxPtr& ctx) {
  return PolyParser(text, ctx).parse();
}

inline std::string monomial_to_string(const Monomial& m, const PolyContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ctx.vars[i];
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  return out;
}

/// Canonical printer; parse(print(f)) == f on canonical forms.
inline std::string poly_to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  const auto& ctx = *f.ctx();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string cs = t.coeff.to_string();
    bool neg = false;
    bool compound = cs.find(" + ") != std::string::npos ||
                    cs.find(" - ") != std::string::npos;
    if (compound) {
      cs = "(" + cs + ")";
    } else if (!cs.empty() && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    std::string ms = monomial_to_string(t.mono, ctx);
    std::string piece;
    if (ms.empty())
      piece = cs;
    else if (cs == "1")
      piece = ms;
    else
      piece = cs + "*" + ms;
    if (first) {
      out += (neg ? "-" : "") + piece;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

}  // namespace uat
