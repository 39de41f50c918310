#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace uat {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (expression, file, roster spec).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line(line),
        col(col) {}
  std::size_t line, col;
};

class UnknownSymbolError : public Error {
 public:
  explicit UnknownSymbolError(const std::string& sym, std::size_t line,
                              std::size_t col)
      : Error("unknown symbol '" + sym + "' (line " + std::to_string(line) +
              ", column " + std::to_string(col) + ")"),
        symbol(sym),
        line(line),
        col(col) {}
  std::string symbol;
  std::size_t line, col;
};

class MalformedExtension : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Inversion ran into a reducible minimal polynomial; carries the factor found.
class ZeroDivisorDetected : public Error {
 public:
  ZeroDivisorDetected(const std::string& gen, const std::string& factor)
      : Error("zero divisor detected: minimal polynomial of '" + gen +
              "' has factor " + factor),
        generator(gen),
        factor(factor) {}
  std::string generator;
  std::string factor;
};

class InapplicableOperation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class NotZeroDimensional : public Error {
 public:
  NotZeroDimensional() : Error("ideal is not zero-dimensional") {}
};

class NotAnIdempotent : public Error {
 public:
  using Error::Error;
};

class TrivialIdempotent : public Error {
 public:
  using Error::Error;
};

class CertificateError : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// A verified-impossible state: a bug, never a property of the input.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Resource caps for Groebner runs and searches. Exceeding a cap never
/// produces a wrong answer; it surfaces as BudgetExceeded or an "unknown"
/// verdict upstream.
struct Budget {
  long max_pair_reductions = 50000;
  long max_total_degree = 60;
  long max_candidates = 2000000;
  long max_nilpotent_exponent = 1 << 20;
  long factor_degree_budget = 8;
  long factor_combination_budget = 200000;
  std::uint64_t seed = 12345;
};

struct BudgetDiagnostics {
  long pair_reductions = 0;
  long max_degree_seen = 0;
  std::string note;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& msg, BudgetDiagnostics diag)
      : Error(msg), diag(std::move(diag)) {}
  BudgetDiagnostics diag;
};

/// Factorization gave up within its budget (degree or combination cap).
class FactorizationBudget : public Error {
 public:
  using Error::Error;
};

}  // namespace uat
