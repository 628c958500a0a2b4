// Exact rational scalars for the whole library.
//
// Every coefficient in this project is an arbitrary-precision rational
// (GMP mpq). No floating point enters the core: "orthogonal" always means
// an exactly zero rational, never a small one.

#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace biortho {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an exact polynomial quotient does not exist. Upstream this
/// signals a violated construction hypothesis, so the message carries context.
class NotDivisibleError : public Error {
 public:
  explicit NotDivisibleError(const std::string& what) : Error(what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(what) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& what) : Error(what) {}
};

class MomentCapError : public Error {
 public:
  explicit MomentCapError(const std::string& what) : Error(what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q". Decimal or scientific notation is rejected:
/// inputs must stay exact.
inline Rational parse_rational(std::string_view s) {
  std::string text(s);
  if (text.empty()) throw ParseError("empty rational literal");
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos) {
    throw ParseError("decimal notation rejected, use exact p/q: '" + text + "'");
  }
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw ParseError("malformed rational literal: '" + text + "'");
  }
  if (q.get_den() == 0) throw ParseError("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

/// Canonical text form: "n" when the denominator is 1, otherwise "n/d".
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(b);
}

inline Rational factorial(long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return Rational(f);
}

inline Rational abs(const Rational& q) {
  Rational r = ::abs(q);
  return r;
}

}  // namespace biortho
