// Sparse bivariate polynomials with exact rational coefficients.
//
// The canonical monomial order everywhere is graded lexicographic with
// x ahead of y: compare total degree first, then the x exponent. All
// coefficient-vector layouts downstream (rank checks, linear solves)
// rely on this single order.

#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "biortho/rational.hpp"

namespace biortho {

/// Exponent pair of x^h y^k.
struct Monomial {
  int h = 0;
  int k = 0;

  int degree() const { return h + k; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lex order, x > y. Total degree decides first; on ties the
/// larger x exponent wins.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.h < b.h;
  }
};

enum class Axis { x, y };

class BiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  BiPoly() = default;
  BiPoly(int c) { add_term({0, 0}, rat(c)); }
  BiPoly(const Rational& c) { add_term({0, 0}, c); }

  static BiPoly zero() { return BiPoly(); }
  static BiPoly one() { return BiPoly(1); }
  static BiPoly x() { return monomial(1, 0, rat(1)); }
  static BiPoly y() { return monomial(0, 1, rat(1)); }

  static BiPoly monomial(int h, int k, const Rational& c) {
    BiPoly p;
    p.add_term({h, k}, c);
    return p;
  }

  static BiPoly from_terms(const std::vector<std::tuple<int, int, Rational>>& ts) {
    BiPoly p;
    for (const auto& [h, k, c] : ts) p.add_term({h, k}, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  /// Total degree; empty for the zero polynomial (the "minus infinity"
  /// sentinel is the disengaged optional, never the integer 0).
  std::optional<int> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.degree();
  }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
  }

  const TermMap& terms() const { return terms_; }

  Rational coeff(int h, int k) const {
    auto it = terms_.find({h, k});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Leading term under graded-lex; polynomial must be nonzero.
  std::pair<Monomial, Rational> leading_term() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  void add_term(Monomial m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) {
      Rational neg = -c;
      add_term(m, neg);
    }
    return *this;
  }
  BiPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(const BiPoly& a) {
    BiPoly r;
    for (const auto& [m, c] : a.terms_) {
      Rational neg = -c;
      r.terms_.emplace(m, neg);
    }
    return r;
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Rational c = ca * cb;
        r.add_term({ma.h + mb.h, ma.k + mb.k}, c);
      }
    }
    return r;
  }
  friend BiPoly operator*(BiPoly a, const Rational& c) { return a *= c; }
  friend BiPoly operator*(const Rational& c, BiPoly a) { return a *= c; }
  friend BiPoly operator*(BiPoly a, int c) { return a *= rat(c); }
  friend BiPoly operator*(int c, BiPoly a) { return a *= rat(c); }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.terms_ == b.terms_;
  }

  BiPoly pow(int e) const {
    if (e < 0) throw ParameterError("negative polynomial power");
    BiPoly r = one();
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Single exact partial derivative.
  BiPoly partial(Axis axis) const {
    BiPoly r;
    for (const auto& [m, c] : terms_) {
      if (axis == Axis::x) {
        if (m.h == 0) continue;
        Rational v = c * m.h;
        r.add_term({m.h - 1, m.k}, v);
      } else {
        if (m.k == 0) continue;
        Rational v = c * m.k;
        r.add_term({m.h, m.k - 1}, v);
      }
    }
    return r;
  }

  /// Iterated exact partial derivative of the given order.
  BiPoly partial(Axis axis, int order) const {
    BiPoly r = *this;
    for (int i = 0; i < order; ++i) r = r.partial(axis);
    return r;
  }

  Rational eval(const Rational& x, const Rational& y) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < m.h; ++i) t *= x;
      for (int i = 0; i < m.k; ++i) t *= y;
      acc += t;
    }
    return acc;
  }

  /// Exchanges the roles of x and y.
  BiPoly swap_xy() const {
    BiPoly r;
    for (const auto& [m, c] : terms_) r.add_term({m.k, m.h}, c);
    return r;
  }

  std::string to_string() const;

 private:
  TermMap terms_;  // invariant: no stored coefficient is zero
};

/// Exact quotient of p by d under graded-lex division by a single divisor.
/// Throws NotDivisibleError when no exact quotient exists; by construction
/// every quotient this library requests is exact, so a throw means a
/// hypothesis failed upstream.
inline BiPoly exact_divide(const BiPoly& p, const BiPoly& d,
                           const std::string& context = "") {
  if (d.is_zero()) throw Error("division by the zero polynomial");
  BiPoly q;
  BiPoly r = p;
  const auto [dm, dc] = d.leading_term();
  while (!r.is_zero()) {
    const auto [rm, rc] = r.leading_term();
    if (rm.h < dm.h || rm.k < dm.k) {
      throw NotDivisibleError("no exact quotient" +
                              (context.empty() ? "" : " (" + context + ")"));
    }
    Monomial qm{rm.h - dm.h, rm.k - dm.k};
    Rational qc = rc / dc;
    q.add_term(qm, qc);
    r -= BiPoly::monomial(qm.h, qm.k, qc) * d;
  }
  return q;
}

inline std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Leading term first: iterate in descending graded-lex order.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c > 0 ? c : Rational(-c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const bool has_vars = m.h > 0 || m.k > 0;
    if (!has_vars) {
      os << biortho::to_string(a);
    } else {
      if (a != 1) {
        if (a.get_den() == 1)
          os << biortho::to_string(a);
        else
          os << "(" << biortho::to_string(a) << ")";
      }
      if (m.h > 0) {
        os << "x";
        if (m.h > 1) os << "^" << m.h;
      }
      if (m.k > 0) {
        os << "y";
        if (m.k > 1) os << "^" << m.k;
      }
    }
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const BiPoly& p) {
  return os << p.to_string();
}

/// All monomials of total degree <= n in the stacked layout
/// (1; x, y; x^2, xy, y^2; ...): degree blocks ascending, x-power
/// descending inside each block. This is the coefficient-vector layout
/// shared by every rank/solve operation.
inline std::vector<Monomial> monomial_basis(int n) {
  std::vector<Monomial> basis;
  for (int m = 0; m <= n; ++m)
    for (int i = 0; i <= m; ++i) basis.push_back({m - i, i});
  return basis;
}

}  // namespace biortho
