// Family specifications (Phi, Psi, weight), the differential operator L,
// symmetry-factor verification, the symmetrizability criterion, and the
// compatibility-condition machinery with its tridiagonal lift to Kronecker powers.

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biortho/diffcalc.hpp"
#include "biortho/kronpow.hpp"
#include "biortho/linalg.hpp"

namespace biortho {

class UnknownFamilyError : public Error {
 public:
  explicit UnknownFamilyError(const std::string& what) : Error(what) {}
};

class DegenerateDeterminantError : public Error {
 public:
  explicit DegenerateDeterminantError(const std::string& what) : Error(what) {}
};

/// One family: the symmetric 2x2 matrix Phi = (a b; b c) with entries of
/// total degree <= 2, the column Psi = (d; e) of degree <= 1, and a
/// factored symmetry factor when one exists in carrier form. A family may
/// carry an alternative diagonal form (phi', psi', weight') of the same
/// functional, used when the original Phi fails the compatibility condition.
struct FamilySpec {
  std::string name;
  PolyMatrix phi{2, 2};
  PolyMatrix psi{2, 1};
  std::optional<WeightCarrier> weight;  // absent: moment-route only
  std::map<std::string, Rational> params;
  std::shared_ptr<FamilySpec> diagonal_reduction;

  const BiPoly& a() const { return phi.at(0, 0); }
  const BiPoly& b() const { return phi.at(0, 1); }
  const BiPoly& c() const { return phi.at(1, 1); }
  const BiPoly& d() const { return psi.at(0, 0); }
  const BiPoly& e() const { return psi.at(1, 0); }

  bool phi_diagonal() const { return b().is_zero(); }

  /// Structural invariants; violations are returned, not thrown, so
  /// user-supplied families can be diagnosed rather than rejected.
  std::vector<std::string> structural_violations() const {
    std::vector<std::string> v;
    if (phi.rows() != 2 || phi.cols() != 2) v.push_back("phi is not 2x2");
    if (psi.rows() != 2 || psi.cols() != 1) v.push_back("psi is not 2x1");
    if (!(phi.at(0, 1) == phi.at(1, 0))) v.push_back("phi is not symmetric");
    auto too_big = [](const BiPoly& p, int cap) {
      auto d = p.degree();
      return d && *d > cap;
    };
    if (too_big(a(), 2) || too_big(b(), 2) || too_big(c(), 2))
      v.push_back("some phi entry has total degree > 2");
    if (too_big(d(), 1) || too_big(e(), 1))
      v.push_back("some psi entry has total degree > 1");
    return v;
  }
};

/// tilde(Psi) = Psi - (div Phi)^t, the drift of the divergence form.
inline PolyMatrix tilde_psi(const PolyMatrix& phi, const PolyMatrix& psi) {
  PolyMatrix t(2, 1);
  t.at(0, 0) = psi.at(0, 0) - phi.at(0, 0).partial(Axis::x) - phi.at(0, 1).partial(Axis::y);
  t.at(1, 0) = psi.at(1, 0) - phi.at(0, 1).partial(Axis::x) - phi.at(1, 1).partial(Axis::y);
  return t;
}

inline PolyMatrix tilde_psi(const FamilySpec& fam) { return tilde_psi(fam.phi, fam.psi); }

/// L[p] = a p_xx + 2 b p_xy + c p_yy + d p_x + e p_y.
inline BiPoly apply_L(const FamilySpec& fam, const BiPoly& p) {
  BiPoly r = fam.a() * p.partial(Axis::x, 2);
  r += 2 * (fam.b() * p.partial(Axis::x).partial(Axis::y));
  r += fam.c() * p.partial(Axis::y, 2);
  r += fam.d() * p.partial(Axis::x);
  r += fam.e() * p.partial(Axis::y);
  return r;
}

inline PolyMatrix apply_L(const FamilySpec& fam, const PolyMatrix& m) {
  PolyMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = apply_L(fam, m.at(i, j));
  return r;
}

/// Outcome of checking Phi grad(omega) = tilde(Psi) omega in carrier
/// arithmetic. Failure is data: the residual carrier terms are kept.
struct SymmetryFactorReport {
  bool checked = false;  // false when the family has no carrier weight
  bool pass = false;
  std::vector<std::string> residuals;
};

inline SymmetryFactorReport verify_symmetry_factor(const PolyMatrix& phi,
                                                   const PolyMatrix& psi,
                                                   const std::optional<WeightCarrier>& weight) {
  SymmetryFactorReport rep;
  if (!weight) return rep;
  rep.checked = true;
  const WeightCarrier& w = *weight;
  CarrierTerm unit = CarrierTerm::of_polynomial(BiPoly::one(), w);
  CarrierTerm wx = carrier_derivative(unit, w, Axis::x);
  CarrierTerm wy = carrier_derivative(unit, w, Axis::y);
  PolyMatrix tp = tilde_psi(phi, psi);
  rep.pass = true;
  for (int row = 0; row < 2; ++row) {
    CarrierTerm lhs = carrier_add(carrier_scale(wx, phi.at(row, 0)),
                                  carrier_scale(wy, phi.at(row, 1)), w);
    CarrierTerm rhs = CarrierTerm::of_polynomial(tp.at(row, 0), w);
    CarrierTerm diff = carrier_add(lhs, carrier_scale(rhs, BiPoly(-1)), w);
    if (!diff.is_zero()) {
      rep.pass = false;
      rep.residuals.push_back("row " + std::to_string(row) + ": residual numerator " +
                              diff.numerator.to_string());
    }
  }
  return rep;
}

inline SymmetryFactorReport verify_symmetry_factor(const FamilySpec& fam) {
  return verify_symmetry_factor(fam.phi, fam.psi, fam.weight);
}

/// Symmetrizability criterion for ac - b^2 not identically zero: with
/// alpha = det Phi, beta = c(d-a_x-b_y) - b(e-b_x-c_y) and
/// gamma = -b(d-a_x-b_y) + a(e-b_x-c_y), the operator is symmetrizable
/// iff d/dy (beta/alpha) = d/dx (gamma/alpha). Both sides live over the
/// common denominator alpha^2, so the test clears it and compares
/// numerators exactly.
inline bool check_symmetrizable(const FamilySpec& fam) {
  const BiPoly alpha = fam.a() * fam.c() - fam.b() * fam.b();
  if (alpha.is_zero())
    throw DegenerateDeterminantError("ac - b^2 is identically zero");
  PolyMatrix tp = tilde_psi(fam);
  const BiPoly& dt = tp.at(0, 0);
  const BiPoly& et = tp.at(1, 0);
  const BiPoly beta = fam.c() * dt - fam.b() * et;
  const BiPoly gamma = fam.a() * et - fam.b() * dt;
  BiPoly lhs = beta.partial(Axis::y) * alpha - beta * alpha.partial(Axis::y);
  BiPoly rhs = gamma.partial(Axis::x) * alpha - gamma * alpha.partial(Axis::x);
  return lhs == rhs;
}

/// A solution (Psi_0, Psi_1) of
///   (a Phi)_x + (b Phi)_y = Phi Psi_0,
///   (b Phi)_x + (c Phi)_y = Phi Psi_1,
/// with entries of total degree <= 1.
struct CompatibilitySolution {
  PolyMatrix psi0{2, 2};
  PolyMatrix psi1{2, 2};
  const PolyMatrix& psi(int k) const { return k == 0 ? psi0 : psi1; }
};

namespace detail {

// Coefficient-matching solve of (p Phi)_x + (q Phi)_y = Phi X for one
// unknown 2x2 matrix X with degree <= 1 entries. Unknowns are ordered
// entry-major, each entry as (1, x, y); free unknowns are zeroed, so the
// returned solution is canonical.
inline std::optional<PolyMatrix> solve_compat_one(const PolyMatrix& phi, const BiPoly& p,
                                                 const BiPoly& q) {
  PolyMatrix lhs = (p * phi).partial(Axis::x) + (q * phi).partial(Axis::y);
  const std::vector<Monomial> ansatz = {{0, 0}, {1, 0}, {0, 1}};
  // Equation degree: deg(Phi) + 1 covers both sides.
  int eq_deg = 1;
  if (auto d = phi.degree()) eq_deg = *d + 1;
  if (auto d = lhs.degree()) eq_deg = std::max(eq_deg, *d);
  const std::vector<Monomial> eq_basis = monomial_basis(eq_deg);
  const int unknowns = 4 * 3;
  const int equations = 4 * static_cast<int>(eq_basis.size());
  RatMatrix a(equations, unknowns);
  std::vector<Rational> b(equations, Rational(0));
  int eq = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      // Entry (i,j) of Phi X = sum_l phi(i,l) X(l,j).
      for (size_t m = 0; m < eq_basis.size(); ++m, ++eq) {
        b[eq] = lhs.at(i, j).coeff(eq_basis[m].h, eq_basis[m].k);
        for (int l = 0; l < 2; ++l)
          for (size_t t = 0; t < ansatz.size(); ++t) {
            const int col = (l * 2 + j) * 3 + static_cast<int>(t);
            BiPoly contrib =
                phi.at(i, l) * BiPoly::monomial(ansatz[t].h, ansatz[t].k, rat(1));
            a.at(eq, col) = contrib.coeff(eq_basis[m].h, eq_basis[m].k);
          }
      }
    }
  LinearSolution sol = solve(a, b);
  if (!sol.consistent) return std::nullopt;
  PolyMatrix x(2, 2);
  for (int l = 0; l < 2; ++l)
    for (int j = 0; j < 2; ++j)
      for (size_t t = 0; t < ansatz.size(); ++t) {
        const Rational& cv = sol.x[(l * 2 + j) * 3 + t];
        if (cv != 0) x.at(l, j).add_term(ansatz[t], cv);
      }
  return x;
}

}  // namespace detail

/// Solves the compatibility condition for Phi; NoSolution is a value (disengaged optional).
inline std::optional<CompatibilitySolution> solve_compatibility(const PolyMatrix& phi) {
  if (phi.rows() != 2 || phi.cols() != 2) throw DimensionError("compatibility condition needs a 2x2 Phi");
  auto p0 = detail::solve_compat_one(phi, phi.at(0, 0), phi.at(0, 1));
  if (!p0) return std::nullopt;
  auto p1 = detail::solve_compat_one(phi, phi.at(1, 0), phi.at(1, 1));
  if (!p1) return std::nullopt;
  return CompatibilitySolution{*p0, *p1};
}

/// Tridiagonal lift Psi_k^n of a compatibility solution:
///   above the diagonal   (j-1, j): (n+1-j) psi^k_{0,1}
///   on the diagonal      (j, j)  : (n-j) psi^k_{0,0} + j psi^k_{1,1}
///                                  - (n-1) [ (a_{k,0})_x + (a_{k,1})_y ]
///   below the diagonal   (j+1, j): (j+1) psi^k_{1,0}
/// It satisfies (a_{k,0} Phi^{n})_x + (a_{k,1} Phi^{n})_y = Phi^{n} Psi_k^n.
inline PolyMatrix psi_kn(const CompatibilitySolution& sol, const PolyMatrix& phi, int n, int k) {
  if (n < 1) throw ParameterError("psi_kn: order must be >= 1");
  if (k != 0 && k != 1) throw ParameterError("psi_kn: k must be 0 or 1");
  const PolyMatrix& pk = sol.psi(k);
  const BiPoly ak0 = phi.at(k, 0);
  const BiPoly ak1 = phi.at(k, 1);
  const BiPoly divk = ak0.partial(Axis::x) + ak1.partial(Axis::y);
  PolyMatrix r(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) {
    if (j >= 1) r.at(j - 1, j) = rat(n + 1 - j) * pk.at(0, 1);
    r.at(j, j) = rat(n - j) * pk.at(0, 0) + rat(j) * pk.at(1, 1) - rat(n - 1) * divk;
    if (j <= n - 1) r.at(j + 1, j) = rat(j + 1) * pk.at(1, 0);
  }
  return r;
}

}  // namespace biortho
