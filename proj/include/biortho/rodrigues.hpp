// The matrix Rodrigues construction
//
//   Q_n^t = (1/omega) div^{n} (Phi^{n} omega)
//
// realized in carrier arithmetic, together with the full verification
// suite: orthogonality against monomial vectors, Gram matrices H_n,
// eigen-matrices Lambda_n of the second-order operator, PS independence,
// the Kronecker-power pairing identity, the weight-free distributional
// route, and cross-validation against the monic WOPS computed directly
// from moments.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biortho/family.hpp"
#include "biortho/kronpow.hpp"
#include "biortho/moments.hpp"

namespace biortho {

class WeightRouteError : public Error {
 public:
  explicit WeightRouteError(const std::string& what) : Error(what) {}
};

enum class Form { automatic, original, diagonal };

inline std::string form_name(Form f) {
  switch (f) {
    case Form::original: return "original";
    case Form::diagonal: return "diagonal";
    default: return "auto";
  }
}

/// The (phi, psi, weight) triple actually used for construction, after
/// form selection. When the original Phi fails the compatibility condition but a diagonal
/// reduction exists, automatic selection falls back to it; that fallback
/// is recorded, not hidden.
struct ResolvedForm {
  PolyMatrix phi{2, 2};
  PolyMatrix psi{2, 1};
  std::optional<WeightCarrier> weight;
  Form which = Form::original;
  bool compat_solvable = false;
};

inline ResolvedForm resolve_form(const FamilySpec& fam, Form requested) {
  auto make = [](const PolyMatrix& phi, const PolyMatrix& psi,
                 const std::optional<WeightCarrier>& w, Form which) {
    ResolvedForm r;
    r.phi = phi;
    r.psi = psi;
    r.weight = w;
    r.which = which;
    r.compat_solvable = solve_compatibility(phi).has_value();
    return r;
  };
  switch (requested) {
    case Form::original:
      return make(fam.phi, fam.psi, fam.weight, Form::original);
    case Form::diagonal: {
      if (!fam.diagonal_reduction) {
        if (fam.phi_diagonal()) return make(fam.phi, fam.psi, fam.weight, Form::diagonal);
        throw ParameterError(fam.name + ": no diagonal form available");
      }
      const FamilySpec& d = *fam.diagonal_reduction;
      return make(d.phi, d.psi, d.weight, Form::diagonal);
    }
    case Form::automatic:
    default: {
      // Prefer a diagonal form whenever one is available: there the
      // construction is guaranteed to give a WOPS, and for the ball it is
      // the only form whose the compatibility condition is solvable. The fallback is recorded.
      if (fam.diagonal_reduction) {
        const FamilySpec& d = *fam.diagonal_reduction;
        if (d.weight || !fam.weight) return make(d.phi, d.psi, d.weight, Form::diagonal);
      }
      return make(fam.phi, fam.psi, fam.weight, Form::original);
    }
  }
}

/// Q_n plus the division certificate: the raw carrier numerators and
/// denominator exponent vectors from which exact division succeeded.
struct RodriguesVector {
  int n = 0;
  std::vector<BiPoly> entries;           // Q_{n,0}, Q_{n-1,1}, ..., Q_{0,n}
  std::vector<CarrierTerm> certificates;

  const BiPoly& entry(int i) const { return entries[static_cast<size_t>(i)]; }

  /// Every entry has exact total degree n or is identically zero.
  bool exact_degree_dichotomy() const {
    for (const auto& q : entries) {
      auto d = q.degree();
      if (d && *d != n) return false;
    }
    return true;
  }

  /// Entries as an (n+1) x 1 column.
  PolyMatrix column() const {
    PolyMatrix c(n + 1, 1);
    for (int i = 0; i <= n; ++i) c.at(i, 0) = entries[static_cast<size_t>(i)];
    return c;
  }
};

/// General construction through the second-kind Kronecker power.
inline RodriguesVector build_Q(const ResolvedForm& form, int n, KronCache* cache = nullptr) {
  if (n < 0) throw ParameterError("build_Q: negative degree");
  if (!form.weight)
    throw WeightRouteError("weight route disabled: family carries Pearson data only");
  const WeightCarrier& w = *form.weight;
  const PolyMatrix phin = cache ? cache->power(n) : kron_power(form.phi, n);
  std::vector<CarrierMatrix> blocks;
  blocks.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    blocks.push_back(CarrierMatrix::of_polynomials(phin.row(i), w));
  CarrierMatrix divided = carrier_div_n(blocks, w);  // 1 x (n+1)
  RodriguesVector q;
  q.n = n;
  for (int j = 0; j <= n; ++j) {
    const CarrierTerm& cert = divided.at(0, j);
    q.certificates.push_back(cert);
    q.entries.push_back(carrier_extract_polynomial(
        cert, w, "Q_" + std::to_string(n) + " entry " + std::to_string(j)));
  }
  return q;
}

/// Diagonal specialization, avoiding Kronecker matrices entirely:
///   Q_{n-i,i} = (1/omega) C(n,i) dx^{n-i} dy^i (a^{n-i} c^i omega).
/// Must agree with build_Q whenever Phi is diagonal; the two paths serve
/// as mutual oracles.
inline RodriguesVector build_Q_diagonal(const ResolvedForm& form, int n) {
  if (n < 0) throw ParameterError("build_Q_diagonal: negative degree");
  if (!form.phi.at(0, 1).is_zero() || !form.phi.at(1, 0).is_zero())
    throw ParameterError("build_Q_diagonal: Phi is not diagonal");
  if (!form.weight)
    throw WeightRouteError("weight route disabled: family carries Pearson data only");
  const WeightCarrier& w = *form.weight;
  const BiPoly& a = form.phi.at(0, 0);
  const BiPoly& c = form.phi.at(1, 1);
  RodriguesVector q;
  q.n = n;
  for (int i = 0; i <= n; ++i) {
    CarrierTerm t = CarrierTerm::of_polynomial(a.pow(n - i) * c.pow(i), w);
    t = carrier_derivative(t, w, Axis::y, i);
    t = carrier_derivative(t, w, Axis::x, n - i);
    t = carrier_scale(t, BiPoly(binomial(n, i)));
    q.certificates.push_back(t);
    q.entries.push_back(carrier_extract_polynomial(
        t, w, "diagonal Q_" + std::to_string(n) + " entry " + std::to_string(i)));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Verification primitives.
// ---------------------------------------------------------------------------

/// <u, Q_n X_m^t>, an (n+1) x (m+1) rational matrix.
inline RatMatrix pair_with_monomial_row(const MomentFunctional& u, const RodriguesVector& q,
                                        int m) {
  return u.pair(q.column() * monomial_row(m));
}

struct OrthogonalityResult {
  bool pass = true;
  Rational max_violation{0};  // largest |entry| over all m < n
};

/// Theorem-level orthogonality: <u, Q_n X_m^t> = 0 exactly for m < n.
inline OrthogonalityResult verify_orthogonality(const MomentFunctional& u,
                                                const RodriguesVector& q) {
  OrthogonalityResult r;
  for (int m = 0; m < q.n; ++m) {
    Rational v = pair_with_monomial_row(u, q, m).max_abs();
    if (v != 0) {
      r.pass = false;
      if (v > r.max_violation) r.max_violation = v;
    }
  }
  return r;
}

struct GramResult {
  RatMatrix h{1, 1};
  bool nonsingular = false;
  bool diagonal = false;  // diagonal H_n distinguishes an OPS from a WOPS
};

inline GramResult gram(const MomentFunctional& u, const RodriguesVector& q) {
  GramResult g;
  g.h = u.pair(q.column() * q.column().transpose());
  g.nonsingular = determinant(g.h) != 0;
  g.diagonal = g.h.is_diagonal();
  return g;
}

/// Independence modulo P_{n-1}: the matrix of degree-n leading
/// coefficients (columns ordered x^n, x^{n-1}y, ..., y^n) has full rank.
inline bool ps_check(const RodriguesVector& q) {
  const int n = q.n;
  RatMatrix lead(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) lead.at(i, j) = q.entry(i).coeff(n - j, j);
  return rank(lead) == n + 1;
}

struct LambdaResult {
  enum class Status { ok, unsolvable, nonzero_residual };
  Status status = Status::unsolvable;
  RatMatrix lambda{1, 1};
  bool nonsingular = false;
  bool scalar = false;
  bool diagonal = false;
};

/// Solves L[Q_n^t] = Q_n^t Lambda_n by exact coefficient matching over
/// the full monomial basis of P_n (all degrees up to n, not only the
/// leading ones), so status ok certifies the functional equation with
/// an exactly zero residual. The operator is always the family's
/// original one, whatever form built Q.
inline LambdaResult solve_lambda(const FamilySpec& fam, const RodriguesVector& q) {
  LambdaResult res;
  if (!ps_check(q)) {
    res.status = LambdaResult::Status::unsolvable;
    return res;
  }
  const int n = q.n;
  const std::vector<Monomial> basis = monomial_basis(n);
  const int dim = static_cast<int>(basis.size());
  RatMatrix b(dim, n + 1);
  for (int r = 0; r < dim; ++r)
    for (int i = 0; i <= n; ++i) b.at(r, i) = q.entry(i).coeff(basis[r].h, basis[r].k);
  res.lambda = RatMatrix(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) {
    BiPoly lq = apply_L(fam, q.entry(j));
    if (auto d = lq.degree(); d && *d > n) {
      res.status = LambdaResult::Status::nonzero_residual;
      return res;
    }
    std::vector<Rational> rhs(dim, Rational(0));
    for (int r = 0; r < dim; ++r) rhs[r] = lq.coeff(basis[r].h, basis[r].k);
    LinearSolution sol = solve(b, rhs);
    if (!sol.consistent) {
      res.status = LambdaResult::Status::nonzero_residual;
      return res;
    }
    for (int i = 0; i <= n; ++i) res.lambda.at(i, j) = sol.x[i];
    // Reconstruct and compare exactly; the residual must vanish.
    BiPoly recon;
    for (int i = 0; i <= n; ++i) recon += q.entry(i) * res.lambda.at(i, j);
    if (!(recon == lq)) {
      res.status = LambdaResult::Status::nonzero_residual;
      return res;
    }
  }
  res.status = LambdaResult::Status::ok;
  res.nonsingular = determinant(res.lambda) != 0;
  res.scalar = res.lambda.is_scalar();
  res.diagonal = res.lambda.is_diagonal();
  return res;
}

struct KronPairingResult {
  bool identity_ok = false;       // <u, Q_n X_n^t> = (-1)^n n! <u, (Phi^{n})^t>
  bool phin_nonsingular = false;  // det <u, Phi^{n}> != 0
};

inline KronPairingResult kron_pairing_check(const MomentFunctional& u, const PolyMatrix& phin,
                             const RodriguesVector& q) {
  KronPairingResult r;
  RatMatrix lhs = pair_with_monomial_row(u, q, q.n);
  RatMatrix rhs = u.pair(phin.transpose());
  Rational scale = factorial(q.n);
  if (q.n % 2) scale = -scale;
  for (int i = 0; i < rhs.rows(); ++i)
    for (int j = 0; j < rhs.cols(); ++j) rhs.at(i, j) *= scale;
  r.identity_ok = lhs == rhs;
  r.phin_nonsingular = determinant(u.pair(phin)) != 0;
  return r;
}

/// Weight-free route: Q_n^t u = div^{n}(Phi^{n} u), tested against every
/// monomial of total degree <= m_max through distributional duality.
/// This is the route that must agree with the carrier construction even
/// when the symmetry factor is not a weight function.
inline bool distributional_identity_check(const MomentFunctional& u, const PolyMatrix& phin,
                                          const RodriguesVector& q, int m_max) {
  std::vector<PolyMatrix> blocks;
  blocks.reserve(static_cast<size_t>(q.n) + 1);
  for (int i = 0; i <= q.n; ++i) blocks.push_back(phin.row(i));
  const PolyMatrix qcol = q.column();
  for (int m = 0; m <= m_max; ++m) {
    for (int i = 0; i <= m; ++i) {
      const BiPoly p = BiPoly::monomial(m - i, i, rat(1));
      RatMatrix lhs = u.pair(p * qcol);
      RatMatrix rhs = divn_dual_pair(u, blocks, p);
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Monic WOPS from moments (independent cross-validation).
// ---------------------------------------------------------------------------

/// The unique monic WOPS entry with leading monomial x^{n-i} y^i,
/// obtained by solving <u, P m> = 0 for all deg m <= n-1 against the
/// graded moment matrix. Disengaged when that matrix is singular.
inline std::optional<BiPoly> monic_orthogonal_polynomial(const MomentFunctional& u, int n,
                                                         int i) {
  BiPoly lead = BiPoly::monomial(n - i, i, rat(1));
  if (n == 0) return lead;
  const std::vector<Monomial> lower = monomial_basis(n - 1);
  const int dim = static_cast<int>(lower.size());
  RatMatrix g(dim, dim);
  std::vector<Rational> rhs(dim, Rational(0));
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c)
      g.at(r, c) = u.moment(lower[r].h + lower[c].h, lower[r].k + lower[c].k);
    Rational v = u.moment(lower[r].h + n - i, lower[r].k + i);
    rhs[r] = -v;
  }
  LinearSolution sol = solve(g, rhs);
  if (!sol.consistent || !sol.free_cols.empty()) return std::nullopt;
  BiPoly p = lead;
  for (int c = 0; c < dim; ++c)
    if (sol.x[c] != 0) p.add_term(lower[c], sol.x[c]);
  return p;
}

inline std::optional<std::vector<BiPoly>> monic_wops(const MomentFunctional& u, int n) {
  std::vector<BiPoly> ps;
  for (int i = 0; i <= n; ++i) {
    auto p = monic_orthogonal_polynomial(u, n, i);
    if (!p) return std::nullopt;
    ps.push_back(std::move(*p));
  }
  return ps;
}

struct BasisMatch {
  bool computed = false;
  bool exact = false;        // Q_j = sum_i M_{j,i} P_{n-i,i} holds exactly
  bool nonsingular = false;  // the change of basis is invertible
  RatMatrix change_of_basis{1, 1};
};

/// Change of basis from the monic WOPS to Q_n. Because the monic system
/// has unit leading coefficients, the matrix is read off the degree-n
/// part of Q and the match is then verified as an exact polynomial
/// identity, which cross-validates the whole Rodrigues pipeline.
inline BasisMatch match_monic_basis(const MomentFunctional& u, const RodriguesVector& q) {
  BasisMatch bm;
  auto wops = monic_wops(u, q.n);
  if (!wops) return bm;
  bm.computed = true;
  const int n = q.n;
  bm.change_of_basis = RatMatrix(n + 1, n + 1);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) bm.change_of_basis.at(j, i) = q.entry(j).coeff(n - i, i);
  bm.exact = true;
  for (int j = 0; j <= n; ++j) {
    BiPoly recon;
    for (int i = 0; i <= n; ++i)
      recon += (*wops)[static_cast<size_t>(i)] * bm.change_of_basis.at(j, i);
    if (!(recon == q.entry(j))) {
      bm.exact = false;
      break;
    }
  }
  bm.nonsingular = determinant(bm.change_of_basis) != 0;
  return bm;
}

}  // namespace biortho
