// Moment functionals: tables mu_{h,k} = <u, x^h y^k> complete up to a
// degree cap, produced either by solving the matrix Pearson equation
// degree by degree or by closed-form providers (disk, simplex, tensor
// products of one-variable families). The closed forms exist purely as
// independent oracles for the recurrence engine.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biortho/diffcalc.hpp"
#include "biortho/family.hpp"
#include "biortho/linalg.hpp"

namespace biortho {

class PearsonInconsistentError : public Error {
 public:
  PearsonInconsistentError(int degree, const std::string& what)
      : Error(what), degree(degree) {}
  int degree;
};

class PearsonUnderdeterminedError : public Error {
 public:
  PearsonUnderdeterminedError(int degree, std::vector<Monomial> free_moments,
                              const std::string& what)
      : Error(what), degree(degree), free_moments(std::move(free_moments)) {}
  int degree;
  std::vector<Monomial> free_moments;
};

class MomentFunctional {
 public:
  MomentFunctional(int cap, std::string provenance)
      : cap_(cap), provenance_(std::move(provenance)) {
    set(0, 0, Rational(1));  // normalization mu_00 = 1
  }

  int cap() const { return cap_; }
  const std::string& provenance() const { return provenance_; }

  void set(int h, int k, const Rational& v) { table_[{h, k}] = v; }

  const Rational& moment(int h, int k) const {
    if (h + k > cap_)
      throw MomentCapError("moment of degree " + std::to_string(h + k) +
                           " beyond cap " + std::to_string(cap_));
    auto it = table_.find({h, k});
    if (it == table_.end())
      throw Error("moment table incomplete at (" + std::to_string(h) + "," +
                  std::to_string(k) + ")");
    return it->second;
  }

  /// <u, p>, exact; throws MomentCapError past the cap.
  Rational pair(const BiPoly& p) const {
    Rational acc(0);
    for (const auto& [m, c] : p.terms()) {
      Rational t = c * moment(m.h, m.k);
      acc += t;
    }
    return acc;
  }

  /// Entrywise <u, A>.
  RatMatrix pair(const PolyMatrix& a) const {
    RatMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) r.at(i, j) = pair(a.at(i, j));
    return r;
  }

  const std::map<Monomial, Rational, GrlexLess>& table() const { return table_; }

 private:
  int cap_;
  std::string provenance_;
  std::map<Monomial, Rational, GrlexLess> table_;
};

// ---------------------------------------------------------------------------
// Pearson recurrence engine.
// ---------------------------------------------------------------------------

/// Builds the moment table of the family's functional from the matrix
/// Pearson equation div(Phi u) = Psi^t u: pairing it with a monomial m
/// yields the two exact relations
///   <u, a m_x + b m_y + d m> = 0,   <u, b m_x + c m_y + e m> = 0,
/// which are solved degree by degree starting from mu_00 = 1. This route
/// needs no weight function at all.
inline MomentFunctional moments_from_pearson(const FamilySpec& fam, int cap) {
  MomentFunctional u(cap, "pearson-recurrence");
  for (int t = 1; t <= cap; ++t) {
    // Unknowns: the t+1 moments of total degree t, in x-power-descending
    // order; relations come from the t monomials of degree t-1.
    auto unknown_index = [t](const Monomial& m) -> std::optional<int> {
      if (m.degree() != t) return std::nullopt;
      return m.k;
    };
    RatMatrix a(2 * t, t + 1);
    std::vector<Rational> rhs(2 * t, Rational(0));
    int eq = 0;
    for (int i = 0; i < t; ++i) {  // m = x^{t-1-i} y^i
      const BiPoly m = BiPoly::monomial(t - 1 - i, i, rat(1));
      const BiPoly mx = m.partial(Axis::x);
      const BiPoly my = m.partial(Axis::y);
      const BiPoly rel[2] = {fam.a() * mx + fam.b() * my + fam.d() * m,
                             fam.b() * mx + fam.c() * my + fam.e() * m};
      for (const BiPoly& r : rel) {
        for (const auto& [mono, coef] : r.terms()) {
          if (mono.degree() > t)
            throw ParameterError(fam.name +
                                 ": coefficient degrees exceed the Pearson bounds "
                                 "(deg phi <= 2, deg psi <= 1)");
          if (auto col = unknown_index(mono)) {
            a.at(eq, *col) += coef;
          } else {
            Rational known = coef * u.moment(mono.h, mono.k);
            rhs[eq] -= known;
          }
        }
        ++eq;
      }
    }
    LinearSolution sol = solve(a, rhs);
    if (!sol.consistent)
      throw PearsonInconsistentError(
          t, fam.name + ": Pearson relations conflict at degree " + std::to_string(t));
    if (!sol.free_cols.empty()) {
      std::vector<Monomial> free;
      for (int c : sol.free_cols) free.push_back({t - c, c});
      std::string names;
      for (const auto& m : free)
        names += " mu_{" + std::to_string(m.h) + "," + std::to_string(m.k) + "}";
      throw PearsonUnderdeterminedError(
          t, free,
          fam.name + ": Pearson relations leave degree " + std::to_string(t) +
              " moments free:" + names);
    }
    for (int k = 0; k <= t; ++k) u.set(t - k, k, sol.x[k]);
  }
  return u;
}

// ---------------------------------------------------------------------------
// Closed-form providers (oracles).
// ---------------------------------------------------------------------------

/// Unit-disk weight (1-x^2-y^2)^{mu-1/2}, normalized. Odd moments vanish;
///   mu_{2p,2q} = (2p-1)!! (2q-1)!! / ( 2^{p+q} prod_{j=1}^{p+q} (mu + j + 1/2) ).
inline MomentFunctional ball_moments(const Rational& mu, int cap) {
  MomentFunctional u(cap, "closed-form");
  auto double_factorial = [](int n) {  // (2p-1)!! with (-1)!! = 1
    Rational r(1);
    for (int v = n; v >= 1; v -= 2) r *= v;
    return r;
  };
  for (int h = 0; h <= cap; ++h)
    for (int k = 0; h + k <= cap; ++k) {
      if (h % 2 || k % 2) {
        u.set(h, k, Rational(0));
        continue;
      }
      const int p = h / 2, q = k / 2;
      Rational num = double_factorial(2 * p - 1) * double_factorial(2 * q - 1);
      Rational den(1);
      for (int j = 1; j <= p + q; ++j) {
        Rational f = mu + rat(2 * j + 1, 2);
        if (f == 0)
          throw ParameterError("ball moments undefined: mu + " +
                               to_string(rat(2 * j + 1, 2)) + " vanishes");
        den *= f * 2;
      }
      Rational v = num / den;
      u.set(h, k, v);
    }
  return u;
}

/// Simplex weight x^alpha y^beta (1-x-y)^gamma, normalized:
///   mu_{h,k} = prod_i (alpha+i) prod_j (beta+j) / prod_l (alpha+beta+gamma+2+l).
inline MomentFunctional simplex_moments(const Rational& alpha, const Rational& beta,
                                        const Rational& gamma, int cap) {
  MomentFunctional u(cap, "closed-form");
  const Rational sigma = alpha + beta + gamma;
  for (int h = 0; h <= cap; ++h)
    for (int k = 0; h + k <= cap; ++k) {
      Rational v(1);
      for (int i = 1; i <= h; ++i) v *= alpha + i;
      for (int j = 1; j <= k; ++j) v *= beta + j;
      for (int l = 1; l <= h + k; ++l) {
        Rational f = sigma + 2 + l;
        if (f == 0) throw ParameterError("simplex moments undefined: normalization vanishes");
        v /= f;
      }
      u.set(h, k, v);
    }
  return u;
}

/// One-variable Pearson data (phi w)' = psi w, written in x.
struct Factor1D {
  std::string name;
  BiPoly phi;  // degree <= 2 in x
  BiPoly psi;  // degree <= 1 in x
  BiPoly s;    // polynomial exponential part of the weight, if any
  std::vector<WeightFactor> factors;
  bool has_weight = true;  // false: Pearson data only (e.g. Bessel)
};

/// Moments of a one-variable functional from its Pearson relation
///   (j phi_2 + psi_1) mu_{j+1} + (j phi_1 + psi_0) mu_j + j phi_0 mu_{j-1} = 0.
inline std::vector<Rational> moments_1d(const Factor1D& f, int cap) {
  const Rational phi2 = f.phi.coeff(2, 0), phi1 = f.phi.coeff(1, 0), phi0 = f.phi.coeff(0, 0);
  const Rational psi1 = f.psi.coeff(1, 0), psi0 = f.psi.coeff(0, 0);
  std::vector<Rational> mu(static_cast<size_t>(cap) + 1, Rational(0));
  mu[0] = 1;
  for (int j = 0; j < cap; ++j) {
    Rational lead = rat(j) * phi2 + psi1;
    if (lead == 0)
      throw ParameterError(f.name + ": one-variable Pearson recurrence degenerates at j=" +
                           std::to_string(j));
    Rational acc = (rat(j) * phi1 + psi0) * mu[j];
    if (j >= 1) acc += rat(j) * phi0 * mu[j - 1];
    mu[j + 1] = -acc / lead;
  }
  return mu;
}

/// Product table mu_{h,k} = mu^(1)_h mu^(2)_k of two one-variable factors.
inline MomentFunctional tensor_moments(const Factor1D& fx, const Factor1D& fy, int cap) {
  std::vector<Rational> mx = moments_1d(fx, cap);
  std::vector<Rational> my = moments_1d(fy, cap);
  MomentFunctional u(cap, "closed-form");
  for (int h = 0; h <= cap; ++h)
    for (int k = 0; h + k <= cap; ++k) {
      Rational v = mx[h] * my[k];
      u.set(h, k, v);
    }
  return u;
}

// ---------------------------------------------------------------------------
// Distributional duality at the moment level.
// ---------------------------------------------------------------------------

/// <div^{n}(blocks . u), p> = (-1)^n sum_i <u, blocks_i^t D_i^n p>,
/// where blocks_i is the i-th h x k block multiplying u. The result is
/// k x h. This is the weight-free route used against the carrier route.
inline RatMatrix divn_dual_pair(const MomentFunctional& u,
                                const std::vector<PolyMatrix>& blocks, const BiPoly& p) {
  if (blocks.empty()) throw ShapeError("divn_dual_pair: no blocks");
  const int n = static_cast<int>(blocks.size()) - 1;
  RatMatrix acc(blocks[0].cols(), blocks[0].rows());
  for (int i = 0; i <= n; ++i) {
    BiPoly dp = apply_D(i, n, p);
    RatMatrix term = u.pair(dp * blocks[i].transpose());
    for (int r = 0; r < acc.rows(); ++r)
      for (int c = 0; c < acc.cols(); ++c) acc.at(r, c) += term.at(r, c);
  }
  if (n % 2) {
    for (int r = 0; r < acc.rows(); ++r)
      for (int c = 0; c < acc.cols(); ++c) acc.at(r, c) = -acc.at(r, c);
  }
  return acc;
}

/// <nabla^{n} u, (p_0; ...; p_n)> = (-1)^n sum_i <u, D_i^n p_i>.
inline Rational nabla_dual_pair(const MomentFunctional& u, const std::vector<BiPoly>& ps) {
  if (ps.empty()) throw ShapeError("nabla_dual_pair: no blocks");
  const int n = static_cast<int>(ps.size()) - 1;
  Rational acc(0);
  for (int i = 0; i <= n; ++i) {
    Rational t = u.pair(apply_D(i, n, ps[i]));
    acc += t;
  }
  if (n % 2) acc = -acc;
  return acc;
}

// ---------------------------------------------------------------------------
// Quasi-definiteness (operational form).
// ---------------------------------------------------------------------------

/// Nonsingularity of the full graded moment matrices
/// M_n = <u, Xbar_n Xbar_n^t>, Xbar_n = all monomials of degree <= n.
/// All determinants nonzero is reported as consistent with
/// quasi-definiteness; it is the operational stand-in for dim V_n = n+1.
struct QuasiDefiniteReport {
  int max_degree = -1;
  std::vector<Rational> determinants;  // det M_0 .. det M_N
  bool all_nonsingular = true;
  std::optional<int> first_singular;
};

inline RatMatrix graded_moment_matrix(const MomentFunctional& u, int n) {
  std::vector<Monomial> basis = monomial_basis(n);
  const int dim = static_cast<int>(basis.size());
  RatMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      m.at(i, j) = u.moment(basis[i].h + basis[j].h, basis[i].k + basis[j].k);
  return m;
}

inline QuasiDefiniteReport quasi_definite_check(const MomentFunctional& u, int n_max) {
  if (2 * n_max > u.cap())
    throw MomentCapError("quasi_definite_check needs cap >= 2N");
  QuasiDefiniteReport rep;
  rep.max_degree = n_max;
  for (int n = 0; n <= n_max; ++n) {
    Rational det = determinant(graded_moment_matrix(u, n));
    if (det == 0 && rep.all_nonsingular) {
      rep.all_nonsingular = false;
      rep.first_singular = n;
    }
    rep.determinants.push_back(det);
  }
  return rep;
}

}  // namespace biortho
