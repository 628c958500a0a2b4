// Built-in family catalog.
//
// Six entries: the Krall-Sheffer family with a non-positive-definite
// functional (symmetry factor exp(y^3 - xy), which is not a weight), the
// unit-ball and simplex families (each with a diagonal reduction of the
// same functional), and three tensor products of one-variable classical
// families. Entries are instantiated programmatically from exact rational
// parameters and round-trip through the documented family JSON format.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "biortho/family.hpp"
#include "biortho/moments.hpp"

namespace biortho {

enum class LambdaShape { scalar, diagonal };

struct ParamSpec {
  std::string name;     // also the CLI flag name
  std::string domain;   // documented admissible range (rationals only)
  Rational def;
};

struct CatalogInfo {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  bool expect_compat_original = false;
  std::optional<bool> expect_compat_diagonal;
  bool expect_symmetrizable = true;
  LambdaShape expect_lambda_shape = LambdaShape::scalar;
  bool weight_route = true;
};

// ---------------------------------------------------------------------------
// One-variable factors for tensor products.
// ---------------------------------------------------------------------------

inline Factor1D hermite_factor() {
  Factor1D f;
  f.name = "hermite";
  f.phi = BiPoly::one();
  f.psi = -2 * BiPoly::x();
  f.s = -1 * BiPoly::x() * BiPoly::x();
  return f;
}

inline Factor1D laguerre_factor(const Rational& alpha) {
  if (alpha <= -1) throw ParameterError("laguerre: alpha must be > -1");
  Factor1D f;
  f.name = "laguerre";
  f.phi = BiPoly::x();
  f.psi = BiPoly(alpha + 1) - BiPoly::x();
  f.s = -1 * BiPoly::x();
  if (alpha != 0) f.factors.push_back({BiPoly::x(), alpha});
  return f;
}

inline Factor1D jacobi_factor(const Rational& alpha, const Rational& beta) {
  if (alpha <= -1 || beta <= -1) throw ParameterError("jacobi: parameters must be > -1");
  Factor1D f;
  f.name = "jacobi";
  f.phi = BiPoly::one() - BiPoly::x() * BiPoly::x();
  f.psi = BiPoly(beta - alpha) - BiPoly(alpha + beta + 2) * BiPoly::x();
  if (alpha != 0) f.factors.push_back({BiPoly::one() - BiPoly::x(), alpha});
  if (beta != 0) f.factors.push_back({BiPoly::one() + BiPoly::x(), beta});
  return f;
}

/// Bessel weight x^alpha e^{-2/x} has no polynomial exponential part, so
/// the factor carries Pearson data only; Rodrigues stays moment-route.
inline Factor1D bessel_factor(const Rational& alpha) {
  Factor1D f;
  f.name = "bessel";
  f.phi = BiPoly::x() * BiPoly::x();
  f.psi = BiPoly(alpha + 2) * BiPoly::x() + BiPoly(2);
  f.has_weight = false;
  return f;
}

// ---------------------------------------------------------------------------
// Family builders.
// ---------------------------------------------------------------------------

inline FamilySpec make_intriguing() {
  FamilySpec fam;
  fam.name = "krall-sheffer-intriguing";
  fam.phi = PolyMatrix{{3 * BiPoly::y(), BiPoly::one()}, {BiPoly::one(), BiPoly::zero()}};
  fam.psi = PolyMatrix(2, 1);
  fam.psi.at(0, 0) = -1 * BiPoly::x();
  fam.psi.at(1, 0) = -1 * BiPoly::y();
  BiPoly s = BiPoly::y().pow(3) - BiPoly::x() * BiPoly::y();
  fam.weight = WeightCarrier(s, {});
  return fam;
}

inline FamilySpec make_ball(const Rational& mu) {
  if (mu <= rat(-1, 2)) throw ParameterError("ball: mu must be > -1/2");
  const BiPoly x = BiPoly::x(), y = BiPoly::y();
  const BiPoly circle = BiPoly::one() - x * x - y * y;  // 1 - x^2 - y^2
  FamilySpec fam;
  fam.name = "ball";
  fam.params["mu"] = mu;
  fam.phi = PolyMatrix{{x * x - BiPoly::one(), x * y}, {x * y, y * y - BiPoly::one()}};
  fam.psi = PolyMatrix(2, 1);
  fam.psi.at(0, 0) = BiPoly(2 * mu + 2) * x;
  fam.psi.at(1, 0) = BiPoly(2 * mu + 2) * y;
  Rational expo = mu - rat(1, 2);
  std::vector<WeightFactor> factors;
  if (expo != 0) factors.push_back({circle, expo});
  fam.weight = WeightCarrier(BiPoly::zero(), factors);

  auto diag = std::make_shared<FamilySpec>();
  diag->name = "ball (diagonal form)";
  diag->params = fam.params;
  diag->phi = PolyMatrix{{circle, BiPoly::zero()}, {BiPoly::zero(), circle}};
  diag->psi = PolyMatrix(2, 1);
  diag->psi.at(0, 0) = BiPoly(-(2 * mu + 1)) * x;
  diag->psi.at(1, 0) = BiPoly(-(2 * mu + 1)) * y;
  diag->weight = fam.weight;
  fam.diagonal_reduction = diag;
  return fam;
}

inline FamilySpec make_simplex(const Rational& alpha, const Rational& beta,
                               const Rational& gamma) {
  if (alpha <= -1 || beta <= -1 || gamma <= -1)
    throw ParameterError("simplex: parameters must be > -1");
  const BiPoly x = BiPoly::x(), y = BiPoly::y();
  const BiPoly one = BiPoly::one();
  const BiPoly edge = one - x - y;  // 1 - x - y
  const Rational sigma = alpha + beta + gamma + 3;
  FamilySpec fam;
  fam.name = "simplex";
  fam.params["alpha"] = alpha;
  fam.params["beta"] = beta;
  fam.params["gamma"] = gamma;
  fam.phi = PolyMatrix{{x * x - x, x * y}, {x * y, y * y - y}};
  fam.psi = PolyMatrix(2, 1);
  fam.psi.at(0, 0) = BiPoly(sigma) * x - BiPoly(alpha + 1);
  fam.psi.at(1, 0) = BiPoly(sigma) * y - BiPoly(beta + 1);
  std::vector<WeightFactor> factors;
  if (alpha != 0) factors.push_back({x, alpha});
  if (beta != 0) factors.push_back({y, beta});
  if (gamma != 0) factors.push_back({edge, gamma});
  fam.weight = WeightCarrier(BiPoly::zero(), factors);

  auto diag = std::make_shared<FamilySpec>();
  diag->name = "simplex (diagonal form)";
  diag->params = fam.params;
  diag->phi = PolyMatrix{{x * edge, BiPoly::zero()}, {BiPoly::zero(), y * edge}};
  // psi' = tilde(psi)' + (div phi')^t with tilde(psi)' read off the
  // diagonal Pearson equation: (alpha(1-x-y) - gamma x, beta(1-x-y) - gamma y).
  PolyMatrix tilde(2, 1);
  tilde.at(0, 0) = BiPoly(alpha) * edge - BiPoly(gamma) * x;
  tilde.at(1, 0) = BiPoly(beta) * edge - BiPoly(gamma) * y;
  diag->psi = PolyMatrix(2, 1);
  diag->psi.at(0, 0) = tilde.at(0, 0) + (diag->phi.at(0, 0)).partial(Axis::x) +
                       (diag->phi.at(0, 1)).partial(Axis::y);
  diag->psi.at(1, 0) = tilde.at(1, 0) + (diag->phi.at(1, 0)).partial(Axis::x) +
                       (diag->phi.at(1, 1)).partial(Axis::y);
  diag->weight = fam.weight;
  fam.diagonal_reduction = diag;
  return fam;
}

/// Tensor product: Phi = diag(phi_1(x), phi_2(y)), Psi = (psi_1(x); psi_2(y)),
/// omega = omega_1(x) omega_2(y). The second factor's data is written in x
/// and swapped into y here.
inline FamilySpec make_tensor(const std::string& name, const Factor1D& fx,
                              const Factor1D& fy_in_x) {
  FamilySpec fam;
  fam.name = name;
  const BiPoly phi2 = fy_in_x.phi.swap_xy();
  const BiPoly psi2 = fy_in_x.psi.swap_xy();
  fam.phi = PolyMatrix{{fx.phi, BiPoly::zero()}, {BiPoly::zero(), phi2}};
  fam.psi = PolyMatrix(2, 1);
  fam.psi.at(0, 0) = fx.psi;
  fam.psi.at(1, 0) = psi2;
  if (fx.has_weight && fy_in_x.has_weight) {
    std::vector<WeightFactor> factors = fx.factors;
    for (const auto& f : fy_in_x.factors) factors.push_back({f.base.swap_xy(), f.exponent});
    fam.weight = WeightCarrier(fx.s + fy_in_x.s.swap_xy(), factors);
  }
  return fam;
}

// ---------------------------------------------------------------------------
// Catalog index and loader.
// ---------------------------------------------------------------------------

inline const std::vector<CatalogInfo>& catalog_list() {
  static const std::vector<CatalogInfo> entries = {
      {"krall-sheffer-intriguing",
       "Krall-Sheffer operator 3y p_xx + 2 p_xy - x p_x - y p_y with symmetry factor "
       "exp(y^3 - xy); the functional is not positive definite and the symmetry factor "
       "is not a weight",
       {},
       true, std::nullopt, true, LambdaShape::scalar, true},
      {"ball",
       "orthogonal polynomials on the unit disk, weight (1-x^2-y^2)^(mu-1/2)",
       {{"mu", "mu > -1/2", rat(1, 2)}},
       false, true, true, LambdaShape::scalar, true},
      {"simplex",
       "orthogonal polynomials on the triangle, weight x^alpha y^beta (1-x-y)^gamma",
       {{"alpha", "alpha > -1", rat(0)}, {"beta", "beta > -1", rat(0)},
        {"gamma", "gamma > -1", rat(0)}},
       true, true, true, LambdaShape::scalar, true},
      {"tensor-hermite-hermite",
       "Hermite x Hermite tensor product, weight exp(-x^2-y^2)",
       {},
       true, std::nullopt, true, LambdaShape::scalar, true},
      {"tensor-laguerre-jacobi",
       "Laguerre(alpha) x Jacobi(beta, gamma) tensor product, weight "
       "x^alpha e^-x (1-y)^beta (1+y)^gamma",
       {{"alpha", "alpha > -1", rat(0)}, {"beta", "beta > -1", rat(0)},
        {"gamma", "gamma > -1", rat(0)}},
       true, std::nullopt, true, LambdaShape::diagonal, true},
      {"tensor-bessel-bessel",
       "Bessel(alpha) x Bessel(beta) tensor product; Pearson data only, the weight "
       "x^a e^(-2/x) has no polynomial logarithm so the Rodrigues route is disabled",
       {{"alpha", "rational", rat(0)}, {"beta", "rational", rat(0)}},
       true, std::nullopt, true, LambdaShape::diagonal, false},
  };
  return entries;
}

inline const CatalogInfo& catalog_info(const std::string& name) {
  for (const auto& e : catalog_list())
    if (e.name == name) return e;
  throw UnknownFamilyError("unknown family '" + name + "'");
}

/// Instantiates a catalog entry. Unknown parameters are rejected; missing
/// ones take their documented defaults.
inline FamilySpec catalog_load(const std::string& name,
                               const std::map<std::string, Rational>& params = {}) {
  const CatalogInfo& info = catalog_info(name);
  for (const auto& [k, v] : params) {
    bool known = false;
    for (const auto& p : info.params) known = known || p.name == k;
    if (!known)
      throw ParameterError("family '" + name + "' has no parameter '" + k + "'");
  }
  auto get = [&](const std::string& key) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    for (const auto& p : info.params)
      if (p.name == key) return p.def;
    throw ParameterError("missing parameter " + key);
  };
  if (name == "krall-sheffer-intriguing") return make_intriguing();
  if (name == "ball") return make_ball(get("mu"));
  if (name == "simplex") return make_simplex(get("alpha"), get("beta"), get("gamma"));
  if (name == "tensor-hermite-hermite")
    return make_tensor(name, hermite_factor(), hermite_factor());
  if (name == "tensor-laguerre-jacobi") {
    FamilySpec fam = make_tensor(name, laguerre_factor(get("alpha")),
                                 jacobi_factor(get("beta"), get("gamma")));
    fam.params = {{"alpha", get("alpha")}, {"beta", get("beta")}, {"gamma", get("gamma")}};
    return fam;
  }
  if (name == "tensor-bessel-bessel") {
    FamilySpec fam = make_tensor(name, bessel_factor(get("alpha")),
                                 bessel_factor(get("beta")));
    fam.params = {{"alpha", get("alpha")}, {"beta", get("beta")}};
    return fam;
  }
  throw UnknownFamilyError("unknown family '" + name + "'");
}

/// The two one-variable factors of a tensor entry, for oracle use.
inline std::pair<Factor1D, Factor1D> catalog_tensor_factors(
    const std::string& name, const std::map<std::string, Rational>& params = {}) {
  FamilySpec probe = catalog_load(name, params);  // validates name and params
  if (name == "tensor-hermite-hermite") return {hermite_factor(), hermite_factor()};
  auto get = [&](const std::string& key) { return probe.params.at(key); };
  if (name == "tensor-laguerre-jacobi")
    return {laguerre_factor(get("alpha")), jacobi_factor(get("beta"), get("gamma"))};
  if (name == "tensor-bessel-bessel")
    return {bessel_factor(get("alpha")), bessel_factor(get("beta"))};
  throw UnknownFamilyError("'" + name + "' is not a tensor entry");
}

}  // namespace biortho
