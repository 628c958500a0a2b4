// Full per-family verification: runs every check the construction
// promises and records exact outcomes. Two independent routes back every
// claim: the carrier construction against the moment table, and the
// weight-free distributional identity; their agreement is the trust
// argument of the whole tool.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biortho/rodrigues.hpp"

namespace biortho {

struct VerifyOptions {
  int max_degree = 8;
  int cap = 0;               // 0: derived as max(2*max_degree + 2, 12)
  Form form = Form::automatic;
  int kron_pairing_max = 6;          // Kronecker pairing identity checked for n <= this
  int distributional_max = 6;
  int monic_max = 6;         // monic-WOPS cross-validation for n <= this

  int effective_cap() const {
    return cap > 0 ? cap : std::max(2 * max_degree + 2, 12);
  }
};

struct DegreeSection {
  int n = 0;
  std::string q_source;  // "rodrigues" or "monic-moments"
  bool built = false;
  std::string build_error;
  std::vector<BiPoly> q;
  bool exact_degree = false;
  bool orthogonal = false;
  Rational orthogonality_violation{0};
  std::vector<Rational> orthogonality_table;  // max |<u, Q_n X_m^t>| per m < n
  RatMatrix h{1, 1};
  bool h_nonsingular = false;
  bool h_diagonal = false;
  LambdaResult lambda;
  bool ps = false;
  std::optional<KronPairingResult> kron_pairing;
  std::optional<bool> distributional;
  std::optional<BasisMatch> monic_match;
  bool pass = false;
};

struct VerificationReport {
  std::string family;
  std::map<std::string, Rational> params;
  std::vector<std::string> structural_violations;
  Form requested_form = Form::automatic;
  Form form_used = Form::original;
  bool weight_route = false;
  int cap = 0;

  SymmetryFactorReport symmetry_original;
  std::optional<SymmetryFactorReport> symmetry_diagonal;
  std::optional<bool> symmetrizable;  // disengaged when det Phi == 0
  bool compat_original = false;
  std::optional<bool> compat_diagonal;
  bool compat_used_form = false;
  bool phi_moment_nonsingular = false;
  bool psi_independent_degree1 = false;
  bool moments_ok = false;
  std::string moments_error;
  QuasiDefiniteReport quasi;
  std::vector<DegreeSection> degrees;
  bool all_pass = false;
};

namespace detail {

/// d and e of exact degree 1 with independent linear parts; reported,
/// never enforced.
inline bool psi_independent_degree1(const FamilySpec& fam) {
  auto dd = fam.d().degree();
  auto ed = fam.e().degree();
  if (!dd || *dd != 1 || !ed || *ed != 1) return false;
  RatMatrix lin{{fam.d().coeff(1, 0), fam.d().coeff(0, 1)},
                {fam.e().coeff(1, 0), fam.e().coeff(0, 1)}};
  return rank(lin) == 2;
}

inline void run_common_checks(DegreeSection& sec, const FamilySpec& fam,
                              const MomentFunctional& u, const RodriguesVector& q) {
  sec.q = q.entries;
  sec.built = true;
  sec.exact_degree = q.exact_degree_dichotomy();
  sec.orthogonal = true;
  for (int m = 0; m < q.n; ++m) {
    Rational v = pair_with_monomial_row(u, q, m).max_abs();
    sec.orthogonality_table.push_back(v);
    if (v != 0) {
      sec.orthogonal = false;
      if (v > sec.orthogonality_violation) sec.orthogonality_violation = v;
    }
  }
  GramResult g = gram(u, q);
  sec.h = g.h;
  sec.h_nonsingular = g.nonsingular;
  sec.h_diagonal = g.diagonal;
  sec.ps = ps_check(q);
  sec.lambda = solve_lambda(fam, q);
}

}  // namespace detail

inline VerificationReport run_verification(const FamilySpec& fam, const VerifyOptions& opt) {
  VerificationReport rep;
  rep.family = fam.name;
  rep.params = fam.params;
  rep.requested_form = opt.form;
  rep.cap = opt.effective_cap();
  rep.structural_violations = fam.structural_violations();
  if (fam.diagonal_reduction)
    for (const auto& v : fam.diagonal_reduction->structural_violations())
      rep.structural_violations.push_back("diagonal reduction: " + v);

  rep.symmetry_original = verify_symmetry_factor(fam);
  if (fam.diagonal_reduction)
    rep.symmetry_diagonal = verify_symmetry_factor(*fam.diagonal_reduction);
  try {
    rep.symmetrizable = check_symmetrizable(fam);
  } catch (const DegenerateDeterminantError&) {
    rep.symmetrizable = std::nullopt;
  }
  rep.compat_original = solve_compatibility(fam.phi).has_value();
  if (fam.diagonal_reduction)
    rep.compat_diagonal = solve_compatibility(fam.diagonal_reduction->phi).has_value();
  rep.psi_independent_degree1 = detail::psi_independent_degree1(fam);

  ResolvedForm form = resolve_form(fam, opt.form);
  rep.form_used = form.which;
  rep.compat_used_form = form.compat_solvable;
  rep.weight_route = form.weight.has_value();

  std::optional<MomentFunctional> u;
  try {
    u = moments_from_pearson(fam, rep.cap);
    rep.moments_ok = true;
  } catch (const Error& e) {
    rep.moments_error = e.what();
    rep.all_pass = false;
    return rep;
  }
  rep.phi_moment_nonsingular = determinant(u->pair(fam.phi)) != 0;
  rep.quasi = quasi_definite_check(*u, std::min(opt.max_degree, rep.cap / 2));

  KronCache cache(form.phi);
  for (int n = 0; n <= opt.max_degree; ++n) {
    DegreeSection sec;
    sec.n = n;
    if (rep.weight_route) {
      sec.q_source = "rodrigues";
      try {
        RodriguesVector q = build_Q(form, n, &cache);
        detail::run_common_checks(sec, fam, *u, q);
        if (n <= opt.kron_pairing_max) sec.kron_pairing = kron_pairing_check(*u, cache.power(n), q);
        if (n <= opt.distributional_max)
          sec.distributional = distributional_identity_check(*u, cache.power(n), q, n + 1);
        if (n <= opt.monic_max) sec.monic_match = match_monic_basis(*u, q);
      } catch (const NotDivisibleError& e) {
        sec.built = false;
        sec.build_error = e.what();
      }
    } else {
      // Moment route: the polynomial system is the monic WOPS computed
      // directly from the moment table; the Rodrigues-specific identities
      // do not apply to it.
      sec.q_source = "monic-moments";
      auto wops = monic_wops(*u, n);
      if (!wops) {
        sec.built = false;
        sec.build_error = "graded moment matrix singular: no monic WOPS";
      } else {
        RodriguesVector q;
        q.n = n;
        q.entries = *wops;
        detail::run_common_checks(sec, fam, *u, q);
      }
    }
    sec.pass = sec.built && sec.exact_degree && sec.orthogonal && sec.ps &&
               sec.h_nonsingular && sec.lambda.status == LambdaResult::Status::ok &&
               (n == 0 || sec.lambda.nonsingular) &&
               (!sec.kron_pairing || sec.kron_pairing->identity_ok) &&
               (!sec.distributional || *sec.distributional) &&
               (!sec.monic_match ||
                (sec.monic_match->computed && sec.monic_match->exact &&
                 sec.monic_match->nonsingular));
    rep.degrees.push_back(std::move(sec));
  }

  bool pass = rep.structural_violations.empty() && rep.moments_ok && rep.phi_moment_nonsingular &&
              rep.quasi.all_nonsingular;
  if (rep.symmetry_original.checked) pass = pass && rep.symmetry_original.pass;
  if (rep.symmetry_diagonal && rep.symmetry_diagonal->checked)
    pass = pass && rep.symmetry_diagonal->pass;
  if (rep.symmetrizable) pass = pass && *rep.symmetrizable;
  for (const auto& sec : rep.degrees) pass = pass && sec.pass;
  rep.all_pass = pass;
  return rep;
}

}  // namespace biortho
