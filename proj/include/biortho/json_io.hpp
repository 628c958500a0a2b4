// JSON surfaces.
//
// Polynomials: {"terms": [[h, k, "p/q"], ...]} with terms in descending
// graded-lex order (leading term first). Coefficients are always exact
// fraction strings, never floats. Matrices carry explicit shape plus a
// row-major entry list. Families follow the documented format, so
// user-defined families load from a file with no code changes.

#pragma once

#include <nlohmann/json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "biortho/family.hpp"
#include "biortho/moments.hpp"
#include "biortho/report.hpp"

namespace biortho {

using json = nlohmann::json;

// --- polynomials -----------------------------------------------------------

inline json to_json(const BiPoly& p) {
  json terms = json::array();
  const auto& t = p.terms();
  for (auto it = t.rbegin(); it != t.rend(); ++it)
    terms.push_back(json::array({it->first.h, it->first.k, to_string(it->second)}));
  return json{{"terms", terms}};
}

inline BiPoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("polynomial JSON must be {\"terms\": [[h,k,\"p/q\"],...]}");
  BiPoly p;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 3) throw ParseError("malformed polynomial term");
    const int h = t[0].get<int>();
    const int k = t[1].get<int>();
    if (h < 0 || k < 0) throw ParseError("negative exponent in polynomial term");
    Rational c = t[2].is_string() ? parse_rational(t[2].get<std::string>())
                                  : rat(t[2].get<long>());
    p.add_term({h, k}, c);
  }
  return p;
}

// --- matrices ---------------------------------------------------------------

inline json to_json(const PolyMatrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) entries.push_back(to_json(m.at(i, j)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline PolyMatrix polymatrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("polynomial matrix JSON must carry rows, cols, entries");
  const int rows = j["rows"].get<int>(), cols = j["cols"].get<int>();
  if (rows <= 0 || cols <= 0 || static_cast<int>(j["entries"].size()) != rows * cols)
    throw ParseError("polynomial matrix entry count disagrees with shape");
  PolyMatrix m(rows, cols);
  int idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int jj = 0; jj < cols; ++jj) m.at(i, jj) = poly_from_json(j["entries"][idx++]);
  return m;
}

inline json to_json(const RatMatrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) entries.push_back(to_string(m.at(i, j)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

/// Parses a 2x2 polynomial (or scalar) matrix from a bare nested array,
/// the shape accepted on the command line: entries may be integers,
/// "p/q" strings, or polynomial objects.
inline PolyMatrix matrix_from_nested_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nested array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  PolyMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw ParseError("ragged matrix literal");
    for (int c = 0; c < cols; ++c) {
      const json& e = j[i][c];
      if (e.is_number_integer())
        m.at(i, c) = BiPoly(rat(e.get<long>()));
      else if (e.is_string())
        m.at(i, c) = BiPoly(parse_rational(e.get<std::string>()));
      else if (e.is_object())
        m.at(i, c) = poly_from_json(e);
      else
        throw ParseError("matrix entries must be integers, \"p/q\" strings, or polynomials");
    }
  }
  return m;
}

// --- weights and families ----------------------------------------------------

inline json to_json(const WeightCarrier& w) {
  json factors = json::array();
  for (const auto& f : w.factors())
    factors.push_back(json::array({to_json(f.base), to_string(f.exponent)}));
  return json{{"s", to_json(w.s())}, {"factors", factors}};
}

inline WeightCarrier weight_from_json(const json& j) {
  if (!j.is_object() || !j.contains("s") || !j.contains("factors"))
    throw ParseError("weight JSON must carry s and factors");
  BiPoly s = poly_from_json(j["s"]);
  std::vector<WeightFactor> factors;
  for (const auto& f : j["factors"]) {
    if (!f.is_array() || f.size() != 2) throw ParseError("malformed weight factor");
    Rational e = f[1].is_string() ? parse_rational(f[1].get<std::string>())
                                  : rat(f[1].get<long>());
    factors.push_back({poly_from_json(f[0]), e});
  }
  return WeightCarrier(s, factors);
}

inline json to_json(const FamilySpec& fam) {
  json j;
  j["name"] = fam.name;
  j["phi"] = to_json(fam.phi);
  j["psi"] = json::array({to_json(fam.psi.at(0, 0)), to_json(fam.psi.at(1, 0))});
  j["weight"] = fam.weight ? to_json(*fam.weight) : json(nullptr);
  json params = json::object();
  for (const auto& [k, v] : fam.params) params[k] = to_string(v);
  j["params"] = params;
  j["diagonal_reduction"] =
      fam.diagonal_reduction ? to_json(*fam.diagonal_reduction) : json(nullptr);
  return j;
}

inline FamilySpec family_from_json(const json& j) {
  FamilySpec fam;
  if (!j.is_object()) throw ParseError("family JSON must be an object");
  fam.name = j.value("name", std::string("unnamed"));
  if (!j.contains("phi") || !j.contains("psi")) throw ParseError("family needs phi and psi");
  fam.phi = polymatrix_from_json(j["phi"]);
  if (fam.phi.rows() != 2 || fam.phi.cols() != 2) throw ParseError("phi must be 2x2");
  if (!j["psi"].is_array() || j["psi"].size() != 2)
    throw ParseError("psi must be an array of two polynomials");
  fam.psi = PolyMatrix(2, 1);
  fam.psi.at(0, 0) = poly_from_json(j["psi"][0]);
  fam.psi.at(1, 0) = poly_from_json(j["psi"][1]);
  if (j.contains("weight") && !j["weight"].is_null())
    fam.weight = weight_from_json(j["weight"]);
  if (j.contains("params") && j["params"].is_object())
    for (const auto& [k, v] : j["params"].items())
      fam.params[k] = v.is_string() ? parse_rational(v.get<std::string>())
                                    : rat(v.get<long>());
  if (j.contains("diagonal_reduction") && !j["diagonal_reduction"].is_null())
    fam.diagonal_reduction =
        std::make_shared<FamilySpec>(family_from_json(j["diagonal_reduction"]));
  return fam;
}

// --- moments -----------------------------------------------------------------

inline json to_json(const MomentFunctional& u) {
  json moments = json::array();
  for (const auto& [m, v] : u.table())
    moments.push_back(json::array({m.h, m.k, to_string(v)}));
  return json{{"cap", u.cap()}, {"moments", moments}};
}

// --- reports -------------------------------------------------------------------

inline json to_json(const LambdaResult& l) {
  json j;
  switch (l.status) {
    case LambdaResult::Status::ok: j["status"] = "ok"; break;
    case LambdaResult::Status::unsolvable: j["status"] = "unsolvable"; break;
    case LambdaResult::Status::nonzero_residual: j["status"] = "nonzero-residual"; break;
  }
  if (l.status == LambdaResult::Status::ok) {
    j["lambda"] = to_json(l.lambda);
    j["nonsingular"] = l.nonsingular;
    j["scalar"] = l.scalar;
    j["diagonal"] = l.diagonal;
  }
  return j;
}

inline json to_json(const DegreeSection& s) {
  json j;
  j["n"] = s.n;
  j["source"] = s.q_source;
  j["built"] = s.built;
  if (!s.built) {
    j["build_error"] = s.build_error;
    j["pass"] = s.pass;
    return j;
  }
  json q = json::array();
  for (const auto& p : s.q) q.push_back(to_json(p));
  j["q"] = q;
  j["exact_degree"] = s.exact_degree;
  j["orthogonal"] = s.orthogonal;
  j["orthogonality_violation"] = to_string(s.orthogonality_violation);
  json table = json::array();
  for (const auto& v : s.orthogonality_table) table.push_back(to_string(v));
  j["orthogonality_table"] = table;
  j["H"] = to_json(s.h);
  j["H_nonsingular"] = s.h_nonsingular;
  j["H_diagonal"] = s.h_diagonal;
  j["lambda"] = to_json(s.lambda);
  j["ps"] = s.ps;
  if (s.kron_pairing) {
    j["kron_pairing_identity"] = s.kron_pairing->identity_ok;
    j["kron_moment_nonsingular"] = s.kron_pairing->phin_nonsingular;
  }
  if (s.distributional) j["distributional_identity"] = *s.distributional;
  if (s.monic_match) {
    j["monic_match"] = s.monic_match->computed && s.monic_match->exact;
    j["monic_change_of_basis_nonsingular"] = s.monic_match->nonsingular;
    if (s.monic_match->computed)
      j["monic_change_of_basis"] = to_json(s.monic_match->change_of_basis);
  }
  j["pass"] = s.pass;
  return j;
}

inline json to_json(const VerificationReport& r) {
  json j;
  j["family"] = r.family;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = to_string(v);
  j["params"] = params;
  j["structural_violations"] = r.structural_violations;
  j["form_requested"] = form_name(r.requested_form);
  j["form_used"] = form_name(r.form_used);
  j["weight_route"] = r.weight_route;
  j["cap"] = r.cap;
  if (r.symmetry_original.checked) {
    j["symmetry_factor"] = r.symmetry_original.pass;
    if (!r.symmetry_original.pass) j["symmetry_residuals"] = r.symmetry_original.residuals;
  }
  if (r.symmetry_diagonal && r.symmetry_diagonal->checked)
    j["symmetry_factor_diagonal"] = r.symmetry_diagonal->pass;
  if (r.symmetrizable) j["symmetrizable"] = *r.symmetrizable;
  j["compatibility_original"] = r.compat_original;
  if (r.compat_diagonal) j["compatibility_diagonal"] = *r.compat_diagonal;
  j["compatibility_used_form"] = r.compat_used_form;
  j["phi_moment_nonsingular"] = r.phi_moment_nonsingular;
  j["psi_independent_degree1"] = r.psi_independent_degree1;
  j["moments_ok"] = r.moments_ok;
  if (!r.moments_ok) j["moments_error"] = r.moments_error;
  json dets = json::array();
  for (const auto& d : r.quasi.determinants) dets.push_back(to_string(d));
  j["moment_matrix_determinants"] = dets;
  j["consistent_with_quasi_definite"] = r.quasi.all_nonsingular;
  json degrees = json::array();
  for (const auto& s : r.degrees) degrees.push_back(to_json(s));
  j["degrees"] = degrees;
  j["all_pass"] = r.all_pass;
  return j;
}

}  // namespace biortho
