// LaTeX pretty-printing for polynomials and generated Q lists.

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "biortho/rodrigues.hpp"

namespace biortho {

inline std::string latex(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c > 0 ? c : Rational(-c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const bool has_vars = m.h > 0 || m.k > 0;
    auto coeff_tex = [](const Rational& v) {
      if (v.get_den() == 1) return to_string(v);
      return "\\frac{" + v.get_num().get_str() + "}{" + v.get_den().get_str() + "}";
    };
    if (!has_vars) {
      os << coeff_tex(a);
    } else {
      if (a != 1) os << coeff_tex(a);
      if (m.h > 0) {
        os << "x";
        if (m.h > 1) os << "^{" << m.h << "}";
      }
      if (m.k > 0) {
        os << "y";
        if (m.k > 1) os << "^{" << m.k << "}";
      }
    }
  }
  return os.str();
}

/// Q lists as an eqnarray*, one row per degree:
///   \mathbb{Q}_n^t &=& \left( ..., ... \right)
inline std::string latex_q_table(const std::vector<RodriguesVector>& qs) {
  std::ostringstream os;
  os << "\\begin{eqnarray*}\n";
  for (size_t r = 0; r < qs.size(); ++r) {
    os << "\\mathbb{Q}_" << qs[r].n << "^t &=& \\left(";
    for (size_t i = 0; i < qs[r].entries.size(); ++i) {
      if (i) os << ", ";
      os << latex(qs[r].entries[i]);
    }
    os << "\\right)" << (r + 1 < qs.size() ? ", \\\\" : ".") << "\n";
  }
  os << "\\end{eqnarray*}\n";
  return os.str();
}

}  // namespace biortho
