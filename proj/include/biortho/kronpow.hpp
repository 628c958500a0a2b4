// Second-kind Kronecker powers of 2x2 matrices.
//
// For z = A t, each homogeneous product z1^{n-i} z2^i is a linear
// combination of the products t1^{n-j} t2^j; the (n+1)x(n+1) matrix of
// that action is the second-kind n-th Kronecker power A^{n}. Three
// independent construction routes are kept side by side and used as
// mutual oracles: the closed-form entry sum and two entrywise
// recurrences.

#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "biortho/polymatrix.hpp"

namespace biortho {

enum class KronVariant { recurrence_i, recurrence_ii };

namespace detail {
inline void require_2x2(const PolyMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2)
    throw DimensionError("second-kind Kronecker power needs a 2x2 matrix");
}
}  // namespace detail

/// Closed-form entry construction:
///   entry(i,j) = sum_k C(n-i,k) C(i,j-k) a00^{n-i-k} a01^k a10^{i-j+k} a11^{j-k}.
/// Summands whose binomial vanishes are exactly those that would need a
/// negative power of an entry, so k only ranges where all four exponents
/// are nonnegative and no negative power is ever formed.
inline PolyMatrix kron_power_explicit(const PolyMatrix& a, int n) {
  detail::require_2x2(a);
  if (n < 0) throw ParameterError("negative Kronecker power");
  PolyMatrix r(n + 1, n + 1);
  if (n == 0) {
    r.at(0, 0) = BiPoly::one();
    return r;
  }
  const BiPoly& a00 = a.at(0, 0);
  const BiPoly& a01 = a.at(0, 1);
  const BiPoly& a10 = a.at(1, 0);
  const BiPoly& a11 = a.at(1, 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      BiPoly sum;
      const int klo = std::max(0, j - i);
      const int khi = std::min(j, n - i);
      for (int k = klo; k <= khi; ++k) {
        Rational coef = binomial(n - i, k) * binomial(i, j - k);
        if (coef == 0) continue;
        BiPoly term = a00.pow(n - i - k) * a01.pow(k) * a10.pow(i - j + k) *
                      a11.pow(j - k);
        sum += term * coef;
      }
      r.at(i, j) = sum;
    }
  }
  return r;
}

/// Entrywise recurrence construction from A^{n-1}. Out-of-range indices
/// of the previous power read as zero.
inline PolyMatrix kron_power_recurrence(const PolyMatrix& a, int n, KronVariant v) {
  detail::require_2x2(a);
  if (n < 0) throw ParameterError("negative Kronecker power");
  PolyMatrix prev(1, 1);
  prev.at(0, 0) = BiPoly::one();
  const BiPoly& a00 = a.at(0, 0);
  const BiPoly& a01 = a.at(0, 1);
  const BiPoly& a10 = a.at(1, 0);
  const BiPoly& a11 = a.at(1, 1);
  auto p = [&prev](int i, int j) -> BiPoly {
    if (i < 0 || j < 0 || i >= prev.rows() || j >= prev.cols()) return BiPoly();
    return prev.at(i, j);
  };
  for (int m = 1; m <= n; ++m) {
    PolyMatrix cur(m + 1, m + 1);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j) {
        if (v == KronVariant::recurrence_i) {
          if (i <= m - 1)
            cur.at(i, j) = a00 * p(i, j) + a01 * p(i, j - 1);
          else
            cur.at(i, j) = a10 * p(m - 1, j) + a11 * p(m - 1, j - 1);
        } else {
          if (i == 0)
            cur.at(i, j) = a00 * p(0, j) + a01 * p(0, j - 1);
          else
            cur.at(i, j) = a10 * p(i - 1, j) + a11 * p(i - 1, j - 1);
        }
      }
    prev = cur;
  }
  return prev;
}

/// Default construction path (recurrence I).
inline PolyMatrix kron_power(const PolyMatrix& a, int n) {
  return kron_power_recurrence(a, n, KronVariant::recurrence_i);
}

/// Selector matrices: L^0 = [I_n | 0], L^1 = [0 | I_n], of shape
/// n x (n+1) with n = n_minus_1 + 1.
inline PolyMatrix selector(int n_minus_1, int k) {
  if (n_minus_1 < 0) throw ParameterError("selector: negative index");
  if (k != 0 && k != 1) throw ParameterError("selector: k must be 0 or 1");
  const int n = n_minus_1 + 1;
  PolyMatrix l(n, n + 1);
  for (int i = 0; i < n; ++i) l.at(i, i + k) = BiPoly::one();
  return l;
}

/// Per-call-site cache of the powers of one base matrix. Rodrigues
/// verification reuses Phi^{n} across degrees, so powers are built once,
/// incrementally, via the default recurrence.
class KronCache {
 public:
  explicit KronCache(PolyMatrix base) : base_(std::move(base)) {
    detail::require_2x2(base_);
    PolyMatrix unit(1, 1);
    unit.at(0, 0) = BiPoly::one();
    powers_.push_back(std::move(unit));
  }

  const PolyMatrix& power(int n) {
    if (n < 0) throw ParameterError("negative Kronecker power");
    const BiPoly& a00 = base_.at(0, 0);
    const BiPoly& a01 = base_.at(0, 1);
    const BiPoly& a10 = base_.at(1, 0);
    const BiPoly& a11 = base_.at(1, 1);
    while (static_cast<int>(powers_.size()) <= n) {
      const PolyMatrix& prev = powers_.back();
      const int m = prev.rows();  // building A^{m}
      auto p = [&prev](int i, int j) -> BiPoly {
        if (i < 0 || j < 0 || i >= prev.rows() || j >= prev.cols()) return BiPoly();
        return prev.at(i, j);
      };
      PolyMatrix cur(m + 1, m + 1);
      for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) {
          if (i <= m - 1)
            cur.at(i, j) = a00 * p(i, j) + a01 * p(i, j - 1);
          else
            cur.at(i, j) = a10 * p(m - 1, j) + a11 * p(m - 1, j - 1);
        }
      powers_.push_back(std::move(cur));
    }
    return powers_[static_cast<size_t>(n)];
  }

  const PolyMatrix& base() const { return base_; }

 private:
  PolyMatrix base_;
  std::vector<PolyMatrix> powers_;
};

}  // namespace biortho
