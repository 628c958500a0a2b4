// Exact dense linear algebra over the rationals: rank, determinant, and
// linear solving by Gaussian elimination. No pivot thresholds exist;
// a pivot is a pivot iff it is a nonzero rational.

#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biortho/rational.hpp"

namespace biortho {

class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, Rational(0)) {
    if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
  }
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    if (rows_ == 0 || cols_ == 0) throw DimensionError("empty matrix literal");
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw DimensionError("ragged matrix literal");
      for (const auto& v : r) e_.push_back(v);
    }
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions disagree");
    RatMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l) {
        if (a.at(i, l) == 0) continue;
        for (int j = 0; j < b.cols_; ++j) {
          Rational t = a.at(i, l) * b.at(l, j);
          r.at(i, j) += t;
        }
      }
    return r;
  }
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix -: shape mismatch");
    RatMatrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  bool is_zero() const {
    for (const auto& v : e_)
      if (v != 0) return false;
    return true;
  }
  bool is_diagonal() const {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (i != j && at(i, j) != 0) return false;
    return true;
  }
  /// Scalar matrix: lambda * I.
  bool is_scalar() const {
    if (rows_ != cols_ || !is_diagonal()) return false;
    for (int i = 1; i < rows_; ++i)
      if (at(i, i) != at(0, 0)) return false;
    return true;
  }

  /// Largest absolute value of any entry; zero for the zero matrix.
  Rational max_abs() const {
    Rational m(0);
    for (const auto& v : e_) {
      Rational a = abs(v);
      if (a > m) m = a;
    }
    return m;
  }

 private:
  int rows_, cols_;
  std::vector<Rational> e_;
};

/// Reduced row echelon form in place. Returns the pivot column of each
/// pivot row, in order.
inline std::vector<int> rref(RatMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Rational inv = 1 / m.at(r, c);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rational f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) {
        Rational t = f * m.at(r, j);
        m.at(i, j) -= t;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

inline Rational determinant(RatMatrix m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
  const int n = m.rows();
  Rational det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return Rational(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    Rational inv = 1 / m.at(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m.at(i, c) == 0) continue;
      Rational f = m.at(i, c) * inv;
      for (int j = c; j < n; ++j) {
        Rational t = f * m.at(c, j);
        m.at(i, j) -= t;
      }
    }
  }
  return det;
}

/// Outcome of an exact linear solve of A x = b.
struct LinearSolution {
  bool consistent = false;
  std::vector<Rational> x;      // particular solution, free unknowns set to 0
  std::vector<int> free_cols;   // unknown indices not pinned by any pivot
  bool unique() const { return consistent && free_cols.empty(); }
};

/// Solves A x = b exactly. Free unknowns (if the system is
/// underdetermined) are reported and set to zero in the particular
/// solution, which makes the returned solution canonical.
inline LinearSolution solve(const RatMatrix& a, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != a.rows())
    throw DimensionError("solve: right-hand side length mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  LinearSolution sol;
  // A pivot in the augmented column means 0 = 1 somewhere: inconsistent.
  if (!pivots.empty() && pivots.back() == a.cols()) {
    sol.consistent = false;
    return sol;
  }
  sol.consistent = true;
  sol.x.assign(a.cols(), Rational(0));
  std::vector<bool> pivotal(a.cols(), false);
  for (size_t r = 0; r < pivots.size(); ++r) {
    pivotal[pivots[r]] = true;
    sol.x[pivots[r]] = aug.at(static_cast<int>(r), a.cols());
  }
  for (int c = 0; c < a.cols(); ++c)
    if (!pivotal[c]) sol.free_cols.push_back(c);
  return sol;
}

}  // namespace biortho
