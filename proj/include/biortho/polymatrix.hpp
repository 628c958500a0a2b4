// Rectangular matrices of bivariate polynomials.

#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "biortho/bipoly.hpp"

namespace biortho {

class PolyMatrix {
 public:
  PolyMatrix() : rows_(0), cols_(0) {}
  PolyMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
  }
  PolyMatrix(std::initializer_list<std::initializer_list<BiPoly>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    if (rows_ == 0 || cols_ == 0) throw DimensionError("empty matrix literal");
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw DimensionError("ragged matrix literal");
      for (const auto& p : r) e_.push_back(p);
    }
  }

  static PolyMatrix identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = BiPoly::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  BiPoly& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const BiPoly& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  /// Matrix degree: max entry degree, empty for an all-zero matrix.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& p : e_) {
      auto pd = p.degree();
      if (pd && (!d || *pd > *d)) d = pd;
    }
    return d;
  }

  bool is_zero() const {
    for (const auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  PolyMatrix row(int i) const {
    PolyMatrix r(1, cols_);
    for (int j = 0; j < cols_; ++j) r.at(0, j) = at(i, j);
    return r;
  }

  PolyMatrix partial(Axis axis, int order = 1) const {
    PolyMatrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].partial(axis, order);
    return r;
  }

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    a.require_same_shape(b, "+");
    PolyMatrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    a.require_same_shape(b, "-");
    PolyMatrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("matrix product: inner dimensions disagree");
    PolyMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l) {
        if (a.at(i, l).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) {
          if (b.at(l, j).is_zero()) continue;
          r.at(i, j) += a.at(i, l) * b.at(l, j);
        }
      }
    return r;
  }
  friend PolyMatrix operator*(const BiPoly& p, const PolyMatrix& a) {
    PolyMatrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = p * a.e_[i];
    return r;
  }
  friend PolyMatrix operator*(const Rational& c, const PolyMatrix& a) {
    PolyMatrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] * c;
    return r;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  void require_same_shape(const PolyMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError(std::string("matrix ") + op + ": shape mismatch");
  }

  int rows_, cols_;
  std::vector<BiPoly> e_;
};

/// Column vector (x^m, x^{m-1}y, ..., y^m)^t of dimension m+1.
inline PolyMatrix monomial_vector(int m) {
  if (m < 0) throw ParameterError("monomial_vector: negative degree");
  PolyMatrix v(m + 1, 1);
  for (int i = 0; i <= m; ++i) v.at(i, 0) = BiPoly::monomial(m - i, i, rat(1));
  return v;
}

/// The transposed row (x^m, ..., y^m).
inline PolyMatrix monomial_row(int m) { return monomial_vector(m).transpose(); }

}  // namespace biortho
