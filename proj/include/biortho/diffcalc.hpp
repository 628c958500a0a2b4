// Higher-order gradient and divergence operators on polynomial matrices,
// and the carrier calculus that makes "polynomial times omega divided by
// factor powers" an exactly differentiable value.
//
// A weight omega = exp(s) * prod f_i^{e_i} is never evaluated; only its
// logarithmic derivatives enter. Quantities of the form
// (numerator / prod f_i^{k_i}) * omega are closed under d/dx and d/dy,
// which is what turns the Rodrigues construction into exact polynomial
// arithmetic followed by one exact division.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "biortho/polymatrix.hpp"

namespace biortho {

// ---------------------------------------------------------------------------
// Operator calculus on polynomial matrices.
// ---------------------------------------------------------------------------

/// D_i^n = C(n,i) dx^{n-i} dy^i applied entrywise.
inline BiPoly apply_D(int i, int n, const BiPoly& p) {
  if (i < 0 || i > n) throw IndexError("apply_D: index out of range");
  BiPoly r = p.partial(Axis::y, i).partial(Axis::x, n - i);
  return r * binomial(n, i);
}

inline PolyMatrix apply_D(int i, int n, const PolyMatrix& a) {
  if (i < 0 || i > n) throw IndexError("apply_D: index out of range");
  PolyMatrix r = a.partial(Axis::y, i).partial(Axis::x, n - i);
  Rational c = binomial(n, i);
  return c * r;
}

/// nabla^{n} A: the (n+1) blocks D_i^n A stacked vertically.
inline PolyMatrix nabla_n(const PolyMatrix& a, int n) {
  if (n < 0) throw ParameterError("nabla_n: negative order");
  if (n == 0) return a;
  PolyMatrix stack((n + 1) * a.rows(), a.cols());
  for (int i = 0; i <= n; ++i) {
    PolyMatrix block = apply_D(i, n, a);
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) stack.at(i * a.rows() + r, c) = block.at(r, c);
  }
  return stack;
}

/// div^{n} (B_0; ...; B_n) = sum_i D_i^n B_i.
inline PolyMatrix div_n(const std::vector<PolyMatrix>& blocks) {
  if (blocks.empty()) throw ShapeError("div_n: no blocks");
  const int n = static_cast<int>(blocks.size()) - 1;
  PolyMatrix sum(blocks[0].rows(), blocks[0].cols());
  for (int i = 0; i <= n; ++i) {
    if (blocks[i].rows() != sum.rows() || blocks[i].cols() != sum.cols())
      throw ShapeError("div_n: block shapes disagree");
    sum = sum + apply_D(i, n, blocks[i]);
  }
  return sum;
}

/// div^{n} on a vertically stacked matrix of n+1 equal blocks.
inline PolyMatrix div_n(const PolyMatrix& stacked, int n) {
  if (n < 0) throw ParameterError("div_n: negative order");
  if (stacked.rows() % (n + 1) != 0)
    throw ShapeError("div_n: row count is not a multiple of n+1");
  const int h = stacked.rows() / (n + 1);
  std::vector<PolyMatrix> blocks;
  blocks.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    PolyMatrix b(h, stacked.cols());
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < stacked.cols(); ++c) b.at(r, c) = stacked.at(i * h + r, c);
    blocks.push_back(std::move(b));
  }
  return div_n(blocks);
}

// ---------------------------------------------------------------------------
// Factored weights and the carrier calculus.
// ---------------------------------------------------------------------------

struct WeightFactor {
  BiPoly base;        // non-constant polynomial f_i
  Rational exponent;  // e_i, rational; enters only as a multiplier
};

/// omega = exp(s) * prod f_i^{e_i}, held in factored form.
class WeightCarrier {
 public:
  WeightCarrier() = default;
  WeightCarrier(BiPoly s, std::vector<WeightFactor> factors)
      : s_(std::move(s)), factors_(std::move(factors)) {
    for (size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].base.is_constant())
        throw ParameterError("weight factor must be non-constant");
      for (size_t j = i + 1; j < factors_.size(); ++j)
        if (factors_[i].base == factors_[j].base)
          throw ParameterError("weight factors must be pairwise distinct");
    }
  }

  const BiPoly& s() const { return s_; }
  const std::vector<WeightFactor>& factors() const { return factors_; }
  size_t factor_count() const { return factors_.size(); }

 private:
  BiPoly s_;
  std::vector<WeightFactor> factors_;
};

/// (numerator / prod f_i^{k_i}) * omega. The exponent vector always has
/// one slot per carrier factor. A zero numerator is normalized to the
/// all-zero exponent vector so denominators never inflate through zeros.
struct CarrierTerm {
  BiPoly numerator;
  std::vector<int> denom_exponents;

  static CarrierTerm of_polynomial(const BiPoly& p, const WeightCarrier& w) {
    return CarrierTerm{p, std::vector<int>(w.factor_count(), 0)};
  }
  static CarrierTerm zero(const WeightCarrier& w) {
    return of_polynomial(BiPoly(), w);
  }
  bool is_zero() const { return numerator.is_zero(); }

  void normalize() {
    if (numerator.is_zero())
      denom_exponents.assign(denom_exponents.size(), 0);
  }
};

namespace detail {
inline void require_carrier_shape(const CarrierTerm& t, const WeightCarrier& w) {
  if (t.denom_exponents.size() != w.factor_count())
    throw ShapeError("carrier term does not match the carrier's factor list");
}
}  // namespace detail

/// Rescales t onto the componentwise larger denominator target by
/// multiplying the numerator with the missing factor powers. No
/// cancellation is attempted; quotients are taken once, at the end.
inline BiPoly carrier_numerator_at(const CarrierTerm& t, const WeightCarrier& w,
                                   const std::vector<int>& target) {
  BiPoly num = t.numerator;
  for (size_t i = 0; i < target.size(); ++i) {
    const int raise = target[i] - t.denom_exponents[i];
    if (raise < 0) throw ShapeError("carrier rescale: target exponent too small");
    for (int r = 0; r < raise; ++r) num = num * w.factors()[i].base;
  }
  return num;
}

inline CarrierTerm carrier_add(const CarrierTerm& a, const CarrierTerm& b,
                               const WeightCarrier& w) {
  detail::require_carrier_shape(a, w);
  detail::require_carrier_shape(b, w);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<int> target(a.denom_exponents.size());
  for (size_t i = 0; i < target.size(); ++i)
    target[i] = std::max(a.denom_exponents[i], b.denom_exponents[i]);
  CarrierTerm r{carrier_numerator_at(a, w, target) + carrier_numerator_at(b, w, target),
                std::move(target)};
  r.normalize();
  return r;
}

inline CarrierTerm carrier_scale(const CarrierTerm& t, const BiPoly& p) {
  CarrierTerm r{t.numerator * p, t.denom_exponents};
  r.normalize();
  return r;
}

/// Exact d/daxis of (num / prod f_i^{k_i}) * omega:
///   (num_x + num s_x) stays over the same denominator, and each factor
///   contributes (e_i - k_i) (f_i)_x num over one extra power of f_i.
/// Factors whose derivative vanishes never raise their exponent, so the
/// growth is at most one per factor per derivative.
inline CarrierTerm carrier_derivative(const CarrierTerm& t, const WeightCarrier& w,
                                      Axis axis) {
  detail::require_carrier_shape(t, w);
  if (t.is_zero()) return t;
  CarrierTerm acc{t.numerator.partial(axis) + t.numerator * w.s().partial(axis),
                  t.denom_exponents};
  acc.normalize();
  for (size_t i = 0; i < w.factor_count(); ++i) {
    Rational mult = w.factors()[i].exponent - t.denom_exponents[i];
    if (mult == 0) continue;
    BiPoly fd = w.factors()[i].base.partial(axis);
    if (fd.is_zero()) continue;
    CarrierTerm piece{t.numerator * fd * mult, t.denom_exponents};
    piece.denom_exponents[i] += 1;
    piece.normalize();
    acc = carrier_add(acc, piece, w);
  }
  return acc;
}

inline CarrierTerm carrier_derivative(const CarrierTerm& t, const WeightCarrier& w,
                                      Axis axis, int order) {
  CarrierTerm r = t;
  for (int i = 0; i < order; ++i) r = carrier_derivative(r, w, axis);
  return r;
}

/// Recovers the polynomial q with t = q * omega by exact division of the
/// numerator by the accumulated denominator. A NotDivisibleError here
/// means the factored weight data does not satisfy the construction's
/// hypotheses.
inline BiPoly carrier_extract_polynomial(const CarrierTerm& t, const WeightCarrier& w,
                                         const std::string& context = "") {
  detail::require_carrier_shape(t, w);
  BiPoly q = t.numerator;
  for (size_t i = 0; i < w.factor_count(); ++i)
    for (int r = 0; r < t.denom_exponents[i]; ++r)
      q = exact_divide(q, w.factors()[i].base, context);
  return q;
}

inline bool carrier_equal(const CarrierTerm& a, const CarrierTerm& b,
                          const WeightCarrier& w) {
  CarrierTerm d = carrier_add(a, carrier_scale(b, BiPoly(-1)), w);
  return d.is_zero();
}

/// Matrix of carrier terms, all over the same weight.
class CarrierMatrix {
 public:
  CarrierMatrix(int rows, int cols, const WeightCarrier& w)
      : rows_(rows), cols_(cols),
        e_(static_cast<size_t>(rows) * cols, CarrierTerm::zero(w)) {
    if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
  }

  static CarrierMatrix of_polynomials(const PolyMatrix& a, const WeightCarrier& w) {
    CarrierMatrix m(a.rows(), a.cols(), w);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        m.at(i, j) = CarrierTerm::of_polynomial(a.at(i, j), w);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  CarrierTerm& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const CarrierTerm& at(int i, int j) const {
    return e_[static_cast<size_t>(i) * cols_ + j];
  }

 private:
  int rows_, cols_;
  std::vector<CarrierTerm> e_;
};

inline CarrierMatrix carrier_apply_D(int i, int n, const CarrierMatrix& a,
                                     const WeightCarrier& w) {
  if (i < 0 || i > n) throw IndexError("carrier_apply_D: index out of range");
  CarrierMatrix r = a;
  const Rational coef = binomial(n, i);
  for (int row = 0; row < a.rows(); ++row)
    for (int col = 0; col < a.cols(); ++col) {
      CarrierTerm t = carrier_derivative(a.at(row, col), w, Axis::y, i);
      t = carrier_derivative(t, w, Axis::x, n - i);
      r.at(row, col) = carrier_scale(t, BiPoly(coef));
    }
  return r;
}

/// div^{n} over carrier blocks: sum_i D_i^n B_i in carrier arithmetic.
inline CarrierMatrix carrier_div_n(const std::vector<CarrierMatrix>& blocks,
                                   const WeightCarrier& w) {
  if (blocks.empty()) throw ShapeError("carrier_div_n: no blocks");
  const int n = static_cast<int>(blocks.size()) - 1;
  CarrierMatrix sum(blocks[0].rows(), blocks[0].cols(), w);
  for (int i = 0; i <= n; ++i) {
    if (blocks[i].rows() != sum.rows() || blocks[i].cols() != sum.cols())
      throw ShapeError("carrier_div_n: block shapes disagree");
    CarrierMatrix di = carrier_apply_D(i, n, blocks[i], w);
    for (int r = 0; r < sum.rows(); ++r)
      for (int c = 0; c < sum.cols(); ++c)
        sum.at(r, c) = carrier_add(sum.at(r, c), di.at(r, c), w);
  }
  return sum;
}

}  // namespace biortho
