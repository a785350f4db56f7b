#pragma once

#include <vector>

#include "padicrama/real.hpp"

namespace padicrama {

/// c_0 + c_1 x + … + c_K x^K + O(x^{K+1}) with a uniform bound on the error of
/// every coefficient. Operations propagate the bound to first order and add
/// their own rounding.
class TruncatedSeries {
 public:
  TruncatedSeries(unsigned order, long bits);
  static TruncatedSeries constant(const Real& c, unsigned order);
  /// c0 + c1 x
  static TruncatedSeries linear(const Real& c0, const Real& c1, unsigned order);

  unsigned order() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  long precision() const { return coeffs_.front().precision(); }
  const Real& operator[](unsigned j) const { return coeffs_.at(j); }
  Real& operator[](unsigned j) { return coeffs_.at(j); }
  const std::vector<Real>& coefficients() const { return coeffs_; }

  const Real& error_bound() const { return error_; }
  void set_error_bound(const Real& bound) { error_ = bound.with_precision(64); }
  void widen_error(const Real& extra);

  /// max_j |c_j|
  Real max_abs() const;
  Real evaluate(const Real& x) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const Real& s);

  /// (this) · (c0 + c1 x), O(K).
  TruncatedSeries multiply_linear(const Real& c0, const Real& c1) const;
  /// (this) / (c0 + c1 x) by synthetic division, O(K); c0 != 0.
  TruncatedSeries divide_linear(const Real& c0, const Real& c1) const;
  /// 1 / (this); requires c_0 != 0.
  TruncatedSeries reciprocal() const;
  /// exp(this) = e^{c_0} · exp(this - c_0).
  TruncatedSeries exp() const;

 private:
  Real rounding_bound(const Real& magnitude) const;

  std::vector<Real> coeffs_;
  Real error_{64};
};

}  // namespace padicrama
