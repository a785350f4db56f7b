#include "padicrama/truncated_series.hpp"

#include <algorithm>

#include "padicrama/error.hpp"

namespace padicrama {

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order()) {
    throw Error(ErrorCode::InvalidArgument, "truncated series of different orders");
  }
}

Real bound(long v) { return Real(v, 64); }

}  // namespace

TruncatedSeries::TruncatedSeries(unsigned order, long bits)
    : coeffs_(order + 1, Real(bits)) {}

TruncatedSeries TruncatedSeries::constant(const Real& c, unsigned order) {
  TruncatedSeries s(order, c.precision());
  s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::linear(const Real& c0, const Real& c1, unsigned order) {
  TruncatedSeries s(order, std::max(c0.precision(), c1.precision()));
  s.coeffs_[0] = c0;
  if (order >= 1) s.coeffs_[1] = c1;
  return s;
}

void TruncatedSeries::widen_error(const Real& extra) {
  error_ = error_ + abs(extra).with_precision(64);
}

Real TruncatedSeries::max_abs() const {
  Real m(64);
  for (const auto& c : coeffs_) m = max(m, abs(c).with_precision(64));
  return m;
}

Real TruncatedSeries::evaluate(const Real& x) const {
  Real acc(std::max(precision(), x.precision()));
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Real TruncatedSeries::rounding_bound(const Real& magnitude) const {
  return magnitude * bound(static_cast<long>(order() + 1)) * Real::exp2(-precision() + 2, 64);
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_same_order(*this, o);
  for (unsigned j = 0; j <= order(); ++j) coeffs_[j] += o.coeffs_[j];
  error_ = error_ + o.error_ + rounding_bound(max_abs());
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_same_order(*this, o);
  for (unsigned j = 0; j <= order(); ++j) coeffs_[j] -= o.coeffs_[j];
  error_ = error_ + o.error_ + rounding_bound(max_abs());
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  const unsigned K = a.order();
  TruncatedSeries r(K, std::max(a.precision(), b.precision()));
  for (unsigned k = 0; k <= K; ++k) {
    Real acc(r.precision());
    for (unsigned i = 0; i <= k; ++i) acc += a.coeffs_[i] * b.coeffs_[k - i];
    r.coeffs_[k] = acc;
  }
  const Real ma = a.max_abs(), mb = b.max_abs();
  const Real n = bound(static_cast<long>(K + 1));
  r.error_ = n * (ma * b.error_ + mb * a.error_ + a.error_ * b.error_) + r.rounding_bound(n * ma * mb);
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const Real& s) {
  TruncatedSeries r = a;
  for (auto& c : r.coeffs_) c *= s;
  const Real as = abs(s).with_precision(64);
  r.error_ = a.error_ * as + r.rounding_bound(r.max_abs());
  return r;
}

TruncatedSeries TruncatedSeries::multiply_linear(const Real& c0, const Real& c1) const {
  TruncatedSeries r(order(), precision());
  for (unsigned j = 0; j <= order(); ++j) {
    r.coeffs_[j] = coeffs_[j] * c0;
    if (j > 0) r.coeffs_[j] += coeffs_[j - 1] * c1;
  }
  const Real scale = (abs(c0) + abs(c1)).with_precision(64);
  r.error_ = error_ * scale + r.rounding_bound(max_abs() * scale);
  return r;
}

TruncatedSeries TruncatedSeries::divide_linear(const Real& c0, const Real& c1) const {
  if (c0.is_zero()) throw Error(ErrorCode::InversionOfZero, "divide_linear by series with zero constant term");
  TruncatedSeries r(order(), precision());
  const Real inv = Real(1, precision()) / c0;
  for (unsigned j = 0; j <= order(); ++j) {
    Real v = coeffs_[j];
    if (j > 0) v -= c1 * r.coeffs_[j - 1];
    r.coeffs_[j] = v * inv;
  }
  // Each output coefficient is Σ_i c_i (-c1)^{j-i} / c0^{j-i+1}.
  const Real q = abs(c1 / c0).with_precision(64);
  Real growth = bound(0);
  Real qi = bound(1);
  for (unsigned i = 0; i <= order(); ++i) {
    growth += qi;
    qi *= q;
  }
  growth = growth * abs(inv).with_precision(64);
  r.error_ = error_ * growth + r.rounding_bound(max_abs() * growth);
  return r;
}

TruncatedSeries TruncatedSeries::reciprocal() const {
  if (coeffs_[0].is_zero()) throw Error(ErrorCode::InversionOfZero, "reciprocal of series with zero constant term");
  const unsigned K = order();
  TruncatedSeries r(K, precision());
  const Real inv = Real(1, precision()) / coeffs_[0];
  r.coeffs_[0] = inv;
  for (unsigned k = 1; k <= K; ++k) {
    Real acc(precision());
    for (unsigned j = 1; j <= k; ++j) acc += coeffs_[j] * r.coeffs_[k - j];
    r.coeffs_[k] = -acc * inv;
  }
  const Real mr = r.max_abs();
  const Real n = bound(static_cast<long>(K + 1));
  r.error_ = Real(2, 64) * n * mr * mr * error_ + r.rounding_bound(n * mr * max_abs() * mr);
  return r;
}

TruncatedSeries TruncatedSeries::exp() const {
  const unsigned K = order();
  TruncatedSeries r(K, precision());
  // E' = A' E  ⇒  e_k = (1/k) Σ_{j=1}^{k} j a_j e_{k-j}
  r.coeffs_[0] = padicrama::exp(coeffs_[0]);
  for (unsigned k = 1; k <= K; ++k) {
    Real acc(precision());
    for (unsigned j = 1; j <= k; ++j) {
      acc += Real(static_cast<long>(j), precision()) * coeffs_[j] * r.coeffs_[k - j];
    }
    r.coeffs_[k] = acc / Real(static_cast<long>(k), precision());
  }
  const Real me = r.max_abs();
  const Real n = bound(static_cast<long>(K + 1));
  r.error_ = Real(2, 64) * n * me * error_ + r.rounding_bound(n * me * (max_abs() + bound(1)));
  return r;
}

}  // namespace padicrama
