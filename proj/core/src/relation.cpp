#include "padicrama/relation.hpp"

#include <algorithm>

#include "padicrama/error.hpp"

namespace padicrama {

namespace {

constexpr long kMarginBits = 32;

using Row = std::vector<BigInt>;

mpq_class dot(const Row& a, const std::vector<mpq_class>& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += mpq_class(a[i]) * b[i];
  return s;
}

struct GramSchmidt {
  std::vector<std::vector<mpq_class>> star;
  std::vector<std::vector<mpq_class>> mu;
  std::vector<mpq_class> norm2;
};

GramSchmidt gram_schmidt(const std::vector<Row>& rows) {
  const std::size_t n = rows.size();
  const std::size_t dim = rows.front().size();
  GramSchmidt gs;
  gs.star.assign(n, std::vector<mpq_class>(dim));
  gs.mu.assign(n, std::vector<mpq_class>(n, 0));
  gs.norm2.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) gs.star[i][d] = rows[i][d];
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu[i][j] = dot(rows[i], gs.star[j]) / gs.norm2[j];
      for (std::size_t d = 0; d < dim; ++d) gs.star[i][d] -= gs.mu[i][j] * gs.star[j][d];
    }
    mpq_class s = 0;
    for (const auto& v : gs.star[i]) s += v * v;
    gs.norm2[i] = s;
  }
  return gs;
}

BigInt round_q(const mpq_class& x) {
  mpq_class shifted = x + mpq_class(1, 2);
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return r;
}

long log2_ceil(const BigInt& v) {
  return static_cast<long>(mpz_sizeinbase(BigInt(abs(v)).get_mpz_t(), 2));
}

}  // namespace

std::vector<Row> lll_reduce(std::vector<Row> rows) {
  const std::size_t n = rows.size();
  if (n < 2) return rows;
  const mpq_class delta(3, 4);
  GramSchmidt gs = gram_schmidt(rows);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      if (abs(gs.mu[k][jj]) > mpq_class(1, 2)) {
        const BigInt r = round_q(gs.mu[k][jj]);
        for (std::size_t d = 0; d < rows[k].size(); ++d) rows[k][d] -= r * rows[jj][d];
        for (std::size_t i = 0; i < jj; ++i) gs.mu[k][i] -= mpq_class(r) * gs.mu[jj][i];
        gs.mu[k][jj] -= mpq_class(r);
      }
    }
    if (gs.norm2[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1]) {
      ++k;
    } else {
      std::swap(rows[k], rows[k - 1]);
      gs = gram_schmidt(rows);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return rows;
}

std::optional<IntegerRelation> recognize(const Real& c, std::span<const Real> basis_values,
                                         const BigInt& height_bound, long precision_bits) {
  if (height_bound < 1) throw Error(ErrorCode::InvalidArgument, "height bound must be >= 1");
  const std::size_t n = basis_values.size() + 1;
  const long needed = 2 * static_cast<long>(n) * log2_ceil(height_bound) + kMarginBits;
  if (precision_bits < needed || c.precision() < precision_bits) {
    throw Error(ErrorCode::InsufficientPrecision,
                "integer relation of height " + height_bound.get_str() + " among " +
                    std::to_string(n) + " values needs " + std::to_string(needed) + " bits");
  }
  for (const auto& v : basis_values) {
    if (v.precision() < precision_bits) {
      throw Error(ErrorCode::InsufficientPrecision, "basis value carries too few bits");
    }
  }

  // x_0 = c, x_i = -basis_i; a relation Σ m_i x_i = 0 gives q = m_0, a_i = m_i.
  const long wp = precision_bits + 16;
  std::vector<Real> x;
  x.push_back(c.with_precision(wp));
  for (const auto& v : basis_values) x.push_back(-v.with_precision(wp));

  const Real scale = Real::exp2(precision_bits - kMarginBits / 2, wp);
  std::vector<Row> rows(n, Row(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] = 1;
    rows[i][n] = (x[i] * scale).round();
  }
  const auto reduced = lll_reduce(std::move(rows));

  const Real threshold = Real::exp2(-precision_bits / 2, wp);
  for (const auto& row : reduced) {
    if (row[0] == 0) continue;
    bool within = true;
    for (std::size_t i = 0; i < n; ++i) within = within && abs(row[i]) <= height_bound;
    if (!within) continue;
    Real residual(wp);
    for (std::size_t i = 0; i < n; ++i) {
      residual += Real(Rational(row[i]), wp) * x[i];
    }
    if (!(abs(residual) < threshold)) continue;

    BigInt g = 0;
    for (std::size_t i = 0; i < n; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[i].get_mpz_t());
    const int s = sgn(row[0]);
    IntegerRelation rel;
    rel.q = row[0] / g * s;
    for (std::size_t i = 1; i < n; ++i) rel.a.push_back(row[i] / g * s);
    return rel;
  }
  return std::nullopt;
}

std::optional<IntegerRelation> recognize(const Real& c, const std::vector<ConstantMonomial>& basis,
                                         const BigInt& height_bound, long precision_bits) {
  std::vector<Real> values;
  values.reserve(basis.size());
  for (const auto& m : basis) values.push_back(constant_value(m, precision_bits + 16));
  return recognize(c, values, height_bound, precision_bits);
}

}  // namespace padicrama
