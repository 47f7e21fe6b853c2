#pragma once

#include <cmath>
#include <limits>

#include "qgeo/errors.hpp"

namespace qgeo {

// Entropic index q. Operations branch on `deformed()`: inside a narrow
// band around q = 1 the deformed formulas are replaced by their q -> 1
// limits (first-order series in 1-q) to avoid dividing by q-1.
struct QParam {
  double q;

  static constexpr double kSwitch = 1e-8;

  QParam(double value) : q(value) {
    if (!std::isfinite(value)) throw DomainError("QParam: q must be finite");
  }

  bool deformed() const { return std::abs(q - 1.0) > kSwitch; }
  double one_minus() const { return 1.0 - q; }
};

// x (+)_q y = x + y + (1-q) x y.  q = 1 is ordinary addition; q = 0 is the
// tilde-addition x + y + xy appearing in the matrix corner term.
inline double q_add(double x, double y, QParam q) {
  if (!q.deformed()) return x + y;
  // grouping the product keeps the operation exactly commutative
  return x + y + q.one_minus() * (x * y);
}

// Inverse of x under (+)_q: the y with q_add(x, y, q) = 0.
inline double q_negate(double x, QParam q) {
  if (!q.deformed()) return -x;
  const double den = 1.0 + q.one_minus() * x;
  if (den == 0.0)
    throw SingularElement("q_negate: x = -1/(1-q) has no inverse");
  return -x / den;
}

// Bijection from the admissible interval onto the reals carrying (+)_q
// to ordinary +:  tau(x) = ln(1 + (1-q) x) / (1-q).
inline double tau(double x, QParam q) {
  if (!q.deformed()) return x * (1.0 - 0.5 * q.one_minus() * x);
  const double e = q.one_minus();
  if (1.0 + e * x <= 0.0)
    throw DomainError("tau: 1 + (1-q) x must be positive");
  return std::log1p(e * x) / e;
}

// Deformed exponential with the Tsallis cutoff: [1 + (1-q) x]^{1/(1-q)}
// when the bracket is positive, 0 otherwise.
inline double q_exp(double x, QParam q) {
  if (!q.deformed()) return std::exp(x) * (1.0 - 0.5 * q.one_minus() * x * x);
  const double e = q.one_minus();
  if (1.0 + e * x <= 0.0) return 0.0;
  return std::exp(std::log1p(e * x) / e);
}

// Deformed logarithm (x^{1-q} - 1)/(1-q), inverse of q_exp away from the
// cutoff region.
inline double q_log(double x, QParam q) {
  if (x <= 0.0) throw DomainError("q_log: x must be positive");
  const double lx = std::log(x);
  if (!q.deformed()) return lx * (1.0 + 0.5 * q.one_minus() * lx);
  const double e = q.one_minus();
  return std::expm1(e * lx) / e;
}

}  // namespace qgeo
