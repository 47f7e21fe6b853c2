#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "qgeo/distribution.hpp"
#include "qgeo/qalgebra.hpp"

namespace qgeo {

struct EntropyValue {
  double value;  // k_B = 1
  QParam q;
};

namespace detail {

// Sum of p_i^t with the zero-atom convention 0^t = 0 for t >= 0.
// Accumulates in extended precision; the pseudo-additivity defect on
// large product distributions is otherwise dominated by summation noise.
inline long double power_sum(const std::vector<double>& w, double t) {
  long double s = 0.0L;
  for (double p : w) {
    if (p == 0.0) {
      if (t < 0.0) throw DomainError("power_sum: p_i = 0 with negative exponent");
      continue;
    }
    s += std::pow(p, t);
  }
  return s;
}

}  // namespace detail

// S_q(p) = (1 - sum p_i^q)/(q - 1); BGS entropy -sum p_i ln p_i at q = 1.
inline EntropyValue tsallis_entropy(const DiscreteDistribution& p, QParam q) {
  if (!q.deformed()) {
    long double s = 0.0L;
    for (double w : p.weights())
      if (w > 0.0) s -= static_cast<long double>(w) * std::log(w);
    return {static_cast<double>(s), q};
  }
  const long double sum = detail::power_sum(p.weights(), q.q);
  return {static_cast<double>((1.0L - sum) / (q.q - 1.0L)), q};
}

// S~_q = (1-q) S_q, the rescaling whose composition law is x + y + xy.
inline EntropyValue rescaled_entropy(const DiscreteDistribution& p, QParam q) {
  return {q.one_minus() * tsallis_entropy(p, q).value, q};
}

// Right-hand side of the pseudo-additivity law for independent systems.
inline double composition_rhs(const EntropyValue& s1, const EntropyValue& s2,
                              QParam q) {
  return q_add(s1.value, s2.value, q);
}

// Escort transform p_i^q / sum_j p_j^q; support tags carry through.
inline DiscreteDistribution escort(const DiscreteDistribution& p, QParam q) {
  const long double norm = detail::power_sum(p.weights(), q.q);
  if (!(norm > 0.0L) || !std::isfinite(static_cast<double>(norm)))
    throw DomainError("escort: degenerate normalization");
  std::vector<double> w;
  w.reserve(p.size());
  for (double pi : p.weights())
    w.push_back(pi == 0.0 ? 0.0
                          : static_cast<double>(std::pow(pi, q.q) / norm));
  return DiscreteDistribution(std::move(w), p.support());
}

// Jackson q-difference quotient (f(qx) - f(x)) / ((q-1) x).
template <class F>
double jackson_derivative(F&& f, QParam q, double x) {
  if (x == 0.0 || q.q == 1.0)
    throw DomainError("jackson_derivative: undefined at x = 0 or q = 1");
  return (f(q.q * x) - f(x)) / ((q.q - 1.0) * x);
}

// Abe's entropy: minus the Jackson derivative of t -> sum_i p_i^t at t = 1.
// Coincides with tsallis_entropy as an algebraic identity.
inline EntropyValue abe_entropy(const DiscreteDistribution& p, QParam q) {
  auto f = [&p](double t) {
    return static_cast<double>(detail::power_sum(p.weights(), t));
  };
  return {-jackson_derivative(f, q, 1.0), q};
}

// Uniform-grid quadrature form of the entropy: density samples rho_i on
// cells of equal measure, S_q = (1 - sum rho_i^q * cell)/(q - 1).
inline double tsallis_entropy_grid(std::span<const double> density, double cell,
                                   QParam q) {
  if (cell <= 0.0) throw DomainError("tsallis_entropy_grid: cell must be positive");
  if (!q.deformed()) {
    long double s = 0.0L;
    for (double r : density)
      if (r > 0.0) s -= static_cast<long double>(r) * std::log(r) * cell;
    return static_cast<double>(s);
  }
  long double sum = 0.0L;
  for (double r : density) {
    if (r == 0.0) {
      if (q.q < 0.0) throw DomainError("tsallis_entropy_grid: zero density, q < 0");
      continue;
    }
    sum += std::pow(r, q.q) * static_cast<long double>(cell);
  }
  return static_cast<double>((1.0L - sum) / (q.q - 1.0L));
}

}  // namespace qgeo
