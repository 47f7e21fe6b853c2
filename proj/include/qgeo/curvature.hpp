#pragma once

#include <cmath>
#include <utility>

#include "qgeo/errors.hpp"
#include "qgeo/qalgebra.hpp"

namespace qgeo {

// k = -[log(2 - q)]^2; zero exactly at q = 1.
inline double curvature_of_q(QParam q) {
  if (q.q >= 2.0) throw DomainError("curvature_of_q: requires q < 2");
  const double l = std::log(2.0 - q.q);
  return -l * l;
}

// Both preimages of k under curvature_of_q: q = 2 - e^{+-sqrt(-k)}.
// Neither branch is privileged; callers label them.
inline std::pair<double, double> q_from_curvature(double k) {
  if (k > 0.0) throw DomainError("q_from_curvature: requires k <= 0");
  const double s = std::sqrt(-k);
  return {2.0 - std::exp(s), 2.0 - std::exp(-s)};
}

// Warped-product plane ds^2 = dx^2 + e^{2 a x} dy^2 of constant Gaussian
// curvature -a^2.
struct ModelMetric {
  double k;  // target curvature, nonpositive
  double a;  // sqrt(-k)

  static ModelMetric from_curvature(double k) {
    if (k > 0.0) throw DomainError("ModelMetric: requires k <= 0");
    return {k, std::sqrt(-k)};
  }

  static ModelMetric from_q(QParam q) {
    return from_curvature(curvature_of_q(q));
  }

  double E(double, double) const { return 1.0; }
  double F(double, double) const { return 0.0; }
  double G(double x, double) const { return std::exp(2.0 * a * x); }
};

namespace detail {

inline double det3(const double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace detail

// Gaussian curvature via the Brioschi formula, with all metric
// derivatives taken as central finite differences of step h. O(h^2).
template <class Metric>
double gaussian_curvature_numeric(const Metric& m, double x, double y,
                                  double h) {
  if (!(h > 0.0)) throw DomainError("gaussian_curvature_numeric: h must be positive");
  auto dX = [&](auto f) { return (f(x + h, y) - f(x - h, y)) / (2.0 * h); };
  auto dY = [&](auto f) { return (f(x, y + h) - f(x, y - h)) / (2.0 * h); };
  auto dXX = [&](auto f) {
    return (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h);
  };
  auto dYY = [&](auto f) {
    return (f(x, y + h) - 2.0 * f(x, y) + f(x, y - h)) / (h * h);
  };
  auto dXY = [&](auto f) {
    return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) +
            f(x - h, y - h)) /
           (4.0 * h * h);
  };

  auto E = [&m](double u, double v) { return m.E(u, v); };
  auto F = [&m](double u, double v) { return m.F(u, v); };
  auto G = [&m](double u, double v) { return m.G(u, v); };

  const double Ev = E(x, y), Fv = F(x, y), Gv = G(x, y);
  const double Ex = dX(E), Ey = dY(E), Eyy = dYY(E);
  const double Fx = dX(F), Fy = dY(F), Fxy = dXY(F);
  const double Gx = dX(G), Gy = dY(G), Gxx = dXX(G);

  const double m1[3][3] = {
      {-0.5 * Eyy + Fxy - 0.5 * Gxx, 0.5 * Ex, Fx - 0.5 * Ey},
      {Fy - 0.5 * Gx, Ev, Fv},
      {0.5 * Gy, Fv, Gv}};
  const double m2[3][3] = {{0.0, 0.5 * Ey, 0.5 * Gx},
                           {0.5 * Ey, Ev, Fv},
                           {0.5 * Gx, Fv, Gv}};
  const double den = Ev * Gv - Fv * Fv;
  return (detail::det3(m1) - detail::det3(m2)) / (den * den);
}

}  // namespace qgeo
