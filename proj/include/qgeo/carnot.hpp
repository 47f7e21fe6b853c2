#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <numbers>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qgeo/errors.hpp"
#include "qgeo/heisenberg.hpp"

namespace qgeo {

// Carnot dilation delta_lambda(x, y, z) = (lx, ly, l^2 z), a group
// automorphism; homogeneous dimension 4.
template <class T>
HeisenbergPointT<T> dilate(const HeisenbergPointT<T>& g, T lambda) {
  if (!(lambda > T(0))) throw DomainError("dilate: lambda must be positive");
  return {lambda * g.x, lambda * g.y, lambda * lambda * g.z};
}

// Koranyi gauge ((x^2+y^2)^2 + 16 z^2)^{1/4}, homogeneous of degree 1.
template <class T>
T koranyi_norm(const HeisenbergPointT<T>& g) {
  using std::pow;
  const T r2 = g.x * g.x + g.y * g.y;
  return pow(r2 * r2 + T(16) * g.z * g.z, T(0.25));
}

struct GeodesicResult {
  double length = 0.0;
  std::vector<HeisenbergPoint> samples;
  double solver_residual = 0.0;
  int iterations = 0;
};

namespace detail {

// Endpoint-map profile for arcs of turning half-angle u:
// f(u) = z / r^2 = (2u - sin 2u) / (8 sin^2 u), monotone on (0, pi).
inline double arc_profile(double u) {
  const double s = std::sin(u);
  return (2.0 * u - std::sin(2.0 * u)) / (8.0 * s * s);
}

inline double arc_profile_deriv(double u) {
  const double s = std::sin(u);
  return 0.5 - (2.0 * u - std::sin(2.0 * u)) * std::cos(u) / (4.0 * s * s * s);
}

}  // namespace detail

// Carnot-Caratheodory distance from the origin, by shooting over the
// one-parameter family of geodesics: lifts of circular arcs, with the
// straight segment as the degenerate case. Bisection brackets the
// turning parameter, damped Newton polishes it.
inline GeodesicResult cc_from_origin(const HeisenbergPoint& target, double tol,
                                     int n_samples = 33, int budget = 200) {
  if (!(tol > 0.0)) throw DomainError("cc_from_origin: tol must be positive");
  const double r = std::hypot(target.x, target.y);
  const double az = std::abs(target.z);
  const double sigma = target.z >= 0.0 ? 1.0 : -1.0;
  constexpr double pi = std::numbers::pi;

  GeodesicResult out;
  double u = 0.0;
  int iters = 0;
  if (r == 0.0 && az == 0.0) {
    out.length = 0.0;
  } else if (r == 0.0) {
    u = pi;  // full circle enclosing area |z|
    out.length = 2.0 * std::sqrt(pi * az);
  } else {
    const double ratio = az / (r * r);
    if (ratio > 0.0) {
      double lo = 0.0, hi = pi / 2.0;
      while (detail::arc_profile(hi) < ratio && iters < budget) {
        lo = hi;
        hi = 0.5 * (hi + pi);
        ++iters;
      }
      while (hi - lo > 1e-15 && iters < budget) {
        const double mid = 0.5 * (lo + hi);
        (detail::arc_profile(mid) < ratio ? lo : hi) = mid;
        ++iters;
      }
      u = 0.5 * (lo + hi);
      for (int k = 0; k < 8 && iters < budget; ++k, ++iters) {
        const double step = (detail::arc_profile(u) - ratio) /
                            detail::arc_profile_deriv(u);
        double next = u - step;
        if (next <= lo || next >= hi) break;
        u = next;
      }
    }
    out.length = u < 1e-8 ? r * (1.0 + u * u / 6.0) : r * u / std::sin(u);
  }
  out.iterations = iters;

  // Reconstruct the path and measure the endpoint defect.
  const double T = out.length;
  const double phi = T > 0.0 ? 2.0 * u * sigma / T : 0.0;
  std::complex<double> rot(1.0, 0.0);
  if (r > 0.0) {
    const std::complex<double> chord =
        phi == 0.0 ? std::complex<double>(T, 0.0)
                   : (std::exp(std::complex<double>(0.0, phi * T)) - 1.0) /
                         std::complex<double>(0.0, phi);
    rot = std::complex<double>(target.x, target.y) / chord;
    rot /= std::abs(rot);
  }
  out.samples.reserve(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    const double t = n_samples > 1 ? T * k / (n_samples - 1) : T;
    std::complex<double> w;
    double zt;
    if (phi == 0.0) {
      w = rot * t;
      zt = 0.0;
    } else {
      w = rot * (std::exp(std::complex<double>(0.0, phi * t)) - 1.0) /
          std::complex<double>(0.0, phi);
      zt = (phi * t - std::sin(phi * t)) / (2.0 * phi * phi);
    }
    out.samples.push_back({w.real(), w.imag(), zt});
  }
  const HeisenbergPoint end =
      out.samples.empty() ? HeisenbergPoint{} : out.samples.back();
  out.solver_residual = std::sqrt((end.x - target.x) * (end.x - target.x) +
                                  (end.y - target.y) * (end.y - target.y) +
                                  (end.z - target.z) * (end.z - target.z));
  if (out.solver_residual > tol)
    throw ConvergenceFailure("cc_from_origin: endpoint residual above tol");
  return out;
}

// d_cc(g, h) by left translation to the origin. Samples are translated
// back so they run from g to h.
inline GeodesicResult cc_distance(const HeisenbergPoint& g,
                                  const HeisenbergPoint& h, double tol) {
  GeodesicResult res = cc_from_origin(group_law(inverse(g), h), tol);
  for (auto& s : res.samples) s = group_law(g, s);
  return res;
}

// ----- discrete ball growth ---------------------------------------------

enum class GroupKind { Heisenberg, Z2, Free2 };

struct GrowthReport {
  std::vector<std::pair<int, std::uint64_t>> records;  // (radius, |B(r)|)
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;
  int window_lo = 0;
  int window_hi = 0;
};

namespace detail {

// Integer Heisenberg group in polarized coordinates: z-increment x * y',
// so that all products of integer points stay integer.
struct DiscretePoint {
  std::int64_t x, y, z;
};

inline DiscretePoint polarized_mul(const DiscretePoint& g, const DiscretePoint& h) {
  return {g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y};
}

inline std::uint64_t pack(const DiscretePoint& p) {
  const auto u = [](std::int64_t v) {
    return static_cast<std::uint64_t>(v + (1 << 20)) & ((1ull << 21) - 1);
  };
  return (u(p.x) << 42) | (u(p.y) << 21) | u(p.z);
}

}  // namespace detail

// Word-metric ball sizes |B(r)|, r = 0..r_max, by breadth-first search on
// the Cayley graph with the standard two generators and their inverses.
inline GrowthReport discrete_ball_sizes(GroupKind kind, int r_max,
                                        std::uint64_t budget = 5'000'000) {
  if (r_max < 0) throw DomainError("discrete_ball_sizes: r_max must be >= 0");
  GrowthReport rep;
  std::uint64_t total = 0;

  auto record = [&](int radius, std::uint64_t ball) {
    rep.records.emplace_back(radius, ball);
  };

  if (kind == GroupKind::Heisenberg || kind == GroupKind::Z2) {
    using detail::DiscretePoint;
    const bool heis = kind == GroupKind::Heisenberg;
    std::unordered_set<std::uint64_t> seen;
    std::deque<DiscretePoint> frontier{{0, 0, 0}};
    seen.insert(detail::pack({0, 0, 0}));
    total = 1;
    record(0, total);
    const DiscretePoint gens[4] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
    for (int r = 1; r <= r_max; ++r) {
      std::deque<DiscretePoint> next;
      for (const auto& g : frontier) {
        for (const auto& s : gens) {
          DiscretePoint n = heis ? detail::polarized_mul(g, s)
                                 : DiscretePoint{g.x + s.x, g.y + s.y, 0};
          if (seen.insert(detail::pack(n)).second) {
            next.push_back(n);
            if (++total > budget)
              throw ResourceLimit("discrete_ball_sizes: element budget exceeded");
          }
        }
      }
      frontier = std::move(next);
      record(r, total);
    }
  } else {
    // Free group on two generators: reduced words over a, A, b, B.
    std::deque<std::string> frontier{""};
    total = 1;
    record(0, total);
    const char letters[4] = {'a', 'A', 'b', 'B'};
    auto cancels = [](char last, char next) {
      return (last == 'a' && next == 'A') || (last == 'A' && next == 'a') ||
             (last == 'b' && next == 'B') || (last == 'B' && next == 'b');
    };
    for (int r = 1; r <= r_max; ++r) {
      std::deque<std::string> next;
      for (const auto& w : frontier) {
        for (char c : letters) {
          if (!w.empty() && cancels(w.back(), c)) continue;
          next.push_back(w + c);
          if (++total > budget)
            throw ResourceLimit("discrete_ball_sizes: element budget exceeded");
        }
      }
      frontier = std::move(next);
      record(r, total);
    }
  }
  return rep;
}

// Least-squares slope of log |B(r)| against log r over the tail window
// r >= 5. Rejects the polynomial model when the RMS fit residual per
// point exceeds kMaxFitResidual (separates r^4 from exponential growth).
inline GrowthReport growth_exponent(GrowthReport rep) {
  constexpr int kWindowLo = 5;
  constexpr double kMaxFitResidual = 0.05;
  std::vector<double> xs, ys;
  int hi = 0;
  for (const auto& [r, n] : rep.records) {
    if (r < kWindowLo) continue;
    xs.push_back(std::log(static_cast<double>(r)));
    ys.push_back(std::log(static_cast<double>(n)));
    hi = r;
  }
  if (xs.size() < 5)
    throw DomainError("growth_exponent: need at least 5 records with radius >= 5");
  const auto m = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double icept = my - slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = ys[i] - (icept + slope * xs[i]);
    sse += e * e;
  }
  rep.fitted_exponent = slope;
  rep.fit_residual = std::sqrt(sse / static_cast<double>(m));
  rep.window_lo = kWindowLo;
  rep.window_hi = hi;
  if (rep.fit_residual > kMaxFitResidual)
    throw FitRejected("growth_exponent: log-log residual indicates non-polynomial growth");
  return rep;
}

// Pansu difference quotient delta_{1/t}( f(g)^{-1} f(g delta_t h) ).
template <class F>
HeisenbergPoint pansu_quotient(F&& f, const HeisenbergPoint& g,
                               const HeisenbergPoint& h, double t) {
  if (!(t > 0.0)) throw DomainError("pansu_quotient: t must be positive");
  const HeisenbergPoint moved = f(group_law(g, dilate(h, t)));
  return dilate(group_law(inverse(f(g)), moved), 1.0 / t);
}

}  // namespace qgeo
