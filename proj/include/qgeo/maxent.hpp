#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include "qgeo/distribution.hpp"
#include "qgeo/entropy.hpp"
#include "qgeo/errors.hpp"
#include "qgeo/qalgebra.hpp"

namespace qgeo {

enum class ConstraintKind { OrdinaryMean, EscortMean, EscortVariance };

struct MomentConstraint {
  ConstraintKind kind;
  double target;
};

struct MaxentProblem {
  std::vector<double> support;
  QParam q;
  std::vector<MomentConstraint> constraints;
};

struct MaxentSolution {
  DiscreteDistribution distribution;
  std::vector<double> multipliers;
  double kkt_residual = 0.0;
  int iterations = 0;
  double entropy = 0.0;
};

// Raw escort moment sum_i (p_i^q / N) x_i^power.
inline double escort_moment(const DiscreteDistribution& p, QParam q, int power) {
  if (!p.support()) throw DomainError("escort_moment: distribution has no support");
  const DiscreteDistribution e = escort(p, q);
  long double s = 0.0L;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double xi = (*e.support())[i];
    double f = power == 1 ? xi : xi * xi;
    s += static_cast<long double>(e.weights()[i]) * f;
  }
  return static_cast<double>(s);
}

namespace detail {

// Euclidean projection onto the probability simplex.
inline void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  std::size_t rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = i + 1;
      theta = t;
    }
  }
  for (auto& x : v) x = std::max(0.0, x - theta);
  // renormalization drift from the projection is at rounding level
  double s = std::accumulate(v.begin(), v.end(), 0.0);
  if (s > 0.0)
    for (auto& x : v) x /= s;
}

struct MaxentWork {
  const std::vector<double>& x;
  QParam q;
  const std::vector<MomentConstraint>& cons;

  double pow_qm1(double p) const {
    return std::pow(std::max(p, 1e-13), q.q - 1.0);
  }

  double entropy_of(const std::vector<double>& p) const {
    if (!q.deformed()) {
      double s = 0.0;
      for (double w : p)
        if (w > 0.0) s -= w * std::log(w);
      return s;
    }
    long double sum = 0.0L;
    for (double w : p)
      if (w > 0.0) sum += std::pow(w, q.q);
    return static_cast<double>((1.0L - sum) / (q.q - 1.0L));
  }

  // escort weights and moments for the current iterate
  void escort_stats(const std::vector<double>& p, double& N, double& m,
                    double& v) const {
    N = 0.0;
    for (double w : p)
      if (w > 0.0) N += std::pow(w, q.q);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0.0) continue;
      const double e = std::pow(p[i], q.q) / N;
      s1 += e * x[i];
    }
    m = s1;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0.0) continue;
      const double e = std::pow(p[i], q.q) / N;
      s2 += e * (x[i] - m) * (x[i] - m);
    }
    v = s2;
  }

  std::vector<double> constraint_values(const std::vector<double>& p) const {
    double N, m, v;
    escort_stats(p, N, m, v);
    std::vector<double> out;
    out.reserve(cons.size());
    for (const auto& c : cons) {
      switch (c.kind) {
        case ConstraintKind::OrdinaryMean: {
          double s = 0.0;
          for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * x[i];
          out.push_back(s);
          break;
        }
        case ConstraintKind::EscortMean:
          out.push_back(m);
          break;
        case ConstraintKind::EscortVariance:
          out.push_back(v);
          break;
      }
    }
    return out;
  }

  // Lagrangian objective S_q(p) - sum_j lam_j c_j(p) and its gradient.
  double objective(const std::vector<double>& p,
                   const std::vector<double>& lam) const {
    double f = entropy_of(p);
    const auto c = constraint_values(p);
    for (std::size_t j = 0; j < lam.size(); ++j) f -= lam[j] * c[j];
    return f;
  }

  std::vector<double> gradient(const std::vector<double>& p,
                               const std::vector<double>& lam) const {
    const std::size_t n = p.size();
    std::vector<double> g(n, 0.0);
    const bool deformed = q.deformed();
    for (std::size_t i = 0; i < n; ++i) {
      if (deformed)
        g[i] = -q.q * pow_qm1(p[i]) / (q.q - 1.0);
      else
        g[i] = -std::log(std::max(p[i], 1e-300)) - 1.0;
    }
    if (!lam.empty()) {
      double N, m, v;
      escort_stats(p, N, m, v);
      for (std::size_t j = 0; j < lam.size(); ++j) {
        const auto& c = cons[j];
        for (std::size_t i = 0; i < n; ++i) {
          double dc;
          switch (c.kind) {
            case ConstraintKind::OrdinaryMean:
              dc = x[i];
              break;
            case ConstraintKind::EscortMean:
              dc = q.q * pow_qm1(p[i]) * (x[i] - m) / N;
              break;
            case ConstraintKind::EscortVariance:
            default:
              dc = q.q * pow_qm1(p[i]) * ((x[i] - m) * (x[i] - m) - v) / N;
              break;
          }
          g[i] -= lam[j] * dc;
        }
      }
    }
    for (auto& gi : g) gi = std::clamp(gi, -1e13, 1e13);
    return g;
  }

  // Stationarity residual on the simplex: gradient components equal on
  // the active set, no ascent direction into the boundary.
  double kkt(const std::vector<double>& p, const std::vector<double>& g) const {
    double mu = 0.0;
    std::size_t na = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0.0) {
        mu += g[i];
        ++na;
      }
    mu /= static_cast<double>(na);
    double r = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0.0)
        r = std::max(r, std::abs(g[i] - mu));
      else
        r = std::max(r, std::max(0.0, g[i] - mu));
    }
    return r;
  }
};

// Projected gradient ascent with Barzilai-Borwein steps and Armijo
// backtracking. Returns the stationarity residual reached.
inline double inner_solve(MaxentWork& w, std::vector<double>& p,
                          const std::vector<double>& lam, double tol,
                          int max_iter, int& used) {
  std::vector<double> g = w.gradient(p, lam);
  double fp = w.objective(p, lam);
  double step = 1.0;
  std::vector<double> p_old, g_old;
  double res = w.kkt(p, g);
  int it = 0;
  for (; it < max_iter && res > tol; ++it) {
    std::vector<double> cand(p.size());
    double fc = 0.0;
    bool accepted = false;
    double s = step;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < p.size(); ++i) cand[i] = p[i] + s * g[i];
      project_simplex(cand);
      fc = w.objective(cand, lam);
      double lin = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) lin += g[i] * (cand[i] - p[i]);
      if (fc >= fp + 1e-4 * lin || lin <= 0.0) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;
    p_old = p;
    g_old = g;
    p = cand;
    fp = fc;
    g = w.gradient(p, lam);
    // BB step from the last displacement
    double sy = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double dp = p[i] - p_old[i];
      const double dg = g[i] - g_old[i];
      ss += dp * dp;
      sy += dp * dg;
    }
    step = (sy < 0.0) ? std::clamp(-ss / sy, 1e-14, 1e14) : s * 2.0;
    res = w.kkt(p, g);
  }
  used += it;
  return res;
}

inline void solve_linear(std::vector<std::vector<double>> a,
                         std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    if (a[k][k] == 0.0) throw ConvergenceFailure("maxent: singular multiplier system");
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = k + 1; j < n; ++j) b[k] -= a[k][j] * b[j];
    b[k] /= a[k][k];
  }
}

}  // namespace detail

// Maximize S_q over the simplex subject to the given moment constraints:
// projected gradient ascent in p, damped Newton on the multipliers.
inline MaxentSolution solve_maxent(const MaxentProblem& prob, double tol = 1e-8,
                                   int max_iter = 400000) {
  const std::size_t n = prob.support.size();
  if (n < 2) throw DomainError("solve_maxent: need at least 2 support points");
  if (!(prob.q.q > 0.0)) throw DomainError("solve_maxent: requires q > 0");
  if (!(tol > 0.0)) throw DomainError("solve_maxent: tol must be positive");

  const double xmin = *std::min_element(prob.support.begin(), prob.support.end());
  const double xmax = *std::max_element(prob.support.begin(), prob.support.end());
  if (xmin == xmax) throw DomainError("solve_maxent: support points must be distinct");

  // attainable-range feasibility check before iterating
  double mean_target = 0.5 * (xmin + xmax);
  bool mean_constrained = false;
  for (const auto& c : prob.constraints) {
    if (c.kind == ConstraintKind::OrdinaryMean || c.kind == ConstraintKind::EscortMean) {
      if (c.target <= xmin || c.target >= xmax)
        throw Infeasible("solve_maxent: mean target outside the observable range");
      mean_target = c.target;
      mean_constrained = true;
    }
  }
  for (const auto& c : prob.constraints) {
    if (c.kind == ConstraintKind::EscortVariance) {
      const double vmax = mean_constrained
                              ? (xmax - mean_target) * (mean_target - xmin)
                              : 0.25 * (xmax - xmin) * (xmax - xmin);
      if (c.target <= 0.0 || c.target >= vmax)
        throw Infeasible("solve_maxent: variance target outside the attainable range");
    }
  }

  detail::MaxentWork w{prob.support, prob.q, prob.constraints};
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  std::vector<double> lam(prob.constraints.size(), 0.0);
  std::vector<double> targets;
  for (const auto& c : prob.constraints) targets.push_back(c.target);

  // inner stationarity is solved well below the outer tolerance so the
  // multiplier Newton sees constraint residuals, not solver noise
  const double inner_tol = std::clamp(tol * 1e-4, 1e-13, 1e-9);
  int used = 0;
  detail::inner_solve(w, p, lam, inner_tol, max_iter, used);

  auto residual = [&](const std::vector<double>& pp) {
    auto c = w.constraint_values(pp);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] -= targets[j];
    return c;
  };

  if (!lam.empty()) {
    std::vector<double> R = residual(p);
    auto norm_inf = [](const std::vector<double>& v) {
      double r = 0.0;
      for (double e : v) r = std::max(r, std::abs(e));
      return r;
    };
    for (int outer = 0; outer < 80 && norm_inf(R) > tol; ++outer) {
      if (used >= max_iter) break;
      // finite-difference Jacobian of the residual in the multipliers
      const std::size_t J = lam.size();
      std::vector<std::vector<double>> jac(J, std::vector<double>(J, 0.0));
      for (std::size_t j = 0; j < J; ++j) {
        const double dj = 1e-5 * std::max(1.0, std::abs(lam[j]));
        std::vector<double> lam2 = lam;
        lam2[j] += dj;
        std::vector<double> p2 = p;
        detail::inner_solve(w, p2, lam2, inner_tol, max_iter - used, used);
        const auto R2 = residual(p2);
        for (std::size_t i = 0; i < J; ++i) jac[i][j] = (R2[i] - R[i]) / dj;
      }
      std::vector<double> step = R;
      for (auto& e : step) e = -e;
      detail::solve_linear(jac, step);
      bool moved = false;
      for (double damp = 1.0; damp >= 1.0 / 4096.0; damp *= 0.5) {
        std::vector<double> lam2 = lam;
        for (std::size_t j = 0; j < J; ++j) lam2[j] += damp * step[j];
        std::vector<double> p2 = p;
        detail::inner_solve(w, p2, lam2, inner_tol, max_iter - used, used);
        const auto R2 = residual(p2);
        if (norm_inf(R2) < norm_inf(R)) {
          lam = lam2;
          p = p2;
          R = R2;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
  }

  const auto g = w.gradient(p, lam);
  double kkt = w.kkt(p, g);
  const auto R = residual(p);
  for (double e : R) kkt = std::max(kkt, std::abs(e));
  if (kkt > tol)
    throw ConvergenceFailure("solve_maxent: KKT residual above tolerance");

  DiscreteDistribution dist(p, prob.support);
  MaxentSolution sol{std::move(dist), lam, kkt, used,
                     tsallis_entropy(DiscreteDistribution(p, prob.support), prob.q).value};
  return sol;
}

}  // namespace qgeo
