// Command-line surface: every library operation as a subcommand with
// machine-readable JSON (or CSV) output. Exit codes: 0 ok, 2 domain
// error, 3 convergence failure, 4 resource limit, 64 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgeo/qgeo.hpp"

using json = nlohmann::ordered_json;
using namespace qgeo;

namespace {

constexpr const char* kGroupLawConvention = "symmetric-bch";

DiscreteDistribution parse_dist(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw DomainError("cannot open distribution file: " + spec.substr(1));
    return DiscreteDistribution::from_csv(in);
  }
  std::vector<double> w;
  std::istringstream ss(spec);
  std::string cell;
  while (std::getline(ss, cell, ',')) w.push_back(std::stod(cell));
  return DiscreteDistribution(std::move(w));
}

std::vector<double> parse_triple(const std::string& spec, const char* what) {
  std::vector<double> v;
  std::istringstream ss(spec);
  std::string cell;
  while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
  if (v.size() != 3) throw DomainError(std::string(what) + ": expected three comma-separated values");
  return v;
}

HeisenbergPoint parse_point(const std::string& spec) {
  auto v = parse_triple(spec, "point");
  return {v[0], v[1], v[2]};
}

json matrix_json(const UpperUnitriangular& m) {
  json rows = json::array();
  for (const auto& row : m.to_matrix()) rows.push_back({row[0], row[1], row[2]});
  return rows;
}

void emit(const json& payload) { std::cout << payload.dump() << "\n"; }

struct Args {
  std::string dist, dist1, dist2, a, b, g, h, g0, map, problem, grid, at;
  double x = 0, y = 0, q = 1, tol = 1e-9, mu = 1, t = 1, from_k = 0, fd_h = 2e-4;
  int rmax = 12, n = 1000, max_iter = 400000, samples = 0;
  std::uint64_t seed = 0, budget = 5'000'000;
  std::string group = "heisenberg";
  bool csv = false, rescaled = false, verify = false;
};

int dispatch(CLI::App& app, Args& a) {
  if (app.got_subcommand("qadd")) {
    emit({{"result", q_add(a.x, a.y, QParam(a.q))}});
  } else if (app.got_subcommand("entropy")) {
    auto p = parse_dist(a.dist);
    if (a.rescaled)
      emit({{"S_tilde_q", rescaled_entropy(p, QParam(a.q)).value}});
    else
      emit({{"S_q", tsallis_entropy(p, QParam(a.q)).value}});
  } else if (app.got_subcommand("compose-check")) {
    QParam q(a.q);
    auto p1 = parse_dist(a.dist1), p2 = parse_dist(a.dist2);
    const double lhs = tsallis_entropy(product_distribution(p1, p2), q).value;
    const double rhs =
        composition_rhs(tsallis_entropy(p1, q), tsallis_entropy(p2, q), q);
    emit({{"S_q_product", lhs}, {"q_add_rhs", rhs}, {"defect", std::abs(lhs - rhs)}});
  } else if (app.got_subcommand("escort")) {
    auto e = escort(parse_dist(a.dist), QParam(a.q));
    json out{{"weights", e.weights()}};
    if (e.support()) out["support"] = *e.support();
    emit(out);
  } else if (app.got_subcommand("abe-check")) {
    QParam q(a.q);
    auto p = parse_dist(a.dist);
    const double abe = abe_entropy(p, q).value;
    const double ts = tsallis_entropy(p, q).value;
    emit({{"abe", abe}, {"tsallis", ts}, {"defect", std::abs(abe - ts)}});
  } else if (app.got_subcommand("embed")) {
    emit({{"matrix", matrix_json(embed(a.x))}});
  } else if (app.got_subcommand("mul")) {
    UpperUnitriangular m1, m2;
    json out;
    if (!a.a.empty() || !a.b.empty()) {
      auto va = parse_triple(a.a, "--a"), vb = parse_triple(a.b, "--b");
      m1 = {va[0], va[1], va[2]};
      m2 = {vb[0], vb[1], vb[2]};
    } else {
      m1 = embed(a.x);
      m2 = embed(a.y);
      out["embedding_defect"] = embedding_defect(a.x, a.y);
    }
    const auto prod = multiply(m1, m2);
    out["matrix"] = matrix_json(prod);
    out["secondary_diagonal"] = {prod.a12, prod.a23};
    out["corner"] = prod.a13;
    emit(out);
  } else if (app.got_subcommand("bch-check")) {
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0.0;
    for (int k = 0; k < a.n; ++k) {
      LieVector u1{u(rng), u(rng), u(rng)}, u2{u(rng), u(rng), u(rng)};
      const auto lhs = multiply(exp_map(u1), exp_map(u2));
      const auto br = bracket(u1, u2);
      const auto rhs = exp_map(
          LieVector{u1.cx + u2.cx, u1.cy + u2.cy, u1.cz + u2.cz + 0.5 * br.cz});
      worst = std::max({worst, std::abs(lhs.a12 - rhs.a12),
                        std::abs(lhs.a13 - rhs.a13), std::abs(lhs.a23 - rhs.a23)});
    }
    emit({{"pairs", a.n}, {"max_defect", worst}});
  } else if (app.got_subcommand("growth")) {
    GroupKind kind = a.group == "heisenberg" ? GroupKind::Heisenberg
                     : a.group == "z2"       ? GroupKind::Z2
                                             : GroupKind::Free2;
    auto rep = discrete_ball_sizes(kind, a.rmax, a.budget);
    if (a.csv) {
      std::cout << "radius,ball_size\n";
      for (const auto& [r, n] : rep.records) std::cout << r << "," << n << "\n";
      return 0;
    }
    rep = growth_exponent(std::move(rep));
    json recs = json::array();
    for (const auto& [r, n] : rep.records) recs.push_back({r, n});
    emit({{"group", a.group},
          {"records", recs},
          {"exponent", rep.fitted_exponent},
          {"residual", rep.fit_residual},
          {"window", {rep.window_lo, rep.window_hi}}});
  } else if (app.got_subcommand("ccdist")) {
    const auto res = cc_distance(a.g.empty() ? HeisenbergPoint{} : parse_point(a.g),
                                 parse_point(a.h), a.tol);
    json out{{"distance", res.length},
             {"residual", res.solver_residual},
             {"iterations", res.iterations},
             {"convention", kGroupLawConvention}};
    if (a.samples > 0) {
      json s = json::array();
      for (const auto& pt : res.samples) s.push_back({pt.x, pt.y, pt.z});
      out["samples"] = s;
    }
    emit(out);
  } else if (app.got_subcommand("pansu")) {
    const HeisenbergPoint g = parse_point(a.g), h = parse_point(a.h);
    std::function<HeisenbergPoint(HeisenbergPoint)> f;
    if (a.map == "translate") {
      const HeisenbergPoint g0 = parse_point(a.g0);
      f = [g0](HeisenbergPoint p) { return group_law(g0, p); };
    } else if (a.map == "dilate") {
      const double mu = a.mu;
      f = [mu](HeisenbergPoint p) { return dilate(p, mu); };
    } else if (a.map == "shear") {
      f = [](HeisenbergPoint p) { return HeisenbergPoint{p.x + p.y * p.y, p.y, p.z}; };
    } else {
      throw DomainError("pansu: unknown map (use translate, dilate, shear)");
    }
    const auto qres = pansu_quotient(f, g, h, a.t);
    emit({{"quotient", {qres.x, qres.y, qres.z}},
          {"t", a.t},
          {"convention", kGroupLawConvention}});
  } else if (app.got_subcommand("curvature")) {
    if (!a.grid.empty()) {
      double lo, hi;
      int n;
      if (std::sscanf(a.grid.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 2)
        throw DomainError("curvature: --grid expects lo:hi:n");
      std::cout << "q,k\n";
      for (int i = 0; i < n; ++i) {
        const double q = lo + (hi - lo) * i / (n - 1);
        std::cout << q << "," << curvature_of_q(QParam(q)) << "\n";
      }
      return 0;
    }
    if (app.get_subcommand("curvature")->count("--from-k")) {
      const auto [q1, q2] = q_from_curvature(a.from_k);
      emit({{"k", a.from_k}, {"q_branches", {q1, q2}}});
      return 0;
    }
    json out{{"q", a.q}, {"k", curvature_of_q(QParam(a.q))}};
    if (a.verify) {
      const auto m = ModelMetric::from_q(QParam(a.q));
      double px = 0.1, py = -0.2;
      if (!a.at.empty()) {
        std::istringstream ss(a.at);
        char comma;
        ss >> px >> comma >> py;
      }
      out["numeric_k"] = gaussian_curvature_numeric(m, px, py, a.fd_h);
      out["h"] = a.fd_h;
    }
    emit(out);
  } else if (app.got_subcommand("maxent")) {
    std::ifstream in(a.problem);
    if (!in) throw DomainError("maxent: cannot open problem file " + a.problem);
    json doc = json::parse(in);
    MaxentProblem prob{doc.at("support").get<std::vector<double>>(),
                       QParam(doc.at("q").get<double>()),
                       {}};
    for (const auto& c : doc.value("constraints", json::array())) {
      const std::string kind = c.at("kind").get<std::string>();
      ConstraintKind k;
      if (kind == "ordinary-mean") k = ConstraintKind::OrdinaryMean;
      else if (kind == "escort-mean") k = ConstraintKind::EscortMean;
      else if (kind == "escort-variance") k = ConstraintKind::EscortVariance;
      else throw DomainError("maxent: unknown constraint kind " + kind);
      prob.constraints.push_back({k, c.at("target").get<double>()});
    }
    const auto sol = solve_maxent(prob, a.tol, a.max_iter);
    if (a.csv) {
      std::cout << "x,weight\n";
      for (std::size_t i = 0; i < sol.distribution.size(); ++i)
        std::cout << (*sol.distribution.support())[i] << ","
                  << sol.distribution.weights()[i] << "\n";
      return 0;
    }
    emit({{"weights", sol.distribution.weights()},
          {"support", *sol.distribution.support()},
          {"multipliers", sol.multipliers},
          {"kkt_residual", sol.kkt_residual},
          {"iterations", sol.iterations},
          {"entropy", sol.entropy}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed entropy calculus and Heisenberg-group geometry"};
  app.require_subcommand(1);
  Args a;

  auto* qadd = app.add_subcommand("qadd", "generalized addition x (+)_q y");
  qadd->add_option("--x", a.x)->required();
  qadd->add_option("--y", a.y)->required();
  qadd->add_option("--q", a.q)->required();

  auto* ent = app.add_subcommand("entropy", "Tsallis entropy of a distribution");
  ent->add_option("--dist", a.dist, "inline weights w1,w2,... or @file.csv")->required();
  ent->add_option("--q", a.q)->required();
  ent->add_flag("--rescaled", a.rescaled, "report (1-q) S_q instead");

  auto* comp = app.add_subcommand("compose-check", "pseudo-additivity on a product");
  comp->add_option("--dist1", a.dist1)->required();
  comp->add_option("--dist2", a.dist2)->required();
  comp->add_option("--q", a.q)->required();

  auto* esc = app.add_subcommand("escort", "escort transform of a distribution");
  esc->add_option("--dist", a.dist)->required();
  esc->add_option("--q", a.q)->required();

  auto* abe = app.add_subcommand("abe-check", "Abe identity vs direct entropy");
  abe->add_option("--dist", a.dist)->required();
  abe->add_option("--q", a.q)->required();

  auto* emb = app.add_subcommand("embed", "matrix embedding S(x)");
  emb->add_option("--x", a.x)->required();

  auto* mul = app.add_subcommand("mul", "matrix product of embeds or raw matrices");
  mul->add_option("--x", a.x);
  mul->add_option("--y", a.y);
  mul->add_option("--a", a.a, "first matrix as a12,a13,a23");
  mul->add_option("--b", a.b, "second matrix as a12,a13,a23");

  auto* bch = app.add_subcommand("bch-check", "BCH identity on random pairs");
  bch->add_option("--n", a.n);
  bch->add_option("--seed", a.seed);

  auto* gro = app.add_subcommand("growth", "discrete ball growth and exponent fit");
  gro->add_option("--group", a.group)->check(CLI::IsMember({"heisenberg", "z2", "free2"}));
  gro->add_option("--rmax", a.rmax)->required();
  gro->add_option("--budget", a.budget);
  gro->add_flag("--csv", a.csv, "emit the radius,ball_size table only");

  auto* ccd = app.add_subcommand("ccdist", "Carnot-Caratheodory distance");
  ccd->set_help_flag("--help");  // --h names the endpoint below
  ccd->add_option("--g", a.g, "start point x,y,z (default origin)");
  ccd->add_option("--h", a.h, "end point x,y,z")->required();
  ccd->add_option("--tol", a.tol);
  ccd->add_option("--samples", a.samples, "include geodesic samples in output");

  auto* pan = app.add_subcommand("pansu", "Pansu difference quotient");
  pan->set_help_flag("--help");
  pan->add_option("--map", a.map)->required()->check(CLI::IsMember({"translate", "dilate", "shear"}));
  pan->add_option("--g0", a.g0, "translation element for --map translate");
  pan->add_option("--mu", a.mu, "dilation factor for --map dilate");
  pan->add_option("--g", a.g)->required();
  pan->add_option("--h", a.h)->required();
  pan->add_option("--t", a.t)->required();

  auto* cur = app.add_subcommand("curvature", "sectional curvature of the q-plane");
  cur->set_help_flag("--help");
  cur->add_option("--q", a.q);
  cur->add_option("--from-k", a.from_k, "report both q branches for a curvature");
  cur->add_option("--grid", a.grid, "lo:hi:n CSV table of (q, k)");
  cur->add_flag("--verify", a.verify, "add finite-difference Gaussian curvature");
  cur->add_option("--h", a.fd_h, "finite-difference step for --verify");
  cur->add_option("--at", a.at, "evaluation point x,y for --verify");

  auto* mx = app.add_subcommand("maxent", "constrained Tsallis maxent solve");
  mx->add_option("--problem", a.problem, "JSON problem document")->required();
  mx->add_option("--tol", a.tol);
  mx->add_option("--max-iter", a.max_iter);
  mx->add_flag("--csv", a.csv, "emit the x,weight table only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 64;
  }

  try {
    return dispatch(app, a);
  } catch (const DomainError& e) {
    emit({{"status", "domain-error"}, {"message", e.what()}});
    return 2;
  } catch (const SingularElement& e) {
    emit({{"status", "domain-error"}, {"message", e.what()}});
    return 2;
  } catch (const Infeasible& e) {
    emit({{"status", "domain-error"}, {"message", e.what()}});
    return 2;
  } catch (const ConvergenceFailure& e) {
    emit({{"status", "convergence-failure"}, {"message", e.what()}});
    return 3;
  } catch (const FitRejected& e) {
    emit({{"status", "convergence-failure"}, {"message", e.what()}});
    return 3;
  } catch (const ResourceLimit& e) {
    emit({{"status", "resource-limit"}, {"message", e.what()}});
    return 4;
  }
}
