#include <cmath>
#include <random>

#include "doctest.h"
#include "qgeo/curvature.hpp"

using namespace qgeo;

TEST_CASE("curvature of q") {
  CHECK(curvature_of_q(QParam(1)) == 0.0);
  const double log2sq = std::log(2.0) * std::log(2.0);
  CHECK(curvature_of_q(QParam(0)) == doctest::Approx(-log2sq).epsilon(1e-15));
  CHECK(curvature_of_q(QParam(1.5)) == doctest::Approx(-log2sq).epsilon(1e-15));
  CHECK(curvature_of_q(QParam(1.9)) < curvature_of_q(QParam(1.5)));
  CHECK_THROWS_AS(curvature_of_q(QParam(2)), DomainError);
  CHECK_THROWS_AS(curvature_of_q(QParam(3)), DomainError);
}

TEST_CASE("inverse branches and the reflection symmetry") {
  CHECK_THROWS_AS(q_from_curvature(0.5), DomainError);
  const auto [lo, hi] = q_from_curvature(-std::log(2.0) * std::log(2.0));
  CHECK(lo == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(hi == doctest::Approx(1.5).epsilon(1e-14));

  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> uk(-9.0, 0.0);
  for (int i = 0; i < 200; ++i) {
    const double k = uk(rng);
    const auto [qa, qb] = q_from_curvature(k);
    CHECK(curvature_of_q(QParam(qa)) == doctest::Approx(k).epsilon(1e-12));
    CHECK(curvature_of_q(QParam(qb)) == doctest::Approx(k).epsilon(1e-12));
    // the two preimages reflect through q = 1: (2-qa)(2-qb) = 1
    CHECK((2.0 - qa) * (2.0 - qb) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("model metric has the requested constant curvature") {
  const auto m = ModelMetric::from_curvature(-1.0);
  CHECK(m.a == 1.0);
  CHECK(m.E(0.3, -2.0) == 1.0);
  CHECK(m.F(0.3, -2.0) == 0.0);
  CHECK(m.G(0.5, 9.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(ModelMetric::from_curvature(0.1), DomainError);

  const double h = 2e-4;
  CHECK(gaussian_curvature_numeric(m, 0.0, 0.0, h) ==
        doctest::Approx(-1.0).epsilon(1e-6));

  // flat case
  const auto flat = ModelMetric::from_curvature(0.0);
  CHECK(std::abs(gaussian_curvature_numeric(flat, 0.2, 0.4, h)) <= 1e-10);

  CHECK_THROWS_AS(gaussian_curvature_numeric(m, 0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("numeric curvature is location independent") {
  const auto m = ModelMetric::from_curvature(-1.0);
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int i = 0; i < 50; ++i) {
    const double k = gaussian_curvature_numeric(m, u(rng), u(rng), 2e-4);
    CHECK(std::abs(k + 1.0) <= 1e-6);
  }
}

TEST_CASE("numeric curvature agrees with the closed form across q") {
  for (int i = 0; i < 20; ++i) {
    const double qv = -4.9 + i * (6.85 / 19.0);  // covers (-5, 2)
    const QParam q(qv);
    const double k = curvature_of_q(q);
    const auto m = ModelMetric::from_q(q);
    const double kn = gaussian_curvature_numeric(m, 0.1, -0.2, 2e-4);
    CHECK(std::abs(kn - k) <= 1e-5);
  }
}
