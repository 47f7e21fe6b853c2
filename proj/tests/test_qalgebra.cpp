#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "qgeo/qalgebra.hpp"

using namespace qgeo;

TEST_CASE("q_add reference values") {
  CHECK(q_add(3, 4, QParam(1)) == 7.0);
  CHECK(q_add(1, 1, QParam(0)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(q_add(2, 3, QParam(0.5)) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("q_add identity and continuity in q") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::uniform_real_distribution<double> uq(-2.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng), y = u(rng);
    const QParam q(uq(rng));
    CHECK(q_add(x, 0.0, q) == x);
    const double dev = q_add(x, y, q) - (x + y);
    CHECK(std::abs(dev - q.one_minus() * x * y) <= 1e-13 * (1.0 + std::abs(x * y)));
    CHECK(std::abs(dev) <= std::abs(q.one_minus() * x * y) + 1e-13 * (1.0 + std::abs(x * y)));
  }
}

TEST_CASE("q_add commutative and associative") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> uq(-2.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const double x = u(rng), y = u(rng), z = u(rng);
    const QParam q(uq(rng));
    CHECK(q_add(x, y, q) == q_add(y, x, q));
    const double lhs = q_add(q_add(x, y, q), z, q);
    const double rhs = q_add(x, q_add(y, z, q), q);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("q_negate inverts under q_add") {
  CHECK(q_negate(5, QParam(1)) == -5.0);
  CHECK(q_negate(1, QParam(0)) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_THROWS_AS(q_negate(-2.0, QParam(0.5)), SingularElement);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.9, 4.0);
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng);
    const QParam q(0.25 + 0.5 * u(rng));
    if (std::abs(1.0 + q.one_minus() * x) < 1e-3) continue;
    CHECK(std::abs(q_add(x, q_negate(x, q), q)) <= 1e-12);
  }
}

TEST_CASE("tau maps deformed addition to ordinary addition") {
  CHECK(tau(0.0, QParam(0.3)) == 0.0);
  CHECK(tau(0.0, QParam(1.0)) == 0.0);
  CHECK(tau(1.0, QParam(0)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(tau(-3.0, QParam(0)), DomainError);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.5, 3.0);
  std::uniform_real_distribution<double> uq(0.2, 0.8);
  for (int k = 0; k < 300; ++k) {
    const double x = u(rng), y = u(rng);
    const QParam q(uq(rng));
    const double lhs = tau(q_add(x, y, q), q);
    const double rhs = tau(x, q) + tau(y, q);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("q_exp and q_log") {
  CHECK(q_exp(0.0, QParam(0.4)) == 1.0);
  CHECK(q_exp(0.0, QParam(1.0)) == 1.0);
  CHECK(q_log(4.0, QParam(2)) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(q_exp(-5.0, QParam(0)) == 0.0);  // Tsallis cutoff
  CHECK_THROWS_AS(q_log(0.0, QParam(0.5)), DomainError);
  CHECK_THROWS_AS(q_log(-1.0, QParam(2)), DomainError);

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 300; ++k) {
    const double x = u(rng);
    const QParam q(u(rng));
    if (1.0 + q.one_minus() * x <= 1e-6) continue;  // off the cutoff
    CHECK(q_log(q_exp(x, q), q) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("near q = 1 the limit branch stays smooth") {
  // deformed formulas divide by q-1; the switch avoids the blowup
  for (double dq : {0.0, 1e-9, -1e-9, 5e-9}) {
    const QParam q(1.0 + dq);
    CHECK_FALSE(q.deformed());
    CHECK(q_exp(2.0, q) == doctest::Approx(std::exp(2.0)).epsilon(1e-8));
    CHECK(q_log(2.0, q) == doctest::Approx(std::log(2.0)).epsilon(1e-8));
    CHECK(tau(1.5, q) == doctest::Approx(1.5).epsilon(1e-8));
  }
  // just outside the band the deformed branch agrees with the limit
  for (double dq : {2e-8, -2e-8}) {
    const QParam q(1.0 + dq);
    CHECK(q.deformed());
    CHECK(q_exp(2.0, q) == doctest::Approx(std::exp(2.0)).epsilon(1e-7));
  }
}

TEST_CASE("QParam rejects non-finite q") {
  CHECK_THROWS_AS(QParam(std::nan("")), DomainError);
  CHECK_THROWS_AS(QParam(std::numeric_limits<double>::infinity()), DomainError);
}
