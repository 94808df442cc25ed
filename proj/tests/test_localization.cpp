// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "relmol/error.hpp"
#include "relmol/localization.hpp"

using namespace relmol;

namespace {

// chi1^2 = |x - R2|^2 / (|x - R2|^2 + mu |x - R1|^2), written in the
// unshifted frame.
double chi1_squared_direct(const Vec3& x, const DiatomicGeometry& g) {
  const double a = dot(x - g.r2(), x - g.r2());
  const double b = dot(x - g.r1(), x - g.r1());
  return a / (a + g.mu() * b);
}

double grad_sum_fd(const Vec3& x, const DiatomicGeometry& g, double h) {
  double s = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    Vec3 e;
    e[k] = h;
    const ChiPair p = chi_pair(x + e, g);
    const ChiPair m = chi_pair(x - e, g);
    const double d1 = (p.chi1 - m.chi1) / (2 * h);
    const double d2 = (p.chi2 - m.chi2) / (2 * h);
    s += d1 * d1 + d2 * d2;
  }
  return s;
}

}  // namespace

TEST_CASE("geometry places the nuclei symmetrically") {
  const DiatomicGeometry g(3.0, 1.5, 2.0, {0, 0, 2});
  CHECK(g.mu() == 0.5);
  CHECK(g.r1()[2] == doctest::Approx(1.0));
  CHECK(g.r2()[2] == doctest::Approx(-1.0));
  CHECK(g.r_bar_norm() == doctest::Approx(2.0 / 1.5));
  const Vec3 x{0.2, -0.1, 0.4};
  CHECK(norm(g.unshifted(g.shifted(x)) - x) < 1e-15);
}

TEST_CASE("geometry preconditions") {
  CHECK_THROWS_AS(DiatomicGeometry(1.0, 2.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(DiatomicGeometry(2.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(DiatomicGeometry(2.0, 1.0, 1.0, {0, 0, 0}), DomainError);
}

TEST_CASE("chi pair matches the direct formula and is 1 on its own nucleus") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const DiatomicGeometry g(4.0, 1.0, 1.3, {1, 1, 0});
  for (int k = 0; k < 200; ++k) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    const ChiPair c = chi_pair(x, g);
    CHECK(c.chi1 * c.chi1 == doctest::Approx(chi1_squared_direct(x, g)).epsilon(1e-12));
    CHECK(std::abs(c.chi1 * c.chi1 + c.chi2 * c.chi2 - 1.0) <= 1e-12);
  }
  CHECK(chi_pair(g.r1(), g).chi1 == doctest::Approx(1.0));
  CHECK(chi_pair(g.r2(), g).chi2 == doctest::Approx(1.0));
}

TEST_CASE("grad_sum agrees with central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const DiatomicGeometry g(2.0, 2.0 * std::uniform_real_distribution<double>(0.1, 1.0)(rng), 1.0 + k * 0.05,
                             {u(rng), u(rng), 1.0});
    const Vec3 x{u(rng), u(rng), u(rng)};
    const double exact = grad_sum(x, g);
    CHECK(std::abs(grad_sum_fd(x, g, 1e-5) - exact) / exact <= 1e-6);
  }
}

TEST_CASE("sup bound is attained at the shifted origin and never exceeded") {
  const DiatomicGeometry g(5.0, 2.0, 1.7);
  const double bound = sup_grad_bound(g);
  CHECK(g.separation() * grad_sum(g.unshifted({0, 0, 0}), g) == doctest::Approx(bound).epsilon(1e-12));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 1000; ++k) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    CHECK(g.separation() * grad_sum(x, g) <= bound * (1 + 1e-12));
  }
}

TEST_CASE("attraction estimate margin is nonnegative") {
  const DiatomicGeometry g(3.0, 1.2, 2.5, {0.3, 0.1, 1});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int k = 0; k < 1000; ++k) {
    CHECK(attraction_estimate_margin({u(rng), u(rng), u(rng)}, 3.0, 1.2, g) >= -1e-12);
  }
  // equality holds where the Cauchy-Schwarz vectors are parallel; at a
  // nucleus the left side reduces to a single term
  CHECK_THROWS_AS(attraction_estimate_margin({0, 0, 0}, 3.0, 1.0, g), PreconditionError);
}

TEST_CASE("ims error budget") {
  // 3 sigma N (mu+1)^2 / mu
  CHECK(ims_error_budget(2, 1.0, 0.5, 10.0) == doctest::Approx(3.0 * 10.0 * 2.0 * 2.25 / 0.5));
  CHECK(ims_error_budget(2, 1.0, 0.5, 10.0) == ims_error_budget(2, 7.0, 0.5, 10.0));
  CHECK_THROWS(ims_error_budget(0, 1.0, 0.5, 10.0));
  CHECK_THROWS(ims_error_budget(1, 1.0, 1.5, 10.0));
}
