// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "relmol/error.hpp"
#include "relmol/herbst.hpp"

using namespace relmol;

TEST_CASE("kinetic symbol") {
  CHECK(kinetic_symbol(3.0, 0.0) == 4.5);
  for (double a : {0.01, 0.1, 1.0}) {
    for (double p : {1e-3, 0.5, 2.0, 50.0}) {
      CAPTURE(a);
      CAPTURE(p);
      const double direct = std::sqrt(p * p / (a * a) + 1.0 / std::pow(a, 4)) - 1.0 / (a * a);
      CHECK(kinetic_symbol(p, a) == doctest::Approx(direct).epsilon(1e-9));
      CHECK(kinetic_symbol(p, a) <= 0.5 * p * p);
    }
  }
  // tiny p: no cancellation
  CHECK(kinetic_symbol(1e-9, 1.0) == doctest::Approx(0.5e-18).epsilon(1e-12));
  CHECK_THROWS_AS(kinetic_symbol(-1.0, 0.1), DomainError);
  CHECK_THROWS_AS(kinetic_symbol(1.0, -0.1), DomainError);
}

TEST_CASE("coupling gate") {
  CHECK(Coupling(1.0, 0.6).bounded_regime());
  CHECK_FALSE(Coupling(1.0, 0.7).bounded_regime());
  CHECK_THROWS_AS(hydrogenic_ground_energy(Coupling(1.0, 0.7)), CriticalCouplingError);
  CHECK_THROWS_AS(hydrogenic_ground_energy(Coupling(1.0, kCriticalCoupling)), CriticalCouplingError);
  CHECK_THROWS_AS(Coupling(0.0, 0.1), DomainError);
}

TEST_CASE("momentum grid") {
  const MomentumGrid g = MomentumGrid::log_spaced(1e-3, 1e3, 101);
  CHECK(g.size() == 101);
  CHECK(g.nodes().front() == doctest::Approx(1e-3));
  CHECK(g.nodes().back() == doctest::Approx(1e3));
  CHECK(g.weights()[10] == doctest::Approx(g.log_step() * g.nodes()[10]));
  CHECK(g.coarsened().size() == 51);
  CHECK_THROWS(MomentumGrid::log_spaced(1e-3, 1e3, 10));
  const Coupling c(2.0, 0.3);
  CHECK(MomentumGrid::for_coupling(c).covers(c));
}

TEST_CASE("nonrelativistic limit is -Z^2/2") {
  for (double z : {1.0, 2.5}) {
    CAPTURE(z);
    const SpectralResult r = hydrogenic_ground_energy(Coupling(z, 0.0));
    CHECK(r.converged);
    CHECK(r.energy < 0.0);
    CHECK(std::abs(r.energy / (-0.5 * z * z) - 1.0) <= 1e-4);
    // extrapolation removes the leading h^2 error
    CHECK(std::abs(r.extrapolated_energy / (-0.5 * z * z) - 1.0) <= 1e-6);
    CHECK(r.discretization_error > 0.0);
  }
}

TEST_CASE("amplitude is normalized under the grid weights") {
  const Coupling c(1.0, 0.2);
  const MomentumGrid g = MomentumGrid::for_coupling(c);
  const SpectralResult r = hydrogenic_ground_energy(c, g);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights()[i] * r.amplitude[i] * r.amplitude[i];
  CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(discrete_rayleigh_quotient(c, g, r.amplitude) == doctest::Approx(r.energy).epsilon(1e-10));
  // any other vector gives a larger quotient
  std::vector<double> trial(r.amplitude.begin(), r.amplitude.end());
  for (std::size_t i = 0; i < trial.size(); i += 7) trial[i] *= 1.1;
  CHECK(discrete_rayleigh_quotient(c, g, trial) > r.energy);
}

TEST_CASE("relativistic shift approaches first-order perturbation theory") {
  // Higher orders lower the ratio roughly linearly in Z alpha, so the
  // deviation must shrink as the coupling does.
  double previous_gap = INFINITY;
  for (double g : {0.05, 0.02, 0.01}) {
    CAPTURE(g);
    const double e = hydrogenic_ground_energy(Coupling(1.0, g)).extrapolated_energy;
    const double ratio = (e + 0.5) / oracle::hydrogen_shift(1.0, g);
    const double gap = std::abs(ratio - 1.0);
    CHECK(gap < previous_gap);
    CHECK(gap < 0.1);
    previous_gap = gap;
  }
  CHECK(previous_gap < 0.02);
}

TEST_CASE("shift scales as Z^4 alpha^2 at fixed Z alpha") {
  // E(Z, alpha) = Z^2 E(1, Z alpha) exactly for this operator.
  const double e1 = hydrogenic_ground_energy(Coupling(1.0, 0.3)).energy;
  const double e3 = hydrogenic_ground_energy(Coupling(3.0, 0.1)).energy;
  CHECK(e3 == doctest::Approx(9.0 * e1).epsilon(1e-9));
}

TEST_CASE("energy stays finite up to Z alpha = 0.6") {
  const SpectralResult r = hydrogenic_ground_energy(Coupling(1.0, 0.6));
  CHECK(r.converged);
  CHECK(std::isfinite(r.energy));
  CHECK(r.energy < hydrogenic_ground_energy(Coupling(1.0, 0.5)).energy);
}

TEST_CASE("dilation diagnostic separates the two regimes") {
  const RadialTrial trial = RadialTrial::power_exponential(0.9);
  CHECK(dilation_diagnostic(Coupling(1.0, 0.6), trial, {}).classification == Boundedness::bounded);
  CHECK(dilation_diagnostic(Coupling(1.0, 0.7), trial, {}).classification == Boundedness::unbounded);
  CHECK(dilation_diagnostic(Coupling(1.0, 0.0), trial, {}).classification == Boundedness::bounded);
  CHECK_THROWS_AS(RadialTrial::power_exponential(1.0), DomainError);
}

TEST_CASE("hydrogen trial has the exact nonrelativistic energy") {
  // psi ~ e^-|x|: <T> = 1/2, <1/|x|> = 1, so E(lambda = 1) = -1/2 at alpha = 0.
  const RadialTrial t = RadialTrial::power_exponential(0.0);
  CHECK(t.inverse_radius == doctest::Approx(1.0).epsilon(1e-9));
  LambdaRange range;
  range.count = 5;
  const DilationReport d = dilation_diagnostic(Coupling(1.0, 0.0), t, range);
  CHECK(d.lambdas.front() == 1.0);
  CHECK(d.energies.front() == doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("atomic energy is decreasing and concave in Z") {
  const std::vector<double> z{1.0, 1.5, 2.0};
  const ConcavityReport r = concavity_check(z, 0.1);
  CHECK(r.monotone);
  CHECK(r.concave);
  CHECK(r.energies.size() == 3);
  CHECK(r.second_differences.size() == 1);
}

TEST_CASE("united atom bound") {
  // alpha = 0: 1 / (-1/2 + 2) = 2/3
  const double b = united_atom_r0_bound(1.0, 1.0, 0.0);
  CHECK(b == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
  CHECK_THROWS_AS(united_atom_r0_bound(1.0, 2.0, 0.0), PreconditionError);
}
