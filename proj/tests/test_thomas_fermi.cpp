// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "relmol/error.hpp"
#include "relmol/herbst.hpp"
#include "relmol/thomas_fermi.hpp"

using namespace relmol;

namespace {

TFDiatomicMesh small_mesh() {
  TFDiatomicMesh m;
  m.n_sigma = 80;
  m.n_tau = 60;
  return m;
}

}  // namespace

TEST_CASE("screening slope agrees with an independent RK4 shooter") {
  const double reference = oracle::tf_slope();
  const TFAtomSolution s = solve_tf_atom(1.0);
  CHECK(s.initial_slope == doctest::Approx(reference).epsilon(1e-8));
  CHECK(std::abs(s.initial_slope + 1.588071) <= 1e-4);
  CHECK(shoot_tf(-1.60) == ShotOutcome::crosses_zero);
  CHECK(shoot_tf(-1.58) == ShotOutcome::turns_upward);
  CHECK(oracle::tf_shot(-1.60) == -1);
  CHECK(oracle::tf_shot(-1.58) == 1);
}

TEST_CASE("energy follows from the slope") {
  // E(1) = (12/7) (2 / (9 pi^2))^{1/3} phi'(0) for the spin-1/2 functional
  const double pi = std::numbers::pi;
  const double expected = 12.0 / 7.0 * std::cbrt(2.0 / (9.0 * pi * pi)) * oracle::tf_slope();
  CHECK(tf_atom_energy_unit() == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("virial theorem and energy decomposition") {
  const TFAtomSolution s = solve_tf_atom(3.0);
  CHECK(std::abs(s.energy + s.kinetic) / std::abs(s.energy) <= 1e-6);
  CHECK(s.attraction / s.energy == doctest::Approx(7.0 / 3.0).epsilon(1e-6));
  CHECK(s.repulsion / s.energy == doctest::Approx(-1.0 / 3.0).epsilon(1e-6));
  CHECK(s.kinetic + s.attraction + s.repulsion == doctest::Approx(s.energy).epsilon(1e-12));
}

TEST_CASE("Z^{7/3} scaling") {
  const double e1 = solve_tf_atom(1.0).energy;
  const double e10 = solve_tf_atom(10.0).energy;
  CHECK(std::abs(e10 / (std::pow(10.0, 7.0 / 3.0) * e1) - 1.0) <= 1e-6);
}

TEST_CASE("screening function shape and density normalization") {
  const TFAtomSolution s = solve_tf_atom(2.0);
  CHECK(s.screening(0.0) == doctest::Approx(1.0));
  double prev = 1.0;
  for (double x = 0.01; x < 500.0; x *= 1.3) {
    const double v = s.screening(x);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(s.tail_power > 2.0);
  // int 4 pi r^2 rho dr = Z, integrated in u = ln r
  auto f = [&](double u) {
    const double r = std::exp(u);
    return 4.0 * std::numbers::pi * r * r * r * s.density(r);
  };
  const double n = oracle::simpson(f, std::log(1e-10), std::log(1e5), 1e-10);
  CHECK(n == doctest::Approx(2.0).epsilon(1e-4));
  CHECK_THROWS_AS(s.density(0.0), DomainError);
}

TEST_CASE("atom mesh validation") {
  TFAtomMesh m;
  m.x_max = 10.0;
  CHECK_THROWS_AS(solve_tf_atom(1.0, m), DomainError);
  CHECK_THROWS_AS(solve_tf_atom(0.0), DomainError);
}

TEST_CASE("molecular solve: neutrality, positivity, label symmetry") {
  const TFDiatomicMesh m = small_mesh();
  const TFDiatomicSolution s = solve_tf_diatomic(2.0, 1.0, 2.0, m);
  CHECK(s.residual <= m.residual_tolerance);
  CHECK(s.electron_number == doctest::Approx(3.0).epsilon(0.01));
  CHECK(s.interaction_energy > 0.0);
  CHECK(s.interaction_energy > 10.0 * s.mesh_tolerance);
  CHECK(s.energy < s.atom_energy1 + s.atom_energy2 + 2.0 / 2.0);
  const TFDiatomicSolution t = solve_tf_diatomic(1.0, 2.0, 2.0, m);
  CHECK(t.energy == doctest::Approx(s.energy).epsilon(1e-8));
}

TEST_CASE("reference atom on the molecular mesh matches the ODE atom") {
  const TFDiatomicMesh m = small_mesh();
  const TFFieldResult a = solve_tf_field(1.0, 0.0, 1.0, m);
  CHECK(a.energy == doctest::Approx(tf_atom_energy_unit()).epsilon(2e-3));
  CHECK(a.electron_number == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("interaction decreases with separation and vanishes at large R") {
  const TFDiatomicMesh m = small_mesh();
  double prev = INFINITY;
  for (double r : {3.0, 5.0, 8.0}) {
    const TFDiatomicSolution s = solve_tf_diatomic(1.0, 1.0, r / std::cbrt(2.0), m);
    CHECK(s.interaction_energy > 0.0);
    CHECK(s.interaction_energy < prev);
    prev = s.interaction_energy;
  }
  const TFDiatomicSolution far = solve_tf_diatomic(1.0, 1.0, 10.0, m);
  CHECK(std::abs(far.energy - far.atom_energy1 - far.atom_energy2) <=
        0.01 * std::abs(far.atom_energy1 + far.atom_energy2));
}

TEST_CASE("molecular scaling relation") {
  // E(lambda Z1, lambda Z2, lambda^{-1/3} R) = lambda^{7/3} E(Z1, Z2, R)
  const TFDiatomicMesh m = small_mesh();
  const double lambda = 8.0;
  const TFDiatomicSolution a = solve_tf_diatomic(0.5, 0.5, 3.0, m);
  const TFDiatomicSolution b = solve_tf_diatomic(4.0, 4.0, 3.0 / std::cbrt(lambda), m);
  CHECK(b.energy == doctest::Approx(std::pow(lambda, 7.0 / 3.0) * a.energy).epsilon(5e-3));
  CHECK(b.interaction_energy ==
        doctest::Approx(std::pow(lambda, 7.0 / 3.0) * a.interaction_energy).epsilon(5e-3));
}

TEST_CASE("power-law fit recovers a synthetic exponent") {
  std::vector<double> r{4.0, 5.0, 6.5, 8.0, 10.0, 13.0};
  std::vector<double> i;
  std::vector<double> tol(r.size(), 1e-12);
  for (double x : r) i.push_back(0.3 * std::pow(x, -7.0));
  const PowerLawFit f = power_law_fit(r, i, tol);
  CHECK(f.exponent == doctest::Approx(7.0).epsilon(1e-10));
  CHECK(f.coefficient == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(f.residual < 1e-10);

  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> noisy;
  for (double x : r) noisy.push_back(0.3 * std::pow(x, -7.0) * std::exp(noise(rng)));
  const PowerLawFit g = power_law_fit(r, noisy, tol);
  CHECK(std::abs(g.exponent - 7.0) < 5.0 * g.exponent_error + 1e-3);
}

TEST_CASE("power-law fit refuses weak signals") {
  std::vector<double> r{4.0, 5.0, 6.0};
  std::vector<double> i{1e-3, 5e-4, 2e-4};
  std::vector<double> tol{1e-6, 1e-6, 1e-6};
  CHECK_THROWS_AS(power_law_fit(r, i, tol), InsufficientSignalError);
  r.push_back(7.0);
  i.push_back(1e-6);
  tol.push_back(1e-6);
  CHECK_THROWS_AS(power_law_fit(r, i, tol), InsufficientSignalError);
}

TEST_CASE("Scott table") {
  const ScottTable nr = ScottTable::nonrelativistic();
  CHECK(nr(0.0) == 0.25);
  CHECK(nr(0.5) == 0.25);
  CHECK(nr.label() == "nonrelativistic Scott");
  CHECK_THROWS_AS(nr(0.7), CriticalCouplingError);

  const ScottTable t({0.0, 0.2, 0.4}, {0.25, 0.24, 0.2});
  CHECK(t(0.1) == doctest::Approx(0.245));
  CHECK(t(0.3) == doctest::Approx(0.22));
  CHECK(t(0.6) == 0.2);
  CHECK(t.label() == "tabulated Scott");
  CHECK_THROWS_AS(ScottTable({0.0, 0.2}, {0.25, 0.26}), DomainError);
  CHECK_THROWS_AS(ScottTable({0.1, 0.2}, {0.25, 0.2}), DomainError);
  CHECK_THROWS_AS(ScottTable({0.0, 0.7}, {0.25, 0.2}), DomainError);
}

TEST_CASE("Scott term is label independent and reduces to Z^2/2 per nucleus") {
  const ScottTable nr = ScottTable::nonrelativistic();
  CHECK(scott_term(3.0, 2.0, 0.0, nr) == doctest::Approx(0.5 * 9.0 + 0.5 * 4.0));
  const ScottTable t({0.0, 0.2, 0.4}, {0.25, 0.24, 0.2});
  CHECK(scott_term(3.0, 1.7, 0.07, t) == scott_term(1.7, 3.0, 0.07, t));
}

TEST_CASE("Scott-corrected energy gates") {
  const ScottTable nr = ScottTable::nonrelativistic();
  ScottConfig cfg;
  cfg.mesh = small_mesh();
  cfg.mesh.estimate_mesh_error = false;
  CHECK_THROWS_AS(scott_energy(1.0, 1.0, 0.5, 0.0, nr, cfg), PreconditionError);
  CHECK_THROWS_AS(scott_energy(1.0, 1.0, 2.0, 0.7, nr, cfg), CriticalCouplingError);
  const ScottEnergy e = scott_energy(2.0, 1.0, 2.0, 0.1, nr, cfg);
  const ScottEnergy f = scott_energy(1.0, 2.0, 2.0, 0.1, nr, cfg);
  CHECK(e.total == f.total);
  CHECK(e.total == doctest::Approx(e.tf_energy + 2.5));
  CHECK(e.envelope == doctest::Approx(std::pow(3.0, 59.0 / 30.0)));
}

TEST_CASE("bond-length chain example") {
  Theorem2ChainInputs in;
  const Report r = theorem2_chain(100.0, 0.0, in, ScottTable::nonrelativistic());
  CHECK(r.at("bond_length_lower_bound").value == doctest::Approx(std::pow(100.0, -59.0 / 210.0)));
  CHECK(r.at("bond_length_lower_bound").value == doctest::Approx(0.2742).epsilon(1e-3));
  CHECK(r.at("binding_energy_exponent").exact->str() == "59/30");
  CHECK(r.at("bond_length_exponent").exact->str() == "-59/210");
  CHECK(r.find("energy_difference_lower_bound") == nullptr);
}
