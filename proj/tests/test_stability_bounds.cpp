// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "relmol/error.hpp"
#include "relmol/report.hpp"
#include "relmol/stability_bounds.hpp"

using namespace relmol;

TEST_CASE("rational arithmetic") {
  const Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a.str() == "-3/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(2) - Rational(1, 30)) == Rational(59, 30));
  CHECK((Rational(-1, 3) + Rational(11, 210)) == Rational(-59, 210));
  CHECK((Rational(59, 30) / Rational(-7)) == Rational(-59, 210));
  CHECK((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
  CHECK(Rational(1, 4).to_double() == 0.25);
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("basic constants") {
  CHECK(sigma(0.5, 1.0) == 10.0);
  CHECK(kappa(8, ParticleStatistics::fermionic, 1.0) == doctest::Approx(2.0));
  CHECK(kappa(8, ParticleStatistics::no_symmetry, 2.0) == 16.0);
  CHECK(lemma3_bound(8, 3.0, ParticleStatistics::no_symmetry, 1.0) == -72.0);
  CHECK(radius_choice(8, 2.0, ParticleStatistics::fermionic) == doctest::Approx(2.0));
  CHECK(radius_choice(8, 2.0, ParticleStatistics::no_symmetry) == 0.5);
  CHECK_THROWS_AS(sigma(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(sigma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(sigma(0.5, 0.0), DomainError);
}

TEST_CASE("trace bound gate and values") {
  const DlyBound b = dly_trace_bound(4.0, 0.0, 0.25, 1.0);
  // -C Z^2 (Z a)^{1/2} - C Z^{5/2} r^{1/2} - C (Z a)^2 Z^2 at a = 0
  CHECK(b.full == doctest::Approx(-std::pow(4.0, 2.5) * 0.5));
  CHECK(b.simplified == doctest::Approx(-16.0 - 16.0));
  CHECK_THROWS_AS(dly_trace_bound(1.0, 0.7, 1.0, 1.0), CriticalCouplingError);
  CHECK_NOTHROW(dly_trace_bound(1.0, 2.0 / std::numbers::pi, 1.0, 1.0));
}

TEST_CASE("minimal electron count without symmetry") {
  // Z1 = Z2 = 60: reduced charge 30, sigma = 10, factor 1/2 + sqrt(1/4 + 30) = 6
  const MinElectronsResult r = theorem1_min_electrons(60, 60, 0.5, 1.0, ParticleStatistics::no_symmetry);
  CHECK(r.factor == 6.0);
  CHECK(r.reduced_charge == 30.0);
  CHECK(r.bound == 5.0);
  CHECK(r.ceiling == 5);
}

TEST_CASE("fermionic electron count solves its inequality") {
  const double sig = sigma(0.5, 1.0);
  const MinElectronsResult r = theorem1_min_electrons(60, 60, 0.5, 1.0, ParticleStatistics::fermionic);
  CHECK(r.residual < 1e-10);
  CHECK(fermionic_electron_capacity(r.bound, sig) >= 30.0);
  CHECK(fermionic_electron_capacity(r.bound * (1.0 - 1e-9), sig) < 30.0);
  CHECK(r.ceiling == static_cast<std::int64_t>(std::ceil(r.bound)));
  // the capacity is increasing, so the root is unique
  CHECK(fermionic_electron_capacity(2.0, sig) > fermionic_electron_capacity(1.0, sig));
}

TEST_CASE("Lieb bound and exponents") {
  CHECK(lieb_upper_bound(1, 1) == 6.0);
  CHECK(binding_energy_exponent() == Rational(59, 30));
  CHECK(bond_length_exponent() == Rational(-59, 210));
  CHECK(binding_energy_exponent().str() == "59/30");
  CHECK(bond_length_exponent().str() == "-59/210");
}

TEST_CASE("theorem2 report") {
  const Report r = theorem2_report(100.0, 1.0, 1.0, true);
  CHECK(r.at("bond_length_lower_bound").value == doctest::Approx(0.2742).epsilon(1e-3));
  CHECK(r.at("binding_energy_exponent").exact == Rational(59, 30));
  bool marked = false;
  for (const auto& in : r.at("c2").inputs) marked = marked || in.unset_by_paper;
  CHECK(marked);
}

TEST_CASE("bounds report round trip") {
  BoundConfig cfg;
  cfg.statistics = ParticleStatistics::no_symmetry;
  BoundsInputs in;
  in.z1 = 60;
  in.z2 = 60;
  in.n = 4;
  in.alpha = 0.005;
  const Report r = bounds_report(cfg, in);
  CHECK(r.at("theorem1_min_electrons_ceiling").exact == Rational(5));
  CHECK(r.at("theorem1_factor").value == 6.0);
  std::size_t recomputed = 0;
  for (const ReportEntry& e : r.entries()) {
    if (e.exact || e.id == "binding_energy_exponent" || e.id == "bond_length_exponent") continue;
    CAPTURE(e.id);
    CHECK(recompute(e) == e.value);
    ++recomputed;
  }
  CHECK(recomputed >= 10);
  ReportEntry stranger{"not_a_bound", 1.0, std::nullopt, "", {}, "", ""};
  CHECK_THROWS_AS(recompute(stranger), DomainError);
}

TEST_CASE("bound configuration validation") {
  BoundConfig cfg;
  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  BoundsInputs in;
  in.z1 = 1.0;
  in.z2 = 2.0;
  in.alpha = 0.7;
  CHECK_THROWS_AS(bounds_report(BoundConfig{}, in), CriticalCouplingError);
}

TEST_CASE("report container") {
  Report r("t");
  r.add_value("a", 1.0);
  r.add_check({"c", false, 1.0, 0.5, ""});
  CHECK(r.size() == 1);
  CHECK_FALSE(r.all_passed());
  CHECK(r.find("b") == nullptr);
  CHECK_THROWS_AS(r.at("b"), DomainError);
  Report s("u");
  s.add_value("b", 2.0);
  r.append(s);
  CHECK(r.at("b").value == 2.0);
  CHECK_THROWS_AS(r.at("a").input("x"), DomainError);
}
