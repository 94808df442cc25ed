// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one line per criterion with the measured quantity, its
// tolerance and the wall time against its budget. Exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "relmol/error.hpp"
#include "relmol/herbst.hpp"
#include "relmol/localization.hpp"
#include "relmol/special_functions.hpp"
#include "relmol/stability_bounds.hpp"
#include "relmol/thomas_fermi.hpp"

using namespace relmol;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::vector<std::string> lines;

  void expect(bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + buf);
    passed = passed && ok;
  }
};

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

Vec3 random_point(std::mt19937_64& rng, double scale) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

DiatomicGeometry random_geometry(std::mt19937_64& rng) {
  const double z1 = uniform(rng, 0.5, 100.0);
  const double mu = uniform(rng, 0.05, 1.0);
  Vec3 axis = random_point(rng, 1.0);
  if (norm(axis) < 1e-3) axis = {0.0, 0.0, 1.0};
  return DiatomicGeometry(z1, mu * z1, uniform(rng, 0.1, 10.0), axis);
}

// E^TF(Z) of a neutral atom from the oracle's screening slope.
double oracle_atom_energy(double z, double slope) {
  return std::pow(z, 7.0 / 3.0) * 12.0 / 7.0 * std::cbrt(2.0 / (9.0 * kPi * kPi)) * slope;
}

Outcome criterion1() {
  Outcome o;
  const double mass = k2_mass_integral();
  o.expect(std::abs(mass - 1.5) <= 1e-6, "(2pi)^-2 int K2(|y|) dy = %.12f, |diff from 3/2| = %.2e <= 1e-6", mass,
           std::abs(mass - 1.5));
  // independent route: 4 pi (2 pi)^-2 int t^2 K2(t) dt with Boost's K2 and Simpson
  const double ref = oracle::t2k2_integral() / kPi;
  o.expect(std::abs(mass - ref) <= 1e-6, "oracle quadrature %.12f, |diff| = %.2e <= 1e-6", ref,
           std::abs(mass - ref));
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::mt19937_64 rng(20261015);
  double pou = 0.0;
  double ratio = 0.0;
  double margin = INFINITY;
  double cross = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const DiatomicGeometry geo = random_geometry(rng);
    const Vec3 x = random_point(rng, 3.0 * geo.separation());
    const ChiPair c = chi_pair(x, geo);
    pou = std::max(pou, std::abs(c.chi1 * c.chi1 + c.chi2 * c.chi2 - 1.0));
    const double mu = geo.mu();
    const double r = geo.separation();
    ratio = std::max(ratio, r * grad_sum(x, geo) / ((mu + 1.0) * (mu + 1.0) / (mu * r)));
    const double m = attraction_estimate_margin(x, geo.z1(), geo.z2(), geo);
    margin = std::min(margin, m);
    // same inequality written in the original coordinates
    const Vec3 rb = (1.0 / (mu + 1.0)) * (geo.r1() - geo.r2());
    const Vec3 xb = x - geo.r2() - mu * rb;
    const double lhs = std::pow(geo.z2() * norm(x - geo.r2()) + mu * geo.z1() * norm(x - geo.r1()), 2);
    const double rhs = (geo.z2() * geo.z2() + geo.z1() * geo.z1() * mu) * (mu + 1.0) *
                       (dot(xb, xb) + mu * dot(rb, rb));
    cross = std::max(cross, std::abs((rhs - lhs) - m) / rhs);
  }
  o.expect(pou <= 1e-12, "max |chi1^2 + chi2^2 - 1| = %.2e <= 1e-12 over 1e4 points", pou);
  o.expect(ratio <= 1.0 + 1e-12, "max R grad_sum / ((mu+1)^2/(mu R)) = %.15f <= 1", ratio);
  o.expect(margin >= -1e-12, "min attraction margin = %.3e >= -1e-12 over 1e4 points", margin);
  o.expect(cross <= 1e-9, "margin vs direct evaluation, max rel diff %.2e <= 1e-9", cross);

  double fd = 0.0;
  double eq = 0.0;
  for (int k = 0; k < 200; ++k) {
    const DiatomicGeometry geo = random_geometry(rng);
    const Vec3 x = random_point(rng, 2.0 * geo.separation());
    const double h = 1e-5 * std::max(1.0, norm(x));
    double g2 = 0.0;
    for (std::size_t a = 0; a < 3; ++a) {
      Vec3 e;
      e[a] = h;
      const ChiPair p = chi_pair(x + e, geo);
      const ChiPair m = chi_pair(x - e, geo);
      g2 += std::pow((p.chi1 - m.chi1) / (2.0 * h), 2) + std::pow((p.chi2 - m.chi2) / (2.0 * h), 2);
    }
    fd = std::max(fd, std::abs(g2 - grad_sum(x, geo)) / grad_sum(x, geo));
    const double mu = geo.mu();
    const double r = geo.separation();
    const Vec3 centre = geo.r2() + mu * (1.0 / (mu + 1.0)) * (geo.r1() - geo.r2());
    eq = std::max(eq, std::abs(r * grad_sum(centre, geo) / ((mu + 1.0) * (mu + 1.0) / (mu * r)) - 1.0));
  }
  o.expect(fd <= 1e-6, "grad_sum vs central differences, max rel diff %.2e <= 1e-6", fd);
  o.expect(eq <= 1e-9, "equality at x_bar = 0, max rel diff %.2e <= 1e-9", eq);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const SpectralResult h = hydrogenic_ground_energy(Coupling(1.0, 1e-3));
  const double rel = std::abs(h.energy + 0.5) / 0.5;
  o.expect(rel <= 1e-4, "Z=1 alpha=1e-3: E = %.10f, rel diff from -1/2 = %.2e <= 1e-4", h.energy, rel);
  for (double g : {0.01, 0.05, 0.1, 0.2}) {
    const SpectralResult s = hydrogenic_ground_energy(Coupling(1.0, g));
    const double ratio = (s.extrapolated_energy + 0.5) / oracle::hydrogen_shift(1.0, g);
    o.expect(std::abs(ratio - 1.0) <= 0.1,
             "Z alpha = %.2f: shift / (-(5/8) Z^4 alpha^2) = %.4f, |ratio - 1| = %.4f <= 0.1 (grid error %.1e)", g,
             ratio, std::abs(ratio - 1.0), s.discretization_error);
  }
  const RadialTrial trial = RadialTrial::power_exponential(0.9);
  const auto b6 = dilation_diagnostic(Coupling(1.0, 0.6), trial, {}).classification;
  const auto b7 = dilation_diagnostic(Coupling(1.0, 0.7), trial, {}).classification;
  o.expect(b6 == Boundedness::bounded, "dilation at Z alpha = 0.6: %s", to_string(b6));
  o.expect(b7 == Boundedness::unbounded, "dilation at Z alpha = 0.7: %s", to_string(b7));

  const double alpha = 0.05;
  const std::vector<double> z{1.0, 2.0, 3.0};
  const ConcavityReport c = concavity_check(z, alpha);
  // independent second difference from three separate solves
  std::vector<double> e;
  for (double zi : z) e.push_back(hydrogenic_ground_energy(Coupling(zi, alpha)).extrapolated_energy);
  const double second = e[2] - 2.0 * e[1] + e[0];
  o.expect(c.monotone && c.concave && e[1] < e[0] && e[2] < e[1] && second < 0.0,
           "E(Z) at Z = 1,2,3 (alpha = 0.05): %.6f %.6f %.6f, second difference %.6f < 0", e[0], e[1], e[2],
           second);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const double ref = oracle::tf_slope();
  const TFAtomSolution a = solve_tf_atom(1.0);
  o.expect(std::abs(a.initial_slope - ref) <= 1e-4 && std::abs(a.initial_slope + 1.588071) <= 1e-4,
           "phi'(0) = %.10f, RK4 bisection oracle %.10f, |diff| = %.2e <= 1e-4", a.initial_slope, ref,
           std::abs(a.initial_slope - ref));
  const double virial = std::abs(a.energy + a.kinetic) / std::abs(a.energy);
  o.expect(virial <= 1e-3, "|E + K| / |E| = %.2e <= 1e-3", virial);
  const TFAtomSolution b = solve_tf_atom(10.0);
  const double scale = std::abs(b.energy / std::pow(10.0, 7.0 / 3.0) - a.energy) / std::abs(a.energy);
  o.expect(scale <= 1e-6, "E(10)/10^{7/3} vs E(1): rel diff %.2e <= 1e-6", scale);
  const double eo = oracle_atom_energy(1.0, ref);
  o.expect(std::abs(a.energy - eo) / std::abs(eo) <= 1e-6, "E(1) = %.10f vs oracle %.10f", a.energy, eo);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const double slope = oracle::tf_slope();
  const double atoms = 2.0 * oracle_atom_energy(0.5, slope);
  const TFDiatomicMesh mesh;

  const TFDiatomicSolution far = solve_tf_diatomic(0.5, 0.5, 10.0, mesh);
  const double split = std::abs(far.energy - atoms) / std::abs(atoms);
  o.expect(split <= 0.01, "z = (1/2, 1/2), r = 10: |E - 2 E_atom| / |2 E_atom| = %.2e <= 1e-2", split);

  std::vector<TFDiatomicSolution> sols;
  bool positive = true;
  std::string values;
  for (double r : {4.0, 5.0, 6.0, 8.0, 10.0}) {
    sols.push_back(r == 10.0 ? far : solve_tf_diatomic(0.5, 0.5, r, mesh));
    positive = positive && sols.back().interaction_energy > 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.3e", sols.back().interaction_energy);
    values += buf;
  }
  o.expect(positive, "interaction positive at r = 4,5,6,8,10:%s", values.c_str());
  try {
    const PowerLawFit fit = brezis_lieb_fit(sols);
    o.expect(fit.exponent >= 6.5 && fit.exponent <= 7.5,
             "fitted exponent p = %.3f +- %.3f on r in [4, 10], window [6.5, 7.5]", fit.exponent,
             fit.exponent_error);
  } catch (const Error& e) {
    o.expect(false, "fit failed: %s", e.what());
  }

  TFDiatomicMesh quick = mesh;
  quick.estimate_mesh_error = false;
  const double big = solve_tf_diatomic(4.0, 4.0, 1.5, quick).energy;
  const double small = solve_tf_diatomic(0.5, 0.5, 3.0, quick).energy;
  const double dev = std::abs(big - std::pow(8.0, 7.0 / 3.0) * small) / std::abs(big);
  o.expect(dev <= 0.005, "E(Z=8, R) vs 8^{7/3} E(Z=1, 2R): rel diff %.2e <= 5e-3", dev);
  return o;
}

Outcome criterion6() {
  Outcome o;
  const MinElectronsResult ns = theorem1_min_electrons(60, 60, 0.5, 1.0, ParticleStatistics::no_symmetry);
  o.expect(ns.factor == 6.0 && ns.bound == 5.0 && ns.ceiling == 5,
           "no symmetry, Z1 = Z2 = 60, eps = 1/2, tau = 1: factor %.17g, min N %.17g (ceil %lld)", ns.factor,
           ns.bound, static_cast<long long>(ns.ceiling));
  const MinElectronsResult f = theorem1_min_electrons(60, 60, 0.5, 1.0, ParticleStatistics::fermionic);
  // sigma = 10 follows from the no-symmetry factor 1/2 + sqrt(1/4 + 3 sigma) = 6
  auto cap = [](double n) { return n * (0.5 + std::sqrt(0.25 + 30.0 / std::cbrt(n * n))); };
  const double res = std::abs(cap(f.bound) - 30.0);
  o.expect(res < 1e-10 && cap(f.bound * (1.0 - 1e-9)) < 30.0,
           "fermionic root N = %.12f, independent residual %.2e < 1e-10", f.bound, res);
  o.expect(binding_energy_exponent().str() == "59/30" && bond_length_exponent().str() == "-59/210",
           "exponents render as %s and %s", binding_energy_exponent().str().c_str(),
           bond_length_exponent().str().c_str());
  o.expect(lieb_upper_bound(1, 1) == 6.0, "Lieb bound (1, 1): N < %.17g", lieb_upper_bound(1, 1));
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  int violations = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 14;
    const double width = uniform(rng, 0.4, 1.2);
    const double h = 8.0 * width / static_cast<double>(n - 1);
    // two-centre real state, normalized on the grid
    const Vec3 c1 = random_point(rng, 0.4 * width);
    const Vec3 c2 = random_point(rng, 0.4 * width);
    const double w2 = uniform(rng, -1.0, 1.0);
    std::vector<double> v(n * n * n);
    const GriddedState shape(n, h, {}, v);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          const Vec3 x = shape.node(i, j, l);
          const double f = std::exp(-dot(x - c1, x - c1) / (4.0 * width * width)) +
                           w2 * std::exp(-dot(x - c2, x - c2) / (2.0 * width * width));
          v[(i * n + j) * n + l] = f;
          s += f * f;
        }
    for (double& x : v) x /= std::sqrt(s * h * h * h);
    const GriddedState psi(n, h, {}, std::move(v));
    const ScalarField chi = ScalarField::clamped_linear(uniform(rng, 0.0, 1.0), random_point(rng, 1.5));
    const double alpha = uniform(rng, 0.3, 2.0);
    const double value = localization_error_form(psi, chi, alpha);
    const double bound = 1.5 * chi.gradient_sup * chi.gradient_sup;
    if (value > bound) ++violations;
    if (bound > 0.0) worst = std::max(worst, value / bound);
  }
  o.expect(violations == 0, "%d violations of <psi|L|psi> <= (3/2)||grad chi||^2 in 100 samples, worst ratio %.4f",
           violations, worst);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "kernel constant", 1.0, criterion1},
      {2, "localization identities", 10.0, criterion2},
      {3, "relativistic one-electron solver", 300.0, criterion3},
      {4, "Thomas-Fermi atom", 30.0, criterion4},
      {5, "Thomas-Fermi diatomic", 600.0, criterion5},
      {6, "bound calculators", 1.0, criterion6},
      {7, "localization-error bound", 120.0, criterion7},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, "threw: %s", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget;
    const bool ok = o.passed && in_time;
    if (!ok) ++failed;
    std::printf("criterion %d %-34s %s  (runtime %.2f s, budget %.0f s)\n", c.id, c.name, ok ? "PASS" : "FAIL",
                secs, c.budget);
    for (const std::string& l : o.lines) std::printf("    %s\n", l.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
