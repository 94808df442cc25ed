// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "relmol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "relmol/error.hpp"
#include "relmol/herbst.hpp"
#include "relmol/localization.hpp"
#include "relmol/special_functions.hpp"
#include "relmol/stability_bounds.hpp"
#include "relmol/thomas_fermi.hpp"

namespace relmol {

namespace {

constexpr double kPi = std::numbers::pi;

void check(Report& rep, std::string id, bool passed, double measured, double threshold,
           std::string detail = {}) {
  rep.add_check({std::move(id), passed, measured, threshold, std::move(detail)});
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec3 random_point(std::mt19937_64& rng, double half_width) {
  return {uniform(rng, -half_width, half_width), uniform(rng, -half_width, half_width),
          uniform(rng, -half_width, half_width)};
}

DiatomicGeometry random_geometry(std::mt19937_64& rng) {
  const double z1 = uniform(rng, 0.1, 10.0);
  const double mu = uniform(rng, 0.05, 1.0);
  Vec3 axis = random_point(rng, 1.0);
  if (norm(axis) < 1e-3) axis = {0.0, 0.0, 1.0};
  return DiatomicGeometry(z1, z1 * mu, uniform(rng, 0.5, 5.0), axis);
}

// ---------------------------------------------------------------------------

Report verify_kernel(std::mt19937_64& rng) {
  Report rep("kernel");
  const double mass = k2_mass_integral();
  rep.add_value("k2_mass_integral", mass, "", "(2 pi)^-2 int K2(|y|) dy");
  check(rep, "kernel.mass_integral", std::abs(mass - 1.5) <= 1e-6, std::abs(mass - 1.5), 1e-6);

  double worst_scale = 0.0;
  for (double alpha : {0.5, 2.0}) {
    worst_scale = std::max(worst_scale, std::abs(k2_scaled_mass_integral(alpha) - mass));
  }
  check(rep, "kernel.scale_invariance", worst_scale <= 1e-8, worst_scale, 1e-8);

  bool monotone = true;
  double prev = bessel_k2(1e-3);
  monotone = monotone && prev > 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double t = 1e-3 * std::pow(3e4, k / 200.0);
    const double v = bessel_k2(t);
    monotone = monotone && v > 0.0 && v < prev;
    prev = v;
  }
  check(rep, "kernel.k2_positive_decreasing", monotone, monotone ? 1.0 : 0.0, 1.0,
        "200 log-spaced points on [1e-3, 30]");

  double worst_cov = 0.0;
  double worst_sym = 0.0;
  const ScalarField chi = ScalarField::clamped_linear(0.5, {0.3, -0.2, 0.1});
  for (int k = 0; k < 100; ++k) {
    const double d = uniform(rng, 0.05, 5.0);
    const double alpha = uniform(rng, 0.2, 2.0);
    const double lambda = uniform(rng, 0.5, 3.0);
    const double a = ims_kernel_from_difference(d, alpha, 0.1).value;
    const double b = ims_kernel_from_difference(lambda * d, lambda * alpha, 0.1).value;
    worst_cov = std::max(worst_cov, std::abs(b * std::pow(lambda, 5.0) / a - 1.0));
    const Vec3 x = random_point(rng, 3.0);
    const Vec3 y = random_point(rng, 3.0);
    const double lxy = ims_kernel(x, y, alpha, chi).value;
    const double lyx = ims_kernel(y, x, alpha, chi).value;
    worst_sym = std::max(worst_sym, std::abs(lxy - lyx));
  }
  check(rep, "kernel.scale_covariance", worst_cov <= 1e-10, worst_cov, 1e-10,
        "relative deviation from lambda^-5");
  check(rep, "kernel.symmetry", worst_sym == 0.0, worst_sym, 0.0);
  return rep;
}

Report verify_localization(std::mt19937_64& rng) {
  Report rep("localization");
  double worst_pou = 0.0;
  double worst_coord = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_ratio = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const DiatomicGeometry geo = random_geometry(rng);
    const Vec3 x = random_point(rng, 3.0 * geo.separation());
    const ChiPair c = chi_pair(x, geo);
    worst_pou = std::max(worst_pou, std::abs(c.chi1 * c.chi1 + c.chi2 * c.chi2 - 1.0));
    const Vec3 xb = geo.shifted(x);
    const Vec3 rb = geo.r_bar();
    worst_coord = std::max({worst_coord, norm(xb + geo.mu() * rb - (x - geo.r2())),
                            norm(xb - rb - (x - geo.r1()))});
    worst_margin = std::min(worst_margin, attraction_estimate_margin(x, geo.z1(), geo.z2(), geo));
    worst_ratio = std::max(worst_ratio, geo.separation() * grad_sum(x, geo) / sup_grad_bound(geo));
  }
  check(rep, "localization.partition_of_unity", worst_pou <= 1e-12, worst_pou, 1e-12);
  check(rep, "localization.coordinate_identities", worst_coord <= 1e-12, worst_coord, 1e-12);
  check(rep, "localization.attraction_margin", worst_margin >= -1e-12, worst_margin, -1e-12);
  check(rep, "localization.sup_bound", worst_ratio <= 1.0 + 1e-12, worst_ratio, 1.0,
        "max R grad_sum / sup_grad_bound");

  double worst_eq = 0.0;
  double worst_fd = 0.0;
  for (int k = 0; k < 100; ++k) {
    const DiatomicGeometry geo = random_geometry(rng);
    const Vec3 centre = geo.unshifted({0.0, 0.0, 0.0});
    worst_eq = std::max(worst_eq, std::abs(geo.separation() * grad_sum(centre, geo) /
                                               sup_grad_bound(geo) - 1.0));
    const Vec3 x = random_point(rng, 2.0 * geo.separation());
    const double h = 1e-5 * std::max(1.0, norm(geo.shifted(x)));
    double g2 = 0.0;
    for (std::size_t axis = 0; axis < 3; ++axis) {
      Vec3 e;
      e[axis] = h;
      const ChiPair p = chi_pair(x + e, geo);
      const ChiPair m = chi_pair(x - e, geo);
      const double d1 = (p.chi1 - m.chi1) / (2.0 * h);
      const double d2 = (p.chi2 - m.chi2) / (2.0 * h);
      g2 += d1 * d1 + d2 * d2;
    }
    const double exact = grad_sum(x, geo);
    worst_fd = std::max(worst_fd, std::abs(g2 - exact) / exact);
  }
  check(rep, "localization.sup_bound_attained", worst_eq <= 1e-9, worst_eq, 1e-9);
  check(rep, "localization.grad_sum_finite_difference", worst_fd <= 1e-6, worst_fd, 1e-6);
  return rep;
}

Report verify_herbst() {
  Report rep("herbst");
  const SpectralResult h = hydrogenic_ground_energy(Coupling(1.0, 1e-3));
  rep.add_value("energy_z1_alpha1e-3", h.energy, "energy");
  const double rel = std::abs(h.energy + 0.5) / 0.5;
  check(rep, "herbst.hydrogen_limit", rel <= 1e-4, rel, 1e-4);

  for (double g : {0.05, 0.1, 0.2}) {
    const double e = hydrogenic_ground_energy(Coupling(1.0, g)).extrapolated_energy;
    const double ratio = (e + 0.5) / (-0.625 * g * g);
    std::ostringstream id;
    id << "relativistic_shift_ratio_za" << g;
    rep.add_value(id.str(), ratio, "", "(E_extrapolated + Z^2/2) / (-(5/8) Z^4 alpha^2)");
    std::ostringstream cid;
    cid << "herbst.perturbative_shift_za" << g;
    check(rep, cid.str(), std::abs(ratio - 1.0) <= 0.1, std::abs(ratio - 1.0), 0.1);
  }

  const SpectralResult s6 = hydrogenic_ground_energy(Coupling(1.0, 0.6));
  rep.add_value("energy_za0.6", s6.energy, "energy");
  check(rep, "herbst.za0.6_finite", s6.converged && std::isfinite(s6.energy) && s6.energy < 0.0,
        s6.residual, 1e-9);

  MomentumGridSpec coarse;
  coarse.n = 400;
  const SpectralResult c1 = hydrogenic_ground_energy(Coupling(1.0, 0.1), coarse);
  MomentumGridSpec fine;
  fine.n = 800;
  const SpectralResult c2 = hydrogenic_ground_energy(Coupling(1.0, 0.1), fine);
  const double change = std::abs(c2.energy - c1.energy);
  const double allowed = 4.0 * std::max(c1.residual, c1.discretization_error);
  check(rep, "herbst.grid_refinement", change < allowed, change, allowed,
        "doubling n versus 4x the reported error estimate");

  {
    const Coupling c(1.0, 0.1);
    const MomentumGrid g = MomentumGrid::for_coupling(c);
    std::vector<double> trial;
    for (double p : g.nodes()) trial.push_back(p / ((1.0 + p * p) * (1.0 + p * p)));
    const double rq = discrete_rayleigh_quotient(c, g, trial);
    const double e = hydrogenic_ground_energy(c, g).energy;
    check(rep, "herbst.variational_consistency", e <= rq, e - rq, 0.0);
  }

  const RadialTrial trial = RadialTrial::power_exponential(0.9);
  const auto d5 = dilation_diagnostic(Coupling(1.0, 0.5), trial, {});
  const auto d6 = dilation_diagnostic(Coupling(1.0, 0.6), trial, {});
  const auto d7 = dilation_diagnostic(Coupling(1.0, 0.7), trial, {});
  const auto d0 = dilation_diagnostic(Coupling(1.0, 0.0), trial, {});
  check(rep, "herbst.dilation_bounded_za0.5", d5.classification == Boundedness::bounded, 0.5, kCriticalCoupling);
  check(rep, "herbst.dilation_bounded_za0.6", d6.classification == Boundedness::bounded, 0.6, kCriticalCoupling);
  check(rep, "herbst.dilation_unbounded_za0.7", d7.classification == Boundedness::unbounded, 0.7, kCriticalCoupling);
  check(rep, "herbst.dilation_nonrelativistic_bounded", d0.classification == Boundedness::bounded, 0.0, kCriticalCoupling);

  const std::vector<double> zs{1.0, 2.0, 3.0};
  const ConcavityReport cr0 = concavity_check(zs, 0.0);
  check(rep, "herbst.concavity_alpha0", cr0.monotone && cr0.concave, cr0.second_differences.at(0), cr0.tolerance);
  const std::vector<double> zs2{1.0, 4.0, 8.0};
  const ConcavityReport cr1 = concavity_check(zs2, 0.05);
  check(rep, "herbst.concavity_alpha0.05", cr1.monotone && cr1.concave, cr1.second_differences.at(0), cr1.tolerance);

  // E decreasing in Z and in alpha on a 3x3 grid.
  bool monotone = true;
  const std::vector<double> alphas{0.0, 0.05, 0.1};
  std::vector<std::vector<double>> e(3, std::vector<double>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) e[i][j] = hydrogenic_ground_energy(Coupling(zs[i], alphas[j])).energy;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i + 1 < 3) monotone = monotone && e[i + 1][j] < e[i][j];
      if (j + 1 < 3) monotone = monotone && e[i][j + 1] < e[i][j];
    }
  check(rep, "herbst.monotone_in_z_and_alpha", monotone, monotone ? 1.0 : 0.0, 1.0);

  double worst_kin = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double p = std::pow(10.0, -3.0 + 0.06 * k);
    for (double a : {0.01, 0.1, 1.0}) worst_kin = std::max(worst_kin, kinetic_symbol(p, a) - 0.5 * p * p);
  }
  check(rep, "herbst.kinetic_below_nonrelativistic", worst_kin <= 0.0, worst_kin, 0.0);

  const double r0 = united_atom_r0_bound(1.0, 1.0, 0.0);
  rep.add_value("united_atom_r0_bound_alpha0", r0, "length");
  check(rep, "herbst.united_atom_alpha0", std::abs(r0 - 2.0 / 3.0) <= 1e-4, std::abs(r0 - 2.0 / 3.0), 1e-4);
  return rep;
}

Report verify_tf_atom() {
  Report rep("tf-atom");
  const TFAtomSolution a = solve_tf_atom(1.0);
  rep.add_value("initial_slope", a.initial_slope);
  rep.add_value("energy_unit", a.energy, "energy", "E^TF(1)");
  check(rep, "tf_atom.slope", std::abs(a.initial_slope + 1.588071) <= 1e-4,
        std::abs(a.initial_slope + 1.588071), 1e-4);
  TFAtomMesh loose;
  loose.ode_tolerance = 1e-10;
  loose.points = 200;
  const double slope_loose = solve_tf_atom(1.0, loose).initial_slope;
  check(rep, "tf_atom.slope_mesh_stable", std::abs(slope_loose - a.initial_slope) <= 1e-4,
        std::abs(slope_loose - a.initial_slope), 1e-4);
  const double virial = std::abs(a.energy + a.kinetic) / std::abs(a.energy);
  check(rep, "tf_atom.virial", virial <= 1e-3, virial, 1e-3);
  const double sum = std::abs(a.kinetic + a.attraction + a.repulsion - a.energy);
  check(rep, "tf_atom.energy_decomposition", sum <= 1e-12, sum, 1e-12);
  const TFAtomSolution b = solve_tf_atom(10.0);
  const double scale = std::abs(b.energy / std::pow(10.0, 7.0 / 3.0) - a.energy) / std::abs(a.energy);
  check(rep, "tf_atom.scaling", scale <= 1e-6, scale, 1e-6);
  bool shape = a.phi.front() > 0.0;
  for (std::size_t k = 1; k < a.phi.size(); ++k) shape = shape && a.phi[k] > 0.0 && a.phi[k] < a.phi[k - 1];
  check(rep, "tf_atom.positive_decreasing", shape, shape ? 1.0 : 0.0, 1.0);
  return rep;
}

Report verify_tf_diatomic() {
  Report rep("tf-diatomic");
  const double e_half = solve_tf_atom(0.5).energy;
  TFDiatomicMesh mesh;

  const TFDiatomicSolution far = solve_tf_diatomic(0.5, 0.5, 10.0, mesh);
  const double split = std::abs(far.energy - 2.0 * e_half) / std::abs(2.0 * e_half);
  rep.add_value("energy_r10", far.energy, "energy");
  check(rep, "tf_diatomic.large_r_split", split <= 0.01, split, 0.01);
  const double nel = std::abs(far.electron_number - 1.0);
  check(rep, "tf_diatomic.electron_number", nel <= 0.005, nel, 0.005);

  std::vector<TFDiatomicSolution> sols;
  for (double r : {4.0, 5.0, 6.0, 8.0, 10.0}) {
    sols.push_back(r == 10.0 ? far : solve_tf_diatomic(0.5, 0.5, r, mesh));
  }
  bool positive = true;
  bool decreasing = true;
  double min_i = sols.front().interaction_energy;
  for (std::size_t k = 0; k < sols.size(); ++k) {
    positive = positive && sols[k].interaction_energy > 0.0;
    if (k > 0) decreasing = decreasing && sols[k].interaction_energy < sols[k - 1].interaction_energy;
    min_i = std::min(min_i, sols[k].interaction_energy);
  }
  check(rep, "tf_diatomic.interaction_positive", positive, min_i, 0.0);
  check(rep, "tf_diatomic.interaction_decreasing", decreasing, decreasing ? 1.0 : 0.0, 1.0);
  const PowerLawFit fit = brezis_lieb_fit(sols);
  rep.add_value("fit_exponent", fit.exponent, "", "interaction ~ c r^-p on r in [4, 10]");
  rep.add_value("fit_coefficient", fit.coefficient);
  check(rep, "tf_diatomic.fit_exponent", fit.exponent >= 6.5 && fit.exponent <= 7.5, fit.exponent, 7.0,
        "window [6.5, 7.5]");

  // Z = 8 at R versus Z = 1 at 2 R: E(Z, R) = Z^{7/3} E(z, Z^{1/3} R).
  TFDiatomicMesh quick = mesh;
  quick.estimate_mesh_error = false;
  const double big = solve_tf_diatomic(4.0, 4.0, 1.5, quick).energy;
  const double small = solve_tf_diatomic(0.5, 0.5, 3.0, quick).energy;
  const double dev = std::abs(big - 128.0 * small) / std::abs(big);
  check(rep, "tf_diatomic.scaling_relation", dev <= 0.005, dev, 0.005);
  return rep;
}

Report verify_bounds() {
  Report rep("bounds");
  const MinElectronsResult ns = theorem1_min_electrons(60, 60, 0.5, 1.0, ParticleStatistics::no_symmetry);
  check(rep, "bounds.theorem1_factor", ns.factor == 6.0, ns.factor, 6.0);
  check(rep, "bounds.theorem1_min_n", ns.bound == 5.0 && ns.ceiling == 5, ns.bound, 5.0);
  const MinElectronsResult fm = theorem1_min_electrons(60, 60, 0.5, 1.0, ParticleStatistics::fermionic);
  const double sig = sigma(0.5, 1.0);
  const bool violates = fermionic_electron_capacity(fm.bound - 1e-6, sig) < fm.reduced_charge;
  check(rep, "bounds.fermionic_root", fm.residual < 1e-10 && violates, fm.residual, 1e-10);
  check(rep, "bounds.exponent_binding", binding_energy_exponent().str() == "59/30", binding_energy_exponent().to_double(), 59.0 / 30.0);
  check(rep, "bounds.exponent_bond_length", bond_length_exponent().str() == "-59/210", bond_length_exponent().to_double(), -59.0 / 210.0);
  check(rep, "bounds.lieb", lieb_upper_bound(1, 1) == 6.0, lieb_upper_bound(1, 1), 6.0);
  bool chain = true;
  for (auto s : {ParticleStatistics::fermionic, ParticleStatistics::no_symmetry})
    for (std::int64_t n : {1, 8, 27, 100}) chain = chain && r0_inverse_bound(n, 0.3, 2.0, s) == sigma(0.3, 2.0) * kappa(n, s, 1.0);
  check(rep, "bounds.r0_inverse_chain", chain, chain ? 1.0 : 0.0, 1.0);
  const Report br = bounds_report(BoundConfig{}, BoundsInputs{60, 60, 8, 0.005});
  bool round_trip = true;
  for (const auto& e : br.entries()) round_trip = round_trip && recompute(e) == e.value;
  check(rep, "bounds.report_round_trip", round_trip, round_trip ? 1.0 : 0.0, 1.0);
  return rep;
}

Report verify_ims(std::mt19937_64& rng) {
  Report rep("ims");
  double worst = 0.0;
  int violations = 0;
  for (int k = 0; k < 100; ++k) {
    const double width = uniform(rng, 0.4, 1.2);
    const std::size_t n = 14;
    const double h = 8.0 * width / static_cast<double>(n - 1);
    const Vec3 centre = random_point(rng, 0.3 * width);
    const GriddedState psi = GriddedState::gaussian(n, h, {}, centre, width);
    const Vec3 slope = random_point(rng, 1.5);
    const ScalarField chi = ScalarField::clamped_linear(uniform(rng, 0.0, 1.0), slope);
    const double alpha = uniform(rng, 0.3, 2.0);
    const double value = localization_error_form(psi, chi, alpha);
    const double bound = 1.5 * chi.gradient_sup * chi.gradient_sup;
    if (bound > 0.0) worst = std::max(worst, value / bound);
    if (value > bound) ++violations;
  }
  rep.add_value("worst_ratio_to_bound", worst);
  check(rep, "ims.localization_error_bound", violations == 0, worst, 1.0, "100 random (psi, chi) samples");
  return rep;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"kernel", "localization", "herbst", "tf-atom",
                                              "tf-diatomic", "bounds", "ims", "all"};
  return names;
}

Report run_verify(const std::string& suite, std::uint64_t seed) {
  const auto& names = verify_suites();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw DomainError("run_verify: unknown suite '" + suite + "'");
  }
  std::mt19937_64 rng(seed);
  if (suite == "all") {
    Report all("all");
    for (const auto& s : names) {
      if (s != "all") all.append(run_verify(s, seed));
    }
    return all;
  }
  if (suite == "kernel") return verify_kernel(rng);
  if (suite == "localization") return verify_localization(rng);
  if (suite == "herbst") return verify_herbst();
  if (suite == "tf-atom") return verify_tf_atom();
  if (suite == "tf-diatomic") return verify_tf_diatomic();
  if (suite == "bounds") return verify_bounds();
  return verify_ims(rng);
}

}  // namespace relmol
