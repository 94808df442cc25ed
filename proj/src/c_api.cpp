// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "relmol/relmol.h"

#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "relmol/error.hpp"
#include "relmol/herbst.hpp"
#include "relmol/special_functions.hpp"
#include "relmol/stability_bounds.hpp"
#include "relmol/thomas_fermi.hpp"
#include "relmol/verify.hpp"

#ifndef RELMOL_VERSION
#define RELMOL_VERSION "0.0.0"
#endif

struct relmol_report {
  relmol::Report report;
};

namespace {

thread_local std::string g_last_error;
thread_local double g_last_estimate = std::numeric_limits<double>::quiet_NaN();

relmol_status status_of(relmol::ErrorKind kind) {
  switch (kind) {
    case relmol::ErrorKind::domain: return RELMOL_ERR_DOMAIN;
    case relmol::ErrorKind::convergence: return RELMOL_ERR_CONVERGENCE;
    case relmol::ErrorKind::critical_coupling: return RELMOL_ERR_CRITICAL_COUPLING;
    case relmol::ErrorKind::precondition: return RELMOL_ERR_PRECONDITION;
    case relmol::ErrorKind::singular_point: return RELMOL_ERR_SINGULAR_POINT;
    case relmol::ErrorKind::insufficient_signal: return RELMOL_ERR_INSUFFICIENT_SIGNAL;
  }
  return RELMOL_ERR_INTERNAL;
}

relmol_status fail(relmol_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
relmol_status guarded(F&& f) {
  g_last_error.clear();
  g_last_estimate = std::numeric_limits<double>::quiet_NaN();
  try {
    f();
    return RELMOL_OK;
  } catch (const relmol::ConvergenceError& e) {
    g_last_estimate = e.last_estimate();
    return fail(RELMOL_ERR_CONVERGENCE, e.what());
  } catch (const relmol::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RELMOL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RELMOL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RELMOL_ERR_INTERNAL, "unknown error");
  }
}

relmol_status emit(relmol::Report rep, relmol_report** out) {
  *out = new relmol_report{std::move(rep)};
  return RELMOL_OK;
}

template <class F>
relmol_status run_report(relmol_report** out, F&& make) {
  if (out == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "output pointer is null");
  *out = nullptr;
  return guarded([&] { emit(make(), out); });
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

relmol::TFDiatomicMesh to_mesh(const relmol_tf_mesh& m) {
  relmol::TFDiatomicMesh mesh;
  mesh.n_sigma = m.n_sigma;
  mesh.n_tau = m.n_tau;
  mesh.outer_radius = m.outer_radius;
  mesh.outer_factor = m.outer_factor;
  mesh.residual_tolerance = m.residual_tolerance;
  mesh.max_iterations = m.max_iterations;
  mesh.estimate_mesh_error = m.estimate_mesh_error != 0;
  mesh.validate();
  return mesh;
}

relmol::ParticleStatistics to_statistics(relmol_statistics s) {
  switch (s) {
    case RELMOL_FERMIONIC: return relmol::ParticleStatistics::fermionic;
    case RELMOL_NO_SYMMETRY: return relmol::ParticleStatistics::no_symmetry;
  }
  throw relmol::DomainError("statistics must be fermionic or none");
}

void add_diatomic_entries(relmol::Report& rep, const relmol::TFDiatomicSolution& s) {
  const std::vector<relmol::ReportInput> in{
      {"Z1", s.z1, false}, {"Z2", s.z2, false}, {"R", s.separation, false}};
  rep.add({"scaled_separation", s.scaled_separation(), std::nullopt, "(Z1 + Z2)^(1/3) R", in, "", ""});
  rep.add({"energy", s.energy, std::nullopt, "E^TF(Z1, Z2, R)", in, "energy", ""});
  rep.add({"atom_energy1", s.atom_energy1, std::nullopt, "E^TF(Z1), same mesh", in, "energy", ""});
  rep.add({"atom_energy2", s.atom_energy2, std::nullopt, "E^TF(Z2), same mesh", in, "energy", ""});
  rep.add({"interaction_energy", s.interaction_energy, std::nullopt,
           "E^TF(Z1, Z2, R) - E^TF(Z1) - E^TF(Z2)", in, "energy", ""});
  rep.add({"mesh_tolerance", s.mesh_tolerance, std::nullopt,
           "|interaction(mesh) - interaction(mesh / 2)|", in, "energy", ""});
  rep.add({"electron_number", s.electron_number, std::nullopt, "int rho", in, "electrons", ""});
  rep.add({"residual", s.residual, std::nullopt, "relative gradient norm", in, "", ""});
  rep.add_value("iterations", static_cast<double>(s.iterations));
}

}  // namespace

extern "C" {

const char* relmol_version(void) { return RELMOL_VERSION; }

const char* relmol_status_string(relmol_status status) {
  switch (status) {
    case RELMOL_OK: return "ok";
    case RELMOL_ERR_DOMAIN: return "domain error";
    case RELMOL_ERR_CONVERGENCE: return "convergence failure";
    case RELMOL_ERR_CRITICAL_COUPLING: return "critical coupling exceeded";
    case RELMOL_ERR_PRECONDITION: return "precondition violated";
    case RELMOL_ERR_SINGULAR_POINT: return "singular point";
    case RELMOL_ERR_INSUFFICIENT_SIGNAL: return "insufficient signal";
    case RELMOL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RELMOL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* relmol_last_error(void) { return g_last_error.c_str(); }

double relmol_last_error_estimate(void) { return g_last_estimate; }

// --- reports ----------------------------------------------------------------

void relmol_report_free(relmol_report* report) { delete report; }

const char* relmol_report_title(const relmol_report* report) {
  return report == nullptr ? "" : report->report.title().c_str();
}

size_t relmol_report_size(const relmol_report* report) {
  return report == nullptr ? 0 : report->report.size();
}

relmol_status relmol_report_entry(const relmol_report* report, size_t index, relmol_entry* out) {
  if (report == nullptr || out == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->report.size()) return fail(RELMOL_ERR_INVALID_ARGUMENT, "entry index out of range");
  const relmol::ReportEntry& e = report->report.entries()[index];
  out->id = e.id.c_str();
  out->value = e.value;
  out->has_exact = e.exact.has_value() ? 1 : 0;
  out->exact_num = e.exact ? e.exact->num() : 0;
  out->exact_den = e.exact ? e.exact->den() : 1;
  out->formula = e.formula.c_str();
  out->units = e.units.c_str();
  out->note = e.note.c_str();
  out->input_count = e.inputs.size();
  return RELMOL_OK;
}

relmol_status relmol_report_input(const relmol_report* report, size_t entry, size_t index,
                                  relmol_input* out) {
  if (report == nullptr || out == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "null argument");
  if (entry >= report->report.size()) return fail(RELMOL_ERR_INVALID_ARGUMENT, "entry index out of range");
  const auto& inputs = report->report.entries()[entry].inputs;
  if (index >= inputs.size()) return fail(RELMOL_ERR_INVALID_ARGUMENT, "input index out of range");
  out->name = inputs[index].name.c_str();
  out->value = inputs[index].value;
  out->unset_by_paper = inputs[index].unset_by_paper ? 1 : 0;
  return RELMOL_OK;
}

size_t relmol_report_check_count(const relmol_report* report) {
  return report == nullptr ? 0 : report->report.checks().size();
}

relmol_status relmol_report_check(const relmol_report* report, size_t index, relmol_check* out) {
  if (report == nullptr || out == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->report.checks().size()) {
    return fail(RELMOL_ERR_INVALID_ARGUMENT, "check index out of range");
  }
  const relmol::Check& c = report->report.checks()[index];
  out->id = c.id.c_str();
  out->passed = c.passed ? 1 : 0;
  out->measured = c.measured;
  out->threshold = c.threshold;
  out->detail = c.detail.c_str();
  return RELMOL_OK;
}

int relmol_report_all_passed(const relmol_report* report) {
  return report != nullptr && report->report.all_passed() ? 1 : 0;
}

relmol_status relmol_report_recompute(const relmol_report* report, size_t index, double* out) {
  if (report == nullptr || out == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->report.size()) return fail(RELMOL_ERR_INVALID_ARGUMENT, "entry index out of range");
  return guarded([&] { *out = relmol::recompute(report->report.entries()[index]); });
}

// --- scalars ----------------------------------------------------------------

relmol_status relmol_bessel_k2(double t, double* out) {
  if (out == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "output pointer is null");
  return guarded([&] { *out = relmol::bessel_k2(t); });
}

relmol_status relmol_k2_mass_integral(double* value, double* error) {
  if (value == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "output pointer is null");
  return guarded([&] {
    const relmol::QuadratureResult r = relmol::k2_mass_integral_with_error();
    *value = r.value;
    if (error != nullptr) *error = r.error;
  });
}

relmol_status relmol_kinetic_symbol(double p, double alpha, double* out) {
  if (out == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "output pointer is null");
  return guarded([&] { *out = relmol::kinetic_symbol(p, alpha); });
}

// --- bounds -----------------------------------------------------------------

relmol_bounds_params relmol_bounds_default(void) {
  relmol_bounds_params p{};
  p.z1 = 1.0;
  p.z2 = 1.0;
  p.n = 1;
  p.alpha = 0.0;
  p.epsilon = 0.5;
  p.tau = 1.0;
  p.c = 1.0;
  p.c0 = 1.0;
  p.c1 = 1.0;
  p.r = 0.0;
  p.statistics = RELMOL_FERMIONIC;
  return p;
}

relmol_status relmol_bounds(const relmol_bounds_params* params, relmol_report** out) {
  if (params == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "params pointer is null");
  return run_report(out, [&] {
    relmol::BoundConfig cfg;
    cfg.epsilon = params->epsilon;
    cfg.tau = params->tau;
    cfg.dly_constant = params->c;
    cfg.statistics = to_statistics(params->statistics);
    relmol::BoundsInputs in;
    in.z1 = params->z1;
    in.z2 = params->z2;
    in.n = params->n;
    in.alpha = params->alpha;
    in.r = params->r;
    in.c0 = params->c0;
    in.c1 = params->c1;
    in.tau_defaulted = params->tau_set == 0;
    in.c_defaulted = params->c_set == 0;
    in.c0_defaulted = params->c0_set == 0;
    in.c1_defaulted = params->c1_set == 0;
    return relmol::bounds_report(cfg, in);
  });
}

relmol_theorem2_params relmol_theorem2_default(void) {
  relmol_theorem2_params p{};
  p.z = 2.0;
  p.alpha = 0.0;
  p.c0 = 1.0;
  p.c1 = 1.0;
  p.epsilon = 0.5;
  p.tau = 1.0;
  p.z1_fraction = 0.5;
  return p;
}

relmol_status relmol_theorem2(const relmol_theorem2_params* params, relmol_report** out) {
  if (params == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "params pointer is null");
  return run_report(out, [&] {
    relmol::Theorem2ChainInputs in;
    in.c0 = params->c0;
    in.c1 = params->c1;
    in.epsilon = params->epsilon;
    in.tau = params->tau;
    in.z1_fraction = params->z1_fraction;
    in.tf_interaction = params->tf_interaction;
    in.r = params->r;
    in.constants_defaulted = params->constants_set == 0;
    return relmol::theorem2_chain(params->z, params->alpha, in, relmol::ScottTable::nonrelativistic());
  });
}

// --- Thomas-Fermi -----------------------------------------------------------

relmol_tf_atom_params relmol_tf_atom_default(void) {
  const relmol::TFAtomMesh m;
  return {1.0, m.x_min, m.x_max, m.points, m.ode_tolerance};
}

relmol_status relmol_tf_atom(const relmol_tf_atom_params* params, relmol_report** out) {
  if (params == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "params pointer is null");
  return run_report(out, [&] {
    relmol::TFAtomMesh mesh;
    mesh.x_min = params->x_min;
    mesh.x_max = params->x_max;
    mesh.points = params->points;
    mesh.ode_tolerance = params->ode_tolerance;
    const relmol::TFAtomSolution s = relmol::solve_tf_atom(params->z, mesh);
    relmol::Report rep("tf-atom");
    const std::vector<relmol::ReportInput> in{{"Z", params->z, false}};
    rep.add({"initial_slope", s.initial_slope, std::nullopt, "phi'(0)", {}, "", ""});
    rep.add({"energy", s.energy, std::nullopt, "E^TF(Z) = Z^(7/3) E^TF(1)", in, "energy", ""});
    rep.add({"kinetic", s.kinetic, std::nullopt, "(3/10)(3 pi^2)^(2/3) int rho^(5/3)", in, "energy", ""});
    rep.add({"attraction", s.attraction, std::nullopt, "-Z int rho/|x|", in, "energy", ""});
    rep.add({"repulsion", s.repulsion, std::nullopt, "D(rho, rho)", in, "energy", ""});
    rep.add({"energy_unit", s.energy / std::pow(params->z, 7.0 / 3.0), std::nullopt,
             "E^TF(Z) / Z^(7/3)", in, "energy", ""});
    rep.add({"tail_start", s.tail_start, std::nullopt, "x beyond which phi follows a power law", {}, "", ""});
    rep.add({"tail_power", s.tail_power, std::nullopt, "-x phi'/phi at tail_start", {}, "", ""});
    const double virial = std::abs(s.energy + s.kinetic) / std::abs(s.energy);
    rep.add({"virial_defect", virial, std::nullopt, "|E + K| / |E|", in, "", ""});
    rep.add_check({"tf_atom.virial", virial <= 1e-3, virial, 1e-3, "|E + K| / |E|"});
    return rep;
  });
}

relmol_tf_mesh relmol_tf_mesh_default(void) {
  const relmol::TFDiatomicMesh m;
  return {m.n_sigma, m.n_tau, m.outer_radius, m.outer_factor, m.residual_tolerance,
          m.max_iterations, m.estimate_mesh_error ? 1 : 0};
}

relmol_tf_diatomic_params relmol_tf_diatomic_default(void) {
  return {1.0, 1.0, 2.0, relmol_tf_mesh_default()};
}

relmol_status relmol_tf_diatomic(const relmol_tf_diatomic_params* params, relmol_report** out) {
  if (params == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "params pointer is null");
  return run_report(out, [&] {
    const relmol::TFDiatomicMesh mesh = to_mesh(params->mesh);
    const relmol::TFDiatomicSolution s =
        relmol::solve_tf_diatomic(params->z1, params->z2, params->separation, mesh);
    relmol::Report rep("tf-diatomic");
    add_diatomic_entries(rep, s);
    rep.add_check({"tf_diatomic.converged", s.residual <= mesh.residual_tolerance, s.residual,
                   mesh.residual_tolerance, "relative gradient norm"});
    return rep;
  });
}

relmol_tf_fit_params relmol_tf_fit_default(void) {
  return {1.0, 1.0, 4.0, 10.0, 5, relmol_tf_mesh_default()};
}

relmol_status relmol_tf_fit(const relmol_tf_fit_params* params, relmol_report** out) {
  if (params == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "params pointer is null");
  return run_report(out, [&] {
    const relmol::TFDiatomicMesh mesh = to_mesh(params->mesh);
    if (!(params->r_min > 0.0) || !(params->r_max > params->r_min)) {
      throw relmol::DomainError("tf_fit: need 0 < r_min < r_max");
    }
    if (params->r_count < 4) throw relmol::DomainError("tf_fit: r_count must be >= 4");
    const double z = params->z1 + params->z2;
    const double zs = std::cbrt(z);
    std::vector<relmol::TFDiatomicSolution> sols;
    const double ratio = params->r_max / params->r_min;
    for (std::size_t k = 0; k < params->r_count; ++k) {
      const double r = params->r_min *
                       std::pow(ratio, static_cast<double>(k) / static_cast<double>(params->r_count - 1));
      sols.push_back(relmol::solve_tf_diatomic(params->z1, params->z2, r / zs, mesh));
    }
    relmol::Report rep("tf-fit");
    bool positive = true;
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& s : sols) {
      const double r = s.scaled_separation();
      rep.add({"interaction_r" + fmt("%.6g", r), s.interaction_energy, std::nullopt,
               "E^TF(Z1, Z2, R) - E^TF(Z1) - E^TF(Z2)",
               {{"Z1", s.z1, false}, {"Z2", s.z2, false}, {"r", r, false},
                {"mesh_tolerance", s.mesh_tolerance, false}},
               "energy", ""});
      positive = positive && s.interaction_energy > 0.0;
      smallest = std::min(smallest, s.interaction_energy);
    }
    rep.add_check({"tf_fit.interaction_positive", positive, smallest, 0.0, "minimum interaction"});
    const relmol::PowerLawFit fit = relmol::brezis_lieb_fit(sols);
    rep.add({"fit_exponent", fit.exponent, std::nullopt, "I / Z^(7/3) ~ c r^-p, p", {}, "", ""});
    rep.add({"fit_exponent_error", fit.exponent_error, std::nullopt, "standard error of p", {}, "", ""});
    rep.add({"fit_coefficient", fit.coefficient, std::nullopt, "I / Z^(7/3) ~ c r^-p, c", {}, "", ""});
    rep.add({"fit_residual", fit.residual, std::nullopt, "rms log residual", {}, "", ""});
    return rep;
  });
}

relmol_scott_params relmol_scott_default(void) {
  relmol_scott_params p{};
  p.z1 = 1.0;
  p.z2 = 1.0;
  p.separation = 2.0;
  p.alpha = 0.0;
  p.c0 = 1.0;
  p.c1 = 1.0;
  p.epsilon = 0.5;
  p.tau = 1.0;
  p.r0 = 1.0;
  p.mesh = relmol_tf_mesh_default();
  return p;
}

relmol_status relmol_scott(const relmol_scott_params* params, relmol_report** out) {
  if (params == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "params pointer is null");
  if (params->table_size > 0 && (params->table_gammas == nullptr || params->table_values == nullptr)) {
    return fail(RELMOL_ERR_INVALID_ARGUMENT, "scott table pointers are null");
  }
  return run_report(out, [&] {
    const relmol::ScottTable table =
        params->table_size == 0
            ? relmol::ScottTable::nonrelativistic()
            : relmol::ScottTable(
                  std::vector<double>(params->table_gammas, params->table_gammas + params->table_size),
                  std::vector<double>(params->table_values, params->table_values + params->table_size));
    relmol::ScottConfig cfg;
    cfg.r0 = params->r0;
    cfg.c0 = params->c0;
    cfg.mesh = to_mesh(params->mesh);
    const double z1 = params->z1;
    const double z2 = params->z2;
    const bool d = params->constants_set == 0;
    const relmol::ScottEnergy e =
        relmol::scott_energy(z1, z2, params->separation, params->alpha, table, cfg);
    const double hi = std::max(z1, z2);
    const double lo = std::min(z1, z2);
    const relmol::TFDiatomicSolution s = relmol::solve_tf_diatomic(hi, lo, params->separation, cfg.mesh);

    relmol::Report rep("scott");
    const std::vector<relmol::ReportInput> in{{"Z1", z1, false},
                                              {"Z2", z2, false},
                                              {"R", params->separation, false},
                                              {"alpha", params->alpha, false}};
    rep.add({"scaled_separation", e.scaled_separation, std::nullopt, "(Z1 + Z2)^(1/3) R", in, "", ""});
    rep.add({"tf_energy", e.tf_energy, std::nullopt, "E^TF(Z1, Z2, R)", in, "energy", ""});
    rep.add({"scott_term", e.scott, std::nullopt, "2 Z1^2 S(Z1 alpha) + 2 Z2^2 S(Z2 alpha)", in, "energy",
             e.table_label});
    rep.add({"total", e.total, std::nullopt, "E^TF + Scott", in, "energy", e.table_label});
    rep.add({"error_envelope", e.envelope, std::nullopt, "c0 (Z1 + Z2)^(59/30)",
             {{"Z", z1 + z2, false}, {"c0", params->c0, d}}, "energy", ""});
    rep.add({"tf_interaction", s.interaction_energy, std::nullopt, "E^TF(Z1, Z2, R) - E^TF(Z1) - E^TF(Z2)",
             in, "energy", ""});
    rep.add({"tf_interaction_mesh_tolerance", s.mesh_tolerance, std::nullopt,
             "|interaction(mesh) - interaction(mesh / 2)|", in, "energy", ""});

    relmol::Theorem2ChainInputs t2;
    t2.c0 = params->c0;
    t2.c1 = params->c1;
    t2.epsilon = params->epsilon;
    t2.tau = params->tau;
    t2.z1_fraction = hi / (z1 + z2);
    t2.tf_interaction = s.interaction_energy / std::pow(z1 + z2, 7.0 / 3.0);
    t2.r = e.scaled_separation;
    t2.constants_defaulted = d;
    rep.append(relmol::theorem2_chain(z1 + z2, params->alpha, t2, table));
    return rep;
  });
}

// --- Herbst operator ---------------------------------------------------------

relmol_herbst_params relmol_herbst_default(void) {
  const relmol::MomentumGridSpec g;
  const relmol::HerbstSolverOptions o;
  return {1.0, 0.0, g.n, g.guard, o.residual_tolerance, o.estimate_discretization_error ? 1 : 0};
}

relmol_status relmol_herbst_ground(const relmol_herbst_params* params, relmol_report** out) {
  if (params == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "params pointer is null");
  return run_report(out, [&] {
    const relmol::Coupling c(params->z, params->alpha);
    relmol::MomentumGridSpec spec;
    spec.n = params->grid_points;
    spec.guard = params->grid_guard;
    relmol::HerbstSolverOptions opt;
    opt.residual_tolerance = params->residual_tolerance;
    opt.estimate_discretization_error = params->estimate_discretization_error != 0;
    const relmol::SpectralResult r = relmol::hydrogenic_ground_energy(c, spec, opt);
    relmol::Report rep("herbst-ground");
    const std::vector<relmol::ReportInput> in{{"Z", params->z, false}, {"alpha", params->alpha, false}};
    const double z2 = params->z * params->z;
    rep.add({"gamma", c.gamma(), std::nullopt, "Z alpha", in, "", ""});
    rep.add({"energy", r.energy, std::nullopt, "inf spec (T^alpha - Z/|x|), s-wave", in, "energy", ""});
    rep.add({"nonrelativistic_energy", -0.5 * z2, std::nullopt, "-Z^2/2", in, "energy", ""});
    rep.add({"extrapolated_energy", r.extrapolated_energy, std::nullopt, "E(n) + (E(n) - E(n/2)) / 3", in,
             "energy", ""});
    rep.add({"relativistic_shift", r.extrapolated_energy + 0.5 * z2, std::nullopt,
             "extrapolated_energy + Z^2/2", in, "energy", ""});
    rep.add({"residual", r.residual, std::nullopt, "|A u - E u|", in, "", ""});
    rep.add({"discretization_error", r.discretization_error, std::nullopt, "|E(n) - E(n/2)| / 3", in,
             "energy", ""});
    rep.add_value("grid_points", static_cast<double>(params->grid_points));
    rep.add_check({"herbst.converged", r.converged && r.residual <= opt.residual_tolerance, r.residual,
                   opt.residual_tolerance, "eigen-residual"});
    return rep;
  });
}

relmol_dilation_params relmol_dilation_default(void) {
  const relmol::LambdaRange l;
  return {1.0, 0.0, 0.9, l.lambda_min, l.lambda_max, l.count};
}

relmol_status relmol_herbst_scan(const relmol_dilation_params* params, relmol_report** out) {
  if (params == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "params pointer is null");
  return run_report(out, [&] {
    const relmol::Coupling c(params->z, params->alpha);
    const relmol::RadialTrial trial = relmol::RadialTrial::power_exponential(params->beta);
    relmol::LambdaRange range;
    range.lambda_min = params->lambda_min;
    range.lambda_max = params->lambda_max;
    range.count = params->count;
    const relmol::DilationReport d = relmol::dilation_diagnostic(c, trial, range);
    relmol::Report rep("herbst-scan");
    rep.add({"gamma", c.gamma(), std::nullopt, "Z alpha",
             {{"Z", params->z, false}, {"alpha", params->alpha, false}}, "", ""});
    for (std::size_t k = 0; k < d.lambdas.size(); ++k) {
      char id[32];
      std::snprintf(id, sizeof id, "energy_%03zu", k);
      rep.add({id, d.energies[k], std::nullopt, "<psi_lambda, (T^alpha - Z/|x|) psi_lambda>",
               {{"lambda", d.lambdas[k], false}, {"beta", params->beta, false}}, "energy", ""});
    }
    const bool unbounded = d.classification == relmol::Boundedness::unbounded;
    rep.add({"unbounded", unbounded ? 1.0 : 0.0, std::nullopt,
             "E(lambda_max) < -1e3 Z^2 and still decreasing", {}, "", relmol::to_string(d.classification)});
    return rep;
  });
}

// --- verify -----------------------------------------------------------------

size_t relmol_verify_suite_count(void) { return relmol::verify_suites().size(); }

const char* relmol_verify_suite_name(size_t index) {
  const auto& s = relmol::verify_suites();
  return index < s.size() ? s[index].c_str() : nullptr;
}

relmol_status relmol_verify(const char* suite, uint64_t seed, relmol_report** out) {
  if (suite == nullptr) return fail(RELMOL_ERR_INVALID_ARGUMENT, "suite name is null");
  return run_report(out, [&] { return relmol::run_verify(suite, seed); });
}

}  // extern "C"
