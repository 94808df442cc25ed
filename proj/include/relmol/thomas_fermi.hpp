// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RELMOL_THOMAS_FERMI_HPP
#define RELMOL_THOMAS_FERMI_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "relmol/report.hpp"

namespace relmol {

/// Length scale b = (1/2)(3 pi / 4)^{2/3} of the neutral atom: r = b Z^{-1/3} x.
double tf_length_scale();

// ---------------------------------------------------------------------------
// Neutral atom

struct TFAtomMesh {
  /// Output grid covers x in [x_min, x_max], log-spaced.
  double x_min = 1e-4;
  double x_max = 200.0;
  std::size_t points = 400;
  /// Relative and absolute tolerance of the shooting integrator.
  double ode_tolerance = 1e-12;

  void validate() const;
};

struct TFAtomSolution {
  double charge = 0.0;
  /// phi'(0) of the universal screening function.
  double initial_slope = 0.0;
  std::vector<double> x;
  std::vector<double> phi;
  std::vector<double> dphi;
  /// Beyond this x the screening function is continued by its local power law.
  double tail_start = 0.0;
  double tail_power = 0.0;
  double tail_value = 0.0;

  double energy = 0.0;
  double kinetic = 0.0;
  double attraction = 0.0;
  double repulsion = 0.0;

  /// Electron density at physical radius r (r > 0).
  double density(double r) const;
  /// Screening function at dimensionless x >= 0, interpolated on the
  /// stored grid and continued by the tail law.
  double screening(double x) const;
};

/// Solves phi'' = phi^{3/2} / sqrt(x), phi(0) = 1, phi(inf) = 0 by bisection
/// on phi'(0), then assembles the spin-1/2 Thomas-Fermi energies for charge z.
TFAtomSolution solve_tf_atom(double z, const TFAtomMesh& mesh = {});

/// E^TF(1), the universal energy coefficient in E^TF(Z) = Z^{7/3} E^TF(1).
double tf_atom_energy_unit(const TFAtomMesh& mesh = {});

/// Outcome of integrating the screening equation from one trial slope.
enum class ShotOutcome { crosses_zero, turns_upward, undecided };

/// Integrates from phi(0) = 1, phi'(0) = slope until phi < 0, phi' > 0 or
/// x = x_max.
ShotOutcome shoot_tf(double slope, double x_max = 200.0, double tolerance = 1e-12);

// ---------------------------------------------------------------------------
// Diatomic molecule

/// Prolate spheroidal mesh around the two nuclei (foci at distance R). The
/// outer boundary is the spheroid through radius max(outer_radius,
/// outer_factor * r), measured in scaled units r = Z^{1/3} R with Z = Z1 + Z2.
struct TFDiatomicMesh {
  std::size_t n_sigma = 160;
  std::size_t n_tau = 120;
  double outer_radius = 60.0;
  double outer_factor = 6.0;
  /// Relative gradient norm at which Newton iteration stops.
  double residual_tolerance = 1e-8;
  std::size_t max_iterations = 500;
  /// Also solve on a half-resolution mesh to estimate the interaction error.
  bool estimate_mesh_error = true;

  void validate() const;
};

struct TFDiatomicSolution {
  double z1 = 0.0;
  double z2 = 0.0;
  double separation = 0.0;
  TFDiatomicMesh mesh;

  /// Mesh lines in prolate spheroidal coordinates and the focal half-distance.
  std::vector<double> sigma;
  std::vector<double> tau;
  double focal = 0.0;
  /// Effective potential phi = V_nuclear - psi_electron and density
  /// rho = (2 phi_+)^{3/2} / (3 pi^2), row-major (sigma, tau). Both are
  /// +infinity at the two nuclei.
  std::vector<double> potential;
  std::vector<double> density;

  double energy = 0.0;
  double electron_number = 0.0;
  /// Same-mesh energies of each nucleus alone; their errors cancel in the
  /// interaction.
  double atom_energy1 = 0.0;
  double atom_energy2 = 0.0;
  double interaction_energy = 0.0;
  /// |interaction(fine) - interaction(coarse)|, zero when not estimated.
  double mesh_tolerance = 0.0;

  double residual = 0.0;
  std::vector<double> residual_history;
  std::size_t iterations = 0;

  /// Z^{1/3} R with Z = Z1 + Z2.
  double scaled_separation() const;
  /// Cylindrical coordinates (axial, radial) of mesh node (i, j).
  std::pair<double, double> node_position(std::size_t i, std::size_t j) const;
};

struct TFFieldResult {
  double energy = 0.0;
  double electron_number = 0.0;
  double residual = 0.0;
  std::vector<double> residual_history;
  std::size_t iterations = 0;
  std::vector<double> potential;
};

/// Minimizes the neutral Thomas-Fermi functional for charges (z1, z2) at
/// separation r on the mesh, without reference atoms. Either charge may be 0.
TFFieldResult solve_tf_field(double z1, double z2, double separation, const TFDiatomicMesh& mesh);

/// Full molecular solve including same-mesh reference atoms and the
/// interaction energy E(Z1, Z2, R) - E(Z1) - E(Z2).
TFDiatomicSolution solve_tf_diatomic(double z1, double z2, double separation,
                                     const TFDiatomicMesh& mesh = {});

struct PowerLawFit {
  double coefficient = 0.0;
  double exponent = 0.0;
  /// Root-mean-square residual of the log-log fit.
  double residual = 0.0;
  /// Standard error of the fitted exponent.
  double exponent_error = 0.0;
};

/// Least-squares fit of interaction ~ c r^{-p} in log-log coordinates,
/// r being the scaled separation. Needs at least 4 solutions whose
/// interaction exceeds 10x their mesh tolerance.
PowerLawFit brezis_lieb_fit(std::span<const TFDiatomicSolution> solutions);

/// Same fit on raw (r, interaction, tolerance) samples.
PowerLawFit power_law_fit(std::span<const double> r, std::span<const double> interaction,
                          std::span<const double> tolerance);

// ---------------------------------------------------------------------------
// Scott correction

/// Samples of the universal Scott function on [0, 2/pi]. S(0) = 1/4 and the
/// values are nonincreasing.
class ScottTable {
public:
  ScottTable(std::vector<double> gammas, std::vector<double> values);
  /// The single anchor S(0) = 1/4, extended as a constant.
  static ScottTable nonrelativistic();

  /// Piecewise-linear interpolation, constant beyond the last sample.
  /// Throws CriticalCouplingError for gamma > 2/pi.
  double operator()(double gamma) const;

  std::span<const double> gammas() const { return gammas_; }
  std::span<const double> values() const { return values_; }
  bool is_nonrelativistic_default() const { return gammas_.size() == 1; }
  /// "nonrelativistic Scott" or "tabulated Scott".
  std::string label() const;

private:
  std::vector<double> gammas_;
  std::vector<double> values_;
};

/// 2 Z1^2 S(Z1 alpha) + 2 Z2^2 S(Z2 alpha), summed in a label-independent order.
double scott_term(double z1, double z2, double alpha, const ScottTable& table);

struct ScottConfig {
  /// Smallest admissible scaled separation r = Z^{1/3} R.
  double r0 = 1.0;
  /// Envelope coefficient of the Z^{59/30} error term.
  double c0 = 1.0;
  TFDiatomicMesh mesh;
};

struct ScottEnergy {
  double tf_energy = 0.0;
  double scott = 0.0;
  double total = 0.0;
  double envelope = 0.0;
  double scaled_separation = 0.0;
  std::string table_label;
};

/// Z^{7/3} E^TF(z, r) + Scott terms, given the molecular TF energy already
/// computed in physical units.
ScottEnergy scott_assemble(double z1, double z2, double tf_energy, double alpha,
                           const ScottTable& table, double c0 = 1.0);

/// Solves the molecular TF problem and assembles the Scott-corrected energy.
/// Requires max(Z1, Z2) alpha <= 2/pi and Z^{1/3} R > r0.
ScottEnergy scott_energy(double z1, double z2, double separation, double alpha,
                         const ScottTable& table, const ScottConfig& config = {});

struct Theorem2ChainInputs {
  double c0 = 1.0;
  double c1 = 1.0;
  double epsilon = 0.5;
  double tau = 1.0;
  /// Fraction z1 = Z1 / Z of the first nucleus.
  double z1_fraction = 0.5;
  /// Scaled TF interaction E^TF(z, r) - E^TF(z1) - E^TF(z2) and its r; leave
  /// r at 0 to omit the energy-difference entry.
  double tf_interaction = 0.0;
  double r = 0.0;
  bool constants_defaulted = false;
};

/// Bond-length and binding-energy bounds from c1 R0^-7 <= c0 Z^{59/30},
/// with the prerequisite R0 >= 1/(sigma Z^{1/3}) recorded alongside.
Report theorem2_chain(double z, double alpha, const Theorem2ChainInputs& in,
                      const ScottTable& table);

}  // namespace relmol

#endif  // RELMOL_THOMAS_FERMI_HPP
