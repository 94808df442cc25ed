// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RELMOL_HERBST_HPP
#define RELMOL_HERBST_HPP

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "relmol/special_functions.hpp"

namespace relmol {

/// Largest Z*alpha for which the one-electron relativistic atom is bounded below.
inline constexpr double kCriticalCoupling = 2.0 / std::numbers::pi;

/// Nuclear charge and fine-structure constant. alpha == 0 is the
/// nonrelativistic limit.
class Coupling {
public:
  Coupling(double charge, double alpha);

  double charge() const { return charge_; }
  double alpha() const { return alpha_; }
  double gamma() const { return charge_ * alpha_; }

  bool bounded_regime() const { return gamma() <= kCriticalCoupling; }
  /// Throws CriticalCouplingError unless gamma < 2/pi.
  void require_subcritical(const char* who) const;

private:
  double charge_;
  double alpha_;
};

/// sqrt(alpha^-2 p^2 + alpha^-4) - alpha^-2, or p^2/2 at alpha == 0.
double kinetic_symbol(double p, double alpha);

struct MomentumGridSpec {
  std::size_t n = 800;
  /// Keeps the upper cutoff finite as Z*alpha approaches 2/pi.
  double guard = 1e-3;
};

/// Log-spaced momentum nodes with trapezoid weights in log p, so w_i = h p_i.
class MomentumGrid {
public:
  static MomentumGrid log_spaced(double p_min, double p_max, std::size_t n);
  /// p_min = 1e-3 Z, p_max = 1e3 Z max(1, Z alpha / (1 - pi Z alpha / 2 + guard)).
  static MomentumGrid for_coupling(const Coupling& c, const MomentumGridSpec& spec = {});

  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double log_step() const { return log_step_; }
  /// True when the node range satisfies the for_coupling cutoffs for c.
  bool covers(const Coupling& c, double guard = 1e-3) const;
  /// Every other node, starting with the first.
  MomentumGrid coarsened() const;

private:
  MomentumGrid(std::vector<double> nodes, double log_step);
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double log_step_;
};

struct SpectralResult {
  double energy = 0.0;
  /// u(p_i) = p_i phi(p_i), normalized so sum_i w_i u_i^2 = 1.
  std::vector<double> amplitude;
  /// Euclidean residual of the symmetric discrete eigenproblem.
  double residual = 0.0;
  /// |E(n) - E(n/2)| / 3 from the coarsened grid; zero if not requested.
  double discretization_error = 0.0;
  /// Richardson estimate E(n) + (E(n) - E(n/2)) / 3 of the continuum energy;
  /// equal to `energy` when the coarse solve is skipped.
  double extrapolated_energy = 0.0;
  bool converged = false;
};

struct HerbstSolverOptions {
  double residual_tolerance = 1e-9;
  bool estimate_discretization_error = true;
};

/// Ground state of T^alpha - Z/|x| in the s-wave, solved as the momentum-space
/// integral equation with the Coulomb log kernel ln|(p+q)/(p-q)|.
/// Requires Z alpha < 2/pi and a grid covering the coupling.
SpectralResult hydrogenic_ground_energy(const Coupling& c, const MomentumGrid& g,
                                        const HerbstSolverOptions& options = {});

/// Convenience overload that builds the grid from spec.
SpectralResult hydrogenic_ground_energy(const Coupling& c, const MomentumGridSpec& spec = {},
                                        const HerbstSolverOptions& options = {});

/// Rayleigh quotient of a sampled amplitude u(p_i) under the same discrete
/// operator hydrogenic_ground_energy diagonalizes.
double discrete_rayleigh_quotient(const Coupling& c, const MomentumGrid& g,
                                  std::span<const double> amplitude);

/// Normalized radial trial state described in momentum space by
/// u(p) = p phi(p) with int_0^inf u^2 dp = 1, plus <1/|x|>.
struct RadialTrial {
  std::function<double(double)> amplitude;
  double inverse_radius = 0.0;
  std::string label;

  /// psi(x) ~ |x|^-beta exp(-|x|), 0 <= beta < 1. beta = 0 is hydrogen 1s.
  static RadialTrial power_exponential(double beta, const QuadratureSpec& q = {});
};

struct LambdaRange {
  double lambda_min = 1.0;
  double lambda_max = 1e8;
  std::size_t count = 33;
};

enum class Boundedness { bounded, unbounded };

const char* to_string(Boundedness b);

struct DilationReport {
  Boundedness classification = Boundedness::bounded;
  std::vector<double> lambdas;
  std::vector<double> energies;
};

/// Energy threshold (in units of Z^2) below which a dilation scan counts as
/// running away to -infinity.
inline constexpr double kUnboundedEnergyThreshold = 1e3;

/// Scans E(lambda) = <psi_lambda, (T^alpha - Z/|x|) psi_lambda> for
/// psi_lambda(x) = lambda^{3/2} psi(lambda x). Unbounded when the energy at the
/// largest lambda is below -1e3 Z^2 and still decreasing.
DilationReport dilation_diagnostic(const Coupling& c, const RadialTrial& trial,
                                   const LambdaRange& range, const QuadratureSpec& q = {});

struct ConcavityReport {
  std::vector<double> charges;
  std::vector<double> energies;
  /// (E_{k+1} - E_k) / (Z_{k+1} - Z_k)
  std::vector<double> first_differences;
  /// 2 E[Z_k, Z_{k+1}, Z_{k+2}], i.e. the second-derivative estimate.
  std::vector<double> second_differences;
  double tolerance = 0.0;
  bool monotone = false;
  bool concave = false;
};

/// Checks Z -> E(1, Z; alpha) is nonincreasing and concave on the given
/// strictly increasing charges.
ConcavityReport concavity_check(std::span<const double> charges, double alpha,
                                const MomentumGridSpec& spec = {}, double tolerance = 1e-6);

/// Lower bound Z1 Z2 / (E(1, Z1) - E(1, Z1 + Z2)) on the equilibrium distance of
/// a one-electron diatomic, from the united-atom comparison. Requires Z1 >= Z2.
double united_atom_r0_bound(double z1, double z2, double alpha, const MomentumGridSpec& spec = {});

}  // namespace relmol

#endif  // RELMOL_HERBST_HPP
