// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RELMOL_STABILITY_BOUNDS_HPP
#define RELMOL_STABILITY_BOUNDS_HPP

#include <cstdint>

#include "relmol/report.hpp"

namespace relmol {

enum class ParticleStatistics { fermionic, no_symmetry };

const char* to_string(ParticleStatistics s);

/// Free constants of the bound chain. The theory only asserts that tau and
/// C exist, so the defaults of 1 are placeholders that reports flag.
struct BoundConfig {
  double epsilon = 0.5;
  double tau = 1.0;
  double dly_constant = 1.0;
  ParticleStatistics statistics = ParticleStatistics::fermionic;

  void validate() const;
};

/// tau n (no symmetry) or tau n^{1/3} (fermions).
double kappa(std::int64_t n, ParticleStatistics s, double tau);

/// 2 [1 + 1/(eps (1 - eps))] tau
double sigma(double epsilon, double tau);

/// Lower bound -Z^2 kappa(n) on the n-electron hydrogenic-type energy.
double lemma3_bound(std::int64_t n, double z, ParticleStatistics s, double tau);

struct DlyBound {
  /// -C (Z a)^{1/2} Z^2 - C Z^{5/2} r^{1/2} - C (Z a)^2 Z^2
  double full = 0.0;
  /// -C Z^2 - C Z^{5/2} r^{1/2}
  double simplified = 0.0;
};

/// Combined trace bound. Requires Z alpha <= 2/pi.
DlyBound dly_trace_bound(double z, double alpha, double r, double c);

/// n^{2/3} / Z (fermions) or 1 / Z (no symmetry).
double radius_choice(std::int64_t n, double z, ParticleStatistics s);

/// -[1 + 1/(eps (1 - eps))] kappa(n) Z, a lower bound on the left derivative of
/// the atomic energy in Z. The spectral hypotheses are not checked.
double theorem4_derivative_bound(std::int64_t n, double z, double epsilon, ParticleStatistics s,
                                 double tau);

/// Upper bound sigma kappa(N) with kappa taken at tau = 1.
double r0_inverse_bound(std::int64_t n, double epsilon, double tau, ParticleStatistics s);

struct MinElectronsResult {
  /// Smallest real N satisfying the inequality.
  double bound = 0.0;
  /// ceil(bound), at least 1.
  std::int64_t ceiling = 1;
  /// Z1 Z2 / (Z1 + Z2)
  double reduced_charge = 0.0;
  /// 1/2 + sqrt(1/4 + 3 sigma) for no symmetry; evaluated at N = bound for fermions.
  double factor = 0.0;
  /// |N factor(N) - reduced_charge| at the returned N.
  double residual = 0.0;
};

/// Smallest N with Z1 Z2/(Z1+Z2) <= N (1/2 + sqrt(1/4 + 3 sigma)) (no symmetry)
/// or <= N (1/2 + sqrt(1/4 + 3 sigma / N^{2/3})) (fermions, by bisection).
MinElectronsResult theorem1_min_electrons(double z1, double z2, double epsilon, double tau,
                                          ParticleStatistics s);

/// Right side of the fermionic electron-count inequality at real N > 0.
double fermionic_electron_capacity(double n, double sig);

/// N < 2 (Z1 + Z2) + 2
double lieb_upper_bound(double z1, double z2);

/// Exponent 2 - 1/30 of the binding-energy bound.
Rational binding_energy_exponent();
/// Exponent -1/3 + 11/210 of the bond-length bound.
Rational bond_length_exponent();

/// Binding-energy bound c1 Z^{59/30} and bond-length bound
/// (c1/c0)^{1/7} Z^{-59/210}, exponents stored exactly.
Report theorem2_report(double z, double c0, double c1, bool constants_defaulted = false);

struct BoundsInputs {
  double z1 = 1.0;
  double z2 = 1.0;
  std::int64_t n = 1;
  double alpha = 0.0;
  /// Radius for the trace bound; radius_choice(n, z1, statistics) when unset.
  double r = 0.0;
  double c0 = 1.0;
  double c1 = 1.0;
  /// Which free constants were left at defaults, for the report marker.
  bool tau_defaulted = true;
  bool c_defaulted = true;
  bool c0_defaulted = true;
  bool c1_defaulted = true;
};

/// Every closed-form bound for one configuration.
Report bounds_report(const BoundConfig& config, const BoundsInputs& in);

/// Re-evaluates a report entry produced by this module from its recorded
/// inputs. Throws DomainError for entries it does not own.
double recompute(const ReportEntry& e);

}  // namespace relmol

#endif  // RELMOL_STABILITY_BOUNDS_HPP
