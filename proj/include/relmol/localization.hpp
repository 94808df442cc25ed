// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RELMOL_LOCALIZATION_HPP
#define RELMOL_LOCALIZATION_HPP

#include <cstdint>

#include "relmol/vec3.hpp"

namespace relmol {

/// Two nuclei placed symmetrically about the origin, R2 = -R1, with the
/// labelling convention Z1 >= Z2 so that mu = Z2 / Z1 lies in (0, 1].
class DiatomicGeometry {
public:
  /// Nucleus 1 at +axis * R/2, nucleus 2 at -axis * R/2. `axis` need not be
  /// normalized but must be nonzero. Throws PreconditionError when z1 < z2.
  DiatomicGeometry(double z1, double z2, double separation, const Vec3& axis = {0.0, 0.0, 1.0});

  double z1() const { return z1_; }
  double z2() const { return z2_; }
  double separation() const { return separation_; }
  double mu() const { return z2_ / z1_; }
  const Vec3& r1() const { return r1_; }
  const Vec3& r2() const { return r2_; }

  /// (R1 - R2) / (mu + 1)
  Vec3 r_bar() const;
  /// |r_bar| = R / (mu + 1)
  double r_bar_norm() const { return separation_ / (mu() + 1.0); }
  /// x + (1 - mu) / (2 (mu + 1)) (R1 - R2)
  Vec3 shifted(const Vec3& x) const;
  /// Inverse of shifted().
  Vec3 unshifted(const Vec3& x_bar) const;

private:
  double z1_;
  double z2_;
  double separation_;
  Vec3 r1_;
  Vec3 r2_;
};

struct ChiPair {
  double chi1 = 0.0;
  double chi2 = 0.0;
};

/// Partition of unity chi1^2 + chi2^2 = 1 with chi1 = 1 on nucleus 1 and
/// chi2 = 1 on nucleus 2.
ChiPair chi_pair(const Vec3& x, const DiatomicGeometry& geo);

/// |grad chi1|^2 + |grad chi2|^2 in closed form,
/// mu / (mu+1)^2 * R^2 / (|x_bar|^2 + mu r_bar^2)^2.
double grad_sum(const Vec3& x, const DiatomicGeometry& geo);

/// (mu+1)^2 / (mu R), the value of grad_sum at x_bar = 0 times R.
double sup_grad_bound(const DiatomicGeometry& geo);

/// RHS - LHS of (Z2 |x_bar + mu r_bar| + mu Z1 |x_bar - r_bar|)^2
///   <= (Z2^2 + Z1^2 mu)(mu + 1)(|x_bar|^2 + mu r_bar^2).
/// Throws PreconditionError unless Z2/Z1 matches geo.mu() to 1e-12.
double attraction_estimate_margin(const Vec3& x, double z1, double z2, const DiatomicGeometry& geo);

/// Total localization-error term 3 sigma N (mu+1)^2 / mu. The equilibrium
/// distance enters the surrounding inequality only through sigma, so r0 is
/// validated but does not change the value.
double ims_error_budget(std::int64_t n, double r0, double mu, double sigma);

}  // namespace relmol

#endif  // RELMOL_LOCALIZATION_HPP
