// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "relmol/localization.hpp"

#include <cmath>

#include "relmol/error.hpp"

namespace relmol {

DiatomicGeometry::DiatomicGeometry(double z1, double z2, double separation, const Vec3& axis)
    : z1_(z1), z2_(z2), separation_(separation) {
  if (!(z1 > 0.0) || !(z2 > 0.0) || !std::isfinite(z1) || !std::isfinite(z2)) {
    throw DomainError("DiatomicGeometry: charges must be finite and > 0");
  }
  if (z1 < z2) {
    throw PreconditionError("DiatomicGeometry: label the nuclei so that Z1 >= Z2 (swap them)");
  }
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw DomainError("DiatomicGeometry: separation R must be finite and > 0");
  }
  const double len = norm(axis);
  if (!(len > 0.0) || !std::isfinite(len)) throw DomainError("DiatomicGeometry: axis must be nonzero");
  r1_ = axis * (0.5 * separation / len);
  r2_ = -r1_;
}

Vec3 DiatomicGeometry::r_bar() const { return (r1_ - r2_) * (1.0 / (mu() + 1.0)); }

Vec3 DiatomicGeometry::shifted(const Vec3& x) const {
  const double m = mu();
  return x + (r1_ - r2_) * ((1.0 - m) / (2.0 * (m + 1.0)));
}

Vec3 DiatomicGeometry::unshifted(const Vec3& x_bar) const {
  const double m = mu();
  return x_bar - (r1_ - r2_) * ((1.0 - m) / (2.0 * (m + 1.0)));
}

namespace {

double weight_denominator(const Vec3& x_bar, const DiatomicGeometry& geo) {
  const double rb = geo.r_bar_norm();
  return dot(x_bar, x_bar) + geo.mu() * rb * rb;
}

}  // namespace

ChiPair chi_pair(const Vec3& x, const DiatomicGeometry& geo) {
  const double m = geo.mu();
  const Vec3 xb = geo.shifted(x);
  const Vec3 rb = geo.r_bar();
  const double scale = 1.0 / std::sqrt((m + 1.0) * weight_denominator(xb, geo));
  return {norm(xb + m * rb) * scale, std::sqrt(m) * norm(xb - rb) * scale};
}

double grad_sum(const Vec3& x, const DiatomicGeometry& geo) {
  const double m = geo.mu();
  const double r = geo.separation();
  const double d = weight_denominator(geo.shifted(x), geo);
  return m / ((m + 1.0) * (m + 1.0)) * r * r / (d * d);
}

double sup_grad_bound(const DiatomicGeometry& geo) {
  const double m = geo.mu();
  return (m + 1.0) * (m + 1.0) / (m * geo.separation());
}

double attraction_estimate_margin(const Vec3& x, double z1, double z2, const DiatomicGeometry& geo) {
  if (!(z1 > 0.0) || !(z2 > 0.0)) throw DomainError("attraction_estimate_margin: charges must be > 0");
  const double m = geo.mu();
  if (std::abs(z2 / z1 - m) > 1e-12 * std::max(1.0, m)) {
    throw PreconditionError("attraction_estimate_margin: Z2/Z1 does not match the geometry's mu");
  }
  const Vec3 xb = geo.shifted(x);
  const Vec3 rb = geo.r_bar();
  const double lhs_root = z2 * norm(xb + m * rb) + m * z1 * norm(xb - rb);
  const double rhs = (z2 * z2 + z1 * z1 * m) * (m + 1.0) * weight_denominator(xb, geo);
  return rhs - lhs_root * lhs_root;
}

double ims_error_budget(std::int64_t n, double r0, double mu, double sigma) {
  if (n < 1) throw DomainError("ims_error_budget: N must be >= 1");
  if (!(r0 > 0.0)) throw DomainError("ims_error_budget: R0 must be > 0");
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("ims_error_budget: mu must lie in (0, 1]");
  if (!(sigma > 0.0)) throw DomainError("ims_error_budget: sigma must be > 0");
  return 3.0 * sigma * static_cast<double>(n) * (mu + 1.0) * (mu + 1.0) / mu;
}

}  // namespace relmol
