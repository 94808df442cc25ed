// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RELMOL_SPECIAL_FUNCTIONS_HPP
#define RELMOL_SPECIAL_FUNCTIONS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "relmol/vec3.hpp"

namespace relmol {

enum class QuadratureScheme { adaptive_subdivision, double_exponential };

/// Tolerances and refinement limits for every integral evaluated by the
/// library. A result is accepted when its error estimate is at most
/// max(absolute_tolerance, relative_tolerance * |value|).
struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::double_exponential;
  double absolute_tolerance = 1e-10;
  double relative_tolerance = 1e-8;
  int max_depth = 24;

  /// Throws DomainError when a tolerance is not strictly positive or the
  /// depth is outside [1, 64].
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Integrates f over [a, b]; b may be +infinity.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& q);

/// K_2(t) from t * int_0^inf exp(-t sqrt(s^2+1)) s^2 ds, evaluated by
/// quadrature (no series or asymptotic shortcut).
double bessel_k2(double t, const QuadratureSpec& q = {});

/// bessel_k2 together with its quadrature error estimate.
QuadratureResult bessel_k2_with_error(double t, const QuadratureSpec& q = {});

/// (2 pi)^-2 * int_{R^3} K_2(|y|) dy, the constant multiplying the squared
/// gradient sup-norm in the localization-error estimate.
double k2_mass_integral(const QuadratureSpec& q = {});
QuadratureResult k2_mass_integral_with_error(const QuadratureSpec& q = {});

/// (2 pi)^-2 alpha^-3 int_{R^3} K_2(|y|/alpha) dy, integrated directly in y.
/// Independent of alpha analytically.
double k2_scaled_mass_integral(double alpha, const QuadratureSpec& q = {});

/// A real scalar field with an analytic gradient and a known bound on the
/// gradient's sup-norm.
struct ScalarField {
  std::function<double(const Vec3&)> value;
  std::function<Vec3(const Vec3&)> gradient;
  double gradient_sup = 0.0;

  static ScalarField constant(double c);
  /// clamp(offset + slope . x, 0, 1)
  static ScalarField clamped_linear(double offset, const Vec3& slope);
};

struct KernelEvaluation {
  double value = 0.0;
  double error = 0.0;
};

/// Kernel of the relativistic IMS localization operator,
/// (2 pi)^-2 alpha^-3 |x-y|^-2 K_2(|x-y|/alpha) [chi(x) - chi(y)]^2.
/// Throws SingularPointError when x == y.
KernelEvaluation ims_kernel(const Vec3& x, const Vec3& y, double alpha,
                            const ScalarField& chi, const QuadratureSpec& q = {});

/// Same kernel with the chi difference supplied directly.
KernelEvaluation ims_kernel_from_difference(double distance, double alpha, double chi_difference,
                                            const QuadratureSpec& q = {});

/// Real wavefunction sampled on a uniform cubic grid centred at `origin`:
/// node (i, j, k) sits at origin + spacing * (i - (n-1)/2, ...).
class GriddedState {
public:
  GriddedState(std::size_t n, double spacing, const Vec3& origin, std::vector<double> values);

  /// Isotropic Gaussian whose density |psi|^2 has standard deviation
  /// `width` per axis, normalized on the grid.
  static GriddedState gaussian(std::size_t n, double spacing, const Vec3& origin,
                               const Vec3& center, double width);

  std::size_t n() const { return n_; }
  double spacing() const { return spacing_; }
  const Vec3& origin() const { return origin_; }
  std::span<const double> values() const { return values_; }
  Vec3 node(std::size_t i, std::size_t j, std::size_t k) const;
  double value(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[(i * n_ + j) * n_ + k];
  }
  /// sum |psi|^2 h^3
  double norm_squared() const;

private:
  std::size_t n_;
  double spacing_;
  Vec3 origin_;
  std::vector<double> values_;
};

/// <psi| L_chi |psi> evaluated as a lattice double sum over node pairs. The
/// self-cell term uses chi linearized at the node and the exact radial
/// integral of t^2 K_2(t) over the cell's equal-volume ball. Requires
/// ||psi||_2 = 1 within 1e-10.
double localization_error_form(const GriddedState& psi, const ScalarField& chi, double alpha,
                               const QuadratureSpec& q = {});

}  // namespace relmol

#endif  // RELMOL_SPECIAL_FUNCTIONS_HPP
