// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "relmol/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "relmol/error.hpp"

namespace relmol {

namespace {

constexpr double kPi = std::numbers::pi;

// Double-exponential rules double their node count per refinement; beyond
// this many levels the abscissa tables get large without buying accuracy.
constexpr int kMaxDoubleExponentialRefinements = 12;

// Boost stops at its own tolerance using the last-level difference as the
// error estimate; asking for a little more keeps that estimate inside ours.
double internal_tolerance(const QuadratureSpec& q) {
  return std::max(1e-2 * q.relative_tolerance, 1e-15);
}

int de_refinements(const QuadratureSpec& q) {
  return std::min(q.max_depth, kMaxDoubleExponentialRefinements);
}

void require_converged(const QuadratureResult& r, const QuadratureSpec& q, const char* what) {
  const double allowed = std::max(q.absolute_tolerance, q.relative_tolerance * std::abs(r.value));
  if (!std::isfinite(r.value) || !(r.error <= allowed)) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (value " << r.value << ", error estimate "
       << r.error << ", allowed " << allowed << ")";
    throw ConvergenceError(os.str(), r.error);
  }
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(absolute_tolerance > 0.0) || !(relative_tolerance > 0.0)) {
    throw DomainError("quadrature tolerances must be strictly positive");
  }
  if (max_depth < 1 || max_depth > 64) {
    throw DomainError("quadrature max_depth must lie in [1, 64]");
  }
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& q) {
  q.validate();
  if (!(b > a)) {
    if (a == b) return {};
    throw DomainError("integrate: upper limit must exceed lower limit");
  }
  const bool infinite = std::isinf(b);
  QuadratureResult r;
  try {
    if (q.scheme == QuadratureScheme::adaptive_subdivision) {
      using boost::math::quadrature::gauss_kronrod;
      r.value = gauss_kronrod<double, 61>::integrate(f, a, b, static_cast<unsigned>(q.max_depth),
                                                     internal_tolerance(q), &r.error);
      // Boost reports a relative estimate; convert to absolute.
      r.error *= std::abs(r.value);
    } else if (infinite) {
      boost::math::quadrature::exp_sinh<double> integrator(de_refinements(q));
      double l1 = 0.0;
      r.value = integrator.integrate(f, a, b, internal_tolerance(q), &r.error, &l1);
      r.error *= std::max(std::abs(r.value), l1);
    } else {
      boost::math::quadrature::tanh_sinh<double> integrator(de_refinements(q));
      double l1 = 0.0;
      r.value = integrator.integrate(f, a, b, internal_tolerance(q), &r.error, &l1);
      r.error *= std::max(std::abs(r.value), l1);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("integrate: ") + e.what(),
                           std::numeric_limits<double>::infinity());
  }
  return r;
}

QuadratureResult bessel_k2_with_error(double t, const QuadratureSpec& q) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("bessel_k2: argument must be finite and > 0");
  }
  // Substitute s = c v so the integrand lives on an O(1) scale: the decay
  // length in s is 1/t for small t and 1/sqrt(t) for large t. The factor
  // exp(-t) is pulled out to avoid underflow in the integrand.
  const double c = t <= 1.0 ? 1.0 / t : 1.0 / std::sqrt(t);
  auto integrand = [t, c](double v) {
    if (v == 0.0) return 0.0;
    const double cv = c * v;
    if (cv > 1e150) return 0.0;
    const double cv2 = cv * cv;
    const double excess = cv2 / (std::sqrt(cv2 + 1.0) + 1.0);  // sqrt(cv2+1) - 1
    return std::exp(2.0 * std::log(v) - t * excess);
  };
  QuadratureResult r = integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), q);
  require_converged(r, q, "bessel_k2");
  const double prefactor = (t <= 1.0 ? 1.0 / (t * t) : 1.0 / std::sqrt(t)) * std::exp(-t);
  return {prefactor * r.value, prefactor * r.error};
}

double bessel_k2(double t, const QuadratureSpec& q) { return bessel_k2_with_error(t, q).value; }

QuadratureResult k2_mass_integral_with_error(const QuadratureSpec& q) {
  // (2pi)^-2 * 4pi * int t^2 K2(t) dt
  auto radial = [&q](double t) { return t > 1e-100 && t < 1e4 ? t * t * bessel_k2(t, q) : 0.0; };
  QuadratureResult r = integrate(radial, 0.0, std::numeric_limits<double>::infinity(), q);
  require_converged(r, q, "k2_mass_integral");
  return {r.value / kPi, r.error / kPi};
}

double k2_mass_integral(const QuadratureSpec& q) { return k2_mass_integral_with_error(q).value; }

double k2_scaled_mass_integral(double alpha, const QuadratureSpec& q) {
  if (!(alpha > 0.0)) throw DomainError("k2_scaled_mass_integral: alpha must be > 0");
  const double a3 = alpha * alpha * alpha;
  auto radial = [&](double r) {
    return r > 1e-100 * alpha && r < 1e4 * alpha ? 4.0 * kPi * r * r * bessel_k2(r / alpha, q) / a3 : 0.0;
  };
  QuadratureResult res = integrate(radial, 0.0, std::numeric_limits<double>::infinity(), q);
  require_converged(res, q, "k2_scaled_mass_integral");
  return res.value / (4.0 * kPi * kPi);
}

ScalarField ScalarField::constant(double c) {
  ScalarField f;
  f.value = [c](const Vec3&) { return c; };
  f.gradient = [](const Vec3&) { return Vec3{}; };
  f.gradient_sup = 0.0;
  return f;
}

ScalarField ScalarField::clamped_linear(double offset, const Vec3& slope) {
  ScalarField f;
  f.value = [offset, slope](const Vec3& x) { return std::clamp(offset + dot(slope, x), 0.0, 1.0); };
  f.gradient = [offset, slope](const Vec3& x) {
    const double raw = offset + dot(slope, x);
    return (raw > 0.0 && raw < 1.0) ? slope : Vec3{};
  };
  f.gradient_sup = norm(slope);
  return f;
}

KernelEvaluation ims_kernel_from_difference(double distance, double alpha, double chi_difference,
                                            const QuadratureSpec& q) {
  if (!(alpha > 0.0)) throw DomainError("ims_kernel: alpha must be > 0");
  if (!(distance > 0.0)) throw SingularPointError("ims_kernel: x == y is a singular point");
  const double d2 = chi_difference * chi_difference;
  if (d2 == 0.0) return {};
  const QuadratureResult k2 = bessel_k2_with_error(distance / alpha, q);
  const double factor = d2 / (4.0 * kPi * kPi * alpha * alpha * alpha * distance * distance);
  return {factor * k2.value, factor * k2.error};
}

KernelEvaluation ims_kernel(const Vec3& x, const Vec3& y, double alpha, const ScalarField& chi,
                            const QuadratureSpec& q) {
  const double distance = norm(x - y);
  if (distance == 0.0) throw SingularPointError("ims_kernel: x == y is a singular point");
  return ims_kernel_from_difference(distance, alpha, chi.value(x) - chi.value(y), q);
}

GriddedState::GriddedState(std::size_t n, double spacing, const Vec3& origin,
                           std::vector<double> values)
    : n_(n), spacing_(spacing), origin_(origin), values_(std::move(values)) {
  if (n < 2) throw DomainError("GriddedState: need at least 2 nodes per axis");
  if (!(spacing > 0.0)) throw DomainError("GriddedState: spacing must be > 0");
  if (values_.size() != n * n * n) throw DomainError("GriddedState: value count must be n^3");
}

GriddedState GriddedState::gaussian(std::size_t n, double spacing, const Vec3& origin,
                                    const Vec3& center, double width) {
  if (!(width > 0.0)) throw DomainError("GriddedState::gaussian: width must be > 0");
  std::vector<double> v(n * n * n);
  GriddedState s(n, spacing, origin, std::vector<double>(n * n * n, 0.0));
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec3 d = s.node(i, j, k) - center;
        const double val = std::exp(-dot(d, d) / (4.0 * width * width));
        v[(i * n + j) * n + k] = val;
        sum += val * val;
      }
  const double scale = 1.0 / std::sqrt(sum * spacing * spacing * spacing);
  for (double& val : v) val *= scale;
  return GriddedState(n, spacing, origin, std::move(v));
}

Vec3 GriddedState::node(std::size_t i, std::size_t j, std::size_t k) const {
  const double mid = 0.5 * static_cast<double>(n_ - 1);
  return origin_ + spacing_ * Vec3{static_cast<double>(i) - mid, static_cast<double>(j) - mid,
                                   static_cast<double>(k) - mid};
}

double GriddedState::norm_squared() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s * spacing_ * spacing_ * spacing_;
}

double localization_error_form(const GriddedState& psi, const ScalarField& chi, double alpha,
                               const QuadratureSpec& q) {
  if (!(alpha > 0.0)) throw DomainError("localization_error_form: alpha must be > 0");
  if (std::abs(psi.norm_squared() - 1.0) > 1e-10) {
    throw PreconditionError("localization_error_form: psi must be normalized on its grid");
  }
  const std::size_t n = psi.n();
  const double h = psi.spacing();
  const double h3 = h * h * h;
  const auto nn = static_cast<long>(n);

  std::vector<double> chi_at(n * n * n);
  std::vector<double> grad2_at(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec3 x = psi.node(i, j, k);
        chi_at[(i * n + j) * n + k] = chi.value(x);
        const Vec3 g = chi.gradient(x);
        grad2_at[(i * n + j) * n + k] = dot(g, g);
      }

  // Kernel weight per squared lattice distance, without the chi factor.
  const std::size_t max_d2 = 3 * (n - 1) * (n - 1);
  std::vector<double> weight(max_d2 + 1, std::numeric_limits<double>::quiet_NaN());
  auto kernel_weight = [&](std::size_t d2) {
    double& w = weight[d2];
    if (std::isnan(w)) {
      const double r = h * std::sqrt(static_cast<double>(d2));
      w = ims_kernel_from_difference(r, alpha, 1.0, q).value;
    }
    return w;
  };

  const auto values = psi.values();
  double pair_sum = 0.0;
  // Offsets d and -d contribute equally; visit the lexicographically
  // positive half and double.
  for (long di = 0; di < nn; ++di)
    for (long dj = (di == 0 ? 0 : 1 - nn); dj < nn; ++dj)
      for (long dk = ((di == 0 && dj == 0) ? 1 : 1 - nn); dk < nn; ++dk) {
        const auto d2 = static_cast<std::size_t>(di * di + dj * dj + dk * dk);
        double partial = 0.0;
        for (long i = 0; i + di < nn; ++i)
          for (long j = std::max(0L, -dj); j < nn && j + dj < nn; ++j)
            for (long k = std::max(0L, -dk); k < nn && k + dk < nn; ++k) {
              const std::size_t a = static_cast<std::size_t>((i * nn + j) * nn + k);
              const std::size_t b = static_cast<std::size_t>(((i + di) * nn + j + dj) * nn + k + dk);
              const double dc = chi_at[a] - chi_at[b];
              partial += values[a] * values[b] * dc * dc;
            }
        if (partial != 0.0) pair_sum += partial * kernel_weight(d2);
      }
  pair_sum *= 2.0 * h3 * h3;

  // Self cell: chi linearized, angular average of (grad chi . r)^2 is
  // |grad chi|^2 r^2 / 3, radial part integrated exactly over the ball of
  // the cell's volume.
  const double cell_radius = h * std::cbrt(3.0 / (4.0 * kPi));
  auto radial = [&q](double t) { return t > 1e-100 && t < 1e4 ? t * t * bessel_k2(t, q) : 0.0; };
  QuadratureResult self = integrate(radial, 0.0, cell_radius / alpha, q);
  double self_sum = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a) self_sum += values[a] * values[a] * grad2_at[a];
  self_sum *= h3 * self.value / (3.0 * kPi);

  return pair_sum + self_sum;
}

}  // namespace relmol
