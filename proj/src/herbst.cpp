// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "relmol/herbst.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "relmol/error.hpp"

namespace relmol {

namespace {

constexpr double kPi = std::numbers::pi;

// ln coth(|s|/2): the s-wave Coulomb kernel ln|(p+q)/(p-q)| written in the
// log variables t = ln p, t' = ln q with s = t' - t.
double log_kernel(double s) {
  s = std::abs(s);
  if (s > 1.0) {
    const double e = std::exp(-s);
    return std::log1p(e) - std::log1p(-e);
  }
  return -std::log(std::tanh(0.5 * s));
}

// Product-integration weights W_m = int k(s) hat(s - m h) ds for piecewise
// linear interpolation on a uniform grid of step h. The log singularity at
// s = 0 is integrated exactly by a double-exponential rule.
std::vector<double> log_kernel_weights(double h, std::size_t count) {
  std::vector<double> w(count, 0.0);
  boost::math::quadrature::tanh_sinh<double> singular(10);
  using smooth = boost::math::quadrature::gauss<double, 20>;
  auto rising = [h](double lo) {
    return [h, lo](double s) { return log_kernel(s) * (s - lo) / h; };
  };
  auto falling = [h](double hi) {
    return [h, hi](double s) { return log_kernel(s) * (hi - s) / h; };
  };
  if (count > 0) w[0] = 2.0 * singular.integrate(falling(h), 0.0, h);
  if (count > 1) {
    w[1] = singular.integrate(rising(0.0), 0.0, h) + smooth::integrate(falling(2.0 * h), h, 2.0 * h);
  }
  for (std::size_t m = 2; m < count; ++m) {
    const double c = static_cast<double>(m) * h;
    w[m] = smooth::integrate(rising(c - h), c - h, c) + smooth::integrate(falling(c + h), c, c + h);
  }
  return w;
}

Eigen::MatrixXd herbst_matrix(const Coupling& c, const MomentumGrid& g) {
  const std::size_t n = g.size();
  const auto p = g.nodes();
  const std::vector<double> w = log_kernel_weights(g.log_step(), n);
  const double coulomb = c.charge() / kPi;
  Eigen::MatrixXd a(n, n);
  std::vector<double> sqrt_p(n);
  for (std::size_t i = 0; i < n; ++i) sqrt_p[i] = std::sqrt(p[i]);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t m = i > j ? i - j : j - i;
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          -coulomb * sqrt_p[i] * sqrt_p[j] * w[m];
    }
    a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += kinetic_symbol(p[j], c.alpha());
  }
  return a;
}

struct LowestPair {
  double value;
  Eigen::VectorXd vector;  // unit Euclidean norm
  double residual;
};

LowestPair lowest_eigenpair(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("hydrogenic_ground_energy: eigenvalue iteration failed",
                           std::numeric_limits<double>::infinity());
  }
  const double e0 = es.eigenvalues()(0);
  // Inverse iteration just below the lowest eigenvalue keeps the shifted
  // matrix positive definite.
  const double shift = e0 - 1e-7 * std::max(1.0, std::abs(e0));
  Eigen::MatrixXd shifted = a;
  shifted.diagonal().array() -= shift;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw ConvergenceError("hydrogenic_ground_energy: shifted factorization failed",
                           std::numeric_limits<double>::infinity());
  }
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows()).normalized();
  for (int it = 0; it < 4; ++it) v = llt.solve(v).normalized();
  if (v.sum() < 0.0) v = -v;
  const Eigen::VectorXd av = a * v;
  const double rq = v.dot(av);
  return {rq, v, (av - rq * v).norm()};
}

}  // namespace

Coupling::Coupling(double charge, double alpha) : charge_(charge), alpha_(alpha) {
  if (!(charge > 0.0) || !std::isfinite(charge)) throw DomainError("Coupling: Z must be > 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("Coupling: alpha must be >= 0");
}

void Coupling::require_subcritical(const char* who) const {
  if (!(gamma() < kCriticalCoupling)) {
    std::ostringstream os;
    os << who << ": Z*alpha = " << gamma() << " is not below the critical coupling 2/pi = "
       << kCriticalCoupling;
    throw CriticalCouplingError(os.str());
  }
}

double kinetic_symbol(double p, double alpha) {
  if (!(p >= 0.0)) throw DomainError("kinetic_symbol: p must be >= 0");
  if (!(alpha >= 0.0)) throw DomainError("kinetic_symbol: alpha must be >= 0");
  // alpha^-2 (sqrt(alpha^2 p^2 + 1) - 1), rationalized; reduces to p^2/2 at alpha = 0.
  const double ap = alpha * p;
  return p * p / (std::sqrt(ap * ap + 1.0) + 1.0);
}

MomentumGrid::MomentumGrid(std::vector<double> nodes, double log_step)
    : nodes_(std::move(nodes)), log_step_(log_step) {
  weights_.reserve(nodes_.size());
  for (double p : nodes_) weights_.push_back(log_step_ * p);
}

MomentumGrid MomentumGrid::log_spaced(double p_min, double p_max, std::size_t n) {
  if (n < 64) throw DomainError("MomentumGrid: need at least 64 nodes");
  if (!(p_min > 0.0) || !(p_max > p_min)) {
    throw DomainError("MomentumGrid: need 0 < p_min < p_max");
  }
  const double t0 = std::log(p_min);
  const double h = (std::log(p_max) - t0) / static_cast<double>(n - 1);
  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = std::exp(t0 + h * static_cast<double>(i));
  nodes.back() = p_max;
  return MomentumGrid(std::move(nodes), h);
}

namespace {
double required_p_max(const Coupling& c, double guard) {
  const double g = c.gamma();
  const double stretch = std::max(1.0, g / (1.0 - 0.5 * kPi * g + guard));
  return 1e3 * c.charge() * stretch;
}
}  // namespace

MomentumGrid MomentumGrid::for_coupling(const Coupling& c, const MomentumGridSpec& spec) {
  if (!(spec.guard > 0.0)) throw DomainError("MomentumGridSpec: guard must be > 0");
  return log_spaced(1e-3 * c.charge(), required_p_max(c, spec.guard), spec.n);
}

bool MomentumGrid::covers(const Coupling& c, double guard) const {
  const double tol = 1e-12;
  return nodes_.front() <= 1e-3 * c.charge() * (1.0 + tol) &&
         nodes_.back() >= required_p_max(c, guard) * (1.0 - tol);
}

MomentumGrid MomentumGrid::coarsened() const {
  std::vector<double> nodes;
  for (std::size_t i = 0; i < nodes_.size(); i += 2) nodes.push_back(nodes_[i]);
  return MomentumGrid(std::move(nodes), 2.0 * log_step_);
}

SpectralResult hydrogenic_ground_energy(const Coupling& c, const MomentumGrid& g,
                                        const HerbstSolverOptions& options) {
  c.require_subcritical("hydrogenic_ground_energy");
  if (!g.covers(c)) {
    throw PreconditionError("hydrogenic_ground_energy: momentum grid does not cover the coupling");
  }
  const LowestPair lp = lowest_eigenpair(herbst_matrix(c, g));

  SpectralResult r;
  r.energy = lp.value;
  r.extrapolated_energy = lp.value;
  r.residual = lp.residual;
  r.converged = std::isfinite(lp.value) &&
                lp.residual <= options.residual_tolerance * std::max(1.0, std::abs(lp.value));
  if (!r.converged) {
    std::ostringstream os;
    os << "hydrogenic_ground_energy: residual " << lp.residual << " above tolerance";
    throw ConvergenceError(os.str(), lp.residual);
  }
  // v_i = sqrt(p_i) u_i and sum_i w_i u_i^2 = h sum_i v_i^2.
  const auto p = g.nodes();
  const double scale = 1.0 / std::sqrt(g.log_step());
  r.amplitude.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    r.amplitude[i] = scale * lp.vector(static_cast<Eigen::Index>(i)) / std::sqrt(p[i]);
  }
  if (options.estimate_discretization_error && g.size() >= 128) {
    const LowestPair coarse = lowest_eigenpair(herbst_matrix(c, g.coarsened()));
    r.discretization_error = std::abs(lp.value - coarse.value) / 3.0;
    r.extrapolated_energy = lp.value + (lp.value - coarse.value) / 3.0;
  }
  return r;
}

SpectralResult hydrogenic_ground_energy(const Coupling& c, const MomentumGridSpec& spec,
                                        const HerbstSolverOptions& options) {
  c.require_subcritical("hydrogenic_ground_energy");
  return hydrogenic_ground_energy(c, MomentumGrid::for_coupling(c, spec), options);
}

double discrete_rayleigh_quotient(const Coupling& c, const MomentumGrid& g,
                                  std::span<const double> amplitude) {
  if (amplitude.size() != g.size()) {
    throw DomainError("discrete_rayleigh_quotient: amplitude size must match the grid");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(g.size()));
  const auto p = g.nodes();
  for (std::size_t i = 0; i < g.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = std::sqrt(p[i]) * amplitude[i];
  }
  const double nv = v.squaredNorm();
  if (!(nv > 0.0)) throw DomainError("discrete_rayleigh_quotient: zero amplitude");
  return v.dot(herbst_matrix(c, g) * v) / nv;
}

RadialTrial RadialTrial::power_exponential(double beta, const QuadratureSpec& q) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw DomainError("RadialTrial::power_exponential: beta must lie in [0, 1)");
  }
  // Fourier transform of |x|^-beta e^-|x|, times p:
  // (1 + p^2)^{-(2-beta)/2} sin((2 - beta) atan p), up to a constant.
  const double order = 2.0 - beta;
  auto raw = [order](double p) {
    return std::pow(1.0 + p * p, -0.5 * order) * std::sin(order * std::atan(p));
  };
  const QuadratureResult n2 = integrate(
      [&raw](double p) {
        const double u = raw(p);
        return u * u;
      },
      0.0, std::numeric_limits<double>::infinity(), q);
  const double scale = 1.0 / std::sqrt(n2.value);
  RadialTrial t;
  t.amplitude = [raw, scale](double p) { return scale * raw(p); };
  t.inverse_radius = 1.0 / (1.0 - beta);
  std::ostringstream os;
  os << "power_exponential(beta=" << beta << ")";
  t.label = os.str();
  return t;
}

const char* to_string(Boundedness b) { return b == Boundedness::bounded ? "bounded" : "unbounded"; }

DilationReport dilation_diagnostic(const Coupling& c, const RadialTrial& trial,
                                   const LambdaRange& range, const QuadratureSpec& q) {
  if (!(range.lambda_min > 0.0) || !(range.lambda_max > range.lambda_min) || range.count < 2) {
    throw DomainError("dilation_diagnostic: need 0 < lambda_min < lambda_max and count >= 2");
  }
  if (range.lambda_max / range.lambda_min < 1e4 * (1.0 - 1e-12)) {
    throw DomainError("dilation_diagnostic: lambda range must span at least 4 decades");
  }
  if (!trial.amplitude || !(trial.inverse_radius > 0.0)) {
    throw DomainError("dilation_diagnostic: trial state is incomplete");
  }
  const double alpha = c.alpha();
  DilationReport rep;
  const double log_lo = std::log(range.lambda_min);
  const double step = (std::log(range.lambda_max) - log_lo) / static_cast<double>(range.count - 1);
  for (std::size_t k = 0; k < range.count; ++k) {
    const double lambda =
        k + 1 == range.count ? range.lambda_max : std::exp(log_lo + step * static_cast<double>(k));
    // Kinetic part in y = ln p, split at p = 1 to use half-line rules.
    auto integrand = [&](double y) {
      const double p = std::exp(y);
      if (p == 0.0 || !std::isfinite(p)) return 0.0;
      const double u = trial.amplitude(p);
      const double value = p * kinetic_symbol(lambda * p, alpha) * u * u;
      return std::isfinite(value) ? value : 0.0;
    };
    double kinetic = std::numeric_limits<double>::infinity();
    try {
      const QuadratureResult up =
          integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), q);
      const QuadratureResult down = integrate([&](double y) { return integrand(-y); }, 0.0,
                                              std::numeric_limits<double>::infinity(), q);
      if (std::isfinite(up.value) && std::isfinite(down.value)) kinetic = up.value + down.value;
    } catch (const ConvergenceError&) {
      // A divergent kinetic energy (e.g. <p^2> of a singular trial at
      // alpha = 0) only makes the sample more bounded.
    }
    rep.lambdas.push_back(lambda);
    rep.energies.push_back(kinetic - c.charge() * lambda * trial.inverse_radius);
  }
  const double last = rep.energies.back();
  const double previous = rep.energies[rep.energies.size() - 2];
  const bool deep = last < -kUnboundedEnergyThreshold * c.charge() * c.charge();
  const bool falling = last < previous;
  rep.classification = (deep && falling) ? Boundedness::unbounded : Boundedness::bounded;
  return rep;
}

ConcavityReport concavity_check(std::span<const double> charges, double alpha,
                                const MomentumGridSpec& spec, double tolerance) {
  if (charges.size() < 2) throw DomainError("concavity_check: need at least two charges");
  for (std::size_t k = 0; k < charges.size(); ++k) {
    if (!(charges[k] > 0.0)) throw DomainError("concavity_check: charges must be > 0");
    if (k > 0 && !(charges[k] > charges[k - 1])) {
      throw DomainError("concavity_check: charges must be strictly increasing");
    }
  }
  for (double z : charges) Coupling(z, alpha).require_subcritical("concavity_check");

  ConcavityReport r;
  r.tolerance = tolerance;
  r.charges.assign(charges.begin(), charges.end());
  for (double z : charges) r.energies.push_back(hydrogenic_ground_energy(Coupling(z, alpha), spec).energy);
  for (std::size_t k = 0; k + 1 < charges.size(); ++k) {
    r.first_differences.push_back((r.energies[k + 1] - r.energies[k]) / (charges[k + 1] - charges[k]));
  }
  for (std::size_t k = 0; k + 2 < charges.size(); ++k) {
    const double slope_change = r.first_differences[k + 1] - r.first_differences[k];
    r.second_differences.push_back(2.0 * slope_change / (charges[k + 2] - charges[k]));
  }
  r.monotone = std::all_of(r.first_differences.begin(), r.first_differences.end(),
                           [](double d) { return d <= 0.0; });
  r.concave = std::all_of(r.second_differences.begin(), r.second_differences.end(),
                          [tolerance](double d) { return d <= tolerance; });
  return r;
}

double united_atom_r0_bound(double z1, double z2, double alpha, const MomentumGridSpec& spec) {
  if (!(z1 > 0.0) || !(z2 > 0.0)) throw DomainError("united_atom_r0_bound: charges must be > 0");
  if (z1 < z2) {
    throw PreconditionError("united_atom_r0_bound: pass the larger charge as Z1 (Z1 >= Z2)");
  }
  const Coupling united(z1 + z2, alpha);
  united.require_subcritical("united_atom_r0_bound");
  const double e1 = hydrogenic_ground_energy(Coupling(z1, alpha), spec).energy;
  const double e12 = hydrogenic_ground_energy(united, spec).energy;
  const double gap = e1 - e12;
  if (!(gap > 0.0)) {
    throw ConvergenceError("united_atom_r0_bound: nonpositive energy gap", gap);
  }
  return z1 * z2 / gap;
}

}  // namespace relmol
