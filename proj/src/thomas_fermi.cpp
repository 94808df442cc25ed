// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "relmol/thomas_fermi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "relmol/error.hpp"
#include "relmol/herbst.hpp"
#include "relmol/special_functions.hpp"
#include "relmol/stability_bounds.hpp"

namespace relmol {

namespace {

constexpr double kPi = std::numbers::pi;

// g(phi) = c_g phi_+^{5/2} is the Legendre dual of the TF kinetic energy;
// g' is the density and g'' its derivative.
const double kDualCoefficient = std::pow(2.0, 2.5) / (15.0 * kPi * kPi);

double dual_g(double phi) { return phi > 0.0 ? kDualCoefficient * phi * phi * std::sqrt(phi) : 0.0; }
double dual_g1(double phi) { return phi > 0.0 ? 2.5 * kDualCoefficient * phi * std::sqrt(phi) : 0.0; }
double dual_g2(double phi) { return phi > 0.0 ? 3.75 * kDualCoefficient * std::sqrt(phi) : 0.0; }

double tf_density(double phi) {
  if (!(phi > 0.0)) return 0.0;
  const double p = 2.0 * phi;
  return p * std::sqrt(p) / (3.0 * kPi * kPi);
}

// ---------------------------------------------------------------------------
// Screening equation in s = sqrt(x): with y = dphi/dx,
//   dphi/ds = 2 s y,   dy/ds = 2 phi^{3/2},
// plus the running energy integrals int 2 phi^{5/2} ds and int 2 phi^{3/2} ds.

using AtomState = std::array<double, 4>;

struct ScreeningSystem {
  void operator()(const AtomState& u, AtomState& du, double s) const {
    const double p = std::max(u[0], 0.0);
    const double p32 = p * std::sqrt(p);
    du[0] = 2.0 * s * u[1];
    du[1] = 2.0 * p32;
    du[2] = 2.0 * p32 * p;
    du[3] = 2.0 * p32;
  }
};

struct Trajectory {
  ShotOutcome outcome = ShotOutcome::undecided;
  double end = 0.0;               // last s reached
  std::vector<AtomState> states;  // at the requested sample points up to `end`
};

Trajectory integrate_screening(double slope, std::span<const double> samples, double s_max,
                               double tolerance) {
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_dense_output(tolerance, tolerance, odeint::runge_kutta_dopri5<AtomState>());
  stepper.initialize(AtomState{1.0, slope, 0.0, 0.0}, 0.0, 1e-4);
  ScreeningSystem sys;
  Trajectory tr;
  std::size_t k = 0;
  AtomState out;
  while (stepper.current_time() < s_max) {
    stepper.do_step(sys);
    const double t = std::min(stepper.current_time(), s_max);
    while (k < samples.size() && samples[k] <= t) {
      stepper.calc_state(samples[k], out);
      tr.states.push_back(out);
      ++k;
    }
    const AtomState& u = stepper.current_state();
    if (u[0] < 0.0) {
      tr.outcome = ShotOutcome::crosses_zero;
      break;
    }
    if (u[1] > 0.0) {
      tr.outcome = ShotOutcome::turns_upward;
      break;
    }
  }
  tr.end = std::min(stepper.current_time(), s_max);
  // Drop samples past the event: the dense output there belongs to an
  // already unphysical branch.
  tr.states.resize(std::min(tr.states.size(), k));
  return tr;
}

struct Bracket {
  double lo;  // crosses zero
  double hi;  // turns upward
};

Bracket bisect_slope(double s_max, double tolerance) {
  Bracket b{-1.7, -1.5};
  const std::vector<double> none;
  if (integrate_screening(b.lo, none, s_max, tolerance).outcome != ShotOutcome::crosses_zero ||
      integrate_screening(b.hi, none, s_max, tolerance).outcome != ShotOutcome::turns_upward) {
    throw ConvergenceError("solve_tf_atom: initial slope bracket [-1.7, -1.5] is not valid",
                           b.hi - b.lo);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    const ShotOutcome o = integrate_screening(mid, none, s_max, tolerance).outcome;
    if (o == ShotOutcome::crosses_zero) {
      b.lo = mid;
    } else if (o == ShotOutcome::turns_upward) {
      b.hi = mid;
    } else {
      b.lo = b.hi = mid;
      break;
    }
  }
  return b;
}

}  // namespace

double tf_length_scale() { return 0.5 * std::pow(3.0 * kPi / 4.0, 2.0 / 3.0); }

void TFAtomMesh::validate() const {
  if (!(x_min > 0.0) || !(x_max > x_min)) throw DomainError("TFAtomMesh: need 0 < x_min < x_max");
  if (x_max < 20.0) throw DomainError("TFAtomMesh: x_max must be >= 20");
  if (points < 16) throw DomainError("TFAtomMesh: need at least 16 points");
  if (!(ode_tolerance > 0.0 && ode_tolerance < 1e-4)) {
    throw DomainError("TFAtomMesh: ode_tolerance must lie in (0, 1e-4)");
  }
}

ShotOutcome shoot_tf(double slope, double x_max, double tolerance) {
  if (!(x_max > 0.0) || !(tolerance > 0.0)) throw DomainError("shoot_tf: x_max and tolerance must be > 0");
  return integrate_screening(slope, {}, std::sqrt(x_max), tolerance).outcome;
}

TFAtomSolution solve_tf_atom(double z, const TFAtomMesh& mesh) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("solve_tf_atom: Z must be finite and > 0");
  mesh.validate();
  const double s_max = std::sqrt(mesh.x_max);
  const Bracket br = bisect_slope(s_max, mesh.ode_tolerance);

  // Fine sample grid in s (uniform) merged with the output grid; both branches
  // are followed until they separate, which marks where the shot stops
  // resolving the decaying solution.
  std::vector<double> samples;
  constexpr std::size_t kFine = 8000;
  for (std::size_t i = 1; i <= kFine; ++i) samples.push_back(s_max * static_cast<double>(i) / kFine);
  std::vector<double> xs(mesh.points);
  const double lx0 = std::log(mesh.x_min);
  const double lstep = (std::log(mesh.x_max) - lx0) / static_cast<double>(mesh.points - 1);
  for (std::size_t i = 0; i < mesh.points; ++i) {
    xs[i] = std::exp(lx0 + lstep * static_cast<double>(i));
    samples.push_back(std::sqrt(xs[i]));
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  const Trajectory lo = integrate_screening(br.lo, samples, s_max, mesh.ode_tolerance);
  const Trajectory hi = integrate_screening(br.hi, samples, s_max, mesh.ode_tolerance);
  const std::size_t common = std::min(lo.states.size(), hi.states.size());
  std::size_t split = 0;
  double previous_power = 0.0;
  while (split < common) {
    const double a = lo.states[split][0];
    const double b = hi.states[split][0];
    if (!(a > 0.0) || !(b > 0.0) || std::abs(a - b) > 1e-8 * 0.5 * (a + b)) break;
    if (!(lo.states[split][1] < 0.0) || !(hi.states[split][1] < 0.0)) break;
    // The local decay power -x phi'/phi of the true solution rises
    // monotonically towards 3; a drop means the shot has picked up the
    // growing branch.
    const double x = samples[split] * samples[split];
    const double power_here = -x * (lo.states[split][1] + hi.states[split][1]) / (a + b);
    if (x > 1.0 && power_here < previous_power) break;
    previous_power = power_here;
    ++split;
  }
  if (split < 16) throw ConvergenceError("solve_tf_atom: shooting branches separate immediately", 0.0);
  auto mean_state = [&](std::size_t k) {
    AtomState m;
    for (std::size_t c = 0; c < 4; ++c) m[c] = 0.5 * (lo.states[k][c] + hi.states[k][c]);
    return m;
  };
  const std::size_t last = split - 1;
  const AtomState at_split = mean_state(last);
  const double s_split = samples[last];
  const double x_split = s_split * s_split;
  const double power = -x_split * at_split[1] / at_split[0];
  if (!(power > 1.0)) {
    throw ConvergenceError("solve_tf_atom: tail exponent too small for a finite energy", power);
  }

  TFAtomSolution sol;
  sol.charge = z;
  sol.initial_slope = 0.5 * (br.lo + br.hi);
  sol.tail_start = x_split;
  sol.tail_power = power;
  sol.tail_value = at_split[0];
  sol.x = xs;
  sol.phi.resize(xs.size());
  sol.dphi.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double s = std::sqrt(xs[i]);
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(samples.begin(), samples.end(), s) - samples.begin());
    if (pos < split) {
      const AtomState m = mean_state(pos);
      sol.phi[i] = m[0];
      sol.dphi[i] = m[1];
    } else {
      const double ratio = std::pow(x_split / xs[i], power);
      sol.phi[i] = at_split[0] * ratio;
      sol.dphi[i] = -power * sol.phi[i] / xs[i];
    }
  }

  // Energy integrals over x in [0, inf): the shot up to x_split, then the
  // power-law tail phi_s (x_s/x)^k integrated in closed form.
  const double sqrt_xs = std::sqrt(x_split);
  const double phi_s = at_split[0];
  const double i_k = at_split[2] + phi_s * phi_s * std::sqrt(phi_s) * sqrt_xs / (2.5 * power - 0.5);
  const double i_a = at_split[3] + phi_s * std::sqrt(phi_s) * sqrt_xs / (1.5 * power - 0.5);
  const double i_u = i_a - i_k;

  const double beta = tf_length_scale() / std::cbrt(z);
  const double two_z = 2.0 * z;
  const double common_factor = 4.0 * kPi / (3.0 * kPi * kPi) * std::sqrt(beta);
  sol.kinetic = 0.3 * common_factor * two_z * two_z * std::sqrt(two_z) * i_k;
  sol.attraction = -common_factor * z * two_z * std::sqrt(two_z) * i_a;
  sol.repulsion = 0.5 * common_factor * z * two_z * std::sqrt(two_z) * i_u;
  sol.energy = sol.kinetic + sol.attraction + sol.repulsion;
  return sol;
}

double TFAtomSolution::screening(double xq) const {
  if (!(xq >= 0.0)) throw DomainError("TFAtomSolution::screening: x must be >= 0");
  if (x.empty()) throw PreconditionError("TFAtomSolution::screening: empty solution");
  if (xq >= tail_start) {
    return tail_value * std::pow(tail_start / xq, tail_power);
  }
  if (xq <= x.front()) {
    // phi = 1 + B x + (4/3) x^{3/2} + ...
    return 1.0 + initial_slope * xq + 4.0 / 3.0 * xq * std::sqrt(xq);
  }
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  const std::size_t k = static_cast<std::size_t>(it - x.begin());
  const double x0 = x[k - 1];
  const double x1 = x[k];
  const double h = x1 - x0;
  const double t = (xq - x0) / h;
  // Cubic Hermite on one interval.
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  return h00 * phi[k - 1] + h10 * h * dphi[k - 1] + h01 * phi[k] + h11 * h * dphi[k];
}

double TFAtomSolution::density(double r) const {
  if (!(r > 0.0)) throw DomainError("TFAtomSolution::density: r must be > 0");
  const double beta = tf_length_scale() / std::cbrt(charge);
  return tf_density(charge * screening(r / beta) / r);
}

double tf_atom_energy_unit(const TFAtomMesh& mesh) { return solve_tf_atom(1.0, mesh).energy; }

// ---------------------------------------------------------------------------
// Diatomic solver

void TFDiatomicMesh::validate() const {
  if (n_sigma < 8 || n_tau < 8) throw DomainError("TFDiatomicMesh: need at least 8 cells per direction");
  if (!(outer_radius > 0.0) || !(outer_factor > 1.0)) {
    throw DomainError("TFDiatomicMesh: outer_radius must be > 0 and outer_factor > 1");
  }
  if (!(residual_tolerance > 0.0)) throw DomainError("TFDiatomicMesh: residual_tolerance must be > 0");
  if (max_iterations < 1) throw DomainError("TFDiatomicMesh: max_iterations must be >= 1");
}

namespace {

// Sommerfeld's closed-form approximation to the atomic screening function,
// used only as a starting guess.
double sommerfeld(double x) {
  constexpr double l = 0.772;
  return std::pow(1.0 + std::pow(x * x * x / 144.0, l / 3.0), -3.0 / l);
}

// int_{|y| < rc} f(Z/|y|) chi(|y|) dy for chi = (1 - (r/rc)^2)^4 and
// f(v) = c v^q, i.e. 4 pi c Z^q rc^{3-q} sum_m C(4,m) (-1)^m / (2m + 3 - q).
double cutoff_power_integral(double c, double z, double q, double rc) {
  constexpr std::array<double, 5> binom{1, 4, 6, 4, 1};
  double sum = 0.0;
  for (int m = 0; m <= 4; ++m) sum += (m % 2 ? -1.0 : 1.0) * binom[m] / (2.0 * m + 3.0 - q);
  return 4.0 * kPi * c * std::pow(z, q) * std::pow(rc, 3.0 - q) * sum;
}

double cutoff(double r, double rc) {
  if (r >= rc) return 0.0;
  const double u = 1.0 - (r / rc) * (r / rc);
  return u * u * u * u;
}

struct SpheroidalMesh {
  std::size_t ns;  // cells in sigma
  std::size_t nt;  // cells in tau
  double a;
  double sigma_max;
  std::vector<double> sigma;
  std::vector<double> tau;
  std::vector<double> weight;  // volume weights
  std::vector<double> r1;
  std::vector<double> r2;
  std::vector<int> edge_i;
  std::vector<int> edge_j;
  std::vector<double> edge_w;

  std::size_t nodes() const { return (ns + 1) * (nt + 1); }
  std::size_t idx(std::size_t i, std::size_t j) const { return i * (nt + 1) + j; }
  bool boundary(std::size_t n) const { return n >= idx(ns, 0); }
  bool focus(std::size_t n) const { return n == idx(0, 0) || n == idx(0, nt); }
};

SpheroidalMesh build_mesh(double separation, double outer, std::size_t ns, std::size_t nt) {
  SpheroidalMesh m;
  m.ns = ns;
  m.nt = nt;
  m.a = 0.5 * separation;
  if (!(outer > m.a)) throw DomainError("solve_tf_diatomic: outer radius must exceed R/2");
  m.sigma_max = std::acosh(outer / m.a);
  const double ds = m.sigma_max / static_cast<double>(ns);
  const double dt = kPi / static_cast<double>(nt);
  for (std::size_t i = 0; i <= ns; ++i) m.sigma.push_back(ds * static_cast<double>(i));
  for (std::size_t j = 0; j <= nt; ++j) m.tau.push_back(dt * static_cast<double>(j));
  m.sigma.back() = m.sigma_max;
  m.tau.back() = kPi;
  const double a = m.a;
  m.weight.resize(m.nodes());
  m.r1.resize(m.nodes());
  m.r2.resize(m.nodes());
  for (std::size_t i = 0; i <= ns; ++i) {
    const double ch = std::cosh(m.sigma[i]);
    const double sh = std::sinh(m.sigma[i]);
    for (std::size_t j = 0; j <= nt; ++j) {
      const double ct = std::cos(m.tau[j]);
      const double st = std::sin(m.tau[j]);
      const std::size_t n = m.idx(i, j);
      m.r1[n] = a * (ch - ct);
      m.r2[n] = a * (ch + ct);
      double w = 2.0 * kPi * a * a * a * (sh * sh + st * st) * sh * std::abs(st) * ds * dt;
      if (i == ns) w *= 0.5;
      m.weight[n] = w;
    }
  }
  // Dirichlet-form weights: sigma edges then tau edges.
  for (std::size_t i = 0; i < ns; ++i) {
    const double sh = std::sinh(0.5 * (m.sigma[i] + m.sigma[i + 1]));
    for (std::size_t j = 0; j <= nt; ++j) {
      const double w = 2.0 * kPi * a * sh * std::abs(std::sin(m.tau[j])) * dt / ds;
      if (w > 0.0) {
        m.edge_i.push_back(static_cast<int>(m.idx(i, j)));
        m.edge_j.push_back(static_cast<int>(m.idx(i + 1, j)));
        m.edge_w.push_back(w);
      }
    }
  }
  for (std::size_t i = 0; i <= ns; ++i) {
    const double sh = std::sinh(m.sigma[i]);
    const double f = i == ns ? 0.5 : 1.0;
    for (std::size_t j = 0; j < nt; ++j) {
      const double w = f * 2.0 * kPi * a * sh * std::sin(0.5 * (m.tau[j] + m.tau[j + 1])) * ds / dt;
      if (w > 0.0) {
        m.edge_i.push_back(static_cast<int>(m.idx(i, j)));
        m.edge_j.push_back(static_cast<int>(m.idx(i, j + 1)));
        m.edge_w.push_back(w);
      }
    }
  }
  return m;
}

// -(1/8 pi) int_outside |grad V|^2 for the bare nuclear potential, written
// as a surface integral over the outer spheroid.
double exterior_field_energy(double z1, double z2, const SpheroidalMesh& m, const QuadratureSpec& q) {
  const double ch = std::cosh(m.sigma_max);
  const double sh = std::sinh(m.sigma_max);
  const double a = m.a;
  auto f = [&](double t) {
    const double c = std::cos(t);
    const double d1 = a * (ch - c);
    const double d2 = a * (ch + c);
    const double v = z1 / d1 + z2 / d2;
    const double dv = -z1 * a * sh / (d1 * d1) - z2 * a * sh / (d2 * d2);
    return v * dv * sh * std::sin(t);
  };
  QuadratureSpec qq = q;
  qq.scheme = QuadratureScheme::adaptive_subdivision;
  const QuadratureResult r = integrate(f, 0.0, kPi, qq);
  return a * r.value / 4.0;
}

}  // namespace

namespace {

// scale_charge sets the TF length unit Z^{-1/3} used for the outer radius
// and the singular-correction cutoff, so that reference atoms share the
// molecule's mesh exactly.
TFFieldResult solve_tf_field_scaled(double z1, double z2, double separation, double scale_charge,
                                    const TFDiatomicMesh& mesh) {
  mesh.validate();
  if (!(z1 >= 0.0) || !(z2 >= 0.0) || !(z1 + z2 > 0.0)) {
    throw DomainError("solve_tf_field: charges must be >= 0 with a positive total");
  }
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw DomainError("solve_tf_field: separation must be finite and > 0");
  }
  const double unit = 1.0 / std::cbrt(scale_charge);
  const double r_scaled = separation / unit;
  const double outer = unit * std::max(mesh.outer_radius, mesh.outer_factor * r_scaled);
  const SpheroidalMesh m = build_mesh(separation, outer, mesh.n_sigma, mesh.n_tau);
  const std::size_t nn = m.nodes();

  std::vector<double> v(nn, 0.0);
  for (std::size_t n = 0; n < nn; ++n) {
    if (m.focus(n)) continue;
    if (z1 > 0.0) v[n] += z1 / m.r1[n];
    if (z2 > 0.0) v[n] += z2 / m.r2[n];
  }
  // Unknowns: every node except the outer boundary and the two foci.
  std::vector<int> free_index(nn, -1);
  std::vector<std::size_t> free_nodes;
  for (std::size_t n = 0; n < nn; ++n) {
    if (m.boundary(n) || m.focus(n)) continue;
    free_index[n] = static_cast<int>(free_nodes.size());
    free_nodes.push_back(n);
  }
  const std::size_t nf = free_nodes.size();

  // Electron potential psi; phi = V - psi is the effective potential.
  std::vector<double> psi(nn, 0.0);
  const double b = tf_length_scale();
  for (std::size_t n = 0; n < nn; ++n) {
    if (m.focus(n)) continue;
    if (m.boundary(n)) {
      psi[n] = v[n];
      continue;
    }
    for (const auto& [zk, rk] : {std::pair{z1, m.r1[n]}, std::pair{z2, m.r2[n]}}) {
      if (zk > 0.0) psi[n] += zk * (1.0 - sommerfeld(rk * std::cbrt(zk) / b)) / rk;
    }
  }

  const double inv8pi = 1.0 / (8.0 * kPi);
  auto functional = [&](const std::vector<double>& p) {
    double quad = 0.0;
    for (std::size_t e = 0; e < m.edge_w.size(); ++e) {
      const double d = p[static_cast<std::size_t>(m.edge_i[e])] - p[static_cast<std::size_t>(m.edge_j[e])];
      quad += m.edge_w[e] * d * d;
    }
    double dual = 0.0;
    for (std::size_t n : free_nodes) dual += m.weight[n] * dual_g(v[n] - p[n]);
    return std::pair{inv8pi * quad, dual};
  };

  // Sparse Hessian pattern: (1/4 pi) L restricted to the free nodes plus a
  // diagonal from g''.
  using SpMat = Eigen::SparseMatrix<double>;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * m.edge_w.size() + nf);
  for (std::size_t k = 0; k < nf; ++k) trip.emplace_back(static_cast<int>(k), static_cast<int>(k), 0.0);
  const double inv4pi = 1.0 / (4.0 * kPi);
  for (std::size_t e = 0; e < m.edge_w.size(); ++e) {
    const int fi = free_index[static_cast<std::size_t>(m.edge_i[e])];
    const int fj = free_index[static_cast<std::size_t>(m.edge_j[e])];
    const double w = inv4pi * m.edge_w[e];
    if (fi >= 0) trip.emplace_back(fi, fi, w);
    if (fj >= 0) trip.emplace_back(fj, fj, w);
    if (fi >= 0 && fj >= 0) {
      trip.emplace_back(fi, fj, -w);
      trip.emplace_back(fj, fi, -w);
    }
  }
  SpMat lap(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nf));
  lap.setFromTriplets(trip.begin(), trip.end());
  lap.makeCompressed();
  const Eigen::VectorXd lap_diag = lap.diagonal();
  SpMat hess = lap;
  Eigen::SimplicialLDLT<SpMat> ldlt;
  ldlt.analyzePattern(hess);

  TFFieldResult res;
  Eigen::VectorXd grad(static_cast<Eigen::Index>(nf));
  Eigen::VectorXd diag(static_cast<Eigen::Index>(nf));
  std::vector<double> trial(nn);
  bool converged = false;
  for (std::size_t it = 0; it < mesh.max_iterations; ++it) {
    grad.setZero();
    for (std::size_t e = 0; e < m.edge_w.size(); ++e) {
      const auto i = static_cast<std::size_t>(m.edge_i[e]);
      const auto j = static_cast<std::size_t>(m.edge_j[e]);
      const double f = inv4pi * m.edge_w[e] * (psi[i] - psi[j]);
      if (free_index[i] >= 0) grad(free_index[i]) += f;
      if (free_index[j] >= 0) grad(free_index[j]) -= f;
    }
    double scale = 0.0;
    for (std::size_t k = 0; k < nf; ++k) {
      const std::size_t n = free_nodes[k];
      const double phi = v[n] - psi[n];
      const double rho_w = m.weight[n] * dual_g1(phi);
      grad(static_cast<Eigen::Index>(k)) -= rho_w;
      scale += rho_w * rho_w;
      diag(static_cast<Eigen::Index>(k)) = m.weight[n] * dual_g2(phi);
    }
    res.residual = grad.norm() / std::max(std::sqrt(scale), std::numeric_limits<double>::min());
    res.residual_history.push_back(res.residual);
    res.iterations = it;
    if (res.residual <= mesh.residual_tolerance) {
      converged = true;
      break;
    }
    hess.diagonal() = lap_diag + diag;
    ldlt.factorize(hess);
    if (ldlt.info() != Eigen::Success) {
      throw ConvergenceError("solve_tf_field: Hessian factorization failed", res.residual);
    }
    const Eigen::VectorXd step = ldlt.solve(-grad);
    const double slope = grad.dot(step);
    const auto [q0, d0] = functional(psi);
    const double f0 = q0 + d0;
    // Near the minimum the predicted decrease drops below the rounding level
    // of the functional and the Armijo test becomes noise; take the full step.
    const bool resolvable = std::abs(slope) > 1e-13 * std::max(1.0, std::abs(f0));
    double t = 1.0;
    for (int ls = 0; ls < 60; ++ls) {
      trial = psi;
      for (std::size_t k = 0; k < nf; ++k) trial[free_nodes[k]] += t * step(static_cast<Eigen::Index>(k));
      if (!resolvable) break;
      const auto [q1, d1] = functional(trial);
      if (q1 + d1 <= f0 + 1e-4 * t * slope) break;
      t *= 0.5;
    }
    psi.swap(trial);
    // Stagnation: no progress over the last few steps.
    const std::size_t h = res.residual_history.size();
    if (h > 8 && res.residual_history[h - 1] > 0.9 * res.residual_history[h - 6]) break;
  }
  if (!converged) {
    std::ostringstream os;
    os << "solve_tf_field: no convergence after " << res.residual_history.size()
       << " Newton iterations; residual history:";
    for (double r : res.residual_history) os << ' ' << r;
    throw ConvergenceError(os.str(), res.residual);
  }

  const auto [quad, dual] = functional(psi);
  QuadratureSpec q;
  double energy = -quad - dual + exterior_field_energy(z1, z2, m, q);
  if (z1 > 0.0 && z2 > 0.0) energy += z1 * z2 / separation;

  double electrons = 0.0;
  for (std::size_t n : free_nodes) electrons += m.weight[n] * dual_g1(v[n] - psi[n]);

  // The nuclear singularity phi ~ Z/r makes the node sums first-order
  // accurate; remove the leading error by comparing the same sums for the
  // bare cut-off singular parts with their exact values.
  const double rc = std::min(0.5 * separation, unit);
  for (const auto& [zk, rk] : {std::pair{z1, &m.r1}, std::pair{z2, &m.r2}}) {
    if (!(zk > 0.0)) continue;
    double sum_g = 0.0;
    double sum_rho = 0.0;
    for (std::size_t n : free_nodes) {
      const double r = (*rk)[n];
      const double c = cutoff(r, rc);
      if (c == 0.0) continue;
      sum_g += m.weight[n] * dual_g(zk / r) * c;
      sum_rho += m.weight[n] * dual_g1(zk / r) * c;
    }
    energy += sum_g - cutoff_power_integral(kDualCoefficient, zk, 2.5, rc);
    electrons -= sum_rho - cutoff_power_integral(2.5 * kDualCoefficient, zk, 1.5, rc);
  }

  res.energy = energy;
  res.electron_number = electrons;
  res.potential.resize(nn);
  for (std::size_t n = 0; n < nn; ++n) {
    res.potential[n] = m.focus(n) ? std::numeric_limits<double>::infinity() : v[n] - psi[n];
  }
  return res;
}

}  // namespace

TFFieldResult solve_tf_field(double z1, double z2, double separation, const TFDiatomicMesh& mesh) {
  return solve_tf_field_scaled(z1, z2, separation, z1 + z2, mesh);
}

double TFDiatomicSolution::scaled_separation() const { return std::cbrt(z1 + z2) * separation; }

std::pair<double, double> TFDiatomicSolution::node_position(std::size_t i, std::size_t j) const {
  if (i >= sigma.size() || j >= tau.size()) throw DomainError("node_position: index out of range");
  return {focal * std::cosh(sigma[i]) * std::cos(tau[j]),
          focal * std::sinh(sigma[i]) * std::sin(tau[j])};
}

namespace {

struct Interaction {
  double molecule;
  double atom1;
  double atom2;
  TFFieldResult field;
};

Interaction interaction_on(double z1, double z2, double r, const TFDiatomicMesh& mesh) {
  const double zt = z1 + z2;
  Interaction out;
  out.field = solve_tf_field_scaled(z1, z2, r, zt, mesh);
  out.molecule = out.field.energy;
  out.atom1 = solve_tf_field_scaled(z1, 0.0, r, zt, mesh).energy;
  out.atom2 = solve_tf_field_scaled(0.0, z2, r, zt, mesh).energy;
  return out;
}

}  // namespace

TFDiatomicSolution solve_tf_diatomic(double z1, double z2, double separation,
                                     const TFDiatomicMesh& mesh) {
  if (!(z1 > 0.0) || !(z2 > 0.0)) throw DomainError("solve_tf_diatomic: charges must be > 0");
  mesh.validate();
  Interaction fine = interaction_on(z1, z2, separation, mesh);

  TFDiatomicSolution sol;
  sol.z1 = z1;
  sol.z2 = z2;
  sol.separation = separation;
  sol.mesh = mesh;
  sol.energy = fine.molecule;
  sol.atom_energy1 = fine.atom1;
  sol.atom_energy2 = fine.atom2;
  sol.interaction_energy = fine.molecule - fine.atom1 - fine.atom2;
  sol.electron_number = fine.field.electron_number;
  sol.residual = fine.field.residual;
  sol.residual_history = fine.field.residual_history;
  sol.iterations = fine.field.iterations;
  sol.potential = std::move(fine.field.potential);
  sol.density.resize(sol.potential.size());
  for (std::size_t n = 0; n < sol.potential.size(); ++n) {
    sol.density[n] = std::isinf(sol.potential[n]) ? sol.potential[n] : tf_density(sol.potential[n]);
  }

  const SpheroidalMesh m = build_mesh(
      separation,
      std::max(mesh.outer_radius, mesh.outer_factor * sol.scaled_separation()) / std::cbrt(z1 + z2),
      mesh.n_sigma, mesh.n_tau);
  sol.sigma = m.sigma;
  sol.tau = m.tau;
  sol.focal = m.a;

  if (mesh.estimate_mesh_error) {
    TFDiatomicMesh coarse = mesh;
    coarse.n_sigma = mesh.n_sigma / 2;
    coarse.n_tau = mesh.n_tau / 2;
    const Interaction c = interaction_on(z1, z2, separation, coarse);
    sol.mesh_tolerance = std::abs(sol.interaction_energy - (c.molecule - c.atom1 - c.atom2));
  }
  return sol;
}

PowerLawFit power_law_fit(std::span<const double> r, std::span<const double> interaction,
                          std::span<const double> tolerance) {
  if (r.size() != interaction.size() || r.size() != tolerance.size()) {
    throw DomainError("power_law_fit: input sizes differ");
  }
  if (r.size() < 4) throw InsufficientSignalError("power_law_fit: need at least 4 samples");
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (!(r[k] > 0.0)) throw DomainError("power_law_fit: separations must be > 0");
    if (!(interaction[k] > 10.0 * tolerance[k]) || !(interaction[k] > 0.0)) {
      std::ostringstream os;
      os << "power_law_fit: interaction " << interaction[k] << " at r = " << r[k]
         << " is not above 10x its mesh tolerance " << tolerance[k];
      throw InsufficientSignalError(os.str());
    }
  }
  const std::size_t n = r.size();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    a(static_cast<Eigen::Index>(k), 0) = 1.0;
    a(static_cast<Eigen::Index>(k), 1) = -std::log(r[k]);
    y(static_cast<Eigen::Index>(k)) = std::log(interaction[k]);
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd resid = y - a * coef;
  PowerLawFit fit;
  fit.coefficient = std::exp(coef(0));
  fit.exponent = coef(1);
  fit.residual = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  const double dof = static_cast<double>(n) - 2.0;
  const Eigen::Matrix2d cov = (a.transpose() * a).inverse() * (resid.squaredNorm() / dof);
  fit.exponent_error = std::sqrt(cov(1, 1));
  return fit;
}

PowerLawFit brezis_lieb_fit(std::span<const TFDiatomicSolution> solutions) {
  std::vector<double> r;
  std::vector<double> e;
  std::vector<double> tol;
  for (const auto& s : solutions) {
    r.push_back(s.scaled_separation());
    e.push_back(s.interaction_energy / std::pow(s.z1 + s.z2, 7.0 / 3.0));
    tol.push_back(s.mesh_tolerance / std::pow(s.z1 + s.z2, 7.0 / 3.0));
  }
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (!(r[k] > r[k - 1])) throw DomainError("brezis_lieb_fit: separations must be increasing");
  }
  return power_law_fit(r, e, tol);
}

// ---------------------------------------------------------------------------
// Scott assembly

ScottTable::ScottTable(std::vector<double> gammas, std::vector<double> values)
    : gammas_(std::move(gammas)), values_(std::move(values)) {
  if (gammas_.empty() || gammas_.size() != values_.size()) {
    throw DomainError("ScottTable: need equally many (nonzero) samples and values");
  }
  if (gammas_.front() != 0.0 || values_.front() != 0.25) {
    throw DomainError("ScottTable: the first sample must be S(0) = 1/4");
  }
  for (std::size_t k = 1; k < gammas_.size(); ++k) {
    if (!(gammas_[k] > gammas_[k - 1])) throw DomainError("ScottTable: gammas must be strictly increasing");
    if (!(values_[k] <= values_[k - 1])) throw DomainError("ScottTable: values must be nonincreasing");
  }
  if (gammas_.back() > kCriticalCoupling) throw DomainError("ScottTable: gammas must lie in [0, 2/pi]");
  for (double s : values_) {
    if (!std::isfinite(s)) throw DomainError("ScottTable: values must be finite");
  }
}

ScottTable ScottTable::nonrelativistic() { return ScottTable({0.0}, {0.25}); }

double ScottTable::operator()(double gamma) const {
  if (!(gamma >= 0.0)) throw DomainError("ScottTable: gamma must be >= 0");
  if (gamma > kCriticalCoupling) throw CriticalCouplingError("ScottTable: gamma exceeds 2/pi");
  if (gamma >= gammas_.back()) return values_.back();
  const auto it = std::upper_bound(gammas_.begin(), gammas_.end(), gamma);
  const std::size_t k = static_cast<std::size_t>(it - gammas_.begin());
  const double t = (gamma - gammas_[k - 1]) / (gammas_[k] - gammas_[k - 1]);
  return values_[k - 1] + t * (values_[k] - values_[k - 1]);
}

std::string ScottTable::label() const {
  return is_nonrelativistic_default() ? "nonrelativistic Scott" : "tabulated Scott";
}

double scott_term(double z1, double z2, double alpha, const ScottTable& table) {
  if (!(z1 > 0.0) || !(z2 > 0.0)) throw DomainError("scott_term: charges must be > 0");
  if (!(alpha >= 0.0)) throw DomainError("scott_term: alpha must be >= 0");
  const double hi = std::max(z1, z2);
  const double lo = std::min(z1, z2);
  return 2.0 * hi * hi * table(hi * alpha) + 2.0 * lo * lo * table(lo * alpha);
}

ScottEnergy scott_assemble(double z1, double z2, double tf_energy, double alpha,
                           const ScottTable& table, double c0) {
  if (!(c0 > 0.0)) throw DomainError("scott_assemble: c0 must be > 0");
  ScottEnergy e;
  e.tf_energy = tf_energy;
  e.scott = scott_term(z1, z2, alpha, table);
  e.total = tf_energy + e.scott;
  e.envelope = c0 * std::pow(z1 + z2, binding_energy_exponent().to_double());
  e.table_label = table.label();
  return e;
}

ScottEnergy scott_energy(double z1, double z2, double separation, double alpha,
                         const ScottTable& table, const ScottConfig& config) {
  if (!(z1 > 0.0) || !(z2 > 0.0)) throw DomainError("scott_energy: charges must be > 0");
  if (!(separation > 0.0)) throw DomainError("scott_energy: R must be > 0");
  if (!(config.r0 > 0.0)) throw DomainError("scott_energy: r0 must be > 0");
  if (!(alpha >= 0.0)) throw DomainError("scott_energy: alpha must be >= 0");
  if (std::max(z1, z2) * alpha > kCriticalCoupling) {
    throw CriticalCouplingError("scott_energy: max(Z1, Z2) alpha exceeds 2/pi");
  }
  const double z = z1 + z2;
  const double r = std::cbrt(z) * separation;
  if (!(r > config.r0)) {
    std::ostringstream os;
    os << "scott_energy: scaled separation Z^(1/3) R = " << r << " is not above r0 = " << config.r0;
    throw PreconditionError(os.str());
  }
  // Solve in canonical order so that swapping labels is bit-identical.
  const double hi = std::max(z1, z2);
  const double lo = std::min(z1, z2);
  TFDiatomicMesh mesh = config.mesh;
  const double tf = solve_tf_field(hi, lo, separation, mesh).energy;
  ScottEnergy e = scott_assemble(hi, lo, tf, alpha, table, config.c0);
  e.scaled_separation = r;
  return e;
}

Report theorem2_chain(double z, double alpha, const Theorem2ChainInputs& in, const ScottTable& table) {
  if (!(z > 0.0)) throw DomainError("theorem2_chain: Z must be > 0");
  if (!(in.c0 > 0.0) || !(in.c1 > 0.0)) throw DomainError("theorem2_chain: c0 and c1 must be > 0");
  if (!(in.z1_fraction > 0.0 && in.z1_fraction < 1.0)) {
    throw DomainError("theorem2_chain: z1_fraction must lie in (0, 1)");
  }
  const bool d = in.constants_defaulted;
  const Rational pe = binding_energy_exponent();
  const Rational pr = bond_length_exponent();
  Report rep("theorem2_chain");
  rep.add({"binding_energy_exponent", pe.to_double(), pe, "2 - 1/30", {}, "", ""});
  rep.add({"bond_length_exponent", pr.to_double(), pr, "-1/3 + 11/210 = -(59/30)/7", {}, "", ""});
  const double c2 = std::pow(in.c1 / in.c0, 1.0 / 7.0);
  rep.add({"bond_length_lower_bound", c2 * std::pow(z, pr.to_double()), std::nullopt,
           "c1 R0^-7 <= c0 Z^(59/30)  =>  R0 >= (c1/c0)^(1/7) Z^(-59/210)",
           {{"Z", z, false}, {"c0", in.c0, d}, {"c1", in.c1, d}}, "length", ""});
  rep.add({"binding_energy_upper_bound", in.c0 * std::pow(z, pe.to_double()), std::nullopt,
           "Delta E_b < c0 Z^(59/30)", {{"Z", z, false}, {"c0", in.c0, d}}, "energy", ""});
  const double sig = sigma(in.epsilon, in.tau);
  rep.add({"bond_length_prerequisite", 1.0 / (sig * std::cbrt(z)), std::nullopt,
           "R0 >= 1/(sigma Z^(1/3)), so Z^(1/3) R0 stays above r0",
           {{"Z", z, false}, {"epsilon", in.epsilon, false}, {"tau", in.tau, d}}, "length", ""});
  const double z1 = in.z1_fraction * z;
  const double z2 = z - z1;
  const double s1 = 2.0 * z1 * z1 * table(z1 * alpha);
  const double s2 = 2.0 * z2 * z2 * table(z2 * alpha);
  rep.add({"scott_term_1", s1, std::nullopt, "2 Z1^2 S(Z1 alpha)", {{"Z1", z1, false}, {"alpha", alpha, false}},
           "energy", table.label() + "; cancels between molecule and atoms"});
  rep.add({"scott_term_2", s2, std::nullopt, "2 Z2^2 S(Z2 alpha)", {{"Z2", z2, false}, {"alpha", alpha, false}},
           "energy", table.label() + "; cancels between molecule and atoms"});
  if (in.r > 0.0) {
    const double zpow = std::pow(z, 7.0 / 3.0);
    rep.add({"energy_difference_lower_bound", zpow * in.tf_interaction - in.c0 * std::pow(z, pe.to_double()),
             std::nullopt, "Z^(7/3) [E^TF(z, r) - E^TF(z1) - E^TF(z2)] - c0 Z^(59/30)",
             {{"Z", z, false}, {"r", in.r, false}, {"tf_interaction", in.tf_interaction, false}, {"c0", in.c0, d}},
             "energy", ""});
  }
  return rep;
}

}  // namespace relmol
