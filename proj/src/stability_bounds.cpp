// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "relmol/stability_bounds.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "relmol/error.hpp"
#include "relmol/herbst.hpp"

namespace relmol {

namespace {

void require_count(std::int64_t n, const char* who) {
  if (n < 1) throw DomainError(std::string(who) + ": particle number must be >= 1");
}

void require_positive(double v, const char* who, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(who) + ": " + name + " must be finite and > 0");
  }
}

void require_epsilon(double eps, const char* who) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError(std::string(who) + ": epsilon must lie in (0, 1)");
}

double epsilon_factor(double eps) { return 1.0 + 1.0 / (eps * (1.0 - eps)); }

ParticleStatistics statistics_from(double fermionic) {
  return fermionic != 0.0 ? ParticleStatistics::fermionic : ParticleStatistics::no_symmetry;
}

double fermionic_flag(ParticleStatistics s) { return s == ParticleStatistics::fermionic ? 1.0 : 0.0; }

std::int64_t count_from(double v) { return static_cast<std::int64_t>(std::llround(v)); }

}  // namespace

const char* to_string(ParticleStatistics s) {
  return s == ParticleStatistics::fermionic ? "fermionic" : "none";
}

void BoundConfig::validate() const {
  require_epsilon(epsilon, "BoundConfig");
  require_positive(tau, "BoundConfig", "tau");
  require_positive(dly_constant, "BoundConfig", "C");
}

double kappa(std::int64_t n, ParticleStatistics s, double tau) {
  require_count(n, "kappa");
  require_positive(tau, "kappa", "tau");
  const double nd = static_cast<double>(n);
  return s == ParticleStatistics::fermionic ? tau * std::cbrt(nd) : tau * nd;
}

double sigma(double epsilon, double tau) {
  require_epsilon(epsilon, "sigma");
  require_positive(tau, "sigma", "tau");
  return 2.0 * epsilon_factor(epsilon) * tau;
}

double lemma3_bound(std::int64_t n, double z, ParticleStatistics s, double tau) {
  require_positive(z, "lemma3_bound", "Z");
  return -z * z * kappa(n, s, tau);
}

DlyBound dly_trace_bound(double z, double alpha, double r, double c) {
  require_positive(z, "dly_trace_bound", "Z");
  require_positive(r, "dly_trace_bound", "r");
  require_positive(c, "dly_trace_bound", "C");
  if (!(alpha >= 0.0)) throw DomainError("dly_trace_bound: alpha must be >= 0");
  const double g = z * alpha;
  if (g > kCriticalCoupling) {
    throw CriticalCouplingError("dly_trace_bound: Z*alpha exceeds the critical coupling 2/pi");
  }
  const double z2 = z * z;
  const double r_term = c * z2 * std::sqrt(z) * std::sqrt(r);
  DlyBound b;
  b.full = -c * std::sqrt(g) * z2 - r_term - c * g * g * z2;
  b.simplified = -c * z2 - r_term;
  return b;
}

double radius_choice(std::int64_t n, double z, ParticleStatistics s) {
  require_count(n, "radius_choice");
  require_positive(z, "radius_choice", "Z");
  if (s == ParticleStatistics::no_symmetry) return 1.0 / z;
  const double nd = static_cast<double>(n);
  return std::cbrt(nd * nd) / z;
}

double theorem4_derivative_bound(std::int64_t n, double z, double epsilon, ParticleStatistics s,
                                 double tau) {
  require_positive(z, "theorem4_derivative_bound", "Z");
  require_epsilon(epsilon, "theorem4_derivative_bound");
  return -epsilon_factor(epsilon) * kappa(n, s, tau) * z;
}

double r0_inverse_bound(std::int64_t n, double epsilon, double tau, ParticleStatistics s) {
  return sigma(epsilon, tau) * kappa(n, s, 1.0);
}

double fermionic_electron_capacity(double n, double sig) {
  if (n <= 0.0) return 0.0;
  return n * (0.5 + std::sqrt(0.25 + 3.0 * sig / std::cbrt(n * n)));
}

MinElectronsResult theorem1_min_electrons(double z1, double z2, double epsilon, double tau,
                                          ParticleStatistics s) {
  require_positive(z1, "theorem1_min_electrons", "Z1");
  require_positive(z2, "theorem1_min_electrons", "Z2");
  const double sig = sigma(epsilon, tau);
  MinElectronsResult r;
  r.reduced_charge = z1 * z2 / (z1 + z2);
  if (s == ParticleStatistics::no_symmetry) {
    r.factor = 0.5 + std::sqrt(0.25 + 3.0 * sig);
    r.bound = r.reduced_charge / r.factor;
    r.residual = std::abs(r.bound * r.factor - r.reduced_charge);
  } else {
    // Capacity(N) grows like sqrt(3 sigma) N^{2/3} near 0 and exceeds N, so
    // the root lies in (0, reduced_charge].
    double lo = 0.0;
    double hi = r.reduced_charge;
    while (hi - lo > 1e-15 * hi) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (fermionic_electron_capacity(mid, sig) >= r.reduced_charge) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    r.bound = hi;
    r.factor = fermionic_electron_capacity(hi, sig) / hi;
    r.residual = std::abs(fermionic_electron_capacity(hi, sig) - r.reduced_charge);
  }
  r.ceiling = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(r.bound)));
  return r;
}

double lieb_upper_bound(double z1, double z2) {
  require_positive(z1, "lieb_upper_bound", "Z1");
  require_positive(z2, "lieb_upper_bound", "Z2");
  return 2.0 * (z1 + z2) + 2.0;
}

Rational binding_energy_exponent() { return Rational(2) - Rational(1, 30); }

Rational bond_length_exponent() { return Rational(-1, 3) + Rational(11, 210); }

Report theorem2_report(double z, double c0, double c1, bool constants_defaulted) {
  require_positive(z, "theorem2_report", "Z");
  require_positive(c0, "theorem2_report", "c0");
  require_positive(c1, "theorem2_report", "c1");
  const Rational pe = binding_energy_exponent();
  const Rational pr = bond_length_exponent();
  Report rep("theorem2");
  rep.add({"binding_energy_exponent", pe.to_double(), pe, "2 - 1/30", {}, "", ""});
  rep.add({"bond_length_exponent", pr.to_double(), pr, "-1/3 + 11/210 = -(59/30)/7", {}, "", ""});
  const double c2 = std::pow(c1 / c0, 1.0 / 7.0);
  rep.add({"c2", c2, std::nullopt, "(c1/c0)^(1/7)",
           {{"c0", c0, constants_defaulted}, {"c1", c1, constants_defaulted}}, "", ""});
  rep.add({"binding_energy_upper_bound", c1 * std::pow(z, pe.to_double()), std::nullopt,
           "Delta E_b < c1 Z^(59/30)", {{"Z", z, false}, {"c1", c1, constants_defaulted}}, "energy",
           ""});
  rep.add({"bond_length_lower_bound", c2 * std::pow(z, pr.to_double()), std::nullopt,
           "R0 >= (c1/c0)^(1/7) Z^(-59/210)",
           {{"Z", z, false}, {"c0", c0, constants_defaulted}, {"c1", c1, constants_defaulted}},
           "length", ""});
  return rep;
}

Report bounds_report(const BoundConfig& config, const BoundsInputs& in) {
  config.validate();
  require_count(in.n, "bounds_report");
  require_positive(in.z1, "bounds_report", "Z1");
  require_positive(in.z2, "bounds_report", "Z2");
  const ParticleStatistics s = config.statistics;
  const double fermi = fermionic_flag(s);
  const double n = static_cast<double>(in.n);
  const double eps = config.epsilon;
  const double tau = config.tau;
  const bool tau_d = in.tau_defaulted;
  const double r = in.r > 0.0 ? in.r : radius_choice(in.n, in.z1, s);

  Report rep("bounds");
  rep.add({"kappa", kappa(in.n, s, tau), std::nullopt, "tau n (none) | tau n^(1/3) (fermionic)",
           {{"n", n, false}, {"fermionic", fermi, false}, {"tau", tau, tau_d}}, "", ""});
  rep.add({"sigma", sigma(eps, tau), std::nullopt, "2 [1 + 1/(eps (1-eps))] tau",
           {{"epsilon", eps, false}, {"tau", tau, tau_d}}, "", ""});
  rep.add({"lemma3_bound", lemma3_bound(in.n, in.z1, s, tau), std::nullopt, "-Z^2 kappa(n)",
           {{"n", n, false}, {"Z", in.z1, false}, {"fermionic", fermi, false}, {"tau", tau, tau_d}},
           "energy", ""});
  const DlyBound dly = dly_trace_bound(in.z1, in.alpha, r, config.dly_constant);
  const std::vector<ReportInput> dly_inputs{{"Z", in.z1, false},
                                            {"alpha", in.alpha, false},
                                            {"r", r, false},
                                            {"C", config.dly_constant, in.c_defaulted}};
  rep.add({"dly_trace_bound", dly.full, std::nullopt,
           "-C (Z a)^(1/2) Z^2 - C Z^(5/2) r^(1/2) - C (Z a)^2 Z^2", dly_inputs, "energy", ""});
  rep.add({"dly_trace_bound_simplified", dly.simplified, std::nullopt, "-C Z^2 - C Z^(5/2) r^(1/2)",
           dly_inputs, "energy", "not ordered against the full form in general"});
  rep.add({"radius_choice", radius_choice(in.n, in.z1, s), std::nullopt,
           "n^(2/3)/Z (fermionic) | 1/Z (none)",
           {{"n", n, false}, {"Z", in.z1, false}, {"fermionic", fermi, false}}, "length", ""});
  rep.add({"theorem4_derivative_bound", theorem4_derivative_bound(in.n, in.z1, eps, s, tau),
           std::nullopt, "-[1 + 1/(eps (1-eps))] kappa(n) Z",
           {{"n", n, false},
            {"Z", in.z1, false},
            {"epsilon", eps, false},
            {"fermionic", fermi, false},
            {"tau", tau, tau_d}},
           "energy/charge", "spectral hypotheses assumed, not verified"});
  rep.add({"r0_inverse_bound", r0_inverse_bound(in.n, eps, tau, s), std::nullopt,
           "sigma N (none) | sigma N^(1/3) (fermionic)",
           {{"N", n, false}, {"epsilon", eps, false}, {"tau", tau, tau_d}, {"fermionic", fermi, false}},
           "1/length", ""});
  const MinElectronsResult t1 = theorem1_min_electrons(in.z1, in.z2, eps, tau, s);
  const std::vector<ReportInput> t1_inputs{{"Z1", in.z1, false},
                                           {"Z2", in.z2, false},
                                           {"epsilon", eps, false},
                                           {"tau", tau, tau_d},
                                           {"fermionic", fermi, false}};
  rep.add({"theorem1_factor", t1.factor, std::nullopt,
           "1/2 + sqrt(1/4 + 3 sigma) | 1/2 + sqrt(1/4 + 3 sigma / N^(2/3))", t1_inputs, "", ""});
  rep.add({"theorem1_min_electrons", t1.bound, std::nullopt,
           "Z1 Z2/(Z1+Z2) <= N factor(N), smallest real N", t1_inputs, "electrons", ""});
  rep.add({"theorem1_min_electrons_ceiling", static_cast<double>(t1.ceiling),
           Rational(t1.ceiling), "ceil(theorem1_min_electrons)", t1_inputs, "electrons", ""});
  rep.add({"lieb_upper_bound", lieb_upper_bound(in.z1, in.z2), std::nullopt,
           "N < 2 (Z1 + Z2) + 2", {{"Z1", in.z1, false}, {"Z2", in.z2, false}}, "electrons",
           "strict"});
  rep.append(theorem2_report(in.z1 + in.z2, in.c0, in.c1, in.c0_defaulted || in.c1_defaulted));
  return rep;
}

double recompute(const ReportEntry& e) {
  using Fn = std::function<double(const ReportEntry&)>;
  static const std::map<std::string, Fn> table{
      {"kappa",
       [](const ReportEntry& x) {
         return kappa(count_from(x.input("n")), statistics_from(x.input("fermionic")),
                      x.input("tau"));
       }},
      {"sigma", [](const ReportEntry& x) { return sigma(x.input("epsilon"), x.input("tau")); }},
      {"lemma3_bound",
       [](const ReportEntry& x) {
         return lemma3_bound(count_from(x.input("n")), x.input("Z"),
                             statistics_from(x.input("fermionic")), x.input("tau"));
       }},
      {"dly_trace_bound",
       [](const ReportEntry& x) {
         return dly_trace_bound(x.input("Z"), x.input("alpha"), x.input("r"), x.input("C")).full;
       }},
      {"dly_trace_bound_simplified",
       [](const ReportEntry& x) {
         return dly_trace_bound(x.input("Z"), x.input("alpha"), x.input("r"), x.input("C"))
             .simplified;
       }},
      {"radius_choice",
       [](const ReportEntry& x) {
         return radius_choice(count_from(x.input("n")), x.input("Z"),
                              statistics_from(x.input("fermionic")));
       }},
      {"theorem4_derivative_bound",
       [](const ReportEntry& x) {
         return theorem4_derivative_bound(count_from(x.input("n")), x.input("Z"),
                                          x.input("epsilon"),
                                          statistics_from(x.input("fermionic")), x.input("tau"));
       }},
      {"r0_inverse_bound",
       [](const ReportEntry& x) {
         return r0_inverse_bound(count_from(x.input("N")), x.input("epsilon"), x.input("tau"),
                                 statistics_from(x.input("fermionic")));
       }},
      {"theorem1_factor",
       [](const ReportEntry& x) {
         return theorem1_min_electrons(x.input("Z1"), x.input("Z2"), x.input("epsilon"),
                                       x.input("tau"), statistics_from(x.input("fermionic")))
             .factor;
       }},
      {"theorem1_min_electrons",
       [](const ReportEntry& x) {
         return theorem1_min_electrons(x.input("Z1"), x.input("Z2"), x.input("epsilon"),
                                       x.input("tau"), statistics_from(x.input("fermionic")))
             .bound;
       }},
      {"theorem1_min_electrons_ceiling",
       [](const ReportEntry& x) {
         return static_cast<double>(
             theorem1_min_electrons(x.input("Z1"), x.input("Z2"), x.input("epsilon"),
                                    x.input("tau"), statistics_from(x.input("fermionic")))
                 .ceiling);
       }},
      {"lieb_upper_bound",
       [](const ReportEntry& x) { return lieb_upper_bound(x.input("Z1"), x.input("Z2")); }},
      {"binding_energy_exponent",
       [](const ReportEntry&) { return binding_energy_exponent().to_double(); }},
      {"bond_length_exponent", [](const ReportEntry&) { return bond_length_exponent().to_double(); }},
      {"c2",
       [](const ReportEntry& x) {
         return theorem2_report(1.0, x.input("c0"), x.input("c1")).at("c2").value;
       }},
      {"binding_energy_upper_bound",
       [](const ReportEntry& x) {
         return theorem2_report(x.input("Z"), 1.0, x.input("c1")).at("binding_energy_upper_bound").value;
       }},
      {"bond_length_lower_bound",
       [](const ReportEntry& x) {
         return theorem2_report(x.input("Z"), x.input("c0"), x.input("c1"))
             .at("bond_length_lower_bound")
             .value;
       }},
  };
  const auto it = table.find(e.id);
  if (it == table.end()) throw DomainError("recompute: unknown bound identifier '" + e.id + "'");
  return it->second(e);
}

}  // namespace relmol
