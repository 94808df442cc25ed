// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "relmol/relmol.h"

namespace {

struct Owned {
  relmol_report* r = nullptr;
  ~Owned() { relmol_report_free(r); }
};

relmol_entry entry_by_id(const relmol_report* r, const char* id) {
  for (size_t i = 0; i < relmol_report_size(r); ++i) {
    relmol_entry e{};
    REQUIRE(relmol_report_entry(r, i, &e) == RELMOL_OK);
    if (std::strcmp(e.id, id) == 0) return e;
  }
  FAIL("missing entry " << id);
  return {};
}

size_t index_of(const relmol_report* r, const char* id) {
  for (size_t i = 0; i < relmol_report_size(r); ++i) {
    relmol_entry e{};
    relmol_report_entry(r, i, &e);
    if (std::strcmp(e.id, id) == 0) return i;
  }
  return static_cast<size_t>(-1);
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(relmol_version()).size() > 0);
  CHECK(std::string(relmol_status_string(RELMOL_OK)) == "ok");
  CHECK(std::string(relmol_status_string(RELMOL_ERR_CRITICAL_COUPLING)).size() > 0);
}

TEST_CASE("scalar entry points") {
  double v = 0.0;
  REQUIRE(relmol_bessel_k2(1.3, &v) == RELMOL_OK);
  CHECK(v == doctest::Approx(oracle::k2(1.3)).epsilon(1e-10));
  CHECK(std::string(relmol_last_error()).empty());

  CHECK(relmol_bessel_k2(-1.0, &v) == RELMOL_ERR_DOMAIN);
  CHECK(std::string(relmol_last_error()).size() > 0);
  CHECK(relmol_bessel_k2(1.0, nullptr) == RELMOL_ERR_INVALID_ARGUMENT);

  double err = -1.0;
  REQUIRE(relmol_k2_mass_integral(&v, &err) == RELMOL_OK);
  CHECK(v == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(err >= 0.0);
  CHECK(err < 1e-8);

  REQUIRE(relmol_kinetic_symbol(2.0, 0.0, &v) == RELMOL_OK);
  CHECK(v == 2.0);
}

TEST_CASE("bounds report through the C API") {
  relmol_bounds_params p = relmol_bounds_default();
  p.z1 = 60;
  p.z2 = 60;
  p.epsilon = 0.5;
  p.tau = 1.0;
  p.tau_set = 1;
  p.statistics = RELMOL_NO_SYMMETRY;
  Owned o;
  REQUIRE(relmol_bounds(&p, &o.r) == RELMOL_OK);
  CHECK(entry_by_id(o.r, "theorem1_factor").value == 6.0);
  const relmol_entry ceil = entry_by_id(o.r, "theorem1_min_electrons_ceiling");
  CHECK(ceil.has_exact == 1);
  CHECK(ceil.exact_num == 5);
  CHECK(ceil.exact_den == 1);
  const relmol_entry be = entry_by_id(o.r, "binding_energy_exponent");
  CHECK(be.exact_num == 59);
  CHECK(be.exact_den == 30);

  // closed forms recompute bit-identically from their recorded inputs
  const size_t k = index_of(o.r, "theorem1_factor");
  double again = 0.0;
  REQUIRE(relmol_report_recompute(o.r, k, &again) == RELMOL_OK);
  CHECK(again == 6.0);

  // free constants at placeholder values carry the marker
  bool saw_marker = false;
  for (size_t i = 0; i < relmol_report_size(o.r); ++i) {
    relmol_entry e{};
    relmol_report_entry(o.r, i, &e);
    for (size_t j = 0; j < e.input_count; ++j) {
      relmol_input in{};
      REQUIRE(relmol_report_input(o.r, i, j, &in) == RELMOL_OK);
      if (std::strcmp(in.name, "tau") == 0) CHECK(in.unset_by_paper == 0);
      if (in.unset_by_paper != 0) saw_marker = true;
    }
  }
  CHECK(saw_marker);
  relmol_entry e{};
  CHECK(relmol_report_entry(o.r, 100000, &e) == RELMOL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("input errors map to their statuses") {
  relmol_bounds_params p = relmol_bounds_default();
  p.epsilon = 1.5;
  relmol_report* r = reinterpret_cast<relmol_report*>(0x1);
  CHECK(relmol_bounds(&p, &r) == RELMOL_ERR_DOMAIN);
  CHECK(r == nullptr);
  CHECK(relmol_bounds(nullptr, &r) == RELMOL_ERR_INVALID_ARGUMENT);
  CHECK(relmol_bounds(&p, nullptr) == RELMOL_ERR_INVALID_ARGUMENT);

  relmol_herbst_params h = relmol_herbst_default();
  h.z = 1.0;
  h.alpha = 0.7;
  CHECK(relmol_herbst_ground(&h, &r) == RELMOL_ERR_CRITICAL_COUPLING);
  CHECK(std::string(relmol_last_error()).find("2/pi") != std::string::npos);
}

TEST_CASE("convergence failures carry their last estimate") {
  relmol_tf_diatomic_params p = relmol_tf_diatomic_default();
  p.z1 = 1.0;
  p.z2 = 1.0;
  p.separation = 2.0;
  p.mesh.n_sigma = 40;
  p.mesh.n_tau = 30;
  p.mesh.max_iterations = 1;
  p.mesh.estimate_mesh_error = 0;
  relmol_report* r = nullptr;
  CHECK(relmol_tf_diatomic(&p, &r) == RELMOL_ERR_CONVERGENCE);
  CHECK(std::isfinite(relmol_last_error_estimate()));
  CHECK(relmol_last_error_estimate() > 0.0);
  double v = 0.0;
  relmol_bessel_k2(1.0, &v);
  CHECK(std::isnan(relmol_last_error_estimate()));
}

TEST_CASE("errors are per thread") {
  double v = 0.0;
  CHECK(relmol_bessel_k2(-1.0, &v) == RELMOL_ERR_DOMAIN);
  std::string other = "unset";
  std::thread t([&] {
    other = relmol_last_error();
  });
  t.join();
  CHECK(other.empty());
  CHECK(std::string(relmol_last_error()).size() > 0);
}

TEST_CASE("Thomas-Fermi atom report") {
  relmol_tf_atom_params p = relmol_tf_atom_default();
  p.z = 1.0;
  Owned o;
  REQUIRE(relmol_tf_atom(&p, &o.r) == RELMOL_OK);
  CHECK(entry_by_id(o.r, "initial_slope").value == doctest::Approx(oracle::tf_slope()).epsilon(1e-8));
  CHECK(relmol_report_all_passed(o.r) == 1);
  REQUIRE(relmol_report_check_count(o.r) >= 1);
  relmol_check c{};
  REQUIRE(relmol_report_check(o.r, 0, &c) == RELMOL_OK);
  CHECK(std::string(c.id) == "tf_atom.virial");
  CHECK(c.passed == 1);
}

TEST_CASE("Scott table validation") {
  relmol_scott_params p = relmol_scott_default();
  const double g[] = {0.0, 0.2};
  const double s[] = {0.25, 0.3};
  p.table_gammas = g;
  p.table_values = s;
  p.table_size = 2;
  relmol_report* r = nullptr;
  CHECK(relmol_scott(&p, &r) == RELMOL_ERR_DOMAIN);
  p.table_gammas = nullptr;
  CHECK(relmol_scott(&p, &r) == RELMOL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("herbst scan classifies both regimes") {
  relmol_dilation_params p = relmol_dilation_default();
  p.z = 1.0;
  for (double a : {0.6, 0.7}) {
    p.alpha = a;
    Owned o;
    REQUIRE(relmol_herbst_scan(&p, &o.r) == RELMOL_OK);
    CHECK(entry_by_id(o.r, "unbounded").value == (a > 0.65 ? 1.0 : 0.0));
  }
}

TEST_CASE("verify suites") {
  const size_t n = relmol_verify_suite_count();
  REQUIRE(n >= 2);
  CHECK(std::string(relmol_verify_suite_name(n - 1)) == "all");
  CHECK(relmol_verify_suite_name(n) == nullptr);
  relmol_report* r = nullptr;
  CHECK(relmol_verify("no-such-suite", 1, &r) == RELMOL_ERR_DOMAIN);
  Owned o;
  REQUIRE(relmol_verify(relmol_verify_suite_name(0), 7, &o.r) == RELMOL_OK);
  CHECK(relmol_report_check_count(o.r) > 0);
  CHECK(relmol_report_all_passed(o.r) == 1);
}
