// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RELMOL_VERIFY_HPP
#define RELMOL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relmol/report.hpp"

namespace relmol {

/// Names accepted by run_verify, "all" last.
const std::vector<std::string>& verify_suites();

/// Runs one invariant suite ("kernel", "localization", "herbst", "tf-atom",
/// "tf-diatomic", "bounds", "ims") or all of them. Random samples are drawn
/// from a generator seeded with `seed`.
Report run_verify(const std::string& suite, std::uint64_t seed = 1);

}  // namespace relmol

#endif  // RELMOL_VERIFY_HPP
