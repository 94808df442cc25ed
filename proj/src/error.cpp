// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "relmol/error.hpp"

namespace relmol {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::critical_coupling: return "critical_coupling";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::singular_point: return "singular_point";
    case ErrorKind::insufficient_signal: return "insufficient_signal";
  }
  return "unknown";
}

}  // namespace relmol
