// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env;
  if (const char* c = std::getenv("RELMOL_CONFIG"); c != nullptr && *c != '\0') env = c;
  return relmol::cli::run(args, env, std::cout, std::cerr);
}
