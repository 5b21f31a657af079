// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "pdls/cli/commands.hpp"

int main(int argc, char** argv) { return pdls::cli::run_cli(argc, argv, std::cout, std::cerr); }
