// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include <etrace/cli/app.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return etrace::cli::run(args, std::cout, std::cerr);
}
