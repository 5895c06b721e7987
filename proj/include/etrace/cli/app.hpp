// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace etrace::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPattern = 2;

//! Runs the command line `args` (without the program name). Reports go to `out`;
//! diagnostics, usage text and --dump-trace output go to `err`.
//! Returns 0 when no pattern was found, 2 when any kind is confirmed or detector-only,
//! and 1 on bad arguments or any operational error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace etrace::cli
