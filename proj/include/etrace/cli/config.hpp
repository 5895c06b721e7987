// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <etrace/detect/detectors.hpp>
#include <etrace/llm/backend.hpp>
#include <etrace/llm/prompt.hpp>

namespace etrace::cli {

//! Settings from the `--config` file. Command-line flags override them.
struct RunConfig {
    detect::DetectorConfig detectors;
    llm::HttpBackendConfig http;
    llm::RetryPolicy retry;
    std::size_t max_in_flight{2};
    std::size_t prompt_budget{llm::kDefaultPromptBudget};
    std::optional<std::string> rpc_url;
};

//! Reads a JSON document with optional "detectors", "llm" and "rpc" sections.
//! Unknown keys are rejected, and so is any attempt to store the API key in the file.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text);

}  // namespace etrace::cli
