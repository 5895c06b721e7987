// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <etrace/abi/registry.hpp>
#include <etrace/detect/detectors.hpp>
#include <etrace/ingestion/receipt.hpp>
#include <etrace/llm/backend.hpp>
#include <etrace/report/verdict.hpp>

namespace etrace::cli {

struct PipelineContext {
    const abi::AbiRegistry& registry;
    const detect::DetectorConfig& detectors;
    llm::LlmBackend* backend{nullptr};  // null disables the model stage
    std::size_t prompt_budget{llm::kDefaultPromptBudget};
    llm::RetryPolicy retry{};
};

//! Decoding, detection, the optional model stage and cross-validation for one receipt.
//! A model answer without recognizable sections is kept as the verdict's appendix.
report::Verdict analyze_receipt(const ingestion::TransactionReceipt& receipt, const PipelineContext& ctx);

}  // namespace etrace::cli
