// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/cli/pipeline.hpp>

#include <etrace/event/trace.hpp>
#include <etrace/llm/prompt.hpp>
#include <etrace/llm/report.hpp>

namespace etrace::cli {

report::Verdict analyze_receipt(const ingestion::TransactionReceipt& receipt, const PipelineContext& ctx) {
    const auto trace = event::build_trace(receipt, ctx.registry);
    const auto findings = detect::run_all_detectors(trace, ctx.detectors);

    std::optional<llm::AnalysisReport> analysis;
    std::optional<std::string> appendix;
    if (ctx.backend != nullptr) {
        const auto bundle = llm::build_prompt(trace, llm::default_conditions(), ctx.prompt_budget);
        const auto raw = llm::analyze(bundle, *ctx.backend, ctx.retry);
        try {
            analysis = llm::parse_report(raw, trace);
        } catch (const llm::UnparseableReportError& e) {
            appendix = e.raw();
        }
    }

    auto verdict = report::cross_validate(findings, analysis, ctx.backend != nullptr);
    verdict.llm_appendix = std::move(appendix);
    report::attach_trace(verdict, trace);
    return verdict;
}

}  // namespace etrace::cli
