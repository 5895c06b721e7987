// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <etrace/common/errors.hpp>
#include <etrace/detect/detectors.hpp>
#include <etrace/event/trace.hpp>

namespace etrace::llm {

struct AnalysisReport {
    std::vector<std::pair<std::size_t, std::string>> per_event;  // ascending event index
    std::string summary;
    std::string pattern_analysis;
    std::vector<detect::AttackPatternKind> claimed_kinds;  // kAllKinds order, no repeats
    std::string further_recommendation;

    bool operator==(const AnalysisReport&) const = default;
};

//! Raised when none of the three section headers can be found. Keeps the raw text.
class UnparseableReportError : public Error {
  public:
    explicit UnparseableReportError(std::string raw)
        : Error("model output has no Summary, Pattern Analysis or Further Recommendation section"),
          raw_{std::move(raw)} {}
    [[nodiscard]] const std::string& raw() const noexcept { return raw_; }

  private:
    std::string raw_;
};

//! Splits model output into its three sections. Header matching ignores case, markdown
//! decoration and list numbering. Per-event lines ("Event <n>: ...") are read from the text
//! before the first header and kept only when <n> is an index of `trace`.
AnalysisReport parse_report(const std::string& raw, const event::EventTrace& trace);

//! Attack kinds named in `text`, including common spellings (re-entrancy, flashloan,
//! denial of service).
std::vector<detect::AttackPatternKind> claimed_kinds(const std::string& text);

}  // namespace etrace::llm
