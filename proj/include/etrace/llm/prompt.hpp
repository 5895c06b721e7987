// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <etrace/detect/detectors.hpp>
#include <etrace/event/trace.hpp>

namespace etrace::llm {

struct VulnerabilityCondition {
    detect::AttackPatternKind kind;
    std::string condition_text;
};

//! One condition per attack kind, in kAllKinds order.
const std::vector<VulnerabilityCondition>& default_conditions();

inline constexpr std::size_t kDefaultPromptBudget = 16'000;

//! Prompt sections in emission order. Sizes are counted in bytes of UTF-8 text.
struct PromptBundle {
    std::string system_instructions;
    std::vector<VulnerabilityCondition> conditions;
    //! Kept event lines, one per retained event, without trailing newlines.
    std::vector<std::string> event_lines;
    //! Set when events were dropped; the marker is emitted after the first `head_count` lines.
    std::optional<std::string> elision_marker;
    std::size_t head_count{0};
    std::size_t omitted_events{0};
    std::string reasoning_directive;

    [[nodiscard]] bool truncated() const noexcept { return elision_marker.has_value(); }
    //! The full prompt sent to a backend.
    [[nodiscard]] std::string text() const;
};

//! `Event <index>: <name> | <from→to or emitter> | value=<v> | gas=<g>[ | <extra>]`
std::string event_line(const event::DecodedEvent& event);

//! Smallest budget accepted for `trace`: everything but the events, plus the elision
//! marker and the first event line.
std::size_t minimum_budget(const event::EventTrace& trace, std::span<const VulnerabilityCondition> conditions);

//! Throws ConfigError when the budget is below minimum_budget or the conditions do not
//! cover each attack kind exactly once. When the events do not fit, the first ⌈k/2⌉ and
//! last ⌊k/2⌋ of the largest fitting k lines are kept around one elision marker.
PromptBundle build_prompt(const event::EventTrace& trace, std::span<const VulnerabilityCondition> conditions,
                          std::size_t budget = kDefaultPromptBudget);

}  // namespace etrace::llm
