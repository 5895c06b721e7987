// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/llm/prompt.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include <etrace/common/errors.hpp>

namespace etrace::llm {

using detect::AttackPatternKind;

const std::vector<VulnerabilityCondition>& default_conditions() {
    static const std::vector<VulnerabilityCondition> conditions{
        {AttackPatternKind::Reentrancy,
         "multiple calls to the same function during the contract execution, exploiting external calls before "
         "state updates, leading to malicious repeated fund transfers or tampering with the contract's state. In "
         "the events this shows up as consecutive transfers that alternate direction between the same two "
         "addresses."},
        {AttackPatternKind::IntegerOverflow,
         "an arithmetic result leaves the range of an unsigned 256-bit integer and wraps around, so a transfer or "
         "balance update carries an abnormally large value (for example close to 2^255) that the sender could "
         "never have held."},
        {AttackPatternKind::FlashLoanAttack,
         "funds are borrowed without collateral and repaid inside the same transaction; the borrowed liquidity "
         "drives one or more swaps that move pool prices, after which the loan is repaid and the profit is "
         "withdrawn."},
        {AttackPatternKind::DoS,
         "the same cheap call is repeated to grow contract state until a later operation needs more gas than the "
         "transaction gas limit allows, leaving a function permanently unexecutable and its funds locked."},
    };
    return conditions;
}

namespace {

    const std::string kSystemInstructions =
        "You are a smart-contract security analyst. You are given the events emitted by a single blockchain "
        "transaction, decoded from its transaction log.\n"
        "None code: the contracts' source code is not available. Base every statement only on the events "
        "listed below.\n"
        "Produce two outputs in order: first an explanation of each event, then a comprehensive judgment that "
        "weighs all explanations together.";

    const std::string kReasoningDirective =
        "Think step by step and show your reasoning.\n"
        "Stage 1: for every event listed, write one line starting with \"Event <index>:\" that explains the "
        "behavior it records.\n"
        "Stage 2: give the comprehensive judgment using exactly these three headers, in this order:\n"
        "Summary:\n"
        "Pattern Analysis:\n"
        "Further Recommendation:\n"
        "Under Pattern Analysis, name every vulnerability type above whose condition the events match "
        "(Reentrancy, Integer Overflow, Flash Loan Attack, DoS), possibly several, and describe step by step how "
        "the attack unfolds. If no condition matches, say so without naming any type.";

    constexpr std::string_view kEventsHeader = "Events (index: name | address | value | gas | details):";

    std::string marker_line(std::size_t omitted) {
        return "[... " + std::to_string(omitted) + " events omitted ...]";
    }

    std::string conditions_block(std::span<const VulnerabilityCondition> conditions) {
        std::string out = "Vulnerability conditions:\n";
        for (const auto& c : conditions) {
            out += "- " + std::string{detect::display_name(c.kind)} + ": " + c.condition_text + "\n";
        }
        return out;
    }

    // Everything except event lines and the marker, each counted with its newline.
    std::size_t fixed_size(std::span<const VulnerabilityCondition> conditions) {
        return kSystemInstructions.size() + 2 + conditions_block(conditions).size() + 1 + kEventsHeader.size() + 1 + 1 +
               kReasoningDirective.size() + 1;
    }

    void check_conditions(std::span<const VulnerabilityCondition> conditions) {
        std::set<AttackPatternKind> seen;
        for (const auto& c : conditions) {
            if (!seen.insert(c.kind).second) {
                throw ConfigError("duplicate vulnerability condition for " + std::string{to_string(c.kind)});
            }
        }
        if (seen.size() != detect::kAllKinds.size()) {
            throw ConfigError("vulnerability conditions must cover all four attack kinds");
        }
    }

}  // namespace

std::string event_line(const event::DecodedEvent& ev) {
    std::string line = "Event " + std::to_string(ev.index) + ": " + ev.name + " | " + event::address_column(ev) +
                       " | value=" + (ev.value ? to_scientific(*ev.value) : "-") +
                       " | gas=" + (ev.gas_used ? std::to_string(*ev.gas_used) : "-");
    if (!ev.extra.empty()) line += " | " + event::extra_column(ev);
    return line;
}

std::string PromptBundle::text() const {
    std::string out =
        system_instructions + "\n\n" + conditions_block(conditions) + "\n" + std::string{kEventsHeader} + "\n";
    for (std::size_t i = 0; i < event_lines.size(); ++i) {
        if (elision_marker && i == head_count) out += *elision_marker + "\n";
        out += event_lines[i] + "\n";
    }
    if (elision_marker && head_count == event_lines.size()) out += *elision_marker + "\n";
    out += "\n" + reasoning_directive + "\n";
    return out;
}

std::size_t minimum_budget(const event::EventTrace& trace, std::span<const VulnerabilityCondition> conditions) {
    std::size_t min = fixed_size(conditions);
    if (!trace.events.empty()) {
        min += marker_line(trace.events.size()).size() + 1 + event_line(trace.events.front()).size() + 1;
    }
    return min;
}

PromptBundle build_prompt(const event::EventTrace& trace, std::span<const VulnerabilityCondition> conditions,
                          std::size_t budget) {
    check_conditions(conditions);
    const std::size_t minimum = minimum_budget(trace, conditions);
    if (budget < minimum) {
        throw ConfigError("prompt budget " + std::to_string(budget) + " is below the minimum " +
                          std::to_string(minimum) + " for this trace");
    }

    PromptBundle bundle;
    bundle.system_instructions = kSystemInstructions;
    bundle.conditions.assign(conditions.begin(), conditions.end());
    bundle.reasoning_directive = kReasoningDirective;

    std::vector<std::string> lines;
    lines.reserve(trace.events.size());
    for (const auto& ev : trace.events) lines.push_back(event_line(ev));

    const std::size_t fixed = fixed_size(conditions);
    const auto cost = [&](std::size_t first, std::size_t last) {
        return std::accumulate(lines.begin() + static_cast<std::ptrdiff_t>(first),
                               lines.begin() + static_cast<std::ptrdiff_t>(last), std::size_t{0},
                               [](std::size_t acc, const std::string& l) { return acc + l.size() + 1; });
    };

    const std::size_t n = lines.size();
    if (fixed + cost(0, n) <= budget) {
        bundle.event_lines = std::move(lines);
        bundle.head_count = n;
        return bundle;
    }

    for (std::size_t k = n - 1; k >= 1; --k) {
        const std::size_t head = (k + 1) / 2;
        const std::size_t tail = k - head;
        const std::string marker = marker_line(n - k);
        if (fixed + marker.size() + 1 + cost(0, head) + cost(n - tail, n) > budget) continue;
        bundle.event_lines.assign(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(head));
        bundle.event_lines.insert(bundle.event_lines.end(), lines.end() - static_cast<std::ptrdiff_t>(tail),
                                  lines.end());
        bundle.head_count = head;
        bundle.omitted_events = n - k;
        bundle.elision_marker = marker;
        return bundle;
    }
    // Unreachable: budget >= minimum guarantees k = 1 fits.
    throw ConfigError("prompt budget too small");
}

}  // namespace etrace::llm
