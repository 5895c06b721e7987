// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/detect/detectors.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include <etrace/common/errors.hpp>

namespace etrace::detect {

using event::DecodedEvent;
using event::EventTrace;

std::string_view to_string(AttackPatternKind kind) {
    switch (kind) {
        case AttackPatternKind::Reentrancy:
            return "Reentrancy";
        case AttackPatternKind::IntegerOverflow:
            return "IntegerOverflow";
        case AttackPatternKind::FlashLoanAttack:
            return "FlashLoanAttack";
        case AttackPatternKind::DoS:
            return "DoS";
    }
    return "?";
}

std::string_view display_name(AttackPatternKind kind) {
    switch (kind) {
        case AttackPatternKind::Reentrancy:
            return "Reentrancy";
        case AttackPatternKind::IntegerOverflow:
            return "Integer Overflow";
        case AttackPatternKind::FlashLoanAttack:
            return "Flash Loan Attack";
        case AttackPatternKind::DoS:
            return "DoS";
    }
    return "?";
}

std::optional<AttackPatternKind> kind_from_string(std::string_view name) {
    for (auto k : kAllKinds) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

void DetectorConfig::validate() const {
    if (overflow_threshold == 0) throw ConfigError("overflow threshold must be positive");
    if (reentry_min_transfers < 2) throw ConfigError("reentry_min_transfers must be at least 2");
    if (reentry_min_reversals < 1) throw ConfigError("reentry_min_reversals must be at least 1");
    if (dos_gas_limit == 0) throw ConfigError("DoS gas limit must be positive");
    if (dos_min_repeats < 1) throw ConfigError("dos_min_repeats must be positive");
    if (dos_small_value_max == 0) throw ConfigError("DoS small-value ceiling must be positive");
}

namespace {

    std::string join_indices(const std::vector<std::size_t>& idx) {
        std::string out;
        for (std::size_t i : idx) {
            if (!out.empty()) out += ", ";
            out += std::to_string(i);
        }
        return out;
    }

    bool is_transfer(const DecodedEvent& ev) {
        return ev.name == "Transfer" && ev.from && ev.to;
    }

    void sort_by_first_evidence(std::vector<Finding>& findings) {
        std::stable_sort(findings.begin(), findings.end(),
                         [](const Finding& a, const Finding& b) { return a.evidence.front() < b.evidence.front(); });
    }

}  // namespace

std::vector<Finding> detect_reentrancy(const EventTrace& trace, const DetectorConfig& cfg) {
    struct PairRun {
        std::vector<std::size_t> indices;
        std::size_t reversals{0};
        bool last_forward{false};
    };
    std::map<std::pair<Address, Address>, PairRun> pairs;

    for (const auto& ev : trace.events) {
        if (!is_transfer(ev)) continue;
        const auto key = std::minmax(*ev.from, *ev.to);
        const bool forward = *ev.from == key.first;
        auto& run = pairs[{key.first, key.second}];
        if (!run.indices.empty() && run.last_forward != forward) ++run.reversals;
        run.last_forward = forward;
        run.indices.push_back(ev.index);
    }

    std::vector<Finding> out;
    for (const auto& [pair, run] : pairs) {
        if (run.indices.size() < cfg.reentry_min_transfers || run.reversals < cfg.reentry_min_reversals) continue;
        Finding f;
        f.kind = AttackPatternKind::Reentrancy;
        f.evidence = run.indices;
        f.score = std::min(1.0, static_cast<double>(run.reversals) / 4.0);
        f.explanation = std::to_string(run.indices.size()) + " Transfer events between " + pair.first.hex() + " and " +
                        pair.second.hex() + " reverse direction " + std::to_string(run.reversals) +
                        " times, forming a call-back loop (events " + join_indices(run.indices) + ")";
        out.push_back(std::move(f));
    }
    sort_by_first_evidence(out);
    return out;
}

std::vector<Finding> detect_integer_overflow(const EventTrace& trace, const DetectorConfig& cfg) {
    static const U256 kHalfRange = U256{1} << 255;
    std::map<U256, std::vector<std::size_t>> by_value;
    for (const auto& ev : trace.events) {
        if (is_transfer(ev) && ev.value && *ev.value >= cfg.overflow_threshold) {
            by_value[*ev.value].push_back(ev.index);
        }
    }

    std::vector<Finding> out;
    for (const auto& [value, indices] : by_value) {
        Finding f;
        f.kind = AttackPatternKind::IntegerOverflow;
        f.evidence = indices;
        f.score = value >= kHalfRange ? 1.0 : 0.8;
        f.explanation = std::to_string(indices.size()) + " Transfer event(s) carry value " + to_scientific(value) +
                        " (" + to_decimal(value) + "), at or above the overflow threshold " +
                        to_scientific(cfg.overflow_threshold) + " (events " + join_indices(indices) + ")";
        out.push_back(std::move(f));
    }
    sort_by_first_evidence(out);
    return out;
}

std::vector<Finding> detect_flash_loan(const EventTrace& trace, const DetectorConfig& /*cfg*/) {
    const auto& events = trace.events;
    for (std::size_t f = 0; f < events.size(); ++f) {
        if (events[f].name != "FlashLoan" && events[f].name != "Borrow") continue;
        const Address lender = events[f].emitter;

        std::vector<std::size_t> swaps;
        for (std::size_t j = f + 1; j < events.size(); ++j) {
            if (events[j].name == "Swap") swaps.push_back(j);
        }
        if (swaps.empty()) continue;

        const auto is_terminal = [&](const DecodedEvent& ev) {
            return ev.name == "Withdrawal" || (is_transfer(ev) && *ev.to == lender);
        };
        std::optional<std::size_t> terminal;
        for (std::size_t j = events.size(); j-- > swaps.front() + 1;) {
            if (is_terminal(events[j])) {
                terminal = j;
                break;
            }
        }
        if (!terminal && swaps.size() < 2) continue;

        Finding out;
        out.kind = AttackPatternKind::FlashLoanAttack;
        out.evidence.push_back(events[f].index);
        for (std::size_t s : swaps) {
            if (!terminal || s < *terminal) out.evidence.push_back(events[s].index);
        }
        const std::size_t swap_count = out.evidence.size() - 1;
        out.explanation = events[f].name + " at event " + std::to_string(events[f].index) + " from " + lender.hex() +
                          " is followed by " + std::to_string(swap_count) + " Swap event(s)";
        if (terminal) {
            const auto& t = events[*terminal];
            out.evidence.push_back(t.index);
            out.score = 1.0;
            out.explanation += " and closed by " + t.name + " at event " + std::to_string(t.index);
            if (t.value) out.explanation += " moving " + to_scientific(*t.value);
        } else {
            out.score = 0.6;
            out.explanation += "; no repayment or withdrawal was observed";
        }
        out.explanation += ". Price movement is not assessed.";
        return {out};
    }
    return {};
}

std::vector<Finding> detect_dos(const EventTrace& trace, const DetectorConfig& cfg) {
    // Repetition rule: per (name, caller), maximal runs of cheap calls with non-decreasing gas.
    std::map<std::pair<std::string, Address>, std::vector<const DecodedEvent*>> groups;
    for (const auto& ev : trace.events) {
        if (ev.origin != event::Origin::call || !ev.from || !ev.gas_used) continue;
        if (ev.value.value_or(0) > cfg.dos_small_value_max) continue;
        groups[{ev.name, *ev.from}].push_back(&ev);
    }
    std::set<std::size_t> repeated;
    std::string repeat_note;
    for (const auto& [key, calls] : groups) {
        std::size_t start = 0;
        for (std::size_t i = 1; i <= calls.size(); ++i) {
            if (i < calls.size() && *calls[i]->gas_used >= *calls[i - 1]->gas_used) continue;
            if (i - start >= cfg.dos_min_repeats) {
                for (std::size_t k = start; k < i; ++k) repeated.insert(calls[k]->index);
                if (!repeat_note.empty()) repeat_note += "; ";
                repeat_note += std::to_string(i - start) + " calls to " + key.first + " from " + key.second.hex() +
                               " with gas rising " + std::to_string(*calls[start]->gas_used) + "→" +
                               std::to_string(*calls[i - 1]->gas_used);
            }
            start = i;
        }
    }

    std::set<std::size_t> over_limit;
    std::uint64_t peak = 0;
    for (const auto& ev : trace.events) {
        if (ev.gas_used && *ev.gas_used > cfg.dos_gas_limit) {
            over_limit.insert(ev.index);
            peak = std::max(peak, *ev.gas_used);
        }
    }

    if (repeated.empty() && over_limit.empty()) return {};

    Finding f;
    f.kind = AttackPatternKind::DoS;
    std::set<std::size_t> all = repeated;
    all.insert(over_limit.begin(), over_limit.end());
    f.evidence.assign(all.begin(), all.end());
    f.score = (!repeated.empty() && !over_limit.empty()) ? 1.0 : 0.7;
    if (!repeated.empty()) f.explanation = "repeated cheap calls inflate gas: " + repeat_note;
    if (!over_limit.empty()) {
        if (!f.explanation.empty()) f.explanation += ". ";
        f.explanation += std::to_string(over_limit.size()) + " event(s) used up to " + std::to_string(peak) +
                         " gas, exceeding the gas limit " + std::to_string(cfg.dos_gas_limit);
    }
    return {f};
}

std::vector<Finding> run_all_detectors(const EventTrace& trace, const DetectorConfig& cfg) {
    std::vector<Finding> out;
    for (auto&& batch : {detect_reentrancy(trace, cfg), detect_integer_overflow(trace, cfg),
                         detect_flash_loan(trace, cfg), detect_dos(trace, cfg)}) {
        out.insert(out.end(), batch.begin(), batch.end());
    }
    std::stable_sort(out.begin(), out.end(), [](const Finding& a, const Finding& b) {
        return std::tuple{a.evidence.front(), a.kind} < std::tuple{b.evidence.front(), b.kind};
    });
    return out;
}

}  // namespace etrace::detect
