// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/report/verdict.hpp>

#include <algorithm>
#include <set>

namespace etrace::report {

using detect::AttackPatternKind;

std::string_view to_string(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::confirmed:
            return "confirmed";
        case VerdictStatus::detector_only:
            return "detector-only";
        case VerdictStatus::llm_only:
            return "llm-only";
        case VerdictStatus::absent:
            return "absent";
    }
    return "?";
}

std::optional<VerdictStatus> status_from_string(std::string_view text) {
    for (auto s :
         {VerdictStatus::confirmed, VerdictStatus::detector_only, VerdictStatus::llm_only, VerdictStatus::absent}) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

bool Verdict::has_pattern() const {
    return std::any_of(statuses.begin(), statuses.end(), [](VerdictStatus s) {
        return s == VerdictStatus::confirmed || s == VerdictStatus::detector_only;
    });
}

Verdict cross_validate(const std::vector<detect::Finding>& findings, const std::optional<llm::AnalysisReport>& report,
                       bool llm_enabled) {
    Verdict v;
    v.findings = findings;
    v.report = report;
    v.llm_enabled = llm_enabled || report.has_value();

    std::set<AttackPatternKind> detected;
    for (const auto& f : findings) detected.insert(f.kind);
    std::set<AttackPatternKind> claimed;
    if (report) claimed.insert(report->claimed_kinds.begin(), report->claimed_kinds.end());

    for (auto kind : detect::kAllKinds) {
        const bool d = detected.contains(kind);
        const bool c = claimed.contains(kind);
        v.statuses[static_cast<std::size_t>(kind)] = d && c ? VerdictStatus::confirmed
                                                     : d    ? VerdictStatus::detector_only
                                                     : c    ? VerdictStatus::llm_only
                                                            : VerdictStatus::absent;
    }
    return v;
}

void attach_trace(Verdict& verdict, const event::EventTrace& trace) {
    verdict.tx_hash = trace.tx_hash;
    verdict.tx_status = trace.status;
    verdict.digest = event::trace_digest(trace);

    std::set<std::size_t> cited;
    for (const auto& f : verdict.findings) cited.insert(f.evidence.begin(), f.evidence.end());
    verdict.evidence.clear();
    for (const auto& ev : trace.events) {
        if (!cited.contains(ev.index)) continue;
        verdict.evidence.push_back({ev.index, ev.name, event::address_column(ev), ev.value, ev.gas_used});
    }
}

int exit_status(const Verdict& verdict) {
    return verdict.has_pattern() ? 2 : 0;
}

}  // namespace etrace::report
