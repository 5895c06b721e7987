// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <etrace/detect/detectors.hpp>
#include <etrace/event/trace.hpp>
#include <etrace/llm/report.hpp>

namespace etrace::report {

inline constexpr std::string_view kToolName = "etrace";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class VerdictStatus { confirmed, detector_only, llm_only, absent };

std::string_view to_string(VerdictStatus status);
std::optional<VerdictStatus> status_from_string(std::string_view text);

//! One trace event cited by a finding, as shown in the evidence table.
struct EvidenceRow {
    std::size_t index{0};
    std::string name;
    std::string address;
    std::optional<U256> value;
    std::optional<std::uint64_t> gas_used;

    bool operator==(const EvidenceRow&) const = default;
};

struct Verdict {
    std::array<VerdictStatus, 4> statuses{VerdictStatus::absent, VerdictStatus::absent, VerdictStatus::absent,
                                          VerdictStatus::absent};
    std::vector<detect::Finding> findings;
    bool llm_enabled{false};
    std::optional<llm::AnalysisReport> report;
    //! Raw model output that could not be parsed into sections.
    std::optional<std::string> llm_appendix;

    TxHash tx_hash;
    ingestion::TxStatus tx_status{ingestion::TxStatus::success};
    event::TraceDigest digest;
    std::vector<EvidenceRow> evidence;

    [[nodiscard]] VerdictStatus status(detect::AttackPatternKind kind) const {
        return statuses[static_cast<std::size_t>(kind)];
    }
    //! True when any kind is confirmed or detector-only.
    [[nodiscard]] bool has_pattern() const;

    bool operator==(const Verdict&) const = default;
};

//! Per-kind agreement between detector findings and the model's claimed kinds.
//! Without a report every status is detector-only or absent.
Verdict cross_validate(const std::vector<detect::Finding>& findings, const std::optional<llm::AnalysisReport>& report,
                       bool llm_enabled = false);

//! Fills the transaction header, trace digest and evidence rows from `trace`.
void attach_trace(Verdict& verdict, const event::EventTrace& trace);

//! 0 when nothing was found, 2 when any kind is confirmed or detector-only.
int exit_status(const Verdict& verdict);

}  // namespace etrace::report
