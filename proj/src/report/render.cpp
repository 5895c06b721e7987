// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/report/render.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <etrace/common/errors.hpp>

namespace etrace::report {

using detect::AttackPatternKind;
using nlohmann::json;

namespace {

    std::string_view recommendation(AttackPatternKind kind) {
        switch (kind) {
            case AttackPatternKind::Reentrancy:
                return "Audit the victim contract for external calls made before balances are updated; apply "
                       "checks-effects-interactions or a reentrancy guard.";
            case AttackPatternKind::IntegerOverflow:
                return "Check arithmetic on transferred amounts for unchecked multiplication or addition; use "
                       "checked math and bound user-supplied counts and multipliers.";
            case AttackPatternKind::FlashLoanAttack:
                return "Review the price sources read by the swapped pools; prefer time-weighted oracles and "
                       "reject price-dependent actions funded within the same transaction.";
            case AttackPatternKind::DoS:
                return "Bound the state a single transaction must process; replace bulk deletion or payout loops "
                       "with paginated or pull-based designs.";
        }
        return "";
    }

    std::string indent(const std::string& text, std::string_view prefix) {
        std::string out;
        std::istringstream in{text};
        for (std::string line; std::getline(in, line);) {
            out += std::string{prefix} + line + "\n";
        }
        return out;
    }

    std::string underline(std::string_view title) {
        return std::string{title} + "\n" + std::string(title.size(), '-') + "\n";
    }

    std::string score_text(double score) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%.2f", score);
        return buf;
    }

    std::string join(const std::vector<std::size_t>& v) {
        std::string out;
        for (auto i : v) out += (out.empty() ? "" : ", ") + std::to_string(i);
        return out;
    }

    std::string kinds_text(const std::vector<AttackPatternKind>& kinds) {
        if (kinds.empty()) return "none";
        std::string out;
        for (auto k : kinds) out += (out.empty() ? "" : ", ") + std::string{detect::display_name(k)};
        return out;
    }

    std::string evidence_table(const std::vector<EvidenceRow>& rows) {
        std::vector<std::array<std::string, 5>> cells{{"index", "name", "address", "value", "gas"}};
        for (const auto& r : rows) {
            cells.push_back({std::to_string(r.index), r.name, r.address, r.value ? to_scientific(*r.value) : "-",
                             r.gas_used ? std::to_string(*r.gas_used) : "-"});
        }
        // Width in code points so that "→" aligns.
        const auto width = [](const std::string& s) {
            return static_cast<std::size_t>(
                std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
        };
        std::array<std::size_t, 5> widths{};
        for (const auto& row : cells) {
            for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], width(row[i]));
        }
        std::string out;
        for (const auto& row : cells) {
            std::string line;
            for (std::size_t i = 0; i < row.size(); ++i) {
                line += row[i];
                if (i + 1 < row.size()) line += std::string(widths[i] - width(row[i]) + 2, ' ');
            }
            out += line + "\n";
        }
        return out;
    }

    std::string render_text(const Verdict& v) {
        std::ostringstream out;
        out << kToolName << ' ' << kToolVersion << " report\n";
        out << "Transaction: " << v.tx_hash.hex() << '\n';
        out << "Status: " << (v.tx_status == ingestion::TxStatus::success ? "success" : "failure")
            << " | LLM stage: " << (v.llm_enabled ? "enabled" : "disabled") << '\n';
        out << "Events: " << v.digest.event_count << " | Distinct addresses: " << v.digest.distinct_addresses
            << " | Max value: " << (v.digest.max_value ? to_scientific(*v.digest.max_value) : "-")
            << " | Max gas: " << (v.digest.max_gas_used ? std::to_string(*v.digest.max_gas_used) : "-") << "\n\n";

        out << underline("Summary");
        bool any = false;
        for (auto kind : detect::kAllKinds) {
            if (v.status(kind) == VerdictStatus::absent) continue;
            any = true;
            out << detect::display_name(kind) << ": " << to_string(v.status(kind)) << '\n';
        }
        if (!any) out << "No patterns detected.\n";
        if (v.report && !v.report->summary.empty()) out << "Model summary:\n" << indent(v.report->summary, "  ");
        out << '\n';

        out << underline("Pattern Analysis");
        if (v.findings.empty()) out << "No detector matched.\n";
        for (const auto& f : v.findings) {
            out << '[' << detect::display_name(f.kind) << "] " << to_string(v.status(f.kind)) << ", score "
                << score_text(f.score) << '\n';
            out << indent(f.explanation, "  ");
            out << "  evidence: " << join(f.evidence) << '\n';
        }
        if (v.report) {
            out << "Model pattern analysis (claims: " << kinds_text(v.report->claimed_kinds) << "):\n";
            if (!v.report->pattern_analysis.empty()) out << indent(v.report->pattern_analysis, "  ");
            if (!v.report->per_event.empty()) {
                out << "Model event explanations:\n";
                for (const auto& [idx, text] : v.report->per_event) out << "  Event " << idx << ": " << text << '\n';
            }
        }
        out << '\n';

        out << underline("Further Recommendation");
        bool recommended = false;
        for (auto kind : detect::kAllKinds) {
            const auto s = v.status(kind);
            if (s == VerdictStatus::confirmed || s == VerdictStatus::detector_only) {
                out << "- " << detect::display_name(kind) << ": " << recommendation(kind) << '\n';
                recommended = true;
            }
        }
        if (!recommended) out << "- No action beyond routine monitoring.\n";
        if (v.report && !v.report->further_recommendation.empty()) {
            out << "Model recommendation:\n" << indent(v.report->further_recommendation, "  ");
        }
        out << '\n';

        out << underline("Evidence");
        out << evidence_table(v.evidence);

        if (v.llm_appendix) {
            out << '\n' << underline("Appendix: unparsed model output") << *v.llm_appendix;
            if (!v.llm_appendix->ends_with('\n')) out << '\n';
        }
        return out.str();
    }

    // --- machine form ---

    template <class T>
    json optional_json(const std::optional<T>& v) {
        return v ? json(*v) : json(nullptr);
    }

    json optional_u256(const std::optional<U256>& v) {
        return v ? json(to_decimal(*v)) : json(nullptr);
    }

    [[noreturn]] void bad(const std::string& what) {
        throw ParseError("machine report: " + what);
    }

    const json& field(const json& obj, const char* key) {
        if (!obj.is_object()) bad(std::string{"expected an object around '"} + key + "'");
        auto it = obj.find(key);
        if (it == obj.end()) bad(std::string{"missing field '"} + key + "'");
        return *it;
    }

    std::optional<U256> read_u256(const json& v, const char* key) {
        if (v.is_null()) return std::nullopt;
        if (!v.is_string()) bad(std::string{key} + " must be a decimal string");
        return parse_u256(v.get<std::string>());
    }

    AttackPatternKind read_kind(const json& v) {
        if (!v.is_string()) bad("pattern kind must be a string");
        auto k = detect::kind_from_string(v.get<std::string>());
        if (!k) bad("unknown pattern kind " + v.get<std::string>());
        return *k;
    }

}  // namespace

json to_json(const Verdict& v) {
    json verdicts = json::object();
    for (auto kind : detect::kAllKinds) verdicts[std::string{detect::to_string(kind)}] = to_string(v.status(kind));

    json findings = json::array();
    for (const auto& f : v.findings) {
        findings.push_back({{"kind", detect::to_string(f.kind)},
                            {"evidence", f.evidence},
                            {"score", f.score},
                            {"explanation", f.explanation}});
    }

    json report = nullptr;
    if (v.report) {
        json per_event = json::array();
        for (const auto& [idx, text] : v.report->per_event)
            per_event.push_back({{"index", idx}, {"explanation", text}});
        json claimed = json::array();
        for (auto k : v.report->claimed_kinds) claimed.push_back(detect::to_string(k));
        report = {{"summary", v.report->summary},
                  {"patternAnalysis", v.report->pattern_analysis},
                  {"claimedKinds", std::move(claimed)},
                  {"furtherRecommendation", v.report->further_recommendation},
                  {"perEvent", std::move(per_event)}};
    }

    json evidence = json::array();
    for (const auto& r : v.evidence) {
        evidence.push_back({{"index", r.index},
                            {"name", r.name},
                            {"address", r.address},
                            {"value", optional_u256(r.value)},
                            {"gasUsed", optional_json(r.gas_used)}});
    }

    json names = json::object();
    for (const auto& [name, count] : v.digest.name_counts) names[name] = count;

    return {
        {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
        {"schemaVersion", kSchemaVersion},
        {"txHash", v.tx_hash.hex()},
        {"txStatus", v.tx_status == ingestion::TxStatus::success ? "success" : "failure"},
        {"llmEnabled", v.llm_enabled},
        {"verdicts", std::move(verdicts)},
        {"findings", std::move(findings)},
        {"report", std::move(report)},
        {"llmAppendix", optional_json(v.llm_appendix)},
        {"digest",
         {{"eventCount", v.digest.event_count},
          {"nameCounts", std::move(names)},
          {"distinctAddresses", v.digest.distinct_addresses},
          {"maxValue", optional_u256(v.digest.max_value)},
          {"maxGasUsed", optional_json(v.digest.max_gas_used)}}},
        {"evidence", std::move(evidence)},
    };
}

std::string render(const Verdict& verdict, Format format) {
    if (format == Format::text) return render_text(verdict);
    return to_json(verdict).dump(2) + "\n";
}

Verdict from_json(const json& doc) {
    try {
        Verdict v;
        if (field(field(doc, "tool"), "version").get<std::string>().empty()) bad("empty tool version");
        v.tx_hash = TxHash::from_hex(field(doc, "txHash").get<std::string>());
        const auto status = field(doc, "txStatus").get<std::string>();
        if (status != "success" && status != "failure") bad("txStatus must be success or failure");
        v.tx_status = status == "success" ? ingestion::TxStatus::success : ingestion::TxStatus::failure;
        v.llm_enabled = field(doc, "llmEnabled").get<bool>();

        const json& verdicts = field(doc, "verdicts");
        for (auto kind : detect::kAllKinds) {
            const auto s =
                status_from_string(field(verdicts, std::string{detect::to_string(kind)}.c_str()).get<std::string>());
            if (!s) bad("unknown verdict status");
            v.statuses[static_cast<std::size_t>(kind)] = *s;
        }

        for (const auto& f : field(doc, "findings")) {
            detect::Finding finding;
            finding.kind = read_kind(field(f, "kind"));
            finding.evidence = field(f, "evidence").get<std::vector<std::size_t>>();
            finding.score = field(f, "score").get<double>();
            finding.explanation = field(f, "explanation").get<std::string>();
            v.findings.push_back(std::move(finding));
        }

        if (const json& r = field(doc, "report"); !r.is_null()) {
            llm::AnalysisReport report;
            report.summary = field(r, "summary").get<std::string>();
            report.pattern_analysis = field(r, "patternAnalysis").get<std::string>();
            report.further_recommendation = field(r, "furtherRecommendation").get<std::string>();
            for (const auto& k : field(r, "claimedKinds")) report.claimed_kinds.push_back(read_kind(k));
            for (const auto& e : field(r, "perEvent")) {
                report.per_event.emplace_back(field(e, "index").get<std::size_t>(),
                                              field(e, "explanation").get<std::string>());
            }
            v.report = std::move(report);
        }
        if (const json& a = field(doc, "llmAppendix"); !a.is_null()) v.llm_appendix = a.get<std::string>();

        const json& d = field(doc, "digest");
        v.digest.event_count = field(d, "eventCount").get<std::size_t>();
        for (const auto& [name, count] : field(d, "nameCounts").items()) {
            v.digest.name_counts[name] = count.get<std::size_t>();
        }
        v.digest.distinct_addresses = field(d, "distinctAddresses").get<std::size_t>();
        v.digest.max_value = read_u256(field(d, "maxValue"), "maxValue");
        if (const json& g = field(d, "maxGasUsed"); !g.is_null()) v.digest.max_gas_used = g.get<std::uint64_t>();

        for (const auto& e : field(doc, "evidence")) {
            EvidenceRow row;
            row.index = field(e, "index").get<std::size_t>();
            row.name = field(e, "name").get<std::string>();
            row.address = field(e, "address").get<std::string>();
            row.value = read_u256(field(e, "value"), "value");
            if (const json& g = field(e, "gasUsed"); !g.is_null()) row.gas_used = g.get<std::uint64_t>();
            v.evidence.push_back(std::move(row));
        }
        return v;
    } catch (const json::exception& e) {
        bad(e.what());
    } catch (const ValidationError& e) {
        bad(e.what());
    }
}

Verdict parse_machine_report(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        bad(e.what());
    }
    return from_json(doc);
}

}  // namespace etrace::report
