// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/llm/report.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

namespace etrace::llm {

using detect::AttackPatternKind;

namespace {

    enum class Section { summary, pattern_analysis, further_recommendation };

    struct HeaderHit {
        Section section;
        std::string inline_text;
    };

    std::string lower(std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    }

    std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return {};
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    bool is_decoration(char c) {
        return c == '#' || c == '*' || c == '_' || c == '>' || c == '-' || c == '=' || c == '`';
    }

    // Drops leading markdown decoration and list numbering such as "1.", "2)", "(3)", "Step 2:".
    std::string_view strip_lead(std::string_view s) {
        for (bool changed = true; changed;) {
            changed = false;
            while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) || is_decoration(s.front()))) {
                s.remove_prefix(1);
                changed = true;
            }
            std::size_t i = 0;
            if (i < s.size() && s[i] == '(') ++i;
            const std::size_t digits_start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i > digits_start && i < s.size() && (s[i] == '.' || s[i] == ')' || s[i] == ':')) {
                s.remove_prefix(i + 1);
                changed = true;
            }
        }
        return s;
    }

    std::optional<HeaderHit> match_header(const std::string& line) {
        static const std::array<std::pair<std::string_view, Section>, 4> kHeaders{{
            {"further recommendations", Section::further_recommendation},
            {"further recommendation", Section::further_recommendation},
            {"pattern analysis", Section::pattern_analysis},
            {"summary", Section::summary},
        }};
        const std::string_view stripped = strip_lead(line);
        const std::string low = lower(std::string{stripped});
        for (const auto& [word, section] : kHeaders) {
            if (!low.starts_with(word)) continue;
            std::string_view rest = stripped.substr(word.size());
            if (!rest.empty() && std::isalnum(static_cast<unsigned char>(rest.front()))) continue;
            while (!rest.empty() && (std::isspace(static_cast<unsigned char>(rest.front())) ||
                                     is_decoration(rest.front()) || rest.front() == ':')) {
                rest.remove_prefix(1);
            }
            return HeaderHit{section, std::string{rest}};
        }
        return std::nullopt;
    }

    std::optional<std::pair<std::size_t, std::string>> match_event_line(const std::string& line) {
        static const std::regex kEvent{R"(^event\s*#?\s*(\d+)\s*[:.)\-]?\s*(.*)$)", std::regex::icase};
        const std::string stripped{strip_lead(line)};
        std::smatch m;
        if (!std::regex_match(stripped, m, kEvent)) return std::nullopt;
        const auto digits = m[1].str();
        if (digits.size() > 9) return std::nullopt;
        std::string text = m[2].str();
        // "**Event 3**: ..." leaves decoration in front of the explanation.
        while (!text.empty() && (is_decoration(text.front()) || text.front() == ':' || text.front() == ' ')) {
            text.erase(text.begin());
        }
        return std::pair{static_cast<std::size_t>(std::stoul(digits)), trim(text)};
    }

}  // namespace

std::vector<AttackPatternKind> claimed_kinds(const std::string& text) {
    static const std::array<std::pair<AttackPatternKind, std::regex>, 4> kPatterns{{
        {AttackPatternKind::Reentrancy, std::regex{R"(re-?\s?entran(cy|t))", std::regex::icase}},
        {AttackPatternKind::IntegerOverflow, std::regex{R"(overflow)", std::regex::icase}},
        {AttackPatternKind::FlashLoanAttack, std::regex{R"(flash[\s\-]?loan)", std::regex::icase}},
        {AttackPatternKind::DoS, std::regex{R"(\bdos\b|denial[\s\-]+of[\s\-]+service)", std::regex::icase}},
    }};
    std::vector<AttackPatternKind> out;
    for (const auto& [kind, re] : kPatterns) {
        if (std::regex_search(text, re)) out.push_back(kind);
    }
    return out;
}

AnalysisReport parse_report(const std::string& raw, const event::EventTrace& trace) {
    std::vector<std::string> lines;
    {
        std::istringstream in{raw};
        for (std::string line; std::getline(in, line);) lines.push_back(line);
    }

    std::map<Section, std::string> bodies;
    std::optional<Section> current;
    bool any_header = false;
    std::vector<std::string> preamble;

    for (const auto& line : lines) {
        if (auto hit = match_header(line); hit && !bodies.contains(hit->section)) {
            current = hit->section;
            any_header = true;
            bodies[*current] = hit->inline_text;
            continue;
        }
        if (current) {
            auto& body = bodies[*current];
            if (!body.empty()) body += '\n';
            body += line;
        } else {
            preamble.push_back(line);
        }
    }
    if (!any_header) throw UnparseableReportError(raw);

    AnalysisReport report;
    report.summary = trim(bodies[Section::summary]);
    report.pattern_analysis = trim(bodies[Section::pattern_analysis]);
    report.further_recommendation = trim(bodies[Section::further_recommendation]);
    report.claimed_kinds = claimed_kinds(report.pattern_analysis);

    std::set<std::size_t> valid;
    for (const auto& ev : trace.events) valid.insert(ev.index);
    std::map<std::size_t, std::string> per_event;
    for (const auto& line : preamble) {
        if (auto hit = match_event_line(line); hit && valid.contains(hit->first)) {
            per_event.try_emplace(hit->first, hit->second);
        }
    }
    report.per_event.assign(per_event.begin(), per_event.end());
    return report;
}

}  // namespace etrace::llm
