// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <random>

#include <etrace/abi/registry.hpp>
#include <etrace/common/errors.hpp>
#include <etrace/ingestion/fixture.hpp>
#include <etrace/report/render.hpp>
#include <etrace/report/verdict.hpp>

#include "support/oracles.hpp"

using namespace etrace;
using namespace etrace::report;
using detect::AttackPatternKind;

namespace {

detect::Finding finding(AttackPatternKind kind, std::vector<std::size_t> evidence = {0}) {
    return {kind, std::move(evidence), 1.0, "x"};
}

llm::AnalysisReport claims(std::vector<AttackPatternKind> kinds) {
    llm::AnalysisReport r;
    r.summary = "s";
    r.pattern_analysis = "p";
    r.further_recommendation = "f";
    r.claimed_kinds = std::move(kinds);
    return r;
}

Verdict incident_verdict(const std::string& name, std::optional<llm::AnalysisReport> report = std::nullopt) {
    const auto t = event::build_trace(ingestion::load_fixture(testing::incident(name)), abi::AbiRegistry::builtin());
    auto v = cross_validate(detect::run_all_detectors(t, {}), report, report.has_value());
    attach_trace(v, t);
    return v;
}

}  // namespace

TEST_CASE("cross validation statuses") {
    const auto agree =
        cross_validate({finding(AttackPatternKind::Reentrancy)}, claims({AttackPatternKind::Reentrancy}));
    CHECK(agree.status(AttackPatternKind::Reentrancy) == VerdictStatus::confirmed);
    CHECK(agree.status(AttackPatternKind::DoS) == VerdictStatus::absent);

    const auto llm_only = cross_validate({}, claims({AttackPatternKind::IntegerOverflow}));
    CHECK(llm_only.status(AttackPatternKind::IntegerOverflow) == VerdictStatus::llm_only);
    CHECK_FALSE(llm_only.has_pattern());
    CHECK(exit_status(llm_only) == 0);

    const auto det_only = cross_validate({finding(AttackPatternKind::DoS)}, std::nullopt);
    CHECK(det_only.status(AttackPatternKind::DoS) == VerdictStatus::detector_only);
    CHECK(exit_status(det_only) == 2);
    CHECK_FALSE(det_only.llm_enabled);
}

TEST_CASE("status table over every combination") {
    for (unsigned mask = 0; mask < 256; ++mask) {
        std::vector<detect::Finding> fs;
        std::vector<AttackPatternKind> cs;
        for (std::size_t k = 0; k < 4; ++k) {
            if (mask & (1u << k)) fs.push_back(finding(detect::kAllKinds[k], {k}));
            if (mask & (16u << k)) cs.push_back(detect::kAllKinds[k]);
        }
        const auto with = cross_validate(fs, claims(cs), true);
        const auto without = cross_validate(fs, std::nullopt);
        for (std::size_t k = 0; k < 4; ++k) {
            const bool d = mask & (1u << k), c = mask & (16u << k);
            const auto kind = detect::kAllKinds[k];
            CHECK((with.status(kind) == VerdictStatus::confirmed) == (d && c));
            CHECK((with.status(kind) == VerdictStatus::llm_only) == (!d && c));
            CHECK((without.status(kind) == VerdictStatus::detector_only) == d);
            CHECK((without.status(kind) == VerdictStatus::absent) == !d);
        }
        CHECK(with.findings == without.findings);
    }
}

TEST_CASE("DoS report shows the gas figures") {
    const auto v = incident_verdict("governmental");
    const auto text = render(v, Format::text);
    CHECK(text.find("5057945") != std::string::npos);
    CHECK(text.find("exceeding the gas limit 4712388") != std::string::npos);
    CHECK(text.find("Summary") < text.find("Pattern Analysis"));
    CHECK(text.find("Pattern Analysis") < text.find("Further Recommendation"));
    CHECK(text.find("Further Recommendation") < text.find("Evidence"));
    REQUIRE(v.evidence.size() == 5);
    CHECK(v.evidence[1].gas_used == 5057945u);
    CHECK(v.evidence[0].value == U256{"1000000000000000"});
    CHECK(text.find("1.0000e+15") != std::string::npos);
}

TEST_CASE("empty verdict renders a valid document") {
    const auto v = incident_verdict("../misc/empty");
    const auto doc = nlohmann::json::parse(render(v, Format::machine));
    CHECK(doc.at("findings").empty());
    CHECK(doc.at("schemaVersion") == kSchemaVersion);
    CHECK(doc.at("tool").at("version") == kToolVersion);
    CHECK(doc.at("report").is_null());
    CHECK(render(v, Format::text).find("No patterns detected.") != std::string::npos);
}

TEST_CASE("rendering is deterministic and the machine form round trips") {
    for (const char* name : {"xsurge", "beautychain", "mevbot", "governmental", "../misc/empty"}) {
        auto report = claims({AttackPatternKind::Reentrancy, AttackPatternKind::DoS});
        report.per_event = {{0, "first"}};
        for (const auto& v : {incident_verdict(name), incident_verdict(name, report)}) {
            INFO(name);
            const auto machine = render(v, Format::machine);
            CHECK(machine == render(v, Format::machine));
            CHECK(render(v, Format::text) == render(v, Format::text));
            const auto back = parse_machine_report(machine);
            CHECK(back == v);
            CHECK(render(back, Format::machine) == machine);
        }
    }
    auto v = incident_verdict("beautychain");
    v.llm_enabled = true;
    v.llm_appendix = "raw model text";
    CHECK(parse_machine_report(render(v, Format::machine)) == v);
    CHECK(render(v, Format::text).find("raw model text") != std::string::npos);
}

TEST_CASE("machine reader rejects malformed documents") {
    CHECK_THROWS_AS(parse_machine_report("not json"), ParseError);
    CHECK_THROWS_AS(parse_machine_report("{}"), ParseError);
    auto doc = report::to_json(incident_verdict("xsurge"));
    doc["verdicts"]["Reentrancy"] = "maybe";
    CHECK_THROWS_AS(from_json(doc), ParseError);
}
