// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include <etrace/cli/app.hpp>
#include <etrace/report/render.hpp>

#include "support/oracles.hpp"

using namespace etrace;
using etrace::testing::fixtures_dir;
using etrace::testing::incident;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run etrace_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string mock_dir() {
    return (fixtures_dir() / "llm").string();
}

}  // namespace

TEST_CASE("exit statuses across the corpus") {
    for (const char* name : {"xsurge", "beautychain", "mevbot", "governmental"}) {
        INFO(name);
        CHECK(etrace_run({"--fixture", incident(name).string(), "--no-llm"}).status == cli::kExitPattern);
        CHECK(etrace_run({"--fixture", incident(name).string(), "--llm", "mock", "--mock-dir", mock_dir()}).status ==
              cli::kExitPattern);
    }
    const auto empty = etrace_run({"--fixture", (fixtures_dir() / "misc" / "empty.json").string(), "--no-llm"});
    CHECK(empty.status == cli::kExitClean);
    CHECK(empty.out.find("No patterns detected.") != std::string::npos);
}

TEST_CASE("integer overflow text report") {
    const auto r = etrace_run({"--fixture", incident("beautychain").string(), "--format", "text", "--no-llm"});
    CHECK(r.status == 2);
    CHECK(r.out.find("Integer Overflow: detector-only") != std::string::npos);
}

TEST_CASE("bad arguments print usage and fail") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"--no-llm"},
             {"--fixture", incident("xsurge").string(), "--fixture-dir", fixtures_dir().string()},
             {"--fixture", incident("xsurge").string(), "--no-llm", "--llm", "mock"},
             {"--fixture", incident("xsurge").string(), "--llm", "mock"},
             {"--fixture", incident("xsurge").string(), "--format", "xml"},
             {"--fixture", "/nonexistent.json"},
             {"--fixture", incident("xsurge").string(), "--bogus"},
         }) {
        const auto r = etrace_run(args);
        CHECK(r.status == cli::kExitError);
        CHECK(r.err.find("Usage") != std::string::npos);
    }
}

TEST_CASE("operational errors exit 1") {
    const auto r = etrace_run({"--fixture", incident("xsurge").string(), "--overflow-threshold", "2^300"});
    CHECK(r.status == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    const auto bad_tx = etrace_run({"--tx", "0x12", "--rpc", "http://127.0.0.1:1/"});
    CHECK(bad_tx.status == 1);
}

TEST_CASE("overflow threshold override surfaces overflow findings") {
    const auto base = etrace_run({"--fixture", incident("xsurge").string(), "--format", "machine"});
    const auto low =
        etrace_run({"--fixture", incident("xsurge").string(), "--format", "machine", "--overflow-threshold", "10^21"});
    const auto a = nlohmann::json::parse(base.out), b = nlohmann::json::parse(low.out);
    CHECK(a["verdicts"]["IntegerOverflow"] == "absent");
    CHECK(b["verdicts"]["IntegerOverflow"] == "detector-only");
    CHECK(b["verdicts"]["Reentrancy"] == "detector-only");
}

TEST_CASE("disabling the model stage keeps findings") {
    for (const char* name : {"xsurge", "beautychain", "mevbot", "governmental"}) {
        const auto off = nlohmann::json::parse(
            etrace_run({"--fixture", incident(name).string(), "--format", "machine", "--no-llm"}).out);
        const auto on = nlohmann::json::parse(etrace_run({"--fixture", incident(name).string(), "--format", "machine",
                                                          "--llm", "mock", "--mock-dir", mock_dir()})
                                                  .out);
        CHECK(off["findings"] == on["findings"]);
        CHECK(off["llmEnabled"] == false);
        CHECK(on["llmEnabled"] == true);
        for (const auto& [kind, status] : off["verdicts"].items()) {
            CHECK((status == "detector-only" || status == "absent"));
        }
    }
}

TEST_CASE("mock run confirms reentrancy and is reproducible") {
    const std::vector<std::string> args{
        "--fixture", incident("xsurge").string(), "--format", "machine", "--llm", "mock", "--mock-dir", mock_dir()};
    const auto first = etrace_run(args), second = etrace_run(args);
    CHECK(first.out == second.out);
    const auto v = report::parse_machine_report(first.out);
    CHECK(v.status(detect::AttackPatternKind::Reentrancy) == report::VerdictStatus::confirmed);
    CHECK(v.status(detect::AttackPatternKind::IntegerOverflow) == report::VerdictStatus::absent);
    REQUIRE(v.report);
    CHECK_FALSE(v.report->per_event.empty());
}

TEST_CASE("show-prompt prints the digest the mock files are keyed by") {
    const auto r = etrace_run({"--fixture", incident("governmental").string(), "--show-prompt"});
    CHECK(r.status == 0);
    const auto pos = r.out.rfind("digest: ");
    REQUIRE(pos != std::string::npos);
    const auto digest = r.out.substr(pos + 8, 64);
    CHECK(std::filesystem::exists(fixtures_dir() / "llm" / (digest + ".txt")));
}

TEST_CASE("trace dump goes to stderr") {
    const auto r = etrace_run({"--fixture", incident("governmental").string(), "--dump-trace"});
    CHECK(r.err.find("3 lendGM") != std::string::npos);
    CHECK(r.err.find("5057945") != std::string::npos);
    CHECK(r.out.find("3 lendGM") == std::string::npos);
}

TEST_CASE("fixture directories") {
    const auto r = etrace_run({"--fixture-dir", (fixtures_dir() / "incidents").string(), "--format", "machine"});
    CHECK(r.status == 2);
    std::istringstream lines{r.out};
    std::vector<std::string> docs;
    for (std::string line; std::getline(lines, line);) docs.push_back(line);
    REQUIRE(docs.size() == 4);
    for (const auto& d : docs) CHECK_NOTHROW(report::parse_machine_report(d));
    CHECK(r.out == etrace_run({"--fixture-dir", (fixtures_dir() / "incidents").string(), "--format", "machine"}).out);

    const auto out_dir = std::filesystem::temp_directory_path() / "etrace_cli_out";
    std::filesystem::remove_all(out_dir);
    std::filesystem::create_directories(out_dir);
    const auto w = etrace_run({"--fixture-dir", (fixtures_dir() / "incidents").string(), "--out-dir", out_dir.string(),
                               "--format", "machine"});
    CHECK(w.status == 2);
    CHECK(std::filesystem::exists(out_dir / "mevbot.report.json"));
    std::filesystem::remove_all(out_dir);

    const auto clean = etrace_run({"--fixture-dir", (fixtures_dir() / "misc").string()});
    CHECK(clean.status == 0);
}

TEST_CASE("config file overrides and flags win over it") {
    const auto path = std::filesystem::temp_directory_path() / "etrace_cli_config.json";
    {
        std::ofstream out{path};
        out << R"({"detectors": {"overflowThreshold": "10^21"}})";
    }
    const auto via_config = nlohmann::json::parse(
        etrace_run({"--fixture", incident("xsurge").string(), "--format", "machine", "--config", path.string()}).out);
    CHECK(via_config["verdicts"]["IntegerOverflow"] == "detector-only");
    const auto flag_wins =
        nlohmann::json::parse(etrace_run({"--fixture", incident("xsurge").string(), "--format", "machine", "--config",
                                          path.string(), "--overflow-threshold", "2^250"})
                                  .out);
    CHECK(flag_wins["verdicts"]["IntegerOverflow"] == "absent");
    std::filesystem::remove(path);
}
