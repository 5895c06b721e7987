// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/cli/app.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include <etrace/abi/registry.hpp>
#include <etrace/cli/config.hpp>
#include <etrace/cli/pipeline.hpp>
#include <etrace/common/errors.hpp>
#include <etrace/event/trace.hpp>
#include <etrace/ingestion/fixture.hpp>
#include <etrace/ingestion/rpc.hpp>
#include <etrace/report/render.hpp>

namespace etrace::cli {

namespace fs = std::filesystem;

namespace {

    struct Options {
        std::string fixture;
        std::string fixture_dir;
        std::string tx;
        std::string rpc;
        std::vector<std::string> abi_files;
        bool no_llm{false};
        std::string llm;
        std::string mock_dir;
        std::string format{"text"};
        bool dump_trace{false};
        bool show_prompt{false};
        std::string config;
        std::string out_dir;
        std::optional<std::string> overflow_threshold;
        std::optional<std::size_t> reentry_min_transfers;
        std::optional<std::size_t> reentry_min_reversals;
        std::optional<std::uint64_t> dos_gas_limit;
        std::optional<std::size_t> dos_min_repeats;
        std::optional<std::string> dos_small_value_max;
        std::optional<std::size_t> prompt_budget;
    };

    struct Outcome {
        std::string output;
        std::string diagnostics;
        int status{kExitClean};
    };

    U256 flag_u256(const std::string& text, const char* flag) {
        try {
            return parse_u256(text);
        } catch (const ValidationError& e) {
            throw ConfigError(std::string{flag} + ": " + e.what());
        }
    }

    void apply_overrides(const Options& o, RunConfig& cfg) {
        auto& d = cfg.detectors;
        if (o.overflow_threshold) d.overflow_threshold = flag_u256(*o.overflow_threshold, "--overflow-threshold");
        if (o.reentry_min_transfers) d.reentry_min_transfers = *o.reentry_min_transfers;
        if (o.reentry_min_reversals) d.reentry_min_reversals = *o.reentry_min_reversals;
        if (o.dos_gas_limit) d.dos_gas_limit = *o.dos_gas_limit;
        if (o.dos_min_repeats) d.dos_min_repeats = *o.dos_min_repeats;
        if (o.dos_small_value_max) d.dos_small_value_max = flag_u256(*o.dos_small_value_max, "--dos-small-value-max");
        if (o.prompt_budget) cfg.prompt_budget = *o.prompt_budget;
        if (!o.rpc.empty()) {
            cfg.rpc_url = o.rpc;
        } else if (const char* env = std::getenv(ingestion::kRpcUrlEnv.data()); env != nullptr && *env != '\0') {
            if (!cfg.rpc_url) cfg.rpc_url = env;
        }
        d.validate();
    }

    Outcome process(const ingestion::TransactionReceipt& receipt, const Options& o, const PipelineContext& ctx) {
        Outcome result;
        if (o.dump_trace) result.diagnostics = event::dump_trace(event::build_trace(receipt, ctx.registry));
        if (o.show_prompt) {
            const auto trace = event::build_trace(receipt, ctx.registry);
            const auto prompt = llm::build_prompt(trace, llm::default_conditions(), ctx.prompt_budget).text();
            result.output = prompt + "digest: " + llm::prompt_digest(prompt) + "\n";
            return result;
        }
        const auto verdict = analyze_receipt(receipt, ctx);
        const auto format = o.format == "machine" ? report::Format::machine : report::Format::text;
        result.output = report::render(verdict, format);
        result.status = report::exit_status(verdict);
        return result;
    }

    void write_file(const fs::path& path, const std::string& content) {
        std::ofstream f{path, std::ios::binary};
        if (!f) throw ConfigError("cannot write " + path.string());
        f << content;
    }

    int run_directory(const Options& o, const PipelineContext& ctx, std::ostream& out, std::ostream& err) {
        std::vector<fs::path> files;
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator{o.fixture_dir, ec}) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
        }
        if (ec) throw ConfigError("cannot read fixture directory " + o.fixture_dir + ": " + ec.message());
        std::sort(files.begin(), files.end());

        std::vector<std::future<Outcome>> jobs;
        jobs.reserve(files.size());
        for (const auto& file : files) {
            jobs.push_back(std::async(std::launch::async, [&o, &ctx, file] {
                try {
                    return process(ingestion::load_fixture(file), o, ctx);
                } catch (const std::exception& e) {
                    return Outcome{{}, file.string() + ": " + e.what() + "\n", kExitError};
                }
            }));
        }

        int status = kExitClean;
        const bool machine = o.format == "machine";
        for (std::size_t i = 0; i < files.size(); ++i) {
            Outcome r = jobs[i].get();
            err << r.diagnostics;
            if (r.status == kExitError) {
                status = kExitError;
                continue;
            }
            if (status != kExitError) status = std::max(status, r.status);
            if (!o.out_dir.empty()) {
                const auto ext = o.show_prompt ? ".prompt.txt" : machine ? ".report.json" : ".report.txt";
                write_file(fs::path{o.out_dir} / (files[i].stem().string() + ext), r.output);
            } else if (machine && !o.show_prompt) {
                // One compact document per line.
                out << nlohmann::json::parse(r.output).dump() << '\n';
            } else {
                out << "== " << files[i].filename().string() << " ==\n" << r.output << '\n';
            }
        }
        return status;
    }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Detects attack patterns in smart-contract transaction logs", "etrace"};
    app.set_version_flag("--version", std::string{report::kToolVersion});

    auto* source = app.add_option_group("source", "Transaction to analyze");
    auto* fixture = source->add_option("--fixture", o.fixture, "Receipt fixture file")->check(CLI::ExistingFile);
    auto* fixture_dir = source->add_option("--fixture-dir", o.fixture_dir, "Directory of *.json receipt fixtures")
                            ->check(CLI::ExistingDirectory);
    auto* tx = source->add_option("--tx", o.tx, "Transaction hash to fetch over JSON-RPC");
    source->require_option(1);
    fixture->excludes(fixture_dir)->excludes(tx);
    fixture_dir->excludes(tx);

    app.add_option("--rpc", o.rpc, "JSON-RPC endpoint (default: $ETRACE_RPC_URL)");
    app.add_option("--abi", o.abi_files, "Extra event ABI file (repeatable)")->check(CLI::ExistingFile);
    auto* no_llm = app.add_flag("--no-llm", o.no_llm, "Skip the model stage (default)");
    auto* llm_opt = app.add_option("--llm", o.llm, "Model backend")->check(CLI::IsMember({"mock", "http"}));
    no_llm->excludes(llm_opt);
    app.add_option("--mock-dir", o.mock_dir, "Mock backend response directory")->check(CLI::ExistingDirectory);
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
    app.add_flag("--dump-trace", o.dump_trace, "Print the decoded trace to stderr");
    app.add_flag("--show-prompt", o.show_prompt, "Print the model prompt and its digest instead of analyzing");
    app.add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out-dir", o.out_dir, "With --fixture-dir, write one report file per fixture")
        ->check(CLI::ExistingDirectory);
    app.add_option("--overflow-threshold", o.overflow_threshold, "Overflow threshold (decimal, 0x hex or B^E)");
    app.add_option("--reentry-min-transfers", o.reentry_min_transfers, "Minimum transfers in a reentrancy loop");
    app.add_option("--reentry-min-reversals", o.reentry_min_reversals, "Minimum direction reversals");
    app.add_option("--dos-gas-limit", o.dos_gas_limit, "Gas limit for the gas-ceiling rule");
    app.add_option("--dos-min-repeats", o.dos_min_repeats, "Minimum repeated cheap calls");
    app.add_option("--dos-small-value-max", o.dos_small_value_max, "Largest call value (wei) counted as cheap");
    app.add_option("--prompt-budget", o.prompt_budget, "Prompt size limit in bytes");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitClean;
    } catch (const CLI::CallForVersion&) {
        out << report::kToolVersion << '\n';
        return kExitClean;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitError;
    }

    if (o.llm == "mock" && o.mock_dir.empty()) {
        err << "error: --llm mock requires --mock-dir\n\n" << app.help();
        return kExitError;
    }
    if (!o.out_dir.empty() && o.fixture_dir.empty()) {
        err << "error: --out-dir requires --fixture-dir\n\n" << app.help();
        return kExitError;
    }

    try {
        RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
        apply_overrides(o, cfg);

        auto registry = abi::AbiRegistry::builtin();
        for (const auto& file : o.abi_files) abi::load_abi_file(file, registry);

        std::unique_ptr<llm::LlmBackend> backend;
        if (o.llm == "mock") {
            backend = llm::mock_backend(o.mock_dir);
        } else if (o.llm == "http") {
            backend = std::make_unique<llm::HttpChatBackend>(cfg.http);
        }
        std::optional<llm::ThrottledBackend> throttled;
        if (backend) throttled.emplace(*backend, static_cast<std::ptrdiff_t>(cfg.max_in_flight));

        const PipelineContext ctx{registry, cfg.detectors, throttled ? &*throttled : nullptr, cfg.prompt_budget,
                                  cfg.retry};

        if (!o.fixture_dir.empty()) return run_directory(o, ctx, out, err);

        ingestion::TransactionReceipt receipt;
        if (!o.fixture.empty()) {
            receipt = ingestion::load_fixture(o.fixture);
        } else {
            if (!cfg.rpc_url) {
                err << "error: --tx requires --rpc or " << ingestion::kRpcUrlEnv << "\n\n" << app.help();
                return kExitError;
            }
            receipt = ingestion::fetch_receipt(*cfg.rpc_url, o.tx);
        }
        const Outcome r = process(receipt, o, ctx);
        err << r.diagnostics;
        out << r.output;
        return r.status;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace etrace::cli
