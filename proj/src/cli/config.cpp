// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/cli/config.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include <etrace/common/errors.hpp>

namespace etrace::cli {

using nlohmann::json;

namespace {

    void reject_unknown(const json& section, const std::string& name, const std::set<std::string>& allowed) {
        for (const auto& [key, value] : section.items()) {
            if (key == "apiKey" || key == "key") {
                throw ConfigError("config: the LLM API key is read from ETRACE_LLM_KEY only, remove " + name + "." +
                                  key);
            }
            if (!allowed.contains(key)) throw ConfigError("config: unknown key " + name + "." + key);
        }
    }

    template <class T>
    void read(const json& section, const char* key, const std::string& name, T& out) {
        if (auto it = section.find(key); it != section.end()) {
            try {
                out = it->get<T>();
            } catch (const json::exception&) {
                throw ConfigError("config: " + name + "." + key + " has the wrong type");
            }
        }
    }

    void read_u256(const json& section, const char* key, const std::string& name, U256& out) {
        auto it = section.find(key);
        if (it == section.end()) return;
        if (it->is_string()) {
            try {
                out = parse_u256(it->get<std::string>());
            } catch (const ValidationError& e) {
                throw ConfigError("config: " + name + "." + key + ": " + e.what());
            }
        } else if (it->is_number_unsigned()) {
            out = it->get<std::uint64_t>();
        } else {
            throw ConfigError("config: " + name + "." + key + " must be a non-negative integer or a string");
        }
    }

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string{"config: not valid JSON: "} + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected an object");
    reject_unknown(doc, "", {"detectors", "llm", "rpc"});

    RunConfig cfg;
    if (auto it = doc.find("detectors"); it != doc.end()) {
        const json& d = *it;
        reject_unknown(d, "detectors",
                       {"overflowThreshold", "reentryMinTransfers", "reentryMinReversals", "dosGasLimit",
                        "dosMinRepeats", "dosSmallValueMax"});
        read_u256(d, "overflowThreshold", "detectors", cfg.detectors.overflow_threshold);
        read(d, "reentryMinTransfers", "detectors", cfg.detectors.reentry_min_transfers);
        read(d, "reentryMinReversals", "detectors", cfg.detectors.reentry_min_reversals);
        read(d, "dosGasLimit", "detectors", cfg.detectors.dos_gas_limit);
        read(d, "dosMinRepeats", "detectors", cfg.detectors.dos_min_repeats);
        read_u256(d, "dosSmallValueMax", "detectors", cfg.detectors.dos_small_value_max);
    }
    if (auto it = doc.find("llm"); it != doc.end()) {
        const json& l = *it;
        reject_unknown(l, "llm",
                       {"endpoint", "model", "temperature", "timeoutSeconds", "maxAttempts", "initialBackoffMs",
                        "maxInFlight", "promptBudget"});
        read(l, "endpoint", "llm", cfg.http.endpoint);
        read(l, "model", "llm", cfg.http.model);
        read(l, "temperature", "llm", cfg.http.temperature);
        std::int64_t timeout = cfg.http.timeout.count();
        read(l, "timeoutSeconds", "llm", timeout);
        cfg.http.timeout = std::chrono::seconds{timeout};
        read(l, "maxAttempts", "llm", cfg.retry.max_attempts);
        std::int64_t backoff = cfg.retry.initial_backoff.count();
        read(l, "initialBackoffMs", "llm", backoff);
        cfg.retry.initial_backoff = std::chrono::milliseconds{backoff};
        read(l, "maxInFlight", "llm", cfg.max_in_flight);
        read(l, "promptBudget", "llm", cfg.prompt_budget);
    }
    if (auto it = doc.find("rpc"); it != doc.end()) {
        reject_unknown(*it, "rpc", {"url"});
        std::string url;
        read(*it, "url", "rpc", url);
        if (!url.empty()) cfg.rpc_url = url;
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace etrace::cli
