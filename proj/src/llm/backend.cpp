// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/llm/backend.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include <etrace/common/http.hpp>
#include <etrace/common/keccak.hpp>

namespace etrace::llm {

std::string analyze(const PromptBundle& bundle, LlmBackend& backend, const RetryPolicy& policy) {
    const std::string prompt = bundle.text();
    const unsigned max_attempts = std::max(1U, policy.max_attempts);
    auto delay = std::chrono::duration<double, std::milli>(policy.initial_backoff);

    for (unsigned attempt = 1;; ++attempt) {
        std::string response;
        try {
            response = backend.generate(prompt);
        } catch (const TransientBackendError& e) {
            if (attempt >= max_attempts) {
                throw BackendError(
                    backend.name() + " failed after " + std::to_string(attempt) + " attempts: " + e.what(), attempt);
            }
            std::this_thread::sleep_for(delay);
            delay *= policy.multiplier;
            continue;
        } catch (const BackendError& e) {
            throw BackendError(e.what(), attempt);
        }
        if (response.empty()) throw EmptyResponseError(backend.name() + " returned an empty response");
        return response;
    }
}

std::string prompt_digest(std::string_view prompt) {
    return to_hex(keccak256(prompt).bytes);
}

std::string_view generic_mock_response() {
    return "Event explanations are not available for this transaction.\n"
           "\n"
           "Summary:\n"
           "No stored analysis matches these events.\n"
           "\n"
           "Pattern Analysis:\n"
           "None of the four vulnerability conditions is matched by the events.\n"
           "\n"
           "Further Recommendation:\n"
           "No action beyond routine monitoring.\n";
}

MockBackend::MockBackend(std::filesystem::path fixture_dir) : dir_{std::move(fixture_dir)} {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir_, ec)) {
        throw ConfigError("mock fixture directory " + dir_.string() + " is not a readable directory");
    }
    std::filesystem::directory_iterator probe{dir_, ec};
    if (ec) throw ConfigError("cannot read mock fixture directory " + dir_.string() + ": " + ec.message());
}

std::string MockBackend::generate(const std::string& prompt) {
    const auto file = dir_ / (prompt_digest(prompt) + ".txt");
    std::ifstream in{file, std::ios::binary};
    if (!in) return std::string{generic_mock_response()};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::unique_ptr<LlmBackend> mock_backend(const std::filesystem::path& fixture_dir) {
    return std::make_unique<MockBackend>(fixture_dir);
}

HttpChatBackend::HttpChatBackend(HttpBackendConfig config) : config_{std::move(config)} {
    if (config_.endpoint.empty()) throw ConfigError("LLM endpoint is not configured");
    if (config_.model.empty()) throw ConfigError("LLM model is not configured");
}

std::string HttpChatBackend::generate(const std::string& prompt) {
    using nlohmann::json;
    const json request{
        {"model", config_.model},
        {"temperature", config_.temperature},
        {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
    };
    http::Headers headers;
    if (const char* key = std::getenv(kLlmKeyEnv.data()); key != nullptr && *key != '\0') {
        headers.emplace_back("Authorization", std::string{"Bearer "} + key);
    }

    http::Response response;
    try {
        response = http::post_json(config_.endpoint, request.dump(), headers, config_.timeout);
    } catch (const TransportError& e) {
        throw TransientBackendError(e.what());
    }
    if (response.status == 429 || response.status >= 500) {
        throw TransientBackendError("LLM endpoint returned HTTP " + std::to_string(response.status));
    }
    if (response.status != 200) {
        throw BackendError("LLM endpoint returned HTTP " + std::to_string(response.status), 0);
    }
    try {
        const auto doc = json::parse(response.body);
        const auto& content = doc.at("choices").at(0).at("message").at("content");
        return content.is_null() ? std::string{} : content.get<std::string>();
    } catch (const json::exception& e) {
        throw BackendError(std::string{"LLM endpoint returned an unexpected body: "} + e.what(), 0);
    }
}

ThrottledBackend::ThrottledBackend(LlmBackend& inner, std::ptrdiff_t max_in_flight)
    : inner_{inner}, slots_{std::clamp<std::ptrdiff_t>(max_in_flight, 1, 1024)} {}

std::string ThrottledBackend::generate(const std::string& prompt) {
    slots_.acquire();
    struct Release {
        std::counting_semaphore<1024>& s;
        ~Release() { s.release(); }
    } release{slots_};
    return inner_.generate(prompt);
}

}  // namespace etrace::llm
