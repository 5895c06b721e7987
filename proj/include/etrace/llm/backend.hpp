// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>

#include <etrace/common/errors.hpp>
#include <etrace/llm/prompt.hpp>

namespace etrace::llm {

inline constexpr std::string_view kLlmKeyEnv = "ETRACE_LLM_KEY";

//! A failure worth retrying (timeouts, connection resets, 429/5xx).
class TransientBackendError : public Error {
  public:
    using Error::Error;
};

class BackendError : public Error {
  public:
    BackendError(const std::string& what, unsigned attempts) : Error(what), attempts_{attempts} {}
    [[nodiscard]] unsigned attempts() const noexcept { return attempts_; }

  private:
    unsigned attempts_;
};

class EmptyResponseError : public Error {
  public:
    using Error::Error;
};

class LlmBackend {
  public:
    virtual ~LlmBackend() = default;
    virtual std::string generate(const std::string& prompt) = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

struct RetryPolicy {
    unsigned max_attempts{3};
    std::chrono::milliseconds initial_backoff{500};
    double multiplier{2.0};
};

//! Sends the prompt and returns the response verbatim. TransientBackendError is retried with
//! exponential backoff; exhausting attempts or any other backend failure throws BackendError
//! carrying the attempt count. An empty response throws EmptyResponseError.
std::string analyze(const PromptBundle& bundle, LlmBackend& backend, const RetryPolicy& policy = {});

//! Lowercase hex keccak-256 of the prompt text; mock fixture files are named `<digest>.txt`.
std::string prompt_digest(std::string_view prompt);

//! Response used by the mock backend for prompts it has no fixture for. Claims no pattern.
std::string_view generic_mock_response();

//! Replays stored responses keyed by prompt digest. Safe for concurrent use.
class MockBackend final : public LlmBackend {
  public:
    //! Throws ConfigError when `fixture_dir` is not a readable directory.
    explicit MockBackend(std::filesystem::path fixture_dir);
    std::string generate(const std::string& prompt) override;
    [[nodiscard]] std::string name() const override { return "mock"; }

  private:
    std::filesystem::path dir_;
};

std::unique_ptr<LlmBackend> mock_backend(const std::filesystem::path& fixture_dir);

struct HttpBackendConfig {
    std::string endpoint;  // full chat-completions URL
    std::string model;
    double temperature{0.0};
    std::chrono::seconds timeout{60};
};

//! OpenAI-style chat-completions client. The API key is read from ETRACE_LLM_KEY and is
//! only ever placed in the Authorization header.
class HttpChatBackend final : public LlmBackend {
  public:
    explicit HttpChatBackend(HttpBackendConfig config);
    std::string generate(const std::string& prompt) override;
    [[nodiscard]] std::string name() const override { return "http:" + config_.model; }

  private:
    HttpBackendConfig config_;
};

//! Caps the number of concurrent generate() calls on a shared backend.
class ThrottledBackend final : public LlmBackend {
  public:
    ThrottledBackend(LlmBackend& inner, std::ptrdiff_t max_in_flight);
    std::string generate(const std::string& prompt) override;
    [[nodiscard]] std::string name() const override { return inner_.name(); }

  private:
    LlmBackend& inner_;
    std::counting_semaphore<1024> slots_;
};

}  // namespace etrace::llm
