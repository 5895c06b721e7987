// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <deque>
#include <future>
#include <thread>

#include <etrace/abi/registry.hpp>
#include <etrace/common/errors.hpp>
#include <etrace/ingestion/fixture.hpp>
#include <etrace/llm/backend.hpp>

#include "support/oracles.hpp"

using namespace etrace;
using namespace etrace::llm;
using namespace std::chrono_literals;

namespace {

// Replays a script: each entry is either a response or a failure to raise.
class ScriptedBackend final : public LlmBackend {
  public:
    enum class Step { transient, fatal, reply };
    ScriptedBackend(std::deque<Step> steps, std::string reply) : steps_{std::move(steps)}, reply_{std::move(reply)} {}

    std::string generate(const std::string& prompt) override {
        ++calls;
        last_prompt = prompt;
        const Step s = steps_.empty() ? Step::reply : steps_.front();
        if (!steps_.empty()) steps_.pop_front();
        if (s == Step::transient) throw TransientBackendError("connection reset");
        if (s == Step::fatal) throw BackendError("bad request", 0);
        return reply_;
    }
    [[nodiscard]] std::string name() const override { return "scripted"; }

    unsigned calls{0};
    std::string last_prompt;

  private:
    std::deque<Step> steps_;
    std::string reply_;
};

PromptBundle incident_prompt(const std::string& name) {
    return build_prompt(
        event::build_trace(ingestion::load_fixture(testing::incident(name)), abi::AbiRegistry::builtin()),
        default_conditions());
}

const RetryPolicy kFast{3, 1ms, 2.0};

}  // namespace

TEST_CASE("transient failures are retried") {
    using S = ScriptedBackend::Step;
    ScriptedBackend backend{{S::transient, S::transient, S::reply}, "Summary:\nok"};
    const auto bundle = incident_prompt("beautychain");
    CHECK(analyze(bundle, backend, kFast) == "Summary:\nok");
    CHECK(backend.calls == 3);
    CHECK(backend.last_prompt == bundle.text());
}

TEST_CASE("persistent failure reports the attempt count") {
    using S = ScriptedBackend::Step;
    ScriptedBackend backend{{S::transient, S::transient, S::transient, S::transient}, "x"};
    try {
        analyze(incident_prompt("beautychain"), backend, kFast);
        FAIL("no error");
    } catch (const BackendError& e) {
        CHECK(e.attempts() == 3);
    }
    CHECK(backend.calls == 3);

    ScriptedBackend fatal{{S::transient, S::fatal}, "x"};
    try {
        analyze(incident_prompt("beautychain"), fatal, kFast);
        FAIL("no error");
    } catch (const BackendError& e) {
        CHECK(e.attempts() == 2);
    }
}

TEST_CASE("backoff grows between attempts") {
    using S = ScriptedBackend::Step;
    ScriptedBackend backend{{S::transient, S::transient, S::reply}, "r"};
    const auto start = std::chrono::steady_clock::now();
    analyze(incident_prompt("beautychain"), backend, RetryPolicy{3, 20ms, 2.0});
    CHECK(std::chrono::steady_clock::now() - start >= 60ms);
}

TEST_CASE("empty responses are errors") {
    ScriptedBackend backend{{}, ""};
    CHECK_THROWS_AS(analyze(incident_prompt("beautychain"), backend, kFast), EmptyResponseError);
}

TEST_CASE("mock backend serves stored responses by prompt digest") {
    auto mock = mock_backend(testing::fixtures_dir() / "llm");
    CHECK(mock->name() == "mock");
    const std::map<std::string, std::string> expect{{"xsurge", "reentrancy"},
                                                    {"beautychain", "integer overflow"},
                                                    {"mevbot", "flash loan"},
                                                    {"governmental", "DoS"}};
    for (const auto& [name, phrase] : expect) {
        const auto prompt = incident_prompt(name).text();
        CHECK(std::filesystem::exists(testing::fixtures_dir() / "llm" / (prompt_digest(prompt) + ".txt")));
        const auto reply = mock->generate(prompt);
        INFO(name);
        CHECK(reply != generic_mock_response());
        CHECK(reply.find(phrase) != std::string::npos);
        CHECK(mock->generate(prompt) == reply);
    }
    CHECK(mock->generate("unrelated prompt") == generic_mock_response());
    CHECK(prompt_digest("") == "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
}

TEST_CASE("mock backend requires a readable directory") {
    CHECK_THROWS_AS(MockBackend("/nonexistent/etrace-mock"), ConfigError);
    CHECK_THROWS_AS(MockBackend(testing::incident("xsurge")), ConfigError);
}

TEST_CASE("throttle caps concurrent calls") {
    class Slow final : public LlmBackend {
      public:
        std::string generate(const std::string&) override {
            const int now = ++active;
            int seen = peak.load();
            while (now > seen && !peak.compare_exchange_weak(seen, now)) {
            }
            std::this_thread::sleep_for(5ms);
            --active;
            return "ok";
        }
        [[nodiscard]] std::string name() const override { return "slow"; }
        std::atomic<int> active{0};
        std::atomic<int> peak{0};
    } slow;
    ThrottledBackend throttled{slow, 2};
    std::vector<std::future<std::string>> jobs;
    for (int i = 0; i < 12; ++i) {
        jobs.push_back(std::async(std::launch::async, [&] { return throttled.generate("p"); }));
    }
    for (auto& j : jobs) CHECK(j.get() == "ok");
    CHECK(slow.peak.load() <= 2);
    CHECK(throttled.name() == "slow");
}

TEST_CASE("chat backend against a local endpoint") {
    httplib::Server server;
    std::atomic<int> failures_left{1};
    std::string seen_auth, seen_model;
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        if (failures_left-- > 0) {
            res.status = 503;
            return;
        }
        const auto body = nlohmann::json::parse(req.body);
        seen_model = body.at("model").get<std::string>();
        seen_auth = req.get_header_value("Authorization");
        nlohmann::json reply{{"choices", {{{"message", {{"role", "assistant"}, {"content", "Summary:\nfine"}}}}}}};
        res.set_content(reply.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread t{[&] { server.listen_after_bind(); }};
    server.wait_until_ready();

    ::setenv(kLlmKeyEnv.data(), "test-key", 1);
    HttpChatBackend backend{{"http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions", "m1", 0.0, 5s}};
    CHECK(backend.name() == "http:m1");
    CHECK(analyze(incident_prompt("beautychain"), backend, kFast) == "Summary:\nfine");
    CHECK(seen_model == "m1");
    CHECK(seen_auth == "Bearer test-key");
    ::unsetenv(kLlmKeyEnv.data());

    server.stop();
    t.join();

    HttpChatBackend dead{{"http://127.0.0.1:1/v1/chat/completions", "m1", 0.0, 1s}};
    CHECK_THROWS_AS(analyze(incident_prompt("beautychain"), dead, RetryPolicy{2, 1ms, 2.0}), BackendError);
    CHECK_THROWS_AS(HttpChatBackend({"", "m", 0.0, 1s}), ConfigError);
}
