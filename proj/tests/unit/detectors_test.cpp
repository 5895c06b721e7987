// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <etrace/abi/registry.hpp>
#include <etrace/common/errors.hpp>
#include <etrace/detect/detectors.hpp>
#include <etrace/ingestion/fixture.hpp>

#include "support/oracles.hpp"

using namespace etrace;
using namespace etrace::detect;
using testing::Expected;
using testing::strip;

namespace {

event::EventTrace load_trace(const std::string& name) {
    return event::build_trace(ingestion::load_fixture(testing::incident(name)), abi::AbiRegistry::builtin());
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v;
    for (std::size_t i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

event::DecodedEvent transfer(std::size_t i, std::uint8_t from, std::uint8_t to, U256 value = 1) {
    event::DecodedEvent e;
    e.index = i;
    e.name = "Transfer";
    e.from = Address{};
    e.from->bytes[19] = from;
    e.to = Address{};
    e.to->bytes[19] = to;
    e.value = value;
    return e;
}

}  // namespace

TEST_CASE("incident matrix") {
    const DetectorConfig cfg;
    CHECK(strip(run_all_detectors(load_trace("xsurge"), cfg)) ==
          std::vector<Expected>{{AttackPatternKind::Reentrancy, range(1, 8), 1.0}});
    CHECK(strip(run_all_detectors(load_trace("beautychain"), cfg)) ==
          std::vector<Expected>{{AttackPatternKind::IntegerOverflow, {0, 1}, 1.0}});
    CHECK(strip(run_all_detectors(load_trace("mevbot"), cfg)) ==
          std::vector<Expected>{{AttackPatternKind::FlashLoanAttack, {2, 6, 12, 13, 14}, 1.0}});
    CHECK(strip(run_all_detectors(load_trace("governmental"), cfg)) ==
          std::vector<Expected>{{AttackPatternKind::DoS, {2, 3, 4, 5, 6}, 1.0}});
    CHECK(run_all_detectors(load_trace("../misc/empty"), cfg).empty());
}

TEST_CASE("overflow threshold override") {
    const auto t = load_trace("xsurge");
    DetectorConfig cfg;
    CHECK(detect_integer_overflow(t, cfg).empty());
    cfg.overflow_threshold = parse_u256("10^21");
    const auto f = strip(detect_integer_overflow(t, cfg));
    CHECK(f == std::vector<Expected>{{AttackPatternKind::IntegerOverflow, {0}, 0.8},
                                     {AttackPatternKind::IntegerOverflow, {9}, 0.8}});
}

TEST_CASE("Approval of the maximum value is not an overflow") {
    const auto t = load_trace("mevbot");
    CHECK(t.events[5].name == "Approval");
    CHECK(detect_integer_overflow(t, DetectorConfig{}).empty());
}

TEST_CASE("small traces") {
    event::EventTrace t;
    t.events.push_back(transfer(0, 1, 2));
    CHECK(detect_reentrancy(t, {}).empty());

    // Same-direction batch payouts are not a loop.
    t.events.clear();
    for (std::size_t i = 0; i < 6; ++i) t.events.push_back(transfer(i, 1, 2));
    CHECK(detect_reentrancy(t, {}).empty());

    event::EventTrace swaps;
    for (std::size_t i = 0; i < 3; ++i) {
        event::DecodedEvent e;
        e.index = i;
        e.name = "Swap";
        swaps.events.push_back(e);
    }
    CHECK(detect_flash_loan(swaps, {}).empty());
}

TEST_CASE("flash loan without a withdrawal scores lower") {
    event::EventTrace t;
    for (const char* name : {"FlashLoan", "Swap", "Sync", "Swap"}) {
        event::DecodedEvent e;
        e.index = t.events.size();
        e.name = name;
        t.events.push_back(e);
    }
    CHECK(strip(detect_flash_loan(t, {})) ==
          std::vector<Expected>{{AttackPatternKind::FlashLoanAttack, {0, 1, 3}, 0.6}});
    t.events.pop_back();
    CHECK(detect_flash_loan(t, {}).empty());
}

TEST_CASE("single large benign calls do not fire the repetition rule") {
    event::EventTrace t;
    for (std::size_t i = 0; i < 3; ++i) {
        event::DecodedEvent e;
        e.index = i;
        e.name = "Unknown Function";
        e.origin = event::Origin::call;
        e.from = Address{};
        e.from->bytes[19] = static_cast<std::uint8_t>(i + 1);
        e.value = U256{"823600000000000000"};
        e.gas_used = 750000;
        t.events.push_back(e);
    }
    CHECK(detect_dos(t, {}).empty());
}

TEST_CASE("configuration validation") {
    DetectorConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.reentry_min_transfers = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.overflow_threshold = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.dos_gas_limit = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("detectors agree with brute-force oracles") {
    testing::TraceGen gen{12345};
    for (int i = 0; i < 500; ++i) {
        const auto t = gen.next();
        const auto cfg = gen.config();
        INFO("case " << i);
        REQUIRE(strip(detect_reentrancy(t, cfg)) == testing::reentrancy_oracle(t, cfg));
        REQUIRE(strip(detect_integer_overflow(t, cfg)) == testing::overflow_oracle(t, cfg));
        REQUIRE(strip(detect_flash_loan(t, cfg)) == testing::flash_loan_oracle(t));
        REQUIRE(strip(detect_dos(t, cfg)) == testing::dos_oracle(t, cfg));
    }
}

TEST_CASE("findings are deterministic, ordered and well formed") {
    testing::TraceGen gen{777};
    for (int i = 0; i < 300; ++i) {
        const auto t = gen.next();
        const auto cfg = gen.config();
        const auto a = run_all_detectors(t, cfg);
        CHECK(a == run_all_detectors(t, cfg));
        for (std::size_t k = 0; k < a.size(); ++k) {
            REQUIRE_FALSE(a[k].evidence.empty());
            CHECK(std::is_sorted(a[k].evidence.begin(), a[k].evidence.end()));
            CHECK(a[k].evidence.back() < t.events.size());
            CHECK(a[k].score >= 0.0);
            CHECK(a[k].score <= 1.0);
            CHECK_FALSE(a[k].explanation.empty());
            if (k > 0) {
                CHECK(std::tuple{a[k - 1].evidence.front(), a[k - 1].kind} <=
                      std::tuple{a[k].evidence.front(), a[k].kind});
            }
        }
    }
}

// Each cited event is checked against the rule it was cited for, using only
// that event's own fields.
TEST_CASE("evidence satisfies the detector predicates") {
    testing::TraceGen gen{4242};
    for (int i = 0; i < 300; ++i) {
        const auto t = gen.next();
        const auto cfg = gen.config();
        for (const auto& f : detect_integer_overflow(t, cfg)) {
            for (auto idx : f.evidence) {
                const auto& e = t.events[idx];
                CHECK(e.name == "Transfer");
                CHECK(*e.value >= cfg.overflow_threshold);
            }
        }
        for (const auto& f : detect_reentrancy(t, cfg)) {
            CHECK(f.evidence.size() >= cfg.reentry_min_transfers);
            std::set<Address> ends;
            for (auto idx : f.evidence) {
                CHECK(t.events[idx].name == "Transfer");
                ends.insert(*t.events[idx].from);
                ends.insert(*t.events[idx].to);
            }
            CHECK(ends.size() <= 2);
        }
        for (const auto& f : detect_flash_loan(t, cfg)) {
            const auto& first = t.events[f.evidence.front()].name;
            CHECK((first == "FlashLoan" || first == "Borrow"));
            CHECK(t.events[f.evidence[1]].name == "Swap");
        }
        for (const auto& f : detect_dos(t, cfg)) {
            for (auto idx : f.evidence) {
                const auto& e = t.events[idx];
                const bool over = e.gas_used && *e.gas_used > cfg.dos_gas_limit;
                const bool cheap_call =
                    e.origin == event::Origin::call && e.gas_used && e.value.value_or(0) <= cfg.dos_small_value_max;
                CHECK((over || cheap_call));
            }
        }
    }
}

TEST_CASE("raising thresholds never adds findings") {
    testing::TraceGen gen{99};
    for (int i = 0; i < 300; ++i) {
        const auto t = gen.next();
        DetectorConfig low;
        low.overflow_threshold = U256{"1000000000000000000000"};
        low.dos_gas_limit = 750000;
        DetectorConfig high = low;
        high.overflow_threshold = U256{1} << 250;
        high.dos_gas_limit = 4712388;

        std::set<std::size_t> low_over, high_over;
        for (const auto& f : detect_integer_overflow(t, low)) low_over.insert(f.evidence.begin(), f.evidence.end());
        for (const auto& f : detect_integer_overflow(t, high)) high_over.insert(f.evidence.begin(), f.evidence.end());
        CHECK(std::includes(low_over.begin(), low_over.end(), high_over.begin(), high_over.end()));

        const auto gas_hits = [&](const DetectorConfig& c) {
            std::set<std::size_t> hits;
            for (const auto& f : detect_dos(t, c)) {
                for (auto idx : f.evidence) {
                    if (t.events[idx].gas_used && *t.events[idx].gas_used > c.dos_gas_limit) hits.insert(idx);
                }
            }
            return hits;
        };
        const auto lo = gas_hits(low), hi = gas_hits(high);
        CHECK(std::includes(lo.begin(), lo.end(), hi.begin(), hi.end()));
    }
}
