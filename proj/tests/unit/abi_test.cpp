// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include <etrace/abi/codec.hpp>
#include <etrace/abi/registry.hpp>
#include <etrace/common/errors.hpp>
#include <etrace/common/keccak.hpp>

#include "support/abi_gen.hpp"

using namespace etrace;
using namespace etrace::abi;

namespace {

const SolType kAddr{SolKind::address, 160};
const SolType kU256{SolKind::uint, 256};

ingestion::LogEntry transfer_log(const Address& from, const Address& to, const U256& value) {
    ingestion::LogEntry log;
    log.topics = {keccak256(std::string_view{"Transfer(address,address,uint256)"}), to_word(from), to_word(to)};
    const Word w = to_word(value);
    log.data.assign(w.bytes.begin(), w.bytes.end());
    return log;
}

}  // namespace

TEST_CASE("canonical signatures and types") {
    CHECK(SolType::parse("uint").canonical() == "uint256");
    CHECK(SolType::parse("uint112").bits == 112);
    CHECK_THROWS_AS(SolType::parse("uint7"), ValidationError);
    CHECK_THROWS_AS(SolType::parse("string"), ValidationError);
    const auto reg = AbiRegistry::builtin();
    CHECK(reg.size() == 7);
    const auto* swap = reg.find_by_name("Swap");
    REQUIRE(swap != nullptr);
    CHECK(swap->canonical_signature() == "Swap(address,uint256,uint256,uint256,uint256,address)");
    CHECK(reg.find_by_name("Sync")->canonical_signature() == "Sync(uint112,uint112)");
    CHECK(reg.find_by_name("FlashLoan")->canonical_signature() == "FlashLoan(address,address,uint256,uint256)");
    CHECK_THROWS_AS(EventAbi("Four", {{"a", kAddr, true}, {"b", kAddr, true}, {"c", kAddr, true}, {"d", kAddr, true}}),
                    ValidationError);
}

TEST_CASE("registration is idempotent and rejects colliding layouts") {
    auto reg = AbiRegistry::builtin();
    const EventAbi erc20{"Transfer", {{"from", kAddr, true}, {"to", kAddr, true}, {"value", kU256, false}}};
    CHECK_NOTHROW(reg.register_event(erc20));
    CHECK(reg.size() == 7);
    const EventAbi erc721{"Transfer", {{"from", kAddr, true}, {"to", kAddr, true}, {"tokenId", kU256, true}}};
    CHECK_THROWS_AS(reg.register_event(erc721), ConflictError);
    CHECK(reg.find(erc20.signature_hash())->params()[2].name == "value");
}

TEST_CASE("Transfer decodes from topics and data") {
    const auto reg = AbiRegistry::builtin();
    const auto from = Address::from_hex("0x0ed7e52944161450477ee417de9cd3a859b14fd0");
    const auto to = Address::from_hex("0x5f2e000000000000000000000000000000000005");
    const auto result = decode_log(transfer_log(from, to, U256{"18966000000000000000"}), reg);
    const auto* d = std::get_if<DecodedLog>(&result);
    REQUIRE(d != nullptr);
    CHECK(d->name == "Transfer");
    REQUIRE(d->params.values.size() == 3);
    CHECK(std::get<Address>(d->params.values[0].second) == from);
    CHECK(std::get<Address>(d->params.values[1].second) == to);
    CHECK(std::get<U256>(d->params.values[2].second) == U256{"18966000000000000000"});
}

TEST_CASE("unknown topic0 degrades instead of failing") {
    const auto reg = AbiRegistry::builtin();
    ingestion::LogEntry log;
    log.topics = {keccak256(std::string_view{"Mystery(uint256)"})};
    log.data.resize(64, 0xab);
    const auto result = decode_log(log, reg);
    REQUIRE(std::holds_alternative<UnknownEvent>(result));
    CHECK(std::get<UnknownEvent>(result).raw == log);

    ingestion::LogEntry anonymous;
    CHECK(std::holds_alternative<UnknownEvent>(decode_log(anonymous, reg)));
}

TEST_CASE("layout mismatches are decode errors") {
    const auto reg = AbiRegistry::builtin();
    auto log = transfer_log(Address{}, Address{}, 5);
    log.data.clear();
    try {
        decode_log(log, reg);
        FAIL("no error");
    } catch (const DecodeError& e) {
        CHECK(std::string{e.what()}.find("[address indexed from, address indexed to, uint256 value]") !=
              std::string::npos);
    }
    auto sync = encode_log("Sync", DecodedParams{{{"reserve0", U256{1}}, {"reserve1", U256{2}}}}, reg);
    sync.data[0] = 1;  // above 2^112
    CHECK_THROWS_AS(decode_log(sync, reg), DecodeError);
    CHECK_THROWS_AS(encode_log("Sync", DecodedParams{{{"reserve0", U256{1} << 112}, {"reserve1", U256{2}}}}, reg),
                    DecodeError);
    CHECK_THROWS_AS(encode_log("Nope", {}, reg), DecodeError);
}

TEST_CASE("value boundaries encode to the expected words") {
    const auto reg = AbiRegistry::builtin();
    const auto encode = [&](const U256& v) {
        return encode_log("Transfer", DecodedParams{{{"from", Address{}}, {"to", Address{}}, {"value", v}}}, reg);
    };
    CHECK(encode(0).data == Bytes(32, 0x00));
    CHECK(encode(~U256{0}).data == Bytes(32, 0xff));
    const auto back = std::get<DecodedLog>(decode_log(encode(~U256{0}), reg));
    CHECK(std::get<U256>(back.params.values[2].second) == ~U256{0});
}

TEST_CASE("scoped registries only decode listed events") {
    auto reg = AbiRegistry::builtin();
    const auto token = Address::from_hex("0xc5d105e63711398af9bbff092d4b6769c82f793d");
    reg.restrict_scope(token, {reg.find_by_name("Approval")->signature_hash()});
    auto log = transfer_log(Address{}, Address{}, 1);
    log.address = token;
    CHECK(std::holds_alternative<UnknownEvent>(decode_log(log, reg)));
    log.address = Address{};
    CHECK(std::holds_alternative<DecodedLog>(decode_log(log, reg)));
}

TEST_CASE("decoding does not depend on registration order") {
    const auto builtin = AbiRegistry::builtin();
    std::vector<EventAbi> entries;
    for (const auto& [h, e] : builtin.entries()) entries.push_back(e);
    AbiRegistry reversed;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) reversed.register_event(*it);
    testing::ParamGen gen{11};
    for (int i = 0; i < 200; ++i) {
        const auto& ev = gen.pick_event(builtin);
        const auto log = encode_log(ev.name(), gen.params(ev), builtin);
        CHECK(decode_log(log, builtin) == decode_log(log, reversed));
    }
}

TEST_CASE("randomized encode/decode round trip") {
    const auto reg = AbiRegistry::builtin();
    testing::ParamGen gen{99};
    for (int i = 0; i < 1000; ++i) {
        const auto& ev = gen.pick_event(reg);
        const auto params = gen.params(ev);
        const auto result = decode_log(encode_log(ev.name(), params, reg, gen.address(), i), reg);
        const auto* d = std::get_if<DecodedLog>(&result);
        REQUIRE(d != nullptr);
        REQUIRE(d->name == ev.name());
        REQUIRE(d->params == params);
    }
}

TEST_CASE("ABI extension files") {
    const auto path = std::filesystem::temp_directory_path() / "etrace_abi_test.json";
    {
        std::ofstream out{path};
        out << R"([{"name":"Borrow","params":[{"name":"borrower","type":"address","indexed":true},
                   {"name":"amount","type":"uint256"},{"name":"flag","type":"bool"},{"name":"tag","type":"bytes32"}]}])";
    }
    auto reg = AbiRegistry::builtin();
    load_abi_file(path, reg);
    const auto* borrow = reg.find_by_name("Borrow");
    REQUIRE(borrow != nullptr);
    CHECK(borrow->canonical_signature() == "Borrow(address,uint256,bool,bytes32)");
    testing::ParamGen gen{5};
    for (int i = 0; i < 50; ++i) {
        const auto params = gen.params(*borrow);
        CHECK(std::get<DecodedLog>(decode_log(encode_log("Borrow", params, reg), reg)).params == params);
    }
    {
        std::ofstream out{path};
        out << R"([{"name":"Bad","params":[{"name":"s","type":"string"}]}])";
    }
    CHECK_THROWS_AS(load_abi_file(path, reg), ValidationError);
    std::filesystem::remove(path);
}
