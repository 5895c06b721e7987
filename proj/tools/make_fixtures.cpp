// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

// Writes the incident fixtures under <dir>/incidents, an empty receipt under <dir>/misc and
// the mock model responses under <dir>/llm. Addresses known from public records are used
// verbatim; the rest keep the published four-digit prefix and are padded deterministically.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <etrace/abi/codec.hpp>
#include <etrace/common/keccak.hpp>
#include <etrace/event/trace.hpp>
#include <etrace/ingestion/fixture.hpp>
#include <etrace/llm/backend.hpp>
#include <etrace/llm/prompt.hpp>

namespace fs = std::filesystem;
using namespace etrace;

namespace {

Address known(const char* hex) {
    return Address::from_hex(hex);
}

//! Four-digit display prefix followed by 16 bytes derived from `label`.
Address reconstructed(std::string_view prefix, std::string_view label) {
    const Word seed = keccak256(label);
    return Address::from_hex("0x" + std::string{prefix} + to_hex(ByteView{seed.bytes}.first(18)));
}

TxHash synthetic_hash(std::string_view label) {
    return TxHash::from_span(keccak256(label).bytes);
}

U256 sci(std::string_view mantissa_digits, int exponent) {
    // mantissa_digits like "18966" meaning 1.8966; exponent applies to the leading digit.
    U256 v = parse_u256(mantissa_digits);
    const int shift = exponent - static_cast<int>(mantissa_digits.size() - 1);
    for (int i = 0; i < shift; ++i) v *= 10;
    return v;
}

struct Builder {
    const abi::AbiRegistry& registry;
    ingestion::TransactionReceipt receipt;

    void log(std::string_view name, abi::DecodedParams params, const Address& emitter) {
        receipt.logs.push_back(abi::encode_log(name, params, registry, emitter, receipt.logs.size()));
    }
    void transfer(const Address& emitter, const Address& from, const Address& to, const U256& value) {
        log("Transfer", {{{"from", from}, {"to", to}, {"value", value}}}, emitter);
    }
};

const Address kWbnb = known("0xbb4cdb9cbd36b01bd1cbaebf2de08d9173bc095c");
const Address kWeth = known("0xc02aaa39b223fe8d0a0e5c4f27ead9083c756cc2");
const Address kBalancerVault = known("0xba12222222228d8ba445958a75a0704d566bf2c8");

ingestion::TransactionReceipt xsurge(const abi::AbiRegistry& reg) {
    const Address pool = reconstructed("0ed7", "xsurge/lender");
    const Address attacker = reconstructed("5f2e", "xsurge/attacker");
    const Address victim = known("0xe1e1aa58983f6b8ee8e4ecd206cea6578f036c21");

    Builder b{reg, {}};
    b.receipt.tx_hash = synthetic_hash("xsurge/tx");
    b.receipt.block_number = 10'087'724;
    b.receipt.gas_used = 3'214'592;
    b.transfer(kWbnb, pool, attacker, sci("10000", 22));
    b.transfer(victim, victim, attacker, sci("18966", 15));
    b.transfer(victim, victim, attacker, sci("11235", 16));
    b.transfer(victim, attacker, victim, sci("18966", 15));
    b.transfer(victim, victim, attacker, sci("12964", 18));
    b.transfer(victim, attacker, victim, sci("11235", 16));
    b.transfer(victim, victim, attacker, sci("18641", 18));
    b.transfer(victim, attacker, victim, sci("12964", 18));
    b.transfer(victim, attacker, victim, sci("18641", 18));
    b.transfer(kWbnb, attacker, pool, sci("10030", 22));
    return b.receipt;
}

ingestion::TransactionReceipt beautychain(const abi::AbiRegistry& reg) {
    const Address token = known("0xc5d105e63711398af9bbff092d4b6769c82f793d");
    const Address sender = reconstructed("09a3", "bec/sender");
    Builder b{reg, {}};
    b.receipt.tx_hash = TxHash::from_hex("0xad89ff16fd1ebe3a0a7cf4ed282302c06626c1af33221ebe0d3a470aba4a660f");
    b.receipt.block_number = 5'483'643;
    b.receipt.gas_used = 74'989;
    const U256 half = U256{1} << 255;
    b.transfer(token, sender, reconstructed("b4d3", "bec/receiver-1"), half);
    b.transfer(token, sender, reconstructed("0e82", "bec/receiver-2"), half);
    return b.receipt;
}

ingestion::TransactionReceipt mevbot(const abi::AbiRegistry& reg) {
    const Address bot = reconstructed("0000", "mevbot/bot");
    const Address pair = reconstructed("4b77", "mevbot/pair");
    const Address src = reconstructed("2d00", "mevbot/source");
    const Address v3pool = known("0x88e6a0c2ddd26feeb64f039a2c41296fcb3f5640");
    const Address a8ad5 = reconstructed("8ad5", "mevbot/8ad5");
    const Address ab4e1 = reconstructed("b4e1", "mevbot/b4e1");
    const Address token = reconstructed("a0b8", "mevbot/token");

    Builder b{reg, {}};
    b.receipt.tx_hash = TxHash::from_hex("0x35ecf595864400696853c53edf3e3d60096639b6071cadea6076c9c6ceb921c1");
    b.receipt.block_number = 15'741'353;
    b.receipt.gas_used = 412'684;
    b.transfer(kWeth, src, v3pool, sci("18774", 20));
    b.transfer(kWeth, bot, kBalancerVault, U256{1});
    b.log("FlashLoan", {{{"recipient", bot}, {"token", kWeth}, {"amount", U256{1}}, {"feeAmount", U256{0}}}},
          kBalancerVault);
    b.transfer(token, a8ad5, pair, sci("15825", 20));
    b.transfer(token, ab4e1, pair, sci("16941", 19));
    b.log("Approval", {{{"owner", pair}, {"spender", kBalancerVault}, {"value", u256_max()}}}, token);
    const Address none{};
    b.log("Swap",
          {{{"sender", none},
            {"amount0In", U256{0}},
            {"amount1In", U256{0}},
            {"amount0Out", U256{0}},
            {"amount1Out", U256{0}},
            {"to", none}}},
          pair);
    b.transfer(token, pair, kBalancerVault, sci("14707", 10));
    b.transfer(kWeth, kBalancerVault, pair, sci("11379", 19));
    b.transfer(token, pair, ab4e1, sci("21896", 10));
    b.transfer(token, pair, a8ad5, sci("20454", 11));
    b.log("Sync", {{{"reserve0", sci("46287", 13)}, {"reserve1", sci("35902", 22)}}}, pair);
    b.log("Swap",
          {{{"sender", bot},
            {"amount0In", sci("21896", 10)},
            {"amount1In", U256{0}},
            {"amount0Out", U256{0}},
            {"amount1Out", sci("16941", 19)},
            {"to", bot}}},
          pair);
    b.log("Swap",
          {{{"sender", bot},
            {"amount0In", sci("20454", 11)},
            {"amount1In", U256{0}},
            {"amount0Out", U256{0}},
            {"amount1Out", U256{0}},
            {"to", bot}}},
          pair);
    b.log("Withdrawal", {{{"src", pair}, {"wad", sci("18657", 20)}}}, kWeth);
    return b.receipt;
}

ingestion::TransactionReceipt governmental(const abi::AbiRegistry&) {
    const Address contract = known("0xf45717552f12ef7cb65e95476f217ea008167ae3");
    const Address early = reconstructed("94bd", "governmental/early-lender");
    const Address owner = reconstructed("490f", "governmental/owner");
    const Address attacker = reconstructed("818d", "governmental/attacker");
    const U256 finney{1'000'000'000'000'000ULL};  // 0.001 ETH

    ingestion::TransactionReceipt r;
    r.tx_hash = synthetic_hash("governmental/payout");
    r.block_number = 1'434'503;
    r.status = ingestion::TxStatus::failure;
    r.gas_used = 4'712'388;
    std::vector<ingestion::CallRecord> calls{
        {"lendGM", early, contract, finney * 10, 36'855},
        {"totalPayedOut()", owner, contract, U256{0}, 21'651},
        {"lendGM", attacker, contract, finney, 2'532'963},
        {"lendGM", attacker, contract, finney, 5'057'945},
        {"lendGM", attacker, contract, finney, 5'057'945},
        {"lendGM", attacker, contract, finney, 5'057'945},
        {"lendGM", attacker, contract, finney, 5'057'945},
        {"Unknown Function", owner, contract, finney * 1000, 750'000},
        {"Unknown Function", owner, contract, finney * 8236 / 10, 750'000},
        {"Unknown Function", owner, contract, finney * 10, 750'000},
    };
    r.call_records = std::move(calls);
    return r;
}

constexpr std::string_view kXsurgeResponse =
    R"(Event 0: A pool lends 1.0000e+22 base units to 0x5f2e, which funds the rest of the transaction.
Event 1: The token contract 0xe1e1 sends tokens to 0x5f2e.
Event 2: 0xe1e1 sends a second, larger amount to 0x5f2e before any balance correction is visible.
Event 3: 0x5f2e returns the first amount to 0xe1e1.
Event 4: 0xe1e1 pays 0x5f2e again with a much larger value.
Event 5: 0x5f2e sends tokens back to 0xe1e1.
Event 6: 0xe1e1 pays 0x5f2e once more.
Event 7: 0x5f2e sends tokens back to 0xe1e1.
Event 8: 0x5f2e sends tokens back to 0xe1e1.
Event 9: 0x5f2e repays the pool 1.0030e+22, slightly more than it borrowed.

Summary:
Funds cycle between 0x5f2e and 0xe1e1 many times in alternating directions inside one transaction, and each payout from 0xe1e1 grows.

Pattern Analysis:
The alternating transfers between the same two addresses, with payouts issued before the previous ones are settled, match the reentrancy condition: 0x5f2e re-enters the sell and buy paths of 0xe1e1 before its balances are updated, extracting value on each loop.

Further Recommendation:
Inspect the sell path of 0xe1e1 for external calls made before balance updates and add a reentrancy guard.
)";

constexpr std::string_view kBeautyChainResponse = R"(Event 0: 0x09a3 transfers 5.7896e+76 tokens to 0xb4d3.
Event 1: 0x09a3 transfers the same 5.7896e+76 tokens to 0x0e82.

Summary:
One sender moves two identical amounts of about 2^255 tokens, far beyond any realistic supply.

Pattern Analysis:
The values are so large that the total sent (2 x 2^255 = 2^256) wraps to zero when multiplied, which matches the integer overflow condition: the balance check passed on a wrapped product while each receiver was credited the full amount.

Further Recommendation:
Replace unchecked multiplication in the batch transfer function with checked arithmetic and pause the token until balances are reconciled.
)";

constexpr std::string_view kMevbotResponse = R"(Event 2: The vault at 0xba12 issues a FlashLoan of WETH to 0x0000.
Event 5: 0x4b77 grants 0xba12 an unlimited allowance.
Event 6: An empty Swap primes the pair.
Event 12: A Swap pushes 2.1896e+10 in and takes 1.6941e+19 out.
Event 13: Another Swap moves 2.0454e+11 in.
Event 14: 1.8657e+20 WETH is withdrawn by 0x4b77.

Summary:
Borrowed liquidity is routed through several swaps on the same pair, and the sequence ends with a large withdrawal.

Pattern Analysis:
A FlashLoan followed by Swap events that move the pair reserves sharply, then a Withdrawal of the proceeds, matches the flash loan attack condition: the attacker borrows, manipulates the pool price with swaps, repays and keeps the difference.

Further Recommendation:
Avoid reading spot reserves of this pair as a price source and revoke the unlimited allowance granted to the vault.
)";

constexpr std::string_view kGovernmentalResponse = R"(Event 0: 0x94bd lends 0.01 ETH through lendGM at normal gas.
Event 1: totalPayedOut() is read by 0x490f.
Event 2: 0x818d lends 0.001 ETH and the call already costs 2532963 gas.
Event 3: 0x818d repeats the tiny loan and gas reaches 5057945.
Event 7: 0x490f calls an unknown function with 1.0 ETH and gas 750000.

Summary:
A single account makes many minimal loans, and the gas of every call keeps rising until it passes the block gas limit.

Pattern Analysis:
Repeated cheap lendGM calls grow the creditor list until processing it needs 5057945 gas, above the 4712388 limit, so the payout can never complete. This matches the DoS condition (denial of service by state inflation).

Further Recommendation:
Process creditors in bounded batches or let them withdraw individually so no single call has to touch the whole list.
)";

void write(const fs::path& path, std::string_view content) {
    std::ofstream f{path, std::ios::binary};
    f << content;
    std::cout << "wrote " << path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <fixtures-dir>\n";
        return 1;
    }
    const fs::path root{argv[1]};
    fs::create_directories(root / "incidents");
    fs::create_directories(root / "misc");
    fs::create_directories(root / "llm");
    for (const auto& entry : fs::directory_iterator{root / "llm"}) {
        if (entry.path().extension() == ".txt") fs::remove(entry.path());
    }

    const auto registry = abi::AbiRegistry::builtin();
    const std::pair<const char*, ingestion::TransactionReceipt> incidents[] = {
        {"xsurge", xsurge(registry)},
        {"beautychain", beautychain(registry)},
        {"mevbot", mevbot(registry)},
        {"governmental", governmental(registry)},
    };
    const std::string_view responses[] = {kXsurgeResponse, kBeautyChainResponse, kMevbotResponse,
                                          kGovernmentalResponse};

    for (std::size_t i = 0; i < std::size(incidents); ++i) {
        const auto& [name, receipt] = incidents[i];
        write(root / "incidents" / (std::string{name} + ".json"), ingestion::receipt_to_fixture(receipt));
        const auto trace = event::build_trace(receipt, registry);
        const auto prompt = llm::build_prompt(trace, llm::default_conditions()).text();
        write(root / "llm" / (llm::prompt_digest(prompt) + ".txt"), responses[i]);
    }

    ingestion::TransactionReceipt empty;
    empty.tx_hash = synthetic_hash("misc/empty");
    empty.block_number = 1;
    empty.gas_used = 21'000;
    write(root / "misc" / "empty.json", ingestion::receipt_to_fixture(empty));
    return 0;
}
