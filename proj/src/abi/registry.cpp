// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/abi/registry.hpp>

#include <fstream>

#include <json.hpp>

#include <etrace/common/errors.hpp>

namespace etrace::abi {

AbiRegistry& AbiRegistry::register_event(const EventAbi& abi) {
    auto [it, inserted] = entries_.try_emplace(abi.signature_hash(), abi);
    if (!inserted && !(it->second == abi)) {
        throw ConflictError("event " + abi.canonical_signature() + " collides with registered " +
                            it->second.canonical_signature() + " under hash " + abi.signature_hash().hex());
    }
    return *this;
}

AbiRegistry& AbiRegistry::restrict_scope(const Address& contract, std::set<Word> hashes) {
    scope_[contract] = std::move(hashes);
    return *this;
}

const EventAbi* AbiRegistry::find(const Word& hash) const {
    auto it = entries_.find(hash);
    return it == entries_.end() ? nullptr : &it->second;
}

const EventAbi* AbiRegistry::find_for(const Address& contract, const Word& hash) const {
    if (auto scope = scope_.find(contract); scope != scope_.end() && !scope->second.contains(hash)) {
        return nullptr;
    }
    return find(hash);
}

const EventAbi* AbiRegistry::find_by_name(std::string_view name) const {
    for (const auto& [hash, abi] : entries_) {
        if (abi.name() == name) return &abi;
    }
    return nullptr;
}

AbiRegistry AbiRegistry::builtin() {
    const auto addr = SolType{SolKind::address, 160};
    const auto u256 = SolType{SolKind::uint, 256};
    const auto u112 = SolType{SolKind::uint, 112};

    AbiRegistry r;
    r.register_event(EventAbi{"Transfer", {{"from", addr, true}, {"to", addr, true}, {"value", u256, false}}});
    r.register_event(EventAbi{"Approval", {{"owner", addr, true}, {"spender", addr, true}, {"value", u256, false}}});
    // Uniswap V2 pair events.
    r.register_event(EventAbi{"Swap",
                              {{"sender", addr, true},
                               {"amount0In", u256, false},
                               {"amount1In", u256, false},
                               {"amount0Out", u256, false},
                               {"amount1Out", u256, false},
                               {"to", addr, true}}});
    r.register_event(EventAbi{"Sync", {{"reserve0", u112, false}, {"reserve1", u112, false}}});
    // Balancer V2 vault.
    r.register_event(EventAbi{
        "FlashLoan",
        {{"recipient", addr, true}, {"token", addr, true}, {"amount", u256, false}, {"feeAmount", u256, false}}});
    // WETH9.
    r.register_event(EventAbi{"Withdrawal", {{"src", addr, true}, {"wad", u256, false}}});
    r.register_event(EventAbi{"Deposit", {{"dst", addr, true}, {"wad", u256, false}}});
    return r;
}

AbiRegistry register_event(AbiRegistry registry, const EventAbi& abi) {
    registry.register_event(abi);
    return registry;
}

void load_abi_file(const std::filesystem::path& path, AbiRegistry& registry) {
    using nlohmann::json;
    std::ifstream in{path};
    if (!in) throw ParseError("cannot open ABI file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": not valid JSON: " + e.what());
    }
    if (!doc.is_array()) throw ParseError(path.string() + ": expected a list of event entries");

    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto where = path.string() + ": [" + std::to_string(i) + "]";
        const json& entry = doc[i];
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
            throw ParseError(where + ".name: missing or not a string");
        }
        if (!entry.contains("params") || !entry["params"].is_array()) {
            throw ParseError(where + ".params: missing or not an array");
        }
        std::vector<EventParam> params;
        for (std::size_t j = 0; j < entry["params"].size(); ++j) {
            const json& p = entry["params"][j];
            const auto pwhere = where + ".params[" + std::to_string(j) + "]";
            if (!p.is_object() || !p.contains("type") || !p["type"].is_string()) {
                throw ParseError(pwhere + ".type: missing or not a string");
            }
            EventParam param;
            param.name = p.value("name", "");
            try {
                param.type = SolType::parse(p["type"].get<std::string>());
            } catch (const ValidationError& e) {
                throw ValidationError(pwhere + ".type: " + e.what());
            }
            param.indexed = p.value("indexed", false);
            params.push_back(std::move(param));
        }
        registry.register_event(EventAbi{entry["name"].get<std::string>(), std::move(params)});
    }
}

}  // namespace etrace::abi
