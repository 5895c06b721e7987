// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/abi/event_abi.hpp>

#include <algorithm>
#include <charconv>

#include <etrace/common/errors.hpp>
#include <etrace/common/keccak.hpp>

namespace etrace::abi {

SolType SolType::parse(std::string_view text) {
    if (text == "address") return {SolKind::address, 160};
    if (text == "bool") return {SolKind::boolean, 8};
    if (text == "bytes32") return {SolKind::bytes32, 256};
    if (text == "uint") return {SolKind::uint, 256};
    if (text.starts_with("uint")) {
        const auto digits = text.substr(4);
        unsigned bits = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && digits[0] != '0' && bits >= 8 && bits <= 256 &&
            bits % 8 == 0) {
            return {SolKind::uint, bits};
        }
    }
    throw ValidationError("unsupported event parameter type '" + std::string{text} +
                          "' (expected address, bool, bytes32 or uint<N>)");
}

std::string SolType::canonical() const {
    switch (kind) {
        case SolKind::address:
            return "address";
        case SolKind::boolean:
            return "bool";
        case SolKind::bytes32:
            return "bytes32";
        case SolKind::uint:
            return "uint" + std::to_string(bits);
    }
    return {};
}

EventAbi::EventAbi(std::string name, std::vector<EventParam> params)
    : name_{std::move(name)}, params_{std::move(params)} {
    if (name_.empty()) throw ValidationError("event ABI has an empty name");
    if (indexed_count() > kMaxIndexed) {
        throw ValidationError("event " + name_ + " declares " + std::to_string(indexed_count()) +
                              " indexed params; at most 3 are allowed");
    }
    signature_ = name_ + "(";
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) signature_ += ",";
        signature_ += params_[i].type.canonical();
    }
    signature_ += ")";
    hash_ = abi::signature_hash(signature_);
}

std::size_t EventAbi::indexed_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(params_.begin(), params_.end(), [](const auto& p) { return p.indexed; }));
}

Word signature_hash(std::string_view canonical_signature) {
    return keccak256(canonical_signature);
}

std::string to_string(const AbiValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, U256>) {
                return to_decimal(v);
            } else {
                return v.hex();
            }
        },
        value);
}

}  // namespace etrace::abi
