// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <etrace/common/bytes.hpp>

namespace etrace::abi {

enum class SolKind { address, uint, boolean, bytes32 };

//! A static Solidity type that occupies exactly one ABI word.
struct SolType {
    SolKind kind{SolKind::uint};
    unsigned bits{256};  // uint only: 8..256, multiple of 8

    //! Accepts address, bool, bytes32, uint and uint<N>. Throws ValidationError otherwise.
    static SolType parse(std::string_view text);
    [[nodiscard]] std::string canonical() const;

    bool operator==(const SolType&) const = default;
};

struct EventParam {
    std::string name;
    SolType type;
    bool indexed{false};

    bool operator==(const EventParam&) const = default;
};

inline constexpr std::size_t kMaxIndexed = 3;

class EventAbi {
  public:
    //! Throws ValidationError on an empty name or more than three indexed params.
    EventAbi(std::string name, std::vector<EventParam> params);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<EventParam>& params() const noexcept { return params_; }
    //! `Name(type1,type2,...)`
    [[nodiscard]] const std::string& canonical_signature() const noexcept { return signature_; }
    //! keccak-256 of the canonical signature; the expected topic 0.
    [[nodiscard]] const Word& signature_hash() const noexcept { return hash_; }
    [[nodiscard]] std::size_t indexed_count() const noexcept;

    bool operator==(const EventAbi& other) const { return name_ == other.name_ && params_ == other.params_; }

  private:
    std::string name_;
    std::vector<EventParam> params_;
    std::string signature_;
    Word hash_;
};

Word signature_hash(std::string_view canonical_signature);

using AbiValue = std::variant<Address, U256, bool, Word>;

struct DecodedParams {
    std::vector<std::pair<std::string, AbiValue>> values;

    bool operator==(const DecodedParams&) const = default;
};

//! Renders an ABI value for traces and prompts: hex for address/bytes32, decimal for uint.
std::string to_string(const AbiValue& value);

}  // namespace etrace::abi
