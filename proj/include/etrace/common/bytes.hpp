// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace etrace {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

//! Unsigned 256-bit integer; arithmetic wraps modulo 2^256.
using U256 = boost::multiprecision::uint256_t;

inline constexpr std::size_t kWordSize = 32;

//! Lowercase hex, no prefix.
std::string to_hex(ByteView bytes);

//! Parses hex with an optional 0x prefix. Throws ValidationError on odd length or bad digits.
Bytes from_hex(std::string_view hex);

template <std::size_t N, class Tag>
struct FixedBytes {
    static constexpr std::size_t size = N;
    std::array<std::uint8_t, N> bytes{};

    //! Requires the 0x prefix and exactly 2*N hex digits (either case).
    static FixedBytes from_hex(std::string_view text);
    static FixedBytes from_span(ByteView view);

    //! 0x-prefixed lowercase hex.
    [[nodiscard]] std::string hex() const;
    //! First four hex digits after 0x, as in abbreviated tables.
    [[nodiscard]] std::string short_hex() const { return hex().substr(0, 6); }
    [[nodiscard]] bool is_zero() const;

    auto operator<=>(const FixedBytes&) const = default;
};

struct AddressTag {};
struct WordTag {};
struct TxHashTag {};

using Address = FixedBytes<20, AddressTag>;
//! A 32-byte ABI word or log topic.
using Word = FixedBytes<32, WordTag>;
using TxHash = FixedBytes<32, TxHashTag>;

extern template struct FixedBytes<20, AddressTag>;
extern template struct FixedBytes<32, WordTag>;
extern template struct FixedBytes<32, TxHashTag>;

const U256& u256_max();

//! Big-endian word encoding.
Word to_word(const U256& value);
Word to_word(const Address& address);
U256 word_to_u256(const Word& word);
//! Low 20 bytes of the word.
Address word_to_address(const Word& word);

std::string to_decimal(const U256& value);

//! Accepts decimal digits, 0x-prefixed hex, or `base^exp` (e.g. "2^250", "10^21").
//! Throws ValidationError when the text is malformed or the value exceeds 2^256 - 1.
U256 parse_u256(std::string_view text);

//! Scientific notation with five significant digits, e.g. "1.0000e+22". Zero renders as "0".
std::string to_scientific(const U256& value);

}  // namespace etrace
