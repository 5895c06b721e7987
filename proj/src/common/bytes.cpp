// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/common/bytes.hpp>

#include <algorithm>
#include <cstdio>

#include <etrace/common/errors.hpp>

namespace etrace {

namespace {

    constexpr std::string_view kHexDigits = "0123456789abcdef";

    int hex_value(char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    std::string_view strip_prefix(std::string_view hex) {
        if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
            hex.remove_prefix(2);
        }
        return hex;
    }

    bool all_digits(std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    }

    using boost::multiprecision::cpp_int;

    cpp_int parse_unbounded(std::string_view text) {
        if (text.starts_with("0x") || text.starts_with("0X")) {
            std::string_view digits = text.substr(2);
            if (digits.empty()) throw ValidationError("empty hex integer: " + std::string{text});
            cpp_int v = 0;
            for (char c : digits) {
                const int d = hex_value(c);
                if (d < 0) throw ValidationError("invalid hex integer: " + std::string{text});
                v = (v << 4) | d;
            }
            return v;
        }
        if (!all_digits(text)) throw ValidationError("invalid decimal integer: " + std::string{text});
        return cpp_int{std::string{text}};
    }

}  // namespace

std::string to_hex(ByteView bytes) {
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    hex = strip_prefix(hex);
    if (hex.size() % 2 != 0) {
        throw ValidationError("hex string has odd length " + std::to_string(hex.size()));
    }
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw ValidationError("invalid hex digit near offset " + std::to_string(2 * i));
        }
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

template <std::size_t N, class Tag>
FixedBytes<N, Tag> FixedBytes<N, Tag>::from_hex(std::string_view text) {
    if (!(text.starts_with("0x") || text.starts_with("0X"))) {
        throw ValidationError("expected 0x-prefixed hex, got \"" + std::string{text} + "\"");
    }
    if (text.size() != 2 + 2 * N) {
        throw ValidationError("expected " + std::to_string(N) + " bytes (" + std::to_string(2 + 2 * N) +
                              " characters), got " + std::to_string(text.size()) + " characters");
    }
    return from_span(etrace::from_hex(text));
}

template <std::size_t N, class Tag>
FixedBytes<N, Tag> FixedBytes<N, Tag>::from_span(ByteView view) {
    if (view.size() != N) {
        throw ValidationError("expected " + std::to_string(N) + " bytes, got " + std::to_string(view.size()));
    }
    FixedBytes out;
    std::copy(view.begin(), view.end(), out.bytes.begin());
    return out;
}

template <std::size_t N, class Tag>
std::string FixedBytes<N, Tag>::hex() const {
    return "0x" + to_hex(bytes);
}

template <std::size_t N, class Tag>
bool FixedBytes<N, Tag>::is_zero() const {
    return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
}

template struct FixedBytes<20, AddressTag>;
template struct FixedBytes<32, WordTag>;
template struct FixedBytes<32, TxHashTag>;

const U256& u256_max() {
    static const U256 max = ~U256{0};
    return max;
}

Word to_word(const U256& value) {
    Word w;
    U256 v = value;
    for (std::size_t i = 0; i < kWordSize; ++i) {
        w.bytes[kWordSize - 1 - i] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
    return w;
}

Word to_word(const Address& address) {
    Word w;
    std::copy(address.bytes.begin(), address.bytes.end(), w.bytes.begin() + (kWordSize - Address::size));
    return w;
}

U256 word_to_u256(const Word& word) {
    U256 v = 0;
    for (std::uint8_t b : word.bytes) {
        v = (v << 8) | b;
    }
    return v;
}

Address word_to_address(const Word& word) {
    return Address::from_span(ByteView{word.bytes}.subspan(kWordSize - Address::size));
}

std::string to_decimal(const U256& value) {
    return value.str();
}

U256 parse_u256(std::string_view text) {
    cpp_int v;
    if (const auto caret = text.find('^'); caret != std::string_view::npos) {
        const auto base_text = text.substr(0, caret);
        const auto exp_text = text.substr(caret + 1);
        if (!all_digits(base_text) || !all_digits(exp_text) || exp_text.size() > 4) {
            throw ValidationError("invalid power expression: " + std::string{text});
        }
        const cpp_int base{std::string{base_text}};
        const auto exponent = std::stoul(std::string{exp_text});
        if (base > 1 && exponent > 256) throw ValidationError("value exceeds 2^256 - 1: " + std::string{text});
        v = boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
    } else {
        v = parse_unbounded(text);
    }
    if (v > cpp_int{u256_max()}) {
        throw ValidationError("value exceeds 2^256 - 1: " + std::string{text});
    }
    return U256{v};
}

std::string to_scientific(const U256& value) {
    if (value == 0) return "0";
    const std::string digits = to_decimal(value);
    int exponent = static_cast<int>(digits.size()) - 1;
    std::string head = digits.substr(0, 6);
    head.resize(6, '0');
    unsigned mantissa = static_cast<unsigned>(std::stoul(head.substr(0, 5)));
    if (head[5] >= '5') ++mantissa;
    if (mantissa == 100000) {
        mantissa = 10000;
        ++exponent;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%u.%04ue+%02d", mantissa / 10000, mantissa % 10000, exponent);
    return buf;
}

}  // namespace etrace
