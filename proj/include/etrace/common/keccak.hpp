// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include <etrace/common/bytes.hpp>

namespace etrace {

//! Original Keccak-256 (pad byte 0x01), as used for Ethereum event topics.
Word keccak256(ByteView data);
Word keccak256(std::string_view text);

namespace detail {
    //! FIPS-202 SHA3-256 (pad byte 0x06). Shares the permutation with keccak256;
    //! exposed so the sponge can be checked against an external SHA3 implementation.
    Word sha3_256(ByteView data);
}  // namespace detail

}  // namespace etrace
