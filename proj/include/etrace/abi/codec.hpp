// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <etrace/abi/event_abi.hpp>
#include <etrace/abi/registry.hpp>
#include <etrace/ingestion/receipt.hpp>

namespace etrace::abi {

struct DecodedLog {
    std::string name;
    DecodedParams params;

    bool operator==(const DecodedLog&) const = default;
};

//! A log no registered ABI accounts for. Carries the raw entry untouched.
struct UnknownEvent {
    ingestion::LogEntry raw;

    bool operator==(const UnknownEvent&) const = default;
};

using DecodeResult = std::variant<DecodedLog, UnknownEvent>;

//! Never fails on an unknown or missing topic 0. Throws DecodeError when the matched ABI's
//! layout disagrees with the entry (topic count, data length, out-of-range words).
DecodeResult decode_log(const ingestion::LogEntry& entry, const AbiRegistry& registry);

//! Inverse of decode_log. Throws DecodeError on an unknown name or a params/ABI mismatch.
ingestion::LogEntry encode_log(std::string_view name, const DecodedParams& params, const AbiRegistry& registry,
                               const Address& emitter = {}, std::uint64_t log_index = 0);

}  // namespace etrace::abi
