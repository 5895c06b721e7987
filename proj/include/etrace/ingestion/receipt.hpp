// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <etrace/common/bytes.hpp>

namespace etrace::ingestion {

inline constexpr std::size_t kMaxTopics = 4;

struct LogEntry {
    Address address;
    std::vector<Word> topics;  // at most kMaxTopics
    Bytes data;                // length is a multiple of 32
    std::uint64_t log_index{0};

    bool operator==(const LogEntry&) const = default;
};

//! A top-level call with its own gas figure, for histories that are not visible in logs.
struct CallRecord {
    std::string function_name;
    Address from;
    Address to;
    U256 value;  // wei
    std::uint64_t gas_used{0};

    bool operator==(const CallRecord&) const = default;
};

enum class TxStatus { success, failure };

struct TransactionReceipt {
    TxHash tx_hash;
    std::uint64_t block_number{0};
    TxStatus status{TxStatus::success};
    std::uint64_t gas_used{0};
    std::vector<LogEntry> logs;  // ascending log_index
    std::optional<std::vector<CallRecord>> call_records;

    bool operator==(const TransactionReceipt&) const = default;
};

//! Checks topic count and data alignment of one log. Throws ValidationError naming `where`.
void validate_log(const LogEntry& log, const std::string& where);

}  // namespace etrace::ingestion
