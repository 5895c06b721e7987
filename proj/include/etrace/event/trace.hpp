// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <etrace/abi/codec.hpp>
#include <etrace/abi/registry.hpp>
#include <etrace/common/bytes.hpp>
#include <etrace/ingestion/receipt.hpp>

namespace etrace::event {

inline constexpr std::string_view kUnknownEventName = "UnknownEvent";

enum class Origin { log, call };

//! One row of a trace: a function or event name, the addresses involved, and the value moved.
struct DecodedEvent {
    std::size_t index{0};
    std::string name;
    Address emitter;  // log emitter, or the callee for call records
    std::optional<Address> from;
    std::optional<Address> to;
    std::optional<U256> value;
    std::optional<std::uint64_t> gas_used;
    std::vector<std::pair<std::string, abi::AbiValue>> extra;
    Origin origin{Origin::log};

    bool operator==(const DecodedEvent&) const = default;
};

struct EventTrace {
    TxHash tx_hash;
    ingestion::TxStatus status{ingestion::TxStatus::success};
    std::uint64_t gas_used_total{0};
    std::vector<DecodedEvent> events;

    bool operator==(const EventTrace&) const = default;
};

//! Decodes every log in order and appends call records as call-origin events.
//! Decode errors are rethrown as DecodeError prefixed with the event index.
EventTrace build_trace(const ingestion::TransactionReceipt& receipt, const abi::AbiRegistry& registry);

struct TraceDigest {
    std::size_t event_count{0};
    std::map<std::string, std::size_t> name_counts;
    //! Distinct from/to participants; an event with neither contributes its emitter.
    std::size_t distinct_addresses{0};
    std::optional<U256> max_value;
    std::optional<std::uint64_t> max_gas_used;

    bool operator==(const TraceDigest&) const = default;
};

TraceDigest trace_digest(const EventTrace& trace);

//! "0x0ed7…→0x5f2e…" when both ends exist, otherwise the emitter.
std::string address_column(const DecodedEvent& event);
//! Residual params as "name=value" pairs joined by spaces; uint values in scientific notation.
std::string extra_column(const DecodedEvent& event);

//! One line per event: `index name from→to value gas`, "-" for absent fields.
std::string dump_trace(const EventTrace& trace);

}  // namespace etrace::event
