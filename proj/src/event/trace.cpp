// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/event/trace.hpp>

#include <array>
#include <set>
#include <sstream>

#include <etrace/common/errors.hpp>

namespace etrace::event {

namespace {

    struct Roles {
        std::string_view from;
        std::string_view to;
        std::string_view value;
    };

    // Param-name roles for the built-in events. Swap and Sync keep everything in extra.
    const std::map<std::string_view, Roles>& known_roles() {
        static const std::map<std::string_view, Roles> roles{
            {"FlashLoan", {"recipient", "token", "amount"}},
            {"Withdrawal", {"src", "", "wad"}},
            {"Deposit", {"", "dst", "wad"}},
            {"Swap", {"", "", ""}},
            {"Sync", {"", "", ""}},
        };
        return roles;
    }

    constexpr std::array kFromNames = {"from", "_from", "src", "sender", "owner"};
    constexpr std::array kToNames = {"to", "_to", "dst", "recipient", "spender"};
    constexpr std::array kValueNames = {"value", "_value", "amount", "wad"};

    template <std::size_t N>
    bool one_of(const std::string& name, const std::array<const char*, N>& names) {
        for (const char* n : names) {
            if (name == n) return true;
        }
        return false;
    }

    // Transfer and Approval are matched by position so that _from/_to style names still map.
    void assign_positional(DecodedEvent& ev, const abi::DecodedParams& params) {
        bool from_set = false, to_set = false, value_set = false;
        for (const auto& [name, v] : params.values) {
            if (const auto* a = std::get_if<Address>(&v); a && !from_set) {
                ev.from = *a;
                from_set = true;
            } else if (a && !to_set) {
                ev.to = *a;
                to_set = true;
            } else if (const auto* u = std::get_if<U256>(&v); u && !value_set) {
                ev.value = *u;
                value_set = true;
            } else {
                ev.extra.emplace_back(name, v);
            }
        }
    }

    void assign_by_name(DecodedEvent& ev, const abi::DecodedParams& params, const Roles* roles) {
        for (const auto& [name, v] : params.values) {
            const auto* a = std::get_if<Address>(&v);
            const auto* u = std::get_if<U256>(&v);
            const bool is_from = roles ? name == roles->from : one_of(name, kFromNames);
            const bool is_to = roles ? name == roles->to : one_of(name, kToNames);
            const bool is_value = roles ? name == roles->value : one_of(name, kValueNames);
            if (a && is_from && !ev.from) {
                ev.from = *a;
            } else if (a && is_to && !ev.to) {
                ev.to = *a;
            } else if (u && is_value && !ev.value) {
                ev.value = *u;
            } else {
                ev.extra.emplace_back(name, v);
            }
        }
    }

    DecodedEvent from_log(const ingestion::LogEntry& log, const abi::AbiRegistry& registry) {
        DecodedEvent ev;
        ev.emitter = log.address;
        ev.origin = Origin::log;
        const auto decoded = abi::decode_log(log, registry);
        if (const auto* unknown = std::get_if<abi::UnknownEvent>(&decoded)) {
            ev.name = kUnknownEventName;
            for (std::size_t i = 0; i < unknown->raw.topics.size(); ++i) {
                ev.extra.emplace_back("topic" + std::to_string(i), unknown->raw.topics[i]);
            }
            for (std::size_t off = 0, i = 0; off < unknown->raw.data.size(); off += kWordSize, ++i) {
                ev.extra.emplace_back("data" + std::to_string(i),
                                      Word::from_span(ByteView{unknown->raw.data}.subspan(off, kWordSize)));
            }
            return ev;
        }
        const auto& log_event = std::get<abi::DecodedLog>(decoded);
        ev.name = log_event.name;
        if (ev.name == "Transfer" || ev.name == "Approval") {
            assign_positional(ev, log_event.params);
        } else {
            const auto it = known_roles().find(ev.name);
            assign_by_name(ev, log_event.params, it == known_roles().end() ? nullptr : &it->second);
        }
        return ev;
    }

}  // namespace

EventTrace build_trace(const ingestion::TransactionReceipt& receipt, const abi::AbiRegistry& registry) {
    EventTrace trace;
    trace.tx_hash = receipt.tx_hash;
    trace.status = receipt.status;
    trace.gas_used_total = receipt.gas_used;
    trace.events.reserve(receipt.logs.size() + (receipt.call_records ? receipt.call_records->size() : 0));

    for (const auto& log : receipt.logs) {
        const std::size_t index = trace.events.size();
        try {
            trace.events.push_back(from_log(log, registry));
        } catch (const DecodeError& e) {
            throw DecodeError("event " + std::to_string(index) + " (logIndex " + std::to_string(log.log_index) +
                              "): " + e.what());
        }
        trace.events.back().index = index;
    }
    if (receipt.call_records) {
        for (const auto& call : *receipt.call_records) {
            DecodedEvent ev;
            ev.index = trace.events.size();
            ev.name = call.function_name;
            ev.emitter = call.to;
            ev.from = call.from;
            ev.to = call.to;
            ev.value = call.value;
            ev.gas_used = call.gas_used;
            ev.origin = Origin::call;
            trace.events.push_back(std::move(ev));
        }
    }
    return trace;
}

TraceDigest trace_digest(const EventTrace& trace) {
    TraceDigest d;
    d.event_count = trace.events.size();
    std::set<Address> addresses;
    for (const auto& ev : trace.events) {
        ++d.name_counts[ev.name];
        if (ev.from) addresses.insert(*ev.from);
        if (ev.to) addresses.insert(*ev.to);
        if (!ev.from && !ev.to) addresses.insert(ev.emitter);
        if (ev.value && (!d.max_value || *ev.value > *d.max_value)) d.max_value = ev.value;
        if (ev.gas_used && (!d.max_gas_used || *ev.gas_used > *d.max_gas_used)) d.max_gas_used = ev.gas_used;
    }
    d.distinct_addresses = addresses.size();
    return d;
}

std::string address_column(const DecodedEvent& event) {
    if (event.from && event.to) return event.from->hex() + "→" + event.to->hex();
    return event.emitter.hex();
}

std::string extra_column(const DecodedEvent& event) {
    std::string out;
    for (const auto& [name, v] : event.extra) {
        if (!out.empty()) out += ' ';
        const auto* u = std::get_if<U256>(&v);
        out += name + "=" + (u ? to_scientific(*u) : abi::to_string(v));
    }
    return out;
}

std::string dump_trace(const EventTrace& trace) {
    std::ostringstream out;
    for (const auto& ev : trace.events) {
        out << ev.index << ' ' << ev.name << ' ' << address_column(ev) << ' '
            << (ev.value ? to_scientific(*ev.value) : "-") << ' ' << (ev.gas_used ? std::to_string(*ev.gas_used) : "-");
        if (!ev.extra.empty()) out << ' ' << extra_column(ev);
        out << '\n';
    }
    return out.str();
}

}  // namespace etrace::event
