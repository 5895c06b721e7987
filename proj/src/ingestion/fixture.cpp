// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/ingestion/fixture.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <etrace/common/errors.hpp>

namespace etrace::ingestion {

using nlohmann::json;

void validate_log(const LogEntry& log, const std::string& where) {
    if (log.topics.size() > kMaxTopics) {
        throw ValidationError(where + ".topics: " + std::to_string(log.topics.size()) + " topics, at most 4 allowed");
    }
    if (log.data.size() % kWordSize != 0) {
        throw ValidationError(where + ".data: length " + std::to_string(log.data.size()) +
                              " bytes is not a multiple of 32");
    }
}

namespace {

    const json& require(const json& obj, std::string_view key, const std::string& path) {
        auto it = obj.find(key);
        if (it == obj.end()) throw ParseError(path + std::string{key} + ": missing required field");
        return *it;
    }

    std::string as_string(const json& v, const std::string& field) {
        if (!v.is_string()) throw ParseError(field + ": expected a string");
        return v.get<std::string>();
    }

    // Wraps ValidationError with the field name so every message points at the input.
    template <class F>
    auto with_field(const std::string& field, F&& f) {
        try {
            return f();
        } catch (const ValidationError& e) {
            throw ValidationError(field + ": " + e.what());
        }
    }

    std::uint64_t as_quantity(const json& v, const std::string& field) {
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer()) {
            const auto i = v.get<std::int64_t>();
            if (i < 0) throw ParseError(field + ": negative quantity");
            return static_cast<std::uint64_t>(i);
        }
        if (v.is_string()) {
            const U256 q = with_field(field, [&] { return parse_u256(v.get<std::string>()); });
            if (q > std::numeric_limits<std::uint64_t>::max())
                throw ValidationError(field + ": quantity exceeds 64 bits");
            return q.convert_to<std::uint64_t>();
        }
        throw ParseError(field + ": expected an integer or hex quantity");
    }

    TxStatus as_status(const json& v, const std::string& field) {
        if (v.is_boolean()) return v.get<bool>() ? TxStatus::success : TxStatus::failure;
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            if (s == "success") return TxStatus::success;
            if (s == "failure") return TxStatus::failure;
        }
        if (v.is_number() || v.is_string()) {
            switch (as_quantity(v, field)) {
                case 0:
                    return TxStatus::failure;
                case 1:
                    return TxStatus::success;
                default:
                    break;
            }
        }
        throw ParseError(field + ": expected 0x1/0x0, 1/0, true/false or success/failure");
    }

    template <class Fixed>
    Fixed as_fixed(const json& v, const std::string& field) {
        const auto text = as_string(v, field);
        return with_field(field, [&] { return Fixed::from_hex(text); });
    }

    LogEntry parse_log(const json& doc, const std::string& path) {
        if (!doc.is_object()) throw ParseError(path + ": expected an object");
        LogEntry log;
        log.address = as_fixed<Address>(require(doc, "address", path + "."), path + ".address");

        const json& topics = require(doc, "topics", path + ".");
        if (!topics.is_array()) throw ParseError(path + ".topics: expected an array");
        for (std::size_t i = 0; i < topics.size(); ++i) {
            log.topics.push_back(as_fixed<Word>(topics[i], path + ".topics[" + std::to_string(i) + "]"));
        }

        const auto data_field = path + ".data";
        const auto data_text = as_string(require(doc, "data", path + "."), data_field);
        log.data = with_field(data_field, [&] { return from_hex(data_text); });
        log.log_index = as_quantity(require(doc, "logIndex", path + "."), path + ".logIndex");
        validate_log(log, path);
        return log;
    }

    CallRecord parse_call(const json& doc, const std::string& path) {
        if (!doc.is_object()) throw ParseError(path + ": expected an object");
        CallRecord call;
        call.function_name = as_string(require(doc, "functionName", path + "."), path + ".functionName");
        call.from = as_fixed<Address>(require(doc, "from", path + "."), path + ".from");
        call.to = as_fixed<Address>(require(doc, "to", path + "."), path + ".to");
        const auto value_text = as_string(require(doc, "value", path + "."), path + ".value");
        call.value = with_field(path + ".value", [&] { return parse_u256(value_text); });
        call.gas_used = as_quantity(require(doc, "gasUsed", path + "."), path + ".gasUsed");
        return call;
    }

}  // namespace

TransactionReceipt receipt_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("receipt: expected an object");
    TransactionReceipt r;

    // Fixtures use txHash; node responses use transactionHash.
    const auto hash_key = doc.contains("txHash") ? "txHash" : "transactionHash";
    r.tx_hash = as_fixed<TxHash>(require(doc, hash_key, ""), hash_key);
    r.block_number = as_quantity(require(doc, "blockNumber", ""), "blockNumber");
    // Pre-Byzantium receipts carry a state root instead of a status; treat them as successful.
    if (auto it = doc.find("status"); it != doc.end() && !it->is_null()) r.status = as_status(*it, "status");
    r.gas_used = as_quantity(require(doc, "gasUsed", ""), "gasUsed");

    const json& logs = require(doc, "logs", "");
    if (!logs.is_null()) {
        if (!logs.is_array()) throw ParseError("logs: expected an array");
        r.logs.reserve(logs.size());
        for (std::size_t i = 0; i < logs.size(); ++i) {
            r.logs.push_back(parse_log(logs[i], "logs[" + std::to_string(i) + "]"));
        }
    }
    std::stable_sort(r.logs.begin(), r.logs.end(),
                     [](const LogEntry& a, const LogEntry& b) { return a.log_index < b.log_index; });
    for (std::size_t i = 1; i < r.logs.size(); ++i) {
        if (r.logs[i].log_index == r.logs[i - 1].log_index) {
            throw ValidationError("logs: duplicate logIndex " + std::to_string(r.logs[i].log_index));
        }
    }

    if (auto it = doc.find("callRecords"); it != doc.end() && !it->is_null()) {
        if (!it->is_array()) throw ParseError("callRecords: expected an array");
        std::vector<CallRecord> calls;
        for (std::size_t i = 0; i < it->size(); ++i) {
            calls.push_back(parse_call((*it)[i], "callRecords[" + std::to_string(i) + "]"));
        }
        r.call_records = std::move(calls);
    }
    return r;
}

TransactionReceipt parse_fixture(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string{"fixture is not valid JSON: "} + e.what());
    }
    return receipt_from_json(doc);
}

TransactionReceipt load_fixture(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw ParseError("cannot open fixture " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_fixture(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string receipt_to_fixture(const TransactionReceipt& receipt) {
    json doc = json::object();
    doc["txHash"] = receipt.tx_hash.hex();
    doc["blockNumber"] = receipt.block_number;
    doc["status"] = receipt.status == TxStatus::success ? "0x1" : "0x0";
    doc["gasUsed"] = receipt.gas_used;

    json logs = json::array();
    for (const auto& log : receipt.logs) {
        json topics = json::array();
        for (const auto& t : log.topics) topics.push_back(t.hex());
        logs.push_back({{"address", log.address.hex()},
                        {"topics", std::move(topics)},
                        {"data", "0x" + to_hex(log.data)},
                        {"logIndex", log.log_index}});
    }
    doc["logs"] = std::move(logs);

    if (receipt.call_records) {
        json calls = json::array();
        for (const auto& c : *receipt.call_records) {
            calls.push_back({{"functionName", c.function_name},
                             {"from", c.from.hex()},
                             {"to", c.to.hex()},
                             {"value", to_decimal(c.value)},
                             {"gasUsed", c.gas_used}});
        }
        doc["callRecords"] = std::move(calls);
    }
    return doc.dump(2) + "\n";
}

}  // namespace etrace::ingestion
