// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/ingestion/rpc.hpp>

#include <json.hpp>

#include <etrace/common/errors.hpp>
#include <etrace/common/http.hpp>
#include <etrace/ingestion/fixture.hpp>

namespace etrace::ingestion {

using nlohmann::json;

TransactionReceipt fetch_receipt(const std::string& endpoint, const TxHash& tx, const RpcOptions& options) {
    const json request{
        {"jsonrpc", "2.0"},
        {"id", 1},
        {"method", "eth_getTransactionReceipt"},
        {"params", json::array({tx.hex()})},
    };
    const auto response = http::post_json(endpoint, request.dump(), {}, options.timeout);
    if (response.status >= 500 || response.status == 429) {
        throw TransportError("node at " + endpoint + " returned HTTP " + std::to_string(response.status), true);
    }
    if (response.status != 200) {
        throw TransportError("node at " + endpoint + " returned HTTP " + std::to_string(response.status), false);
    }

    json reply;
    try {
        reply = json::parse(response.body);
    } catch (const json::parse_error& e) {
        throw ParseError("node at " + endpoint + " returned invalid JSON: " + e.what());
    }
    if (!reply.is_object()) throw ParseError("node at " + endpoint + " returned a non-object reply");
    if (auto err = reply.find("error"); err != reply.end() && !err->is_null()) {
        throw TransportError("node at " + endpoint + " returned error: " + err->dump(), false);
    }
    auto result = reply.find("result");
    if (result == reply.end() || result->is_null()) {
        throw NotFoundError("transaction " + tx.hex() + " not found at " + endpoint);
    }
    return receipt_from_json(*result);
}

TransactionReceipt fetch_receipt(const std::string& endpoint, std::string_view tx_hash, const RpcOptions& options) {
    TxHash tx;
    try {
        tx = TxHash::from_hex(tx_hash);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string{"transaction hash: "} + e.what());
    }
    return fetch_receipt(endpoint, tx, options);
}

}  // namespace etrace::ingestion
