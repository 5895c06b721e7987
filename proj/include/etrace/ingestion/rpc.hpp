// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include <etrace/ingestion/receipt.hpp>

namespace etrace::ingestion {

inline constexpr std::string_view kRpcUrlEnv = "ETRACE_RPC_URL";

struct RpcOptions {
    std::chrono::seconds timeout{30};
};

//! Fetches a receipt with eth_getTransactionReceipt over HTTP(S) JSON-RPC.
//! Throws TransportError (retriable) on network failure, NotFoundError when the node
//! returns a null result, and ParseError/ValidationError on a malformed result.
TransactionReceipt fetch_receipt(const std::string& endpoint, const TxHash& tx, const RpcOptions& options = {});

//! Validates the textual hash before any network activity.
TransactionReceipt fetch_receipt(const std::string& endpoint, std::string_view tx_hash, const RpcOptions& options = {});

}  // namespace etrace::ingestion
