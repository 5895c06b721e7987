// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include <etrace/ingestion/receipt.hpp>

namespace etrace::ingestion {

//! Reads a fixture file. Throws ParseError for malformed documents (the message names
//! the offending field) and ValidationError for wrong-length hashes, addresses or data.
TransactionReceipt load_fixture(const std::filesystem::path& path);

TransactionReceipt parse_fixture(std::string_view text);

//! Builds a receipt from a fixture object or an eth_getTransactionReceipt result.
//! Quantities may be JSON integers or 0x-prefixed hex strings; unknown fields are ignored.
//! Logs are returned sorted by log index; a repeated index is a ValidationError.
TransactionReceipt receipt_from_json(const nlohmann::json& doc);

//! Canonical fixture document: two-space indented JSON with a trailing newline.
std::string receipt_to_fixture(const TransactionReceipt& receipt);

}  // namespace etrace::ingestion
