// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include <etrace/report/verdict.hpp>

namespace etrace::report {

enum class Format { text, machine };

//! Text: Summary, Pattern Analysis and Further Recommendation sections followed by an
//! evidence table. Machine: the to_json document indented by two spaces.
std::string render(const Verdict& verdict, Format format);

//! Machine report document. Keys are sorted, so dumps are byte-reproducible.
nlohmann::json to_json(const Verdict& verdict);

//! Reads a machine report back. Throws ParseError on a document that does not match the schema.
Verdict parse_machine_report(std::string_view document);
Verdict from_json(const nlohmann::json& doc);

}  // namespace etrace::report
