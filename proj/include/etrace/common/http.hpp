// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace etrace::http {

struct Response {
    int status{0};
    std::string body;
};

using Headers = std::vector<std::pair<std::string, std::string>>;

//! POSTs a JSON body to an absolute http:// or https:// URL.
//! Connection-level failures throw TransportError (retriable) mentioning the URL.
Response post_json(const std::string& url, const std::string& body, const Headers& headers,
                   std::chrono::seconds timeout);

}  // namespace etrace::http
