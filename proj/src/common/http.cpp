// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/common/http.hpp>

#include <httplib.h>

#include <etrace/common/errors.hpp>

namespace etrace::http {

namespace {

    struct SplitUrl {
        std::string base;  // scheme://host[:port]
        std::string path;
    };

    SplitUrl split_url(const std::string& url) {
        const auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos) {
            throw ConfigError("endpoint must be an absolute http(s) URL: " + url);
        }
        const std::string scheme = url.substr(0, scheme_end);
        if (scheme != "http" && scheme != "https") {
            throw ConfigError("unsupported URL scheme '" + scheme + "' in " + url);
        }
        const auto path_start = url.find('/', scheme_end + 3);
        if (path_start == std::string::npos) return {url, "/"};
        return {url.substr(0, path_start), url.substr(path_start)};
    }

}  // namespace

Response post_json(const std::string& url, const std::string& body, const Headers& headers,
                   std::chrono::seconds timeout) {
    const auto [base, path] = split_url(url);
    httplib::Client client{base};
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    httplib::Headers hdrs;
    for (const auto& [k, v] : headers) hdrs.emplace(k, v);

    auto result = client.Post(path, hdrs, body, "application/json");
    if (!result) {
        throw TransportError("request to " + url + " failed: " + httplib::to_string(result.error()), true);
    }
    return {result->status, result->body};
}

}  // namespace etrace::http
