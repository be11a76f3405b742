// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

// Live HTTP(S) fetching. Kept apart from harvest.hpp so offline users do not
// pull in cpp-httplib.

#include "dnews/harvester/harvest.hpp"

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace dnews {

class HttpFetcher final : public Fetcher {
public:
    FetchResult fetch(const std::string& url, const FetchPolicy& policy) override {
        const auto parts = split_url(url);
        if (!parts || (parts->scheme != "http" && parts->scheme != "https")) {
            return {false, 0, {}, "unsupported url"};
        }
        httplib::Client client(parts->scheme + "://" + parts->host);
        const auto timeout = std::chrono::milliseconds(policy.timeout_ms);
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_follow_location(true);
        const auto start = url.find(parts->path, parts->scheme.size() + 3 + parts->host.size());
        const std::string target = start == std::string::npos ? parts->path : url.substr(start);
        auto res = client.Get(target, httplib::Headers{{"User-Agent", policy.user_agent}});
        if (!res) return {false, 0, {}, httplib::to_string(res.error())};
        if (res->status < 200 || res->status >= 300) return {false, res->status, {}, "HTTP " + std::to_string(res->status)};
        return {true, res->status, std::move(res->body), {}};
    }
};

}  // namespace dnews
