// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/corpus.hpp"
#include "dnews/harvester/extract.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace dnews {

struct FetchPolicy {
    std::int64_t delay_ms = 1000;  // minimum spacing between requests to one domain
    int max_retries = 2;
    std::int64_t timeout_ms = 10000;
    std::string user_agent = "dnews-harvester/0.1";
};

struct FetchResult {
    bool ok = false;
    int status = 0;
    std::string body;
    std::string error;
};

class Fetcher {
public:
    virtual ~Fetcher() = default;
    /// Must be safe to call concurrently for different domains.
    virtual FetchResult fetch(const std::string& url, const FetchPolicy& policy) = 0;
};

/// Millisecond clock used for request pacing.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::int64_t now_ms() = 0;
    virtual void sleep_until_ms(std::int64_t t) = 0;
};

class SystemClock final : public Clock {
public:
    std::int64_t now_ms() override {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now().time_since_epoch())
            .count();
    }
    void sleep_until_ms(std::int64_t t) override {
        const auto now = now_ms();
        if (t > now) std::this_thread::sleep_for(std::chrono::milliseconds(t - now));
    }
};

/// Virtual time: sleeping jumps the clock forward, never backward.
class FakeClock final : public Clock {
public:
    explicit FakeClock(std::int64_t start_ms = 0) : now_(start_ms) {}
    std::int64_t now_ms() override {
        std::lock_guard lock(mutex_);
        return now_;
    }
    void sleep_until_ms(std::int64_t t) override {
        std::lock_guard lock(mutex_);
        now_ = std::max(now_, t);
    }
    void advance(std::int64_t ms) {
        std::lock_guard lock(mutex_);
        now_ += ms;
    }

private:
    std::mutex mutex_;
    std::int64_t now_;
};

struct UrlParts {
    std::string scheme;
    std::string host;  // includes ":port" when present
    std::string path;  // starts with '/', query and fragment removed
};

inline std::optional<UrlParts> split_url(std::string_view url) {
    const auto sep = url.find("://");
    if (sep == std::string_view::npos || sep == 0) return std::nullopt;
    UrlParts p;
    p.scheme = std::string(url.substr(0, sep));
    const auto rest = url.substr(sep + 3);
    const auto slash = rest.find_first_of("/?#");
    p.host = std::string(rest.substr(0, slash));
    if (p.host.empty()) return std::nullopt;
    if (slash == std::string_view::npos) {
        p.path = "/";
    } else {
        auto path = rest.substr(slash);
        path = path.substr(0, path.find_first_of("?#"));
        p.path = path.empty() ? "/" : std::string(path);
    }
    return p;
}

/// Serves pages from a mirror directory laid out as DIR/host/path.
/// "/a/b" maps to DIR/host/a/b.html (unless b has an extension) and "/x/" to
/// DIR/host/x/index.html.
class OfflineFetcher final : public Fetcher {
public:
    explicit OfflineFetcher(std::filesystem::path root) : root_(std::move(root)) {}

    std::filesystem::path path_for(const std::string& url) const {
        const auto parts = split_url(url);
        if (!parts) return {};
        std::string rel = parts->path.substr(1);
        if (rel.empty() || rel.back() == '/') {
            rel += "index.html";
        } else if (std::filesystem::path(rel).extension().empty()) {
            rel += ".html";
        }
        return root_ / parts->host / rel;
    }

    FetchResult fetch(const std::string& url, const FetchPolicy&) override {
        const auto path = path_for(url);
        if (path.empty()) return {false, 0, {}, "malformed url"};
        std::ifstream in(path, std::ios::binary);
        if (!in) return {false, 404, {}, "no fixture at " + path.string()};
        std::ostringstream ss;
        ss << in.rdbuf();
        return {true, 200, std::move(ss).str(), {}};
    }

private:
    std::filesystem::path root_;
};

struct RequestRecord {
    std::string domain;
    std::string url;
    std::int64_t time_ms = 0;
};

struct HarvestFailure {
    std::string url;
    std::string reason;
};

struct HarvestSummary {
    std::size_t fetched = 0;    // pages retrieved successfully
    std::size_t extracted = 0;  // new articles appended to the sink
    std::size_t failed = 0;
    std::size_t skipped = 0;  // already present in the sink
    std::vector<HarvestFailure> failures;
    std::vector<RequestRecord> requests;  // every attempt, in issue order per domain
};

/// Newline-delimited URL list; blank lines and '#' comments ignored.
inline std::vector<std::string> load_seed_urls(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open seed list '" + path.string() + "'");
    std::vector<std::string> urls;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        urls.push_back(line.substr(b, e - b + 1));
    }
    return urls;
}

/// Fetches each distinct seed, extracts it with the first matching rule and
/// appends new articles to `sink` (JSONL) in seed order. Requests to one
/// domain run sequentially, spaced by policy.delay_ms; domains run in
/// parallel. URLs whose id is already in the sink are skipped. Failures are
/// counted, never thrown.
inline HarvestSummary harvest(const std::vector<std::string>& seed_urls, const std::vector<ExtractionRule>& rules,
                              const FetchPolicy& policy, const std::filesystem::path& sink, Fetcher& fetcher,
                              Clock& clock) {
    HarvestSummary summary;

    std::set<std::string> existing;
    if (std::filesystem::exists(sink)) {
        for (const auto& a : read_articles(sink, CorpusFormat::Jsonl, false)) existing.insert(a.id);
    }

    std::vector<std::string> urls;
    {
        std::set<std::string> seen;
        for (const auto& u : seed_urls) {
            if (seen.insert(u).second) urls.push_back(u);
        }
    }

    struct Job {
        const ExtractionRule* rule = nullptr;
        std::optional<Article> article;
        std::optional<std::string> error;
        bool fetched = false;
    };
    std::vector<Job> jobs(urls.size());
    std::map<std::string, std::vector<std::size_t>> by_domain;
    for (std::size_t i = 0; i < urls.size(); ++i) {
        const auto parts = split_url(urls[i]);
        jobs[i].rule = find_rule(rules, urls[i]);
        if (!parts) {
            jobs[i].error = "malformed url";
        } else if (!jobs[i].rule) {
            jobs[i].error = "no extraction rule matches";
        } else if (existing.contains(article_id_for_url(urls[i]))) {
            continue;
        } else {
            by_domain[parts->host].push_back(i);
        }
    }

    std::mutex log_mutex;
    auto run_domain = [&](const std::string& domain, const std::vector<std::size_t>& indices) {
        std::optional<std::int64_t> last;
        for (auto i : indices) {
            FetchResult res;
            for (int attempt = 0; attempt <= policy.max_retries; ++attempt) {
                if (last) clock.sleep_until_ms(*last + policy.delay_ms);
                last = clock.now_ms();
                {
                    std::lock_guard lock(log_mutex);
                    summary.requests.push_back({domain, urls[i], *last});
                }
                res = fetcher.fetch(urls[i], policy);
                if (res.ok) break;
            }
            if (!res.ok) {
                jobs[i].error = "fetch failed: " + (res.error.empty() ? "status " + std::to_string(res.status) : res.error);
                continue;
            }
            jobs[i].fetched = true;
            try {
                jobs[i].article = extract(res.body, *jobs[i].rule, urls[i]);
            } catch (const Error& e) {
                jobs[i].error = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> workers;
        for (const auto& [domain, indices] : by_domain) workers.emplace_back(run_domain, domain, indices);
    }

    std::ofstream out(sink, std::ios::binary | std::ios::app);
    if (!out) throw ConfigError("cannot open sink '" + sink.string() + "'");
    for (std::size_t i = 0; i < urls.size(); ++i) {
        auto& job = jobs[i];
        if (job.fetched) ++summary.fetched;
        if (job.article) {
            out << article_to_json(*job.article).dump() << '\n';
            ++summary.extracted;
        } else if (job.error) {
            ++summary.failed;
            summary.failures.push_back({urls[i], *job.error});
        } else {
            ++summary.skipped;
        }
    }
    return summary;
}

}  // namespace dnews
