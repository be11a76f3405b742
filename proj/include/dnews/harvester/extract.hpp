// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/corpus.hpp"
#include "dnews/error.hpp"
#include "dnews/harvester/html.hpp"
#include "dnews/harvester/selector.hpp"
#include "dnews/hash.hpp"

#include <fnmatch.h>

#include <nlohmann/json.hpp>

#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <locale>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace dnews {

/// Per-publisher scraping rule. Selector keys: title and body (required),
/// date, author, location (optional).
struct ExtractionRule {
    std::string publisher;
    std::string url_pattern;  // shell glob, '*' also matches '/'
    std::map<std::string, std::string> selectors;
    Label default_label = Label::Legitimate;
    std::string date_format = "%Y-%m-%d";  // strptime-style
    std::string disaster;                  // tag copied into every article

    bool matches(const std::string& url) const { return fnmatch(url_pattern.c_str(), url.c_str(), 0) == 0; }
};

inline ExtractionRule rule_from_json(const nlohmann::json& j) {
    ExtractionRule r;
    try {
        r.publisher = j.at("publisher").get<std::string>();
        r.url_pattern = j.at("url_pattern").get<std::string>();
        r.selectors = j.at("selectors").get<std::map<std::string, std::string>>();
        const auto label = parse_label(j.at("default_label").get<std::string>());
        if (!label) throw ConfigError("rule '" + r.publisher + "': unknown default_label");
        r.default_label = *label;
        r.date_format = j.value("date_format", r.date_format);
        r.disaster = j.value("disaster", std::string{});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid extraction rule: ") + e.what());
    }
    for (const char* required : {"title", "body"}) {
        if (!r.selectors.contains(required)) {
            throw ConfigError("rule '" + r.publisher + "' lacks a '" + required + "' selector");
        }
    }
    for (const auto& [field, sel] : r.selectors) {
        if (field != "title" && field != "body" && field != "date" && field != "author" && field != "location") {
            throw ConfigError("rule '" + r.publisher + "': unknown selector field '" + field + "'");
        }
        html::Selector::parse(sel);  // reject unsupported syntax up front
    }
    return r;
}

inline nlohmann::json to_json(const ExtractionRule& r) {
    return {{"publisher", r.publisher},     {"url_pattern", r.url_pattern},
            {"selectors", r.selectors},     {"default_label", std::string(to_string(r.default_label))},
            {"date_format", r.date_format}, {"disaster", r.disaster}};
}

/// Rules file: a JSON array of rule objects.
inline std::vector<ExtractionRule> load_rules(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open rules file '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("rules file '" + path.string() + "': " + e.what());
    }
    if (!j.is_array()) throw ConfigError("rules file must hold a JSON array");
    std::vector<ExtractionRule> rules;
    for (const auto& r : j) rules.push_back(rule_from_json(r));
    return rules;
}

inline const ExtractionRule* find_rule(const std::vector<ExtractionRule>& rules, const std::string& url) {
    for (const auto& r : rules) {
        if (r.matches(url)) return &r;
    }
    return nullptr;
}

/// Stable article id: first 16 hex digits of sha256(url).
inline std::string article_id_for_url(std::string_view url) { return sha256_hex(url).substr(0, 16); }

/// Parses `text` with `format` and renders YYYY-MM-DD; empty when unparseable.
inline std::string parse_date_iso(const std::string& text, const std::string& format) {
    std::tm tm{};
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    in >> std::get_time(&tm, format.c_str());
    if (in.fail()) return {};
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday);
    return buf;
}

/// Fills an Article from `html` using `rule`. Title, date, author and
/// location come from the first match; body joins every match. Optional
/// fields without a selector or match stay empty.
inline Article extract(std::string_view html_text, const ExtractionRule& rule, const std::string& url) {
    const auto doc = html::parse(html_text);
    auto first = [&](const std::string& field) -> std::string {
        const auto it = rule.selectors.find(field);
        if (it == rule.selectors.end()) return {};
        const auto hits = html::select(doc, it->second);
        for (auto id : hits) {
            auto t = html::text_content(doc, id);
            if (!t.empty()) return t;
        }
        return {};
    };

    Article a;
    a.url = url;
    a.id = article_id_for_url(url);
    a.publisher = rule.publisher;
    a.disaster = rule.disaster;
    a.label = rule.default_label;
    a.title = first("title");
    if (a.title.empty()) throw ExtractionError("title", url);
    for (auto id : html::select(doc, rule.selectors.at("body"))) {
        const auto t = html::text_content(doc, id);
        if (t.empty()) continue;
        if (!a.body.empty()) a.body.push_back(' ');
        a.body += t;
    }
    if (a.body.empty()) throw ExtractionError("body", url);
    if (const auto raw = first("date"); !raw.empty()) a.date = parse_date_iso(raw, rule.date_format);
    a.author = first("author");
    a.location = first("location");
    return a;
}

}  // namespace dnews
