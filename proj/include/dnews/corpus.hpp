// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/csv.hpp"
#include "dnews/error.hpp"
#include "dnews/hash.hpp"
#include "dnews/label.hpp"
#include "dnews/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace dnews {

/// One harvested news record.
struct Article {
    std::string id;
    std::string title;
    std::string body;
    std::string url;
    std::string date;  // ISO-8601 (YYYY-MM-DD) or empty
    std::string location;
    std::string publisher;
    std::string disaster;
    std::string author;
    std::optional<Label> label;  // always set inside a Corpus

    bool operator==(const Article&) const = default;
};

/// Column order of both JSONL and CSV serializations.
inline constexpr std::array<std::string_view, 10> kArticleFields{
    "id", "title", "body", "url", "date", "location", "publisher", "disaster", "author", "label"};

namespace detail {

inline bool is_blank(std::string_view s) {
    return std::ranges::all_of(s, [](unsigned char c) { return std::isspace(c) != 0; });
}

inline std::string* article_field(Article& a, std::string_view name) {
    if (name == "id") return &a.id;
    if (name == "title") return &a.title;
    if (name == "body") return &a.body;
    if (name == "url") return &a.url;
    if (name == "date") return &a.date;
    if (name == "location") return &a.location;
    if (name == "publisher") return &a.publisher;
    if (name == "disaster") return &a.disaster;
    if (name == "author") return &a.author;
    return nullptr;
}

inline void validate_article(const Article& a, std::size_t line, bool require_label) {
    if (is_blank(a.id)) throw CorpusError("field 'id' is empty", line);
    if (is_blank(a.title) && is_blank(a.body)) {
        throw CorpusError("title and body are both empty", line);
    }
    if (require_label && !a.label) throw CorpusError("missing label", line);
}

}  // namespace detail

/// Builds an Article from one JSON object. Unknown keys are ignored; the
/// label is optional unless `require_label`.
inline Article article_from_json(const nlohmann::json& j, std::size_t line = 0,
                                 bool require_label = true) {
    if (!j.is_object()) throw CorpusError("record is not a JSON object", line);
    Article a;
    for (std::string_view name : kArticleFields) {
        const std::string key(name);
        const auto it = j.find(key);
        if (name == "label") {
            if (it == j.end() || it->is_null()) {
                if (require_label) throw CorpusError("missing label", line);
                continue;
            }
            if (!it->is_string()) throw CorpusError("field 'label' must be a string", line);
            const auto& raw = it->get_ref<const std::string&>();
            if (detail::is_blank(raw)) throw CorpusError("missing label", line);
            a.label = parse_label(raw);
            if (!a.label) throw CorpusError("field 'label' has unknown value '" + raw + "'", line);
            continue;
        }
        if (it == j.end()) throw CorpusError("missing field '" + key + "'", line);
        if (!it->is_string()) throw CorpusError("field '" + key + "' must be a string", line);
        *detail::article_field(a, name) = it->get<std::string>();
    }
    detail::validate_article(a, line, require_label);
    return a;
}

/// Keys in canonical column order; label lowercase.
inline nlohmann::ordered_json article_to_json(const Article& a) {
    nlohmann::ordered_json j;
    j["id"] = a.id;
    j["title"] = a.title;
    j["body"] = a.body;
    j["url"] = a.url;
    j["date"] = a.date;
    j["location"] = a.location;
    j["publisher"] = a.publisher;
    j["disaster"] = a.disaster;
    j["author"] = a.author;
    if (a.label) j["label"] = std::string(to_string(*a.label));
    return j;
}

using ClassCounts = std::array<std::size_t, 2>;

/// Labelled articles in load order. Immutable once built.
class Corpus {
public:
    Corpus() = default;

    /// Validates id uniqueness and label presence.
    static Corpus from_articles(std::vector<Article> articles) {
        Corpus c;
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < articles.size(); ++i) {
            const Article& a = articles[i];
            detail::validate_article(a, 0, true);
            if (!seen.insert(a.id).second) throw CorpusError("duplicate id '" + a.id + "'");
            ++c.counts_[index_of(*a.label)];
        }
        c.articles_ = std::move(articles);
        return c;
    }

    const std::vector<Article>& articles() const noexcept { return articles_; }
    std::size_t size() const noexcept { return articles_.size(); }
    bool empty() const noexcept { return articles_.empty(); }
    const ClassCounts& class_counts() const noexcept { return counts_; }
    std::size_t class_count(Label l) const noexcept { return counts_[index_of(l)]; }

    bool operator==(const Corpus&) const = default;

private:
    std::vector<Article> articles_;
    ClassCounts counts_{};
};

enum class CorpusFormat { Jsonl, Csv };

inline CorpusFormat format_for_path(const std::filesystem::path& p) {
    return p.extension() == ".csv" ? CorpusFormat::Csv : CorpusFormat::Jsonl;
}

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

inline std::vector<Article> parse_jsonl(std::string_view text, bool require_label) {
    std::vector<Article> out;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (is_blank(line)) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw CorpusError(std::string("malformed JSON: ") + e.what(), line_no);
        }
        Article a = article_from_json(j, line_no, require_label);
        if (!seen.insert(a.id).second) throw CorpusError("duplicate id '" + a.id + "'", line_no);
        out.push_back(std::move(a));
    }
    return out;
}

inline std::vector<Article> parse_csv(std::string_view text, bool require_label) {
    const auto records = csv::parse(text);
    if (records.empty()) return {};
    const auto& header = records.front().fields;
    std::array<std::optional<std::size_t>, kArticleFields.size()> column;
    for (std::size_t f = 0; f < kArticleFields.size(); ++f) {
        const auto it = std::ranges::find(header, kArticleFields[f]);
        if (it != header.end()) column[f] = static_cast<std::size_t>(it - header.begin());
    }
    for (std::size_t f = 0; f + 1 < kArticleFields.size(); ++f) {
        if (!column[f]) {
            throw CorpusError("header is missing column '" + std::string(kArticleFields[f]) + "'", 1);
        }
    }
    if (require_label && !column.back()) throw CorpusError("header is missing column 'label'", 1);

    std::vector<Article> out;
    std::unordered_set<std::string> seen;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size()) {
            throw CorpusError("expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(rec.fields.size()),
                              rec.line);
        }
        nlohmann::json j = nlohmann::json::object();
        for (std::size_t f = 0; f < kArticleFields.size(); ++f) {
            if (column[f]) j[std::string(kArticleFields[f])] = rec.fields[*column[f]];
        }
        Article a = article_from_json(j, rec.line, require_label);
        if (!seen.insert(a.id).second) throw CorpusError("duplicate id '" + a.id + "'", rec.line);
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace detail

/// Reads articles without building a Corpus; used for unlabelled inputs.
inline std::vector<Article> read_articles(const std::filesystem::path& path, CorpusFormat format,
                                          bool require_label) {
    const std::string text = detail::read_file(path);
    return format == CorpusFormat::Csv ? detail::parse_csv(text, require_label)
                                       : detail::parse_jsonl(text, require_label);
}

inline Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    auto articles = read_articles(path, format, true);
    if (articles.empty()) throw CorpusError("empty corpus");
    return Corpus::from_articles(std::move(articles));
}

inline Corpus load_corpus(const std::filesystem::path& path) {
    return load_corpus(path, format_for_path(path));
}

inline std::string format_jsonl(const std::vector<Article>& articles) {
    std::string out;
    for (const auto& a : articles) {
        out += article_to_json(a).dump();
        out.push_back('\n');
    }
    return out;
}

inline std::string format_csv(const std::vector<Article>& articles) {
    std::vector<std::string> header(kArticleFields.begin(), kArticleFields.end());
    std::string out = csv::format_row(header);
    for (const auto& a : articles) {
        out += csv::format_row({a.id, a.title, a.body, a.url, a.date, a.location, a.publisher,
                                a.disaster, a.author,
                                a.label ? std::string(to_string(*a.label)) : std::string()});
    }
    return out;
}

inline void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                        CorpusFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CorpusError("cannot write '" + path.string() + "'");
    out << (format == CorpusFormat::Csv ? format_csv(corpus.articles())
                                        : format_jsonl(corpus.articles()));
}

inline void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    save_corpus(corpus, path, format_for_path(path));
}

/// Exact fraction in (0, 1), parsed from "0.3" or "3/10".
struct Ratio {
    std::uint64_t num = 3;
    std::uint64_t den = 10;

    static Ratio parse(std::string_view s) {
        auto fail = [&] { return ConfigError("invalid ratio '" + std::string(s) + "'"); };
        Ratio r;
        if (const auto slash = s.find('/'); slash != std::string_view::npos) {
            const auto a = s.substr(0, slash), b = s.substr(slash + 1);
            if (std::from_chars(a.data(), a.data() + a.size(), r.num).ec != std::errc{} ||
                std::from_chars(b.data(), b.data() + b.size(), r.den).ec != std::errc{}) {
                throw fail();
            }
        } else {
            const auto dot = s.find('.');
            const auto whole = s.substr(0, dot);
            const auto frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
            if (frac.size() > 18 || (whole.empty() && frac.empty())) throw fail();
            std::string digits = std::string(whole) + std::string(frac);
            if (!std::ranges::all_of(digits, [](unsigned char c) { return std::isdigit(c); })) {
                throw fail();
            }
            r.num = std::stoull(digits);
            r.den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) r.den *= 10;
        }
        if (r.den == 0 || r.num == 0 || r.num >= r.den) {
            throw ConfigError("ratio must lie strictly between 0 and 1, got '" + std::string(s) + "'");
        }
        const auto g = std::gcd(r.num, r.den);
        r.num /= g;
        r.den /= g;
        return r;
    }

    /// floor(ratio * n), exact.
    std::uint64_t floor_times(std::uint64_t n) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(n) * num / den);
    }

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    bool operator==(const Ratio&) const = default;
};

struct SplitCorpus {
    Corpus train;
    Corpus test;
    std::uint64_t seed = 0;
    Ratio train_ratio;
};

/// Per-class shuffle keyed by (seed, label), then the first floor(ratio * n_c)
/// articles of each class go to train and the rest to test. Both halves keep
/// the source load order.
inline SplitCorpus stratified_split(const Corpus& corpus, Ratio train_ratio, std::uint64_t seed) {
    const auto& articles = corpus.articles();
    std::vector<bool> in_train(articles.size(), false);
    for (Label label : kLabels) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < articles.size(); ++i) {
            if (articles[i].label == label) members.push_back(i);
        }
        const std::size_t n = members.size();
        const std::size_t k = train_ratio.floor_times(n);
        if (n == 0) throw CorpusError("class '" + std::string(to_string(label)) + "' has no articles");
        if (k == 0 || k == n) {
            throw CorpusError("class '" + std::string(to_string(label)) + "' would receive " +
                              (k == 0 ? "0 train" : "0 test") + " articles (n=" +
                              std::to_string(n) + ", ratio=" + train_ratio.str() + ")");
        }
        Rng rng(derive_seed(seed, "split/" + std::string(to_string(label))));
        shuffle(std::span<std::size_t>(members), rng);
        for (std::size_t i = 0; i < k; ++i) in_train[members[i]] = true;
    }
    std::vector<Article> train, test;
    for (std::size_t i = 0; i < articles.size(); ++i) {
        (in_train[i] ? train : test).push_back(articles[i]);
    }
    return SplitCorpus{Corpus::from_articles(std::move(train)), Corpus::from_articles(std::move(test)),
                       seed, train_ratio};
}

}  // namespace dnews
