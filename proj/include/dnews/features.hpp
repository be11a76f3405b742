// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/error.hpp"
#include "dnews/hash.hpp"
#include "dnews/label.hpp"
#include "dnews/textprep.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dnews {

/// Variant tag recorded in bundles and reports.
inline constexpr const char* kIdfVariant = "tf=raw-count;idf=ln((1+N)/(1+df))+1;norm=l2";

enum class FeatureKind { Bow, Tfidf };

inline constexpr std::string_view to_string(FeatureKind k) noexcept {
    return k == FeatureKind::Bow ? "bow" : "tfidf";
}

inline std::optional<FeatureKind> parse_feature_kind(std::string_view s) {
    if (s == "bow") return FeatureKind::Bow;
    if (s == "tfidf") return FeatureKind::Tfidf;
    return std::nullopt;
}

/// Sparse row with strictly increasing indices.
struct SparseVector {
    struct Entry {
        std::uint32_t index;
        double value;
        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> entries;

    bool empty() const noexcept { return entries.empty(); }
    std::size_t nnz() const noexcept { return entries.size(); }

    /// Value at `index`, zero when absent.
    double at(std::uint32_t index) const noexcept {
        const auto it = std::ranges::lower_bound(entries, index, {}, &Entry::index);
        return it != entries.end() && it->index == index ? it->value : 0.0;
    }

    double dot(std::span<const double> dense) const noexcept {
        double s = 0.0;
        for (const auto& e : entries) s += e.value * dense[e.index];
        return s;
    }

    double squared_norm() const noexcept {
        double s = 0.0;
        for (const auto& e : entries) s += e.value * e.value;
        return s;
    }

    /// One past the largest index, 0 for an empty row.
    std::size_t extent() const noexcept { return entries.empty() ? 0 : entries.back().index + 1u; }

    bool operator==(const SparseVector&) const = default;
};

struct VocabularyOptions {
    std::size_t min_df = 1;
    std::size_t ngram_max = 1;  // 2 adds "a b" bigram terms

    bool operator==(const VocabularyOptions&) const = default;
};

/// Terms emitted for a document under `ngram_max`, in token order.
inline std::vector<std::string> document_terms(const TokenizedDoc& doc, std::size_t ngram_max = 1) {
    std::vector<std::string> terms(doc.tokens.begin(), doc.tokens.end());
    if (ngram_max >= 2) {
        for (std::size_t i = 0; i + 1 < doc.tokens.size(); ++i) {
            terms.push_back(doc.tokens[i] + " " + doc.tokens[i + 1]);
        }
    }
    return terms;
}

/// Term <-> column map built from training documents only.
class Vocabulary {
public:
    Vocabulary() = default;

    static Vocabulary build(std::span<const TokenizedDoc> train_docs, const VocabularyOptions& opts = {}) {
        if (train_docs.empty()) throw ConfigError("cannot build a vocabulary from zero documents");
        std::vector<std::string> order;
        std::unordered_map<std::string, std::uint32_t> df;
        for (const auto& doc : train_docs) {
            std::unordered_set<std::string> seen;
            for (auto& term : document_terms(doc, opts.ngram_max)) {
                if (!seen.insert(term).second) continue;
                auto [it, inserted] = df.try_emplace(term, 0);
                if (inserted) order.push_back(term);
                ++it->second;
            }
        }
        Vocabulary v;
        v.options_ = opts;
        v.n_docs_ = train_docs.size();
        for (auto& term : order) {
            const auto count = df[term];
            if (count < opts.min_df) continue;
            v.add(std::move(term), count);
        }
        if (v.terms_.empty()) throw ConfigError("empty vocabulary");
        return v;
    }

    std::size_t size() const noexcept { return terms_.size(); }
    std::size_t n_train_docs() const noexcept { return n_docs_; }
    const VocabularyOptions& options() const noexcept { return options_; }
    const std::string& term(std::uint32_t i) const { return terms_.at(i); }
    std::uint32_t doc_freq(std::uint32_t i) const { return doc_freq_.at(i); }

    std::optional<std::uint32_t> index_of(const std::string& term) const {
        const auto it = index_.find(term);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Smoothed inverse document frequency; never zero.
    double idf(std::uint32_t i) const {
        return std::log((1.0 + static_cast<double>(n_docs_)) / (1.0 + static_cast<double>(doc_freq_.at(i)))) + 1.0;
    }

    /// {"n_train_docs", "min_df", "ngram_max", "terms": [[term, index, df], ...]}
    nlohmann::json to_json() const {
        nlohmann::json terms = nlohmann::json::array();
        for (std::uint32_t i = 0; i < terms_.size(); ++i) terms.push_back({terms_[i], i, doc_freq_[i]});
        return {{"n_train_docs", n_docs_},
                {"min_df", options_.min_df},
                {"ngram_max", options_.ngram_max},
                {"terms", std::move(terms)}};
    }

    static Vocabulary from_json(const nlohmann::json& j) {
        Vocabulary v;
        try {
            v.n_docs_ = j.at("n_train_docs").get<std::size_t>();
            v.options_.min_df = j.value("min_df", std::size_t{1});
            v.options_.ngram_max = j.value("ngram_max", std::size_t{1});
            for (const auto& t : j.at("terms")) {
                const auto index = t.at(1).get<std::uint32_t>();
                const auto df = t.at(2).get<std::uint32_t>();
                if (index != v.terms_.size()) throw ConfigError("vocabulary indices are not dense");
                if (df == 0 || df > v.n_docs_) throw ConfigError("vocabulary doc_freq out of range");
                v.add(t.at(0).get<std::string>(), df);
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("invalid vocabulary: ") + e.what());
        }
        return v;
    }

    std::string hash() const { return sha256_hex(to_json().dump()); }

    bool operator==(const Vocabulary& o) const {
        return terms_ == o.terms_ && doc_freq_ == o.doc_freq_ && n_docs_ == o.n_docs_ && options_ == o.options_;
    }

private:
    void add(std::string term, std::uint32_t df) {
        const auto idx = static_cast<std::uint32_t>(terms_.size());
        if (!index_.emplace(term, idx).second) throw ConfigError("duplicate vocabulary term '" + term + "'");
        terms_.push_back(std::move(term));
        doc_freq_.push_back(df);
    }

    std::vector<std::string> terms_;
    std::vector<std::uint32_t> doc_freq_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::size_t n_docs_ = 0;
    VocabularyOptions options_;
};

inline Vocabulary build_vocabulary(std::span<const TokenizedDoc> train_docs, const VocabularyOptions& opts = {}) {
    return Vocabulary::build(train_docs, opts);
}

/// Raw in-vocabulary term counts; out-of-vocabulary terms are dropped.
inline SparseVector vectorize_bow(const TokenizedDoc& doc, const Vocabulary& vocab) {
    std::map<std::uint32_t, double> counts;
    for (const auto& term : document_terms(doc, vocab.options().ngram_max)) {
        if (auto idx = vocab.index_of(term)) counts[*idx] += 1.0;
    }
    SparseVector v;
    v.entries.reserve(counts.size());
    for (const auto& [i, c] : counts) v.entries.push_back({i, c});
    return v;
}

/// tf * idf, then L2-normalized. An empty row stays empty.
inline SparseVector vectorize_tfidf(const TokenizedDoc& doc, const Vocabulary& vocab) {
    SparseVector v = vectorize_bow(doc, vocab);
    double norm2 = 0.0;
    for (auto& e : v.entries) {
        e.value *= vocab.idf(e.index);
        norm2 += e.value * e.value;
    }
    if (norm2 > 0.0) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& e : v.entries) e.value *= inv;
    }
    return v;
}

inline SparseVector vectorize(const TokenizedDoc& doc, const Vocabulary& vocab, FeatureKind kind) {
    return kind == FeatureKind::Bow ? vectorize_bow(doc, vocab) : vectorize_tfidf(doc, vocab);
}

/// Document-term matrix. `labels` is empty for unlabelled documents.
struct FeatureMatrix {
    std::vector<SparseVector> rows;
    std::size_t n_cols = 0;
    FeatureKind kind = FeatureKind::Bow;
    std::vector<Label> labels;

    std::size_t n_rows() const noexcept { return rows.size(); }
};

inline FeatureMatrix build_feature_matrix(std::span<const TokenizedDoc> docs, const Vocabulary& vocab,
                                          FeatureKind kind) {
    FeatureMatrix m;
    m.n_cols = vocab.size();
    m.kind = kind;
    m.rows.reserve(docs.size());
    bool labelled = true;
    for (const auto& d : docs) {
        m.rows.push_back(vectorize(d, vocab, kind));
        labelled = labelled && d.label.has_value();
    }
    if (labelled) {
        for (const auto& d : docs) m.labels.push_back(*d.label);
    }
    return m;
}

}  // namespace dnews
