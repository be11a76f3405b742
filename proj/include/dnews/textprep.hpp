// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/corpus.hpp"
#include "dnews/detail/lexicon.hpp"
#include "dnews/error.hpp"
#include "dnews/hash.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dnews {

struct SuffixRule {
    std::string suffix;
    std::string replacement;
    std::size_t min_stem = 0;  // stem = token minus suffix; must be at least this long

    bool operator==(const SuffixRule&) const = default;
};

struct PrepConfig {
    std::set<std::string> stopwords;
    std::size_t min_token_len = 2;
    std::vector<SuffixRule> lemma_rules;
    std::map<std::string, std::string> lemma_exceptions;

    bool operator==(const PrepConfig&) const = default;

    /// The shipped English stopword list, suffix rules and exception map.
    static PrepConfig defaults() {
        PrepConfig cfg;
        for (auto w : detail::kDefaultStopwords) cfg.stopwords.emplace(w);
        for (const auto& r : detail::kDefaultSuffixRules) {
            cfg.lemma_rules.push_back({std::string(r.suffix), std::string(r.replacement), r.min_stem});
        }
        for (const auto& [from, to] : detail::kDefaultLemmaExceptions) {
            cfg.lemma_exceptions.emplace(from, to);
        }
        return cfg;
    }
};

/// A document reduced to its normalized, filtered, lemmatized tokens.
struct TokenizedDoc {
    std::string id;
    std::vector<std::string> tokens;
    std::optional<Label> label;

    bool operator==(const TokenizedDoc&) const = default;
};

namespace detail {

// ASCII base letters for U+0100..U+017F; '1' marks U+0132/U+0133 ("ij"),
// '2' marks U+0152/U+0153 ("oe").
inline constexpr std::string_view kLatinExtendedA =
    "aaaaaaccccccccddddeeeeeeeeeegggggggghhhhiiiiiiiiii11jjkkkllllllllllnnnnnnnnnoooooo22"
    "rrrrrrssssssssttttttuuuuuuuuuuuuwwyyyzzzzzzs";
static_assert(kLatinExtendedA.size() == 0x80);

/// Lowercase ASCII folding of one code point; empty when it is a separator.
inline std::string_view fold_codepoint(char32_t cp) {
    static constexpr std::string_view kLower = "abcdefghijklmnopqrstuvwxyz";
    static constexpr std::string_view kDigits = "0123456789";
    if (cp >= 'a' && cp <= 'z') return kLower.substr(cp - 'a', 1);
    if (cp >= 'A' && cp <= 'Z') return kLower.substr(cp - 'A', 1);
    if (cp >= '0' && cp <= '9') return kDigits.substr(cp - '0', 1);
    if (cp >= 0xC0 && cp <= 0xFF) {
        static constexpr std::string_view kLatin1[64] = {
            "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
            "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "ss",
            "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
            "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "y"};
        return kLatin1[cp - 0xC0];
    }
    if (cp >= 0x100 && cp <= 0x17F) {
        const char c = kLatinExtendedA[cp - 0x100];
        if (c == '1') return "ij";
        if (c == '2') return "oe";
        return kLower.substr(static_cast<std::size_t>(c - 'a'), 1);
    }
    return {};
}

/// Decodes one UTF-8 sequence at `pos`; malformed input yields U+FFFD.
inline char32_t next_codepoint(std::string_view s, std::size_t& pos) {
    const auto b0 = static_cast<unsigned char>(s[pos++]);
    if (b0 < 0x80) return b0;
    int extra = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else {
        return 0xFFFD;
    }
    for (int i = 0; i < extra; ++i) {
        if (pos >= s.size()) return 0xFFFD;
        const auto b = static_cast<unsigned char>(s[pos]);
        if ((b & 0xC0) != 0x80) return 0xFFFD;
        cp = (cp << 6) | (b & 0x3F);
        ++pos;
    }
    return cp;
}

inline bool is_token_shaped(std::string_view t) {
    if (t.empty() || t.front() < 'a' || t.front() > 'z') return false;
    return std::ranges::all_of(t, [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); });
}

}  // namespace detail

/// Lowercases, folds Latin diacritics to ASCII, replaces every other
/// character with a space, collapses runs of spaces and trims.
/// Output alphabet: [a-z0-9 ]. Idempotent.
inline std::string normalize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto folded = detail::fold_codepoint(detail::next_codepoint(text, pos));
        if (folded.empty()) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out += folded;
    }
    return out;
}

/// Splits normalized text on spaces and drops short, digit-initial and
/// stopword tokens.
inline std::vector<std::string> tokenize(std::string_view text, const PrepConfig& cfg) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto start = text.find_first_not_of(' ', pos);
        if (start == std::string_view::npos) break;
        auto end = text.find(' ', start);
        if (end == std::string_view::npos) end = text.size();
        const auto tok = text.substr(start, end - start);
        pos = end;
        if (tok.size() < cfg.min_token_len) continue;
        if (!detail::is_token_shaped(tok)) continue;
        std::string t(tok);
        if (cfg.stopwords.contains(t)) continue;
        tokens.push_back(std::move(t));
    }
    return tokens;
}

/// Exception map first, then the first applicable suffix rule, else identity.
inline std::string lemmatize(std::string_view token, const PrepConfig& cfg) {
    if (const auto it = cfg.lemma_exceptions.find(std::string(token)); it != cfg.lemma_exceptions.end()) {
        return it->second;
    }
    for (const auto& rule : cfg.lemma_rules) {
        if (token.size() < rule.suffix.size() || !token.ends_with(rule.suffix)) continue;
        const auto stem_len = token.size() - rule.suffix.size();
        if (stem_len < rule.min_stem) continue;
        return std::string(token.substr(0, stem_len)) + rule.replacement;
    }
    return std::string(token);
}

/// Title and body joined by one space, then normalize, tokenize, lemmatize.
/// Lemmas are filtered again so no stopword or short token survives.
inline TokenizedDoc prepare(const Article& article, const PrepConfig& cfg) {
    TokenizedDoc doc{article.id, {}, article.label};
    const auto text = normalize(article.title + " " + article.body);
    for (const auto& tok : tokenize(text, cfg)) {
        auto lemma = lemmatize(tok, cfg);
        if (lemma.size() < cfg.min_token_len || !detail::is_token_shaped(lemma) ||
            cfg.stopwords.contains(lemma)) {
            continue;
        }
        doc.tokens.push_back(std::move(lemma));
    }
    return doc;
}

inline std::vector<TokenizedDoc> prepare_all(const std::vector<Article>& articles, const PrepConfig& cfg) {
    std::vector<TokenizedDoc> docs;
    docs.reserve(articles.size());
    for (const auto& a : articles) docs.push_back(prepare(a, cfg));
    return docs;
}

// --- configuration files -------------------------------------------------

/// Throws ConfigError unless every stopword and rule is already normalized.
inline void validate(const PrepConfig& cfg) {
    for (const auto& w : cfg.stopwords) {
        if (normalize(w) != w || w.find(' ') != std::string::npos || w.empty()) {
            throw ConfigError("stopword '" + w + "' is not normalized");
        }
    }
    for (const auto& r : cfg.lemma_rules) {
        if (r.suffix.empty()) throw ConfigError("lemma rule with empty suffix");
    }
    if (cfg.min_token_len == 0) throw ConfigError("min_token_len must be >= 1");
}

/// Canonical newline-delimited form: sorted, one word per line.
inline std::string stopwords_text(const PrepConfig& cfg) {
    std::string out;
    for (const auto& w : cfg.stopwords) {
        out += w;
        out.push_back('\n');
    }
    return out;
}

inline std::string stopwords_hash(const PrepConfig& cfg) { return sha256_hex(stopwords_text(cfg)); }

inline nlohmann::json to_json(const PrepConfig& cfg) {
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : cfg.lemma_rules) {
        rules.push_back({{"suffix", r.suffix}, {"replacement", r.replacement}, {"min_stem", r.min_stem}});
    }
    return {{"min_token_len", cfg.min_token_len},
            {"stopwords", cfg.stopwords},
            {"lemma_rules", rules},
            {"lemma_exceptions", cfg.lemma_exceptions}};
}

/// Hash of the canonical JSON form (sorted keys, compact).
inline std::string prep_config_hash(const PrepConfig& cfg) { return sha256_hex(to_json(cfg).dump()); }

inline std::set<std::string> parse_stopwords(std::string_view text) {
    std::set<std::string> words;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        words.insert(line.substr(b, e - b + 1));
    }
    return words;
}

inline std::set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open stopword list '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_stopwords(ss.str());
}

/// Missing keys keep their default values. `base_dir` resolves a relative
/// "stopwords_file".
inline PrepConfig prep_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
    if (!j.is_object()) throw ConfigError("prep config must be a JSON object");
    PrepConfig cfg = PrepConfig::defaults();
    try {
        if (j.contains("min_token_len")) cfg.min_token_len = j.at("min_token_len").get<std::size_t>();
        if (j.contains("stopwords")) {
            cfg.stopwords = j.at("stopwords").get<std::set<std::string>>();
        } else if (j.contains("stopwords_file")) {
            cfg.stopwords = load_stopwords(base_dir / j.at("stopwords_file").get<std::string>());
        }
        if (j.contains("lemma_rules")) {
            cfg.lemma_rules.clear();
            for (const auto& r : j.at("lemma_rules")) {
                cfg.lemma_rules.push_back({r.at("suffix").get<std::string>(),
                                           r.at("replacement").get<std::string>(),
                                           r.value("min_stem", std::size_t{0})});
            }
        }
        if (j.contains("lemma_exceptions")) {
            cfg.lemma_exceptions = j.at("lemma_exceptions").get<std::map<std::string, std::string>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid prep config: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

inline PrepConfig load_prep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open prep config '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("prep config '" + path.string() + "': " + e.what());
    }
    return prep_config_from_json(j, path.parent_path());
}

}  // namespace dnews
