// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/corpus.hpp"
#include "dnews/random.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dnews {

/// Seeded generator for labelled disaster-news-like articles. Each token is
/// drawn from the article's own class markers with probability marker_rate,
/// from the other class's markers with probability cross_rate, and from a
/// shared vocabulary otherwise.
struct SynthConfig {
    std::size_t per_class = 80;
    std::uint64_t seed = 42;
    std::size_t title_tokens = 6;
    std::size_t body_tokens = 60;
    double marker_rate = 0.35;
    double cross_rate = 0.04;
};

namespace detail {

inline constexpr std::string_view kSharedWords[] = {
    "typhoon", "odette", "rai", "storm", "wind", "rain", "flood", "damage", "island", "coast", "relief",
    "power", "water", "family", "resident", "evacuation", "center", "report", "official", "update",
    "government", "city", "road", "bridge", "house", "shelter", "food", "rescue", "signal", "landfall",
    "weather", "agency", "people", "area", "day", "week", "night", "south", "north", "tree", "school",
    "church", "market", "village", "hospital", "electricity", "supply", "aid", "donation", "victim",
    "survivor", "philippine", "president", "said", "debris", "recovery", "cleanup", "volunteer"};

inline constexpr std::string_view kLegitimateMarkers[] = {
    "year", "website", "visayas", "cookie", "town", "title", "subscribe", "social", "media",
    "public", "province", "police", "philippines", "office", "mayor", "mandaue", "local", "listen",
    "lapu", "inquirer", "barangay", "governor", "sunstar", "council"};

inline constexpr std::string_view kIllegitimateMarkers[] = {
    "world", "vice", "told", "support", "story", "spokesperson", "senator", "sa", "robredo",
    "ressa", "rappler", "rally", "presidential", "aspirant", "leni", "pink", "manila", "petition",
    "pacquiao", "news", "na", "marcos", "satire", "exclusive"};

inline std::string_view pick(std::span<const std::string_view> words, Rng& rng) {
    return words[rng.below(words.size())];
}

inline std::string draw_word(Label label, const SynthConfig& cfg, Rng& rng) {
    const auto own = label == Label::Legitimate ? std::span<const std::string_view>(kLegitimateMarkers)
                                                : std::span<const std::string_view>(kIllegitimateMarkers);
    const auto other = label == Label::Legitimate ? std::span<const std::string_view>(kIllegitimateMarkers)
                                                  : std::span<const std::string_view>(kLegitimateMarkers);
    const double u = rng.uniform();
    if (u < cfg.marker_rate) return std::string(pick(own, rng));
    if (u < cfg.marker_rate + cfg.cross_rate) return std::string(pick(other, rng));
    return std::string(pick(kSharedWords, rng));
}

inline std::string capitalized(std::string w) {
    if (!w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    return w;
}

}  // namespace detail

inline std::vector<Article> generate_synthetic_articles(const SynthConfig& cfg = {}) {
    using namespace std::chrono;
    static constexpr std::string_view kLegitPublishers[] = {"SunStar Cebu", "Cebu Daily News",
                                                            "Philippine Daily Inquirer"};
    static constexpr std::string_view kLegitLocations[] = {"Cebu City", "Mandaue City", "Lapu-Lapu City"};

    std::vector<Article> out;
    out.reserve(2 * cfg.per_class);
    for (std::size_t i = 0; i < cfg.per_class; ++i) {
        for (Label label : {Label::Legitimate, Label::Illegitimate}) {
            Rng rng(derive_seed(cfg.seed, "synth/" + std::string(to_string(label)), i));
            Article a;
            char num[16];
            std::snprintf(num, sizeof num, "%03zu", i + 1);
            const std::string slug(to_string(label));
            a.id = "syn-" + slug + "-" + num;
            a.url = "https://synthetic.example/" + slug + "/" + num;
            const year_month_day day{sys_days{2021y / December / 16} + days{static_cast<int>(i % 70)}};
            char date[48];
            std::snprintf(date, sizeof date, "%04d-%02u-%02u", static_cast<int>(day.year()),
                          static_cast<unsigned>(day.month()), static_cast<unsigned>(day.day()));
            a.date = date;
            a.disaster = "Typhoon Rai";
            a.author = "Staff Writer";
            if (label == Label::Legitimate) {
                a.publisher = std::string(kLegitPublishers[i % 3]);
                a.location = std::string(kLegitLocations[i % 3]);
            } else {
                a.publisher = "Adobo Chronicles";
                a.location = "Manila";
            }
            a.label = label;

            for (std::size_t t = 0; t < cfg.title_tokens; ++t) {
                if (t) a.title.push_back(' ');
                a.title += detail::capitalized(detail::draw_word(label, cfg, rng));
            }
            a.title += label == Label::Legitimate ? "." : "!";
            for (std::size_t t = 0; t < cfg.body_tokens; ++t) {
                const bool sentence_start = t % 10 == 0;
                if (t) a.body += sentence_start ? ". " : " ";
                auto w = detail::draw_word(label, cfg, rng);
                a.body += sentence_start ? detail::capitalized(std::move(w)) : w;
            }
            a.body.push_back('.');
            out.push_back(std::move(a));
        }
    }
    return out;
}

inline Corpus generate_synthetic_corpus(const SynthConfig& cfg = {}) {
    return Corpus::from_articles(generate_synthetic_articles(cfg));
}

}  // namespace dnews
