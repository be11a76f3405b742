// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/eval.hpp"
#include "dnews/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

namespace dnews {

struct WordCloudOptions {
    double min_font = 12.0;
    double max_font = 64.0;
    double char_width = 0.6;      // glyph advance as a fraction of the font size
    double padding = 2.0;         // minimum gap between word boxes
    double spiral_growth = 1.5;   // radius gained per radian
    double spiral_step = 0.05;    // radians between candidate positions
    double margin = 10.0;
    std::uint64_t seed = 0;
};

struct PlacedWord {
    std::string term;
    std::uint64_t count = 0;
    double font_size = 0.0;
    double x = 0.0;  // box top-left
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;
    std::string color;
};

struct WordCloudLayout {
    std::vector<PlacedWord> words;
    double width = 0.0;
    double height = 0.0;
};

namespace detail {

inline bool boxes_overlap(const PlacedWord& a, const PlacedWord& b, double pad) {
    return a.x < b.x + b.width + pad && b.x < a.x + a.width + pad && a.y < b.y + b.height + pad &&
           b.y < a.y + a.height + pad;
}

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace detail

/// Greedy Archimedean-spiral placement in rank order. The font size is affine
/// in the count; equal counts (including a single term) get max_font.
inline WordCloudLayout layout_wordcloud(const FrequencyReport& report, const WordCloudOptions& opts = {}) {
    if (report.terms.empty()) throw ConfigError("word cloud needs at least one term");
    static constexpr const char* kPalette[] = {"#1b4f72", "#117864", "#7d3c98", "#b03a2e", "#9a7d0a", "#2e4053"};
    Rng rng(derive_seed(opts.seed, "wordcloud"));
    const double start_angle = rng.uniform() * 2.0 * std::numbers::pi;

    auto [lo, hi] = std::ranges::minmax(report.terms, {}, &TermCount::count);
    const double cmin = static_cast<double>(lo.count), cmax = static_cast<double>(hi.count);

    WordCloudLayout layout;
    for (const auto& tc : report.terms) {
        PlacedWord w;
        w.term = tc.term;
        w.count = tc.count;
        w.font_size = cmax == cmin ? opts.max_font
                                   : opts.min_font + (static_cast<double>(tc.count) - cmin) / (cmax - cmin) *
                                                         (opts.max_font - opts.min_font);
        w.width = opts.char_width * w.font_size * static_cast<double>(tc.term.size());
        w.height = w.font_size;
        w.color = kPalette[rng.below(std::size(kPalette))];
        for (std::size_t step = 0;; ++step) {
            const double t = static_cast<double>(step) * opts.spiral_step;
            const double r = opts.spiral_growth * t;
            w.x = r * std::cos(start_angle + t) - w.width / 2.0;
            w.y = r * std::sin(start_angle + t) - w.height / 2.0;
            const bool clear = std::ranges::none_of(
                layout.words, [&](const PlacedWord& o) { return detail::boxes_overlap(w, o, opts.padding); });
            if (clear) break;
            if (step > 50'000'000) throw Error("word cloud placement did not converge");
        }
        layout.words.push_back(std::move(w));
    }

    double min_x = INFINITY, min_y = INFINITY, max_x = -INFINITY, max_y = -INFINITY;
    for (const auto& w : layout.words) {
        min_x = std::min(min_x, w.x);
        min_y = std::min(min_y, w.y);
        max_x = std::max(max_x, w.x + w.width);
        max_y = std::max(max_y, w.y + w.height);
    }
    for (auto& w : layout.words) {
        w.x += opts.margin - min_x;
        w.y += opts.margin - min_y;
    }
    layout.width = max_x - min_x + 2.0 * opts.margin;
    layout.height = max_y - min_y + 2.0 * opts.margin;
    return layout;
}

/// One <g> per word: an invisible bounding <rect> and a centred <text>.
inline std::string render_svg(const WordCloudLayout& layout) {
    using detail::fmt2;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(layout.width) + "\" height=\"" +
           fmt2(layout.height) + "\" viewBox=\"0 0 " + fmt2(layout.width) + " " + fmt2(layout.height) + "\">\n";
    for (const auto& w : layout.words) {
        out += "  <g class=\"word\" data-count=\"" + std::to_string(w.count) + "\">\n";
        out += "    <rect class=\"bbox\" x=\"" + fmt2(w.x) + "\" y=\"" + fmt2(w.y) + "\" width=\"" + fmt2(w.width) +
               "\" height=\"" + fmt2(w.height) + "\" fill=\"none\"/>\n";
        out += "    <text x=\"" + fmt2(w.x + w.width / 2.0) + "\" y=\"" + fmt2(w.y + w.height / 2.0) +
               "\" font-family=\"sans-serif\" font-size=\"" + fmt2(w.font_size) + "\" fill=\"" + w.color +
               "\" text-anchor=\"middle\" dominant-baseline=\"central\">" + detail::xml_escape(w.term) + "</text>\n";
        out += "  </g>\n";
    }
    out += "</svg>\n";
    return out;
}

inline void wordcloud_svg(const FrequencyReport& report, const std::filesystem::path& out,
                          const WordCloudOptions& opts = {}) {
    const auto svg = render_svg(layout_wordcloud(report, opts));
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + out.string() + "'");
    f << svg;
    if (!f) throw Error("failed writing '" + out.string() + "'");
}

}  // namespace dnews
