// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace dnews {

/// Binary legitimacy label. The numeric order (Illegitimate < Legitimate)
/// equals the lexicographic order of the names and breaks every argmax tie.
enum class Label : unsigned char { Illegitimate = 0, Legitimate = 1 };

inline constexpr std::array<Label, 2> kLabels{Label::Illegitimate, Label::Legitimate};

/// Precision and recall are computed with this class as "positive".
inline constexpr Label kPositiveLabel = Label::Legitimate;

inline constexpr std::size_t index_of(Label l) noexcept { return static_cast<std::size_t>(l); }

inline constexpr std::string_view to_string(Label l) noexcept {
    return l == Label::Legitimate ? "legitimate" : "illegitimate";
}

/// Case-insensitive; surrounding whitespace ignored.
inline std::optional<Label> parse_label(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    std::string lower(s);
    std::ranges::transform(lower, lower.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "legitimate") return Label::Legitimate;
    if (lower == "illegitimate") return Label::Illegitimate;
    return std::nullopt;
}

/// Majority of an odd number of votes; ties (even counts) go to Illegitimate.
template <class Range>
Label majority(const Range& votes) {
    std::size_t legit = 0, total = 0;
    for (Label v : votes) {
        ++total;
        if (v == Label::Legitimate) ++legit;
    }
    return 2 * legit > total ? Label::Legitimate : Label::Illegitimate;
}

}  // namespace dnews
