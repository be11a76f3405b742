// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/models/logistic_regression.hpp"
#include "dnews/models/naive_bayes.hpp"
#include "dnews/models/random_forest.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace dnews {

enum class VotingMode { Hard, Soft };

inline constexpr std::string_view to_string(VotingMode m) noexcept { return m == VotingMode::Hard ? "hard" : "soft"; }

inline std::optional<VotingMode> parse_voting_mode(std::string_view s) {
    if (s == "hard") return VotingMode::Hard;
    if (s == "soft") return VotingMode::Soft;
    return std::nullopt;
}

/// Member order everywhere: LR, RF, MNB.
inline constexpr std::array<std::string_view, 3> kMemberNames{"lr", "rf", "mnb"};

struct EnsemblePrediction {
    Label label = Label::Illegitimate;
    double score = 0.0;  // legitimate vote fraction (hard) or mean member score (soft)
    std::array<Label, 3> votes{};
    std::array<double, 3> member_scores{};
};

/// LR + RF + MNB combined by voting. All members must share one vocabulary.
class VotingEnsemble {
public:
    /// `vocabulary_hashes` identifies the vocabulary each member was trained on.
    VotingEnsemble(LogisticRegression lr, RandomForest rf, MultinomialNB mnb,
                   const std::array<std::string, 3>& vocabulary_hashes, VotingMode mode = VotingMode::Hard)
        : lr_(std::move(lr)), rf_(std::move(rf)), mnb_(std::move(mnb)), mode_(mode) {
        if (vocabulary_hashes[0] != vocabulary_hashes[1] || vocabulary_hashes[0] != vocabulary_hashes[2]) {
            throw CompatibilityError("ensemble members were trained on different vocabularies");
        }
        if (lr_.n_features() != rf_.n_features() || lr_.n_features() != mnb_.n_features()) {
            throw CompatibilityError("ensemble members disagree on feature width");
        }
        vocabulary_hash_ = vocabulary_hashes[0];
    }

    EnsemblePrediction predict_detailed(const SparseVector& x) const {
        const std::array<Prediction, 3> p{lr_.predict(x), rf_.predict(x), mnb_.predict(x)};
        EnsemblePrediction out;
        for (std::size_t i = 0; i < 3; ++i) {
            out.votes[i] = p[i].label;
            out.member_scores[i] = p[i].score;
        }
        if (mode_ == VotingMode::Hard) {
            out.label = majority(out.votes);
            out.score = static_cast<double>(std::ranges::count(out.votes, Label::Legitimate)) / 3.0;
        } else {
            out.score = (p[0].score + p[1].score + p[2].score) / 3.0;
            out.label = out.score > 0.5 ? Label::Legitimate : Label::Illegitimate;
        }
        return out;
    }

    Prediction predict(const SparseVector& x) const {
        const auto d = predict_detailed(x);
        return {d.label, d.score};
    }

    std::size_t n_features() const noexcept { return lr_.n_features(); }
    VotingMode mode() const noexcept { return mode_; }
    const std::string& vocabulary_hash() const noexcept { return vocabulary_hash_; }
    const LogisticRegression& lr() const noexcept { return lr_; }
    const RandomForest& rf() const noexcept { return rf_; }
    const MultinomialNB& mnb() const noexcept { return mnb_; }

private:
    LogisticRegression lr_;
    RandomForest rf_;
    MultinomialNB mnb_;
    VotingMode mode_;
    std::string vocabulary_hash_;
};

inline EnsemblePrediction predict_ensemble(const VotingEnsemble& ensemble, const SparseVector& x) {
    return ensemble.predict_detailed(x);
}

}  // namespace dnews
