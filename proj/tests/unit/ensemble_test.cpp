// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#include "oracles/generators.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace dnews {
namespace {

constexpr auto L = Label::Legitimate;
constexpr auto I = Label::Illegitimate;

TEST(Majority, TwoOfThree) {
    EXPECT_EQ(majority(std::array{L, L, I}), L);
    EXPECT_EQ(majority(std::array{I, L, I}), I);
    for (Label a : kLabels) EXPECT_EQ(majority(std::array{a, a, a}), a);
}

struct Trained {
    FeatureMatrix train, test;
    Vocabulary vocab;
    LogisticRegression lr;
    RandomForest rf;
    MultinomialNB mnb;
};

Trained train_on_fixture() {
    Trained t;
    const auto corpus = load_corpus(testing::data_dir() / "corpus_160.jsonl");
    const auto split = stratified_split(corpus, Ratio{3, 10}, 42);
    const auto train_docs = prepare_all(split.train.articles(), PrepConfig::defaults());
    const auto test_docs = prepare_all(split.test.articles(), PrepConfig::defaults());
    t.vocab = build_vocabulary(train_docs);
    t.train = build_feature_matrix(train_docs, t.vocab, FeatureKind::Bow);
    t.test = build_feature_matrix(test_docs, t.vocab, FeatureKind::Bow);
    t.lr = train_lr(t.train, t.train.labels);
    t.rf = train_rf(t.train, t.train.labels, {.n_trees = 15, .seed = 4});
    t.mnb = train_mnb(t.train, t.train.labels);
    return t;
}

TEST(VotingEnsemble, PredictionIsMajorityOfMemberPredictions) {
    const auto t = train_on_fixture();
    const auto h = t.vocab.hash();
    const VotingEnsemble e(t.lr, t.rf, t.mnb, {h, h, h});
    for (const auto& x : t.test.rows) {
        const auto d = predict_ensemble(e, x);
        const std::array<Label, 3> recomputed{t.lr.predict(x).label, t.rf.predict(x).label, t.mnb.predict(x).label};
        EXPECT_EQ(d.votes, recomputed);
        EXPECT_EQ(d.label, majority(recomputed));
        EXPECT_DOUBLE_EQ(d.score, static_cast<double>(std::ranges::count(recomputed, L)) / 3.0);
        if (recomputed[0] == recomputed[1] && recomputed[1] == recomputed[2]) EXPECT_EQ(d.label, recomputed[0]);
    }
}

TEST(VotingEnsemble, SoftVotingAveragesMemberScores) {
    const auto t = train_on_fixture();
    const auto h = t.vocab.hash();
    const VotingEnsemble e(t.lr, t.rf, t.mnb, {h, h, h}, VotingMode::Soft);
    EXPECT_EQ(e.mode(), VotingMode::Soft);
    for (const auto& x : t.test.rows) {
        const double mean = (t.lr.predict(x).score + t.rf.predict(x).score + t.mnb.predict(x).score) / 3.0;
        const auto d = e.predict_detailed(x);
        EXPECT_DOUBLE_EQ(d.score, mean);
        EXPECT_EQ(d.label, mean > 0.5 ? L : I);
    }
}

TEST(VotingEnsemble, MismatchedVocabulariesAreRejected) {
    const auto t = train_on_fixture();
    const auto h = t.vocab.hash();
    EXPECT_THROW(VotingEnsemble(t.lr, t.rf, t.mnb, {h, h, "other"}), CompatibilityError);
    const auto narrow = LogisticRegression::from_parameters(std::vector<double>(3, 0.0), 0.0);
    EXPECT_THROW(VotingEnsemble(narrow, t.rf, t.mnb, {h, h, h}), CompatibilityError);
}

TEST(VotingMode, ParsesNames) {
    EXPECT_EQ(parse_voting_mode("hard"), VotingMode::Hard);
    EXPECT_EQ(parse_voting_mode("soft"), VotingMode::Soft);
    EXPECT_FALSE(parse_voting_mode("mean").has_value());
    EXPECT_EQ(to_string(VotingMode::Soft), "soft");
}

}  // namespace
}  // namespace dnews
