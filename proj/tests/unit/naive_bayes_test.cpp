// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#include "oracles/generators.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace dnews {
namespace {

using oracle::to_matrix;

// Columns: storm, flood, concert, music. Class A = Legitimate, class B = Illegitimate.
FeatureMatrix storm_vs_concert() { return to_matrix({{1, 1, 0, 0}, {0, 0, 1, 1}}, 4, {1, 0}); }

SparseVector counts(std::vector<int> c) { return oracle::to_sparse(c); }

TEST(MultinomialNB, LikelihoodHandExample) {
    const auto X = storm_vs_concert();
    const auto m = train_mnb(X, X.labels, {.alpha = 1.0});
    EXPECT_NEAR(std::exp(m.log_likelihood(Label::Legitimate)[0]), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(std::exp(m.log_likelihood(Label::Legitimate)[2]), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(std::exp(m.log_prior()[0]), 0.5, 1e-15);
}

TEST(MultinomialNB, StormStormMarginIsTwoLnTwo) {
    const auto X = storm_vs_concert();
    const auto m = train_mnb(X, X.labels, {.alpha = 1.0});
    const auto s = m.log_scores(counts({2, 0, 0, 0}));
    EXPECT_NEAR(s[index_of(Label::Legitimate)] - s[index_of(Label::Illegitimate)], 2.0 * std::log(2.0), 1e-12);
    EXPECT_EQ(m.predict(counts({2, 0, 0, 0})).label, Label::Legitimate);
    EXPECT_NEAR(m.predict(counts({2, 0, 0, 0})).score, 0.8, 1e-12);  // 4 / (4 + 1)
}

TEST(MultinomialNB, LikelihoodsAndPriorsAreDistributions) {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = oracle::random_nb_corpus(rng);
        const auto m = train_mnb(oracle::nb_matrix(c), oracle::nb_matrix(c).labels, {.alpha = 0.1 + rng.uniform()});
        for (Label l : kLabels) {
            double sum = 0.0;
            for (double v : m.log_likelihood(l)) sum += std::exp(v);
            EXPECT_NEAR(sum, 1.0, 1e-9);
        }
        EXPECT_NEAR(std::exp(m.log_prior()[0]) + std::exp(m.log_prior()[1]), 1.0, 1e-12);
    }
}

TEST(MultinomialNB, PosteriorMatchesBruteForceEnumeration) {
    Rng rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = oracle::random_nb_corpus(rng);
        const double alpha = rng.below(2) ? 1.0 : 0.05 + 2.0 * rng.uniform();
        const auto X = oracle::nb_matrix(c);
        const auto m = train_mnb(X, X.labels, {.alpha = alpha});
        for (int q = 0; q < 5; ++q) {
            std::vector<int> query(c.vocab_size);
            for (auto& v : query) v = static_cast<int>(rng.below(4));
            const auto expected = oracle::nb_posterior(c, query, alpha);
            const auto got = m.posterior(counts(query));
            for (int k = 0; k < 2; ++k) EXPECT_NEAR(std::log(got[k]), std::log(expected[k]), 1e-10);
            EXPECT_NEAR(got[0] + got[1], 1.0, 1e-12);
        }
    }
}

TEST(MultinomialNB, UnusedTermsEnterOnlyThroughSmoothingDenominator) {
    const auto X = storm_vs_concert();
    const auto wide = to_matrix({{1, 1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0}}, 6, {1, 0});
    const auto m4 = train_mnb(X, X.labels, {.alpha = 1.0});
    const auto m6 = train_mnb(wide, wide.labels, {.alpha = 1.0});
    // storm|A: 2/6 with V=4, 2/8 with V=6.
    EXPECT_NEAR(m6.log_likelihood(Label::Legitimate)[0] - m4.log_likelihood(Label::Legitimate)[0],
                std::log(6.0 / 8.0), 1e-12);
    // Both classes have two tokens, so the shift cancels in the posterior.
    const auto x = counts({1, 0, 2, 0});
    EXPECT_NEAR(m6.posterior(x)[1], m4.posterior(x)[1], 1e-12);
}

TEST(MultinomialNB, LargeAlphaFallsBackToThePrior) {
    const auto X = to_matrix({{3, 0}, {0, 3}, {2, 1}}, 2, {1, 0, 0});
    const auto m = train_mnb(X, X.labels, {.alpha = 1e12});
    for (Label l : kLabels) {
        for (double v : m.log_likelihood(l)) EXPECT_NEAR(std::exp(v), 0.5, 1e-9);
    }
    // Prior favours Illegitimate 2:1 even for a strongly legitimate-looking document.
    EXPECT_EQ(m.predict(counts({5, 0})).label, Label::Illegitimate);
    EXPECT_NEAR(m.predict(counts({5, 0})).score, 1.0 / 3.0, 1e-9);
}

TEST(MultinomialNB, TfidfNeedsExplicitOverride) {
    auto X = storm_vs_concert();
    X.kind = FeatureKind::Tfidf;
    EXPECT_THROW(train_mnb(X, X.labels), TrainingError);
    EXPECT_NO_THROW(train_mnb(X, X.labels, {.alpha = 1.0, .allow_fractional = true}));
    EXPECT_THROW(train_mnb(storm_vs_concert(), storm_vs_concert().labels, {.alpha = 0.0}), ConfigError);
}

TEST(MultinomialNB, TiesGoIllegitimateAndJsonRoundTrips) {
    const auto X = storm_vs_concert();
    const auto m = train_mnb(X, X.labels);
    EXPECT_EQ(m.predict(SparseVector{}).label, Label::Illegitimate);
    EXPECT_DOUBLE_EQ(m.predict(SparseVector{}).score, 0.5);
    const auto back = MultinomialNB::from_json(nlohmann::json::parse(m.to_json().dump()));
    EXPECT_EQ(back.log_prior(), m.log_prior());
    EXPECT_EQ(back.log_likelihood(Label::Legitimate), m.log_likelihood(Label::Legitimate));
    EXPECT_EQ(back.config(), m.config());
    SparseVector wide;
    wide.entries = {{4, 1.0}};
    EXPECT_THROW(m.predict(wide), DimensionError);
}

}  // namespace
}  // namespace dnews
