// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#include "oracles/generators.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace dnews {
namespace {

using oracle::to_matrix;

RandomForestConfig single_cart(std::size_t V) {
    return {.n_trees = 1, .max_depth = 16, .min_leaf = 1, .features_per_split = V, .bootstrap = false, .seed = 3};
}

TEST(RandomForest, TwoPointDatasetSplitsOnce) {
    const auto X = to_matrix({{0.0}, {5.0}}, 1, {0, 1});
    const auto f = train_rf(X, X.labels, single_cart(1));
    const auto& nodes = f.trees()[0].nodes();
    ASSERT_EQ(nodes.size(), 3u);
    EXPECT_EQ(nodes[0].feature, 0);
    EXPECT_GT(nodes[0].threshold, 0.0);
    EXPECT_LT(nodes[0].threshold, 5.0);
    EXPECT_EQ(f.predict(X.rows[0]).label, Label::Illegitimate);
    EXPECT_EQ(f.predict(X.rows[1]).label, Label::Legitimate);
}

TEST(RandomForest, PureLabelsGiveASingleLeaf) {
    // Training needs both classes, so grow a tree directly.
    const auto X = to_matrix({{0.0}, {5.0}, {2.0}}, 1, {1, 1, 1});
    Rng rng(1);
    const auto t = DecisionTree::grow(X, X.labels, {0, 1, 2}, {}, rng);
    ASSERT_EQ(t.nodes().size(), 1u);
    EXPECT_EQ(t.nodes()[0].label, Label::Legitimate);
    EXPECT_EQ(t.depth(), 0u);
}

TEST(RandomForest, VoteFractionIsTheScore) {
    // Three stumps voting (1, 1, 0) on x.
    nlohmann::json leaf1 = {{"nodes", {{-1, 0.0, 0, 0, 1, 0, 1}}}};
    nlohmann::json leaf0 = {{"nodes", {{-1, 0.0, 0, 0, 0, 1, 0}}}};
    const nlohmann::json j = {{"config",
                               {{"n_trees", 3},
                                {"max_depth", 1},
                                {"min_leaf", 1},
                                {"features_per_split", 1},
                                {"bootstrap", false},
                                {"seed", 0}}},
                              {"n_features", 1},
                              {"trees", {leaf1, leaf1, leaf0}}};
    const auto f = RandomForest::from_json(j);
    const auto p = f.predict(SparseVector{});
    EXPECT_EQ(p.label, Label::Legitimate);
    EXPECT_DOUBLE_EQ(p.score, 2.0 / 3.0);
}

TEST(RandomForest, FeaturesPerSplitDefaultsToCeilSqrt) {
    EXPECT_EQ(resolve_features_per_split(0, 1), 1u);
    EXPECT_EQ(resolve_features_per_split(0, 4), 2u);
    EXPECT_EQ(resolve_features_per_split(0, 5), 3u);
    EXPECT_EQ(resolve_features_per_split(0, 9), 3u);
    EXPECT_EQ(resolve_features_per_split(0, 10), 4u);
    EXPECT_EQ(resolve_features_per_split(0, 1000000), 1000u);
    EXPECT_EQ(resolve_features_per_split(50, 4), 4u);
}

TEST(RandomForest, DegenerateConfigMatchesExhaustiveCart) {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = oracle::random_cart_dataset(rng);
        const auto X = to_matrix(d.X, d.V, d.y);
        const auto f = train_rf(X, X.labels, single_cart(d.V));
        const oracle::CartOracle cart(d.X, d.y, 16, 1);
        std::size_t internal = 0;
        for (const auto& n : f.trees()[0].nodes()) internal += !n.is_leaf();
        EXPECT_EQ(internal, cart.internal_nodes()) << "trial " << trial;
        for (std::size_t i = 0; i < d.X.size(); ++i) {
            EXPECT_EQ(index_of(f.predict(X.rows[i]).label), static_cast<std::size_t>(cart.predict(d.X[i])));
        }
        // Off-sample points probe the thresholds too.
        for (int q = 0; q < 20; ++q) {
            std::vector<double> x(d.V);
            for (auto& v : x) v = 0.5 * static_cast<double>(rng.below(9));
            const auto sx = to_matrix({x}, d.V, {}).rows[0];
            EXPECT_EQ(index_of(f.predict(sx).label), static_cast<std::size_t>(cart.predict(x)));
        }
    }
}

TEST(RandomForest, DepthAndLeafLimitsMatchTheOracle) {
    Rng rng(78);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = oracle::random_cart_dataset(rng);
        const auto X = to_matrix(d.X, d.V, d.y);
        const std::size_t depth = 1 + rng.below(3), leaf = 1 + rng.below(3);
        auto cfg = single_cart(d.V);
        cfg.max_depth = depth;
        cfg.min_leaf = leaf;
        const auto f = train_rf(X, X.labels, cfg);
        const oracle::CartOracle cart(d.X, d.y, depth, leaf);
        EXPECT_LE(f.trees()[0].depth(), depth);
        const auto& nodes = f.trees()[0].nodes();
        for (std::size_t k = 1; k < nodes.size(); ++k) EXPECT_GE(nodes[k].counts[0] + nodes[k].counts[1], leaf);
        for (std::size_t i = 0; i < d.X.size(); ++i) {
            EXPECT_EQ(index_of(f.predict(X.rows[i]).label), static_cast<std::size_t>(cart.predict(d.X[i])));
        }
    }
}

TEST(RandomForest, StructureIndependentOfThreadCount) {
    const auto corpus = load_corpus(testing::data_dir() / "corpus_160.jsonl");
    const auto docs = prepare_all(corpus.articles(), PrepConfig::defaults());
    const auto vocab = build_vocabulary(docs);
    const auto X = build_feature_matrix(docs, vocab, FeatureKind::Tfidf);
    RandomForestConfig cfg{.n_trees = 24, .seed = 42, .threads = 1};
    const auto reference = train_rf(X, X.labels, cfg).to_json().dump();
    for (unsigned threads : {2u, 3u, 8u}) {
        cfg.threads = threads;
        EXPECT_EQ(train_rf(X, X.labels, cfg).to_json().dump(), reference) << threads << " threads";
    }
    cfg.seed = 43;
    EXPECT_NE(train_rf(X, X.labels, cfg).to_json().dump(), reference);
}

TEST(RandomForest, InternalNodesSplitOnOneFeatureWithinRange) {
    Rng rng(80);
    const auto problem = oracle::random_sparse_problem(rng, 40, 6, 0.0);
    const auto X = to_matrix(problem.X, 6, problem.y);
    const auto f = train_rf(X, X.labels, {.n_trees = 10, .seed = 1});
    for (const auto& t : f.trees()) {
        std::size_t total = 0;
        for (const auto& n : t.nodes()) {
            if (n.is_leaf()) {
                total += n.counts[0] + n.counts[1];
                continue;
            }
            EXPECT_LT(static_cast<std::size_t>(n.feature), X.n_cols);
            const auto& l = t.nodes()[n.left];
            const auto& r = t.nodes()[n.right];
            EXPECT_EQ(l.counts[0] + r.counts[0], n.counts[0]);
            EXPECT_EQ(l.counts[1] + r.counts[1], n.counts[1]);
        }
        // A bootstrap sample has exactly n rows.
        EXPECT_EQ(total, X.n_rows());
    }
}

TEST(RandomForest, JsonRoundTripAndErrors) {
    Rng rng(81);
    const auto problem = oracle::random_sparse_problem(rng, 30, 5, 0.0);
    const auto X = to_matrix(problem.X, 5, problem.y);
    const auto f = train_rf(X, X.labels, {.n_trees = 5, .seed = 2});
    const auto back = RandomForest::from_json(nlohmann::json::parse(f.to_json().dump()));
    EXPECT_EQ(back.trees(), f.trees());
    EXPECT_EQ(back.config(), f.config());
    SparseVector wide;
    wide.entries = {{9, 1.0}};
    EXPECT_THROW(f.predict(wide), DimensionError);
    EXPECT_THROW(train_rf(X, X.labels, {.n_trees = 0}), ConfigError);
}

}  // namespace
}  // namespace dnews
