// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/hash.hpp"
#include "dnews/models/prediction.hpp"
#include "dnews/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <span>
#include <thread>
#include <vector>

namespace dnews {

struct RandomForestConfig {
    std::size_t n_trees = 100;
    std::size_t max_depth = 16;
    std::size_t min_leaf = 1;
    std::size_t features_per_split = 0;  // 0 selects ceil(sqrt(V))
    bool bootstrap = true;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 selects hardware concurrency; never affects the result

    bool operator==(const RandomForestConfig& o) const {
        return n_trees == o.n_trees && max_depth == o.max_depth && min_leaf == o.min_leaf &&
               features_per_split == o.features_per_split && bootstrap == o.bootstrap && seed == o.seed;
    }
};

inline std::size_t resolve_features_per_split(std::size_t requested, std::size_t n_features) {
    if (requested == 0) {
        auto m = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_features)));
        while (m * m < n_features) ++m;
        while (m > 1 && (m - 1) * (m - 1) >= n_features) --m;
        requested = m;
    }
    return std::clamp<std::size_t>(requested, 1, std::max<std::size_t>(n_features, 1));
}

/// Binary CART tree over sparse rows. Internal nodes send x[f] <= threshold left.
class DecisionTree {
public:
    struct Node {
        std::int32_t feature = -1;  // -1 for a leaf
        double threshold = 0.0;
        std::uint32_t left = 0;
        std::uint32_t right = 0;
        Label label = Label::Illegitimate;
        std::array<std::uint32_t, 2> counts{};  // training rows per class reaching the node

        bool is_leaf() const noexcept { return feature < 0; }
        bool operator==(const Node&) const = default;
    };

    struct Params {
        std::size_t max_depth = 16;
        std::size_t min_leaf = 1;
        std::size_t features_per_split = 1;
    };

    /// Grows a tree over `rows` (indices into X, duplicates allowed).
    /// `rng` drives the per-node candidate feature sampling.
    static DecisionTree grow(const FeatureMatrix& X, std::span<const Label> y, std::vector<std::uint32_t> rows,
                             const Params& params, Rng& rng) {
        DecisionTree t;
        Builder b{X, y, params, rng, t.nodes_, {}};
        b.build(std::move(rows), 0);
        return t;
    }

    Label predict(const SparseVector& x) const {
        std::uint32_t i = 0;
        while (!nodes_[i].is_leaf()) {
            const auto& n = nodes_[i];
            i = x.at(static_cast<std::uint32_t>(n.feature)) <= n.threshold ? n.left : n.right;
        }
        return nodes_[i].label;
    }

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t depth() const { return depth_from(0); }

    nlohmann::json to_json() const {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& n : nodes_) {
            nodes.push_back({n.feature, n.threshold, n.left, n.right, index_of(n.label), n.counts[0], n.counts[1]});
        }
        return {{"nodes", std::move(nodes)}};
    }

    static DecisionTree from_json(const nlohmann::json& j) {
        DecisionTree t;
        for (const auto& a : j.at("nodes")) {
            Node n;
            n.feature = a.at(0).get<std::int32_t>();
            n.threshold = a.at(1).get<double>();
            n.left = a.at(2).get<std::uint32_t>();
            n.right = a.at(3).get<std::uint32_t>();
            n.label = a.at(4).get<int>() == 1 ? Label::Legitimate : Label::Illegitimate;
            n.counts = {a.at(5).get<std::uint32_t>(), a.at(6).get<std::uint32_t>()};
            t.nodes_.push_back(n);
        }
        if (t.nodes_.empty()) throw ConfigError("decision tree without nodes");
        for (const auto& n : t.nodes_) {
            if (!n.is_leaf() && (n.left >= t.nodes_.size() || n.right >= t.nodes_.size())) {
                throw ConfigError("decision tree child index out of range");
            }
        }
        return t;
    }

    bool operator==(const DecisionTree&) const = default;

private:
    using u128 = unsigned __int128;

    std::size_t depth_from(std::uint32_t i) const {
        const auto& n = nodes_[i];
        return n.is_leaf() ? 0 : 1 + std::max(depth_from(n.left), depth_from(n.right));
    }

    struct Builder {
        const FeatureMatrix& X;
        std::span<const Label> y;
        const Params& params;
        Rng& rng;
        std::vector<Node>& nodes;
        std::vector<std::uint32_t> perm;

        struct Split {
            std::int32_t feature = -1;
            double threshold = 0.0;
            // Split quality Q = S_L/n_L + S_R/n_R (S = sum of squared class
            // counts), held as the exact fraction num/den. Larger Q means a
            // larger Gini decrease.
            u128 num = 0;
            u128 den = 1;
        };

        std::uint32_t build(std::vector<std::uint32_t> rows, std::size_t depth) {
            const auto id = static_cast<std::uint32_t>(nodes.size());
            nodes.emplace_back();
            std::array<std::uint32_t, 2> counts{};
            for (auto r : rows) ++counts[index_of(y[r])];
            nodes[id].counts = counts;
            nodes[id].label = counts[1] > counts[0] ? Label::Legitimate : Label::Illegitimate;

            const bool pure = counts[0] == 0 || counts[1] == 0;
            if (pure || depth >= params.max_depth || rows.size() < 2 * params.min_leaf) return id;

            const Split best = find_split(rows, counts);
            if (best.feature < 0) return id;

            std::vector<std::uint32_t> left, right;
            for (auto r : rows) {
                (X.rows[r].at(static_cast<std::uint32_t>(best.feature)) <= best.threshold ? left : right).push_back(r);
            }
            rows.clear();
            rows.shrink_to_fit();
            nodes[id].feature = best.feature;
            nodes[id].threshold = best.threshold;
            const auto l = build(std::move(left), depth + 1);
            const auto r = build(std::move(right), depth + 1);
            nodes[id].left = l;
            nodes[id].right = r;
            return id;
        }

        std::vector<std::uint32_t> candidate_features() {
            const std::size_t V = X.n_cols;
            const std::size_t m = params.features_per_split;
            std::vector<std::uint32_t> out;
            if (m >= V) {
                out.resize(V);
                std::iota(out.begin(), out.end(), 0u);
                return out;
            }
            perm.resize(V);
            std::iota(perm.begin(), perm.end(), 0u);
            for (std::size_t i = 0; i < m; ++i) {
                const auto j = i + static_cast<std::size_t>(rng.below(V - i));
                std::swap(perm[i], perm[j]);
            }
            out.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
            std::ranges::sort(out);
            return out;
        }

        // Ties keep the earliest candidate: lowest feature index, then lowest threshold.
        Split find_split(const std::vector<std::uint32_t>& rows, const std::array<std::uint32_t, 2>& parent) {
            const u128 n = rows.size();
            const u128 s_parent = u128(parent[0]) * parent[0] + u128(parent[1]) * parent[1];
            Split best;
            // Start from the parent's own quality so only strict improvements pass.
            best.num = s_parent;
            best.den = n;
            std::vector<std::pair<double, Label>> values(rows.size());
            for (auto f : candidate_features()) {
                for (std::size_t i = 0; i < rows.size(); ++i) values[i] = {X.rows[rows[i]].at(f), y[rows[i]]};
                std::ranges::sort(values, {}, &std::pair<double, Label>::first);
                if (values.front().first == values.back().first) continue;
                std::array<std::uint64_t, 2> lc{};
                for (std::size_t i = 0; i + 1 < values.size(); ++i) {
                    ++lc[index_of(values[i].second)];
                    if (values[i].first == values[i + 1].first) continue;
                    const std::uint64_t nl = i + 1, nr = rows.size() - nl;
                    if (nl < params.min_leaf || nr < params.min_leaf) continue;
                    const std::uint64_t r0 = parent[0] - lc[0], r1 = parent[1] - lc[1];
                    const u128 sl = u128(lc[0]) * lc[0] + u128(lc[1]) * lc[1];
                    const u128 sr = u128(r0) * r0 + u128(r1) * r1;
                    const u128 num = sl * nr + sr * nl;
                    const u128 den = u128(nl) * nr;
                    if (num * best.den > best.num * den) {
                        best.feature = static_cast<std::int32_t>(f);
                        best.threshold = 0.5 * (values[i].first + values[i + 1].first);
                        best.num = num;
                        best.den = den;
                    }
                }
            }
            return best;
        }
    };

    std::vector<Node> nodes_;
};

class RandomForest {
public:
    RandomForest() = default;

    /// Trees are grown independently, each from its own stream
    /// derive_seed(seed, "rf/tree", t), so the result does not depend on threads.
    static RandomForest fit(const FeatureMatrix& X, std::span<const Label> y, const RandomForestConfig& cfg = {}) {
        detail::check_training_set(X, y);
        if (cfg.n_trees == 0) throw ConfigError("n_trees must be >= 1");
        if (cfg.min_leaf == 0) throw ConfigError("min_leaf must be >= 1");
        RandomForest f;
        f.config_ = cfg;
        f.n_features_ = X.n_cols;
        const DecisionTree::Params params{cfg.max_depth, cfg.min_leaf,
                                          resolve_features_per_split(cfg.features_per_split, X.n_cols)};
        f.config_.features_per_split = params.features_per_split;
        f.trees_.resize(cfg.n_trees);

        const auto n = static_cast<std::uint32_t>(X.n_rows());
        auto grow_one = [&](std::size_t t) {
            Rng rng(derive_seed(cfg.seed, "rf/tree", t));
            std::vector<std::uint32_t> rows(n);
            if (cfg.bootstrap) {
                for (auto& r : rows) r = static_cast<std::uint32_t>(rng.below(n));
            } else {
                std::iota(rows.begin(), rows.end(), 0u);
            }
            f.trees_[t] = DecisionTree::grow(X, y, std::move(rows), params, rng);
        };

        unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.n_trees));
        if (threads <= 1) {
            for (std::size_t t = 0; t < cfg.n_trees; ++t) grow_one(t);
            return f;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < threads; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t t = next++; t < cfg.n_trees; t = next++) {
                        try {
                            grow_one(t);
                        } catch (...) {
                            std::lock_guard lock(error_mutex);
                            if (!error) error = std::current_exception();
                        }
                    }
                });
            }
        }
        if (error) std::rethrow_exception(error);
        return f;
    }

    std::size_t legitimate_votes(const SparseVector& x) const {
        detail::check_dimensions(x, n_features_);
        std::size_t votes = 0;
        for (const auto& t : trees_) votes += t.predict(x) == Label::Legitimate;
        return votes;
    }

    /// Majority of tree votes (ties to Illegitimate); score = legitimate vote fraction.
    Prediction predict(const SparseVector& x) const {
        const auto votes = legitimate_votes(x);
        return {2 * votes > trees_.size() ? Label::Legitimate : Label::Illegitimate,
                static_cast<double>(votes) / static_cast<double>(trees_.size())};
    }

    std::size_t n_features() const noexcept { return n_features_; }
    const std::vector<DecisionTree>& trees() const noexcept { return trees_; }
    const RandomForestConfig& config() const noexcept { return config_; }

    nlohmann::json to_json() const {
        nlohmann::json trees = nlohmann::json::array();
        for (const auto& t : trees_) trees.push_back(t.to_json());
        return {{"config",
                 {{"n_trees", config_.n_trees},
                  {"max_depth", config_.max_depth},
                  {"min_leaf", config_.min_leaf},
                  {"features_per_split", config_.features_per_split},
                  {"bootstrap", config_.bootstrap},
                  {"seed", config_.seed}}},
                {"n_features", n_features_},
                {"trees", std::move(trees)}};
    }

    static RandomForest from_json(const nlohmann::json& j) {
        RandomForest f;
        const auto& c = j.at("config");
        f.config_.n_trees = c.at("n_trees").get<std::size_t>();
        f.config_.max_depth = c.at("max_depth").get<std::size_t>();
        f.config_.min_leaf = c.at("min_leaf").get<std::size_t>();
        f.config_.features_per_split = c.at("features_per_split").get<std::size_t>();
        f.config_.bootstrap = c.at("bootstrap").get<bool>();
        f.config_.seed = c.at("seed").get<std::uint64_t>();
        f.n_features_ = j.at("n_features").get<std::size_t>();
        for (const auto& t : j.at("trees")) f.trees_.push_back(DecisionTree::from_json(t));
        if (f.trees_.size() != f.config_.n_trees) throw ConfigError("forest tree count mismatch");
        return f;
    }

private:
    std::vector<DecisionTree> trees_;
    std::size_t n_features_ = 0;
    RandomForestConfig config_;
};

inline RandomForest train_rf(const FeatureMatrix& X, std::span<const Label> y, const RandomForestConfig& cfg = {}) {
    return RandomForest::fit(X, y, cfg);
}

}  // namespace dnews
