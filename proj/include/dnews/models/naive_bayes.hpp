// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/models/prediction.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace dnews {

struct MultinomialNBConfig {
    double alpha = 1.0;
    /// Accept non-BOW (fractional) feature weights as pseudo-counts.
    bool allow_fractional = false;

    bool operator==(const MultinomialNBConfig&) const = default;
};

/// Multinomial naive Bayes with additive (Lidstone) smoothing.
class MultinomialNB {
public:
    MultinomialNB() = default;

    /// log_prior[c] = ln(n_c / n);
    /// log_likelihood[c][t] = ln((count(t,c) + a) / (sum_t count(t,c) + a*V)).
    static MultinomialNB fit(const FeatureMatrix& X, std::span<const Label> y, const MultinomialNBConfig& cfg = {}) {
        detail::check_training_set(X, y);
        if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) throw ConfigError("alpha must be a positive finite number");
        if (X.kind != FeatureKind::Bow && !cfg.allow_fractional) {
            throw TrainingError("multinomial naive Bayes expects BOW counts; enable allow_fractional for " +
                                std::string(to_string(X.kind)) + " input");
        }
        MultinomialNB m;
        m.config_ = cfg;
        const std::size_t V = X.n_cols;
        std::array<std::vector<double>, 2> counts{std::vector<double>(V, 0.0), std::vector<double>(V, 0.0)};
        std::array<double, 2> docs{};
        for (std::size_t i = 0; i < X.n_rows(); ++i) {
            const auto c = index_of(y[i]);
            docs[c] += 1.0;
            for (const auto& e : X.rows[i].entries) {
                if (e.value < 0.0) throw TrainingError("negative feature weight in naive Bayes input");
                counts[c][e.index] += e.value;
            }
        }
        const double n = static_cast<double>(X.n_rows());
        for (std::size_t c = 0; c < 2; ++c) {
            m.log_prior_[c] = std::log(docs[c] / n);
            double total = 0.0;
            for (double v : counts[c]) total += v;
            const double denom = std::log(total + cfg.alpha * static_cast<double>(V));
            m.log_likelihood_[c].resize(V);
            for (std::size_t t = 0; t < V; ++t) m.log_likelihood_[c][t] = std::log(counts[c][t] + cfg.alpha) - denom;
        }
        return m;
    }

    /// Unnormalized log joint per class, indexed by index_of(Label).
    std::array<double, 2> log_scores(const SparseVector& x) const {
        detail::check_dimensions(x, n_features());
        std::array<double, 2> s = log_prior_;
        for (std::size_t c = 0; c < 2; ++c) {
            for (const auto& e : x.entries) s[c] += e.value * log_likelihood_[c][e.index];
        }
        return s;
    }

    /// Softmax of log_scores.
    std::array<double, 2> posterior(const SparseVector& x) const {
        const auto s = log_scores(x);
        const double hi = std::max(s[0], s[1]);
        const double e0 = std::exp(s[0] - hi), e1 = std::exp(s[1] - hi);
        return {e0 / (e0 + e1), e1 / (e0 + e1)};
    }

    /// Argmax class (ties to Illegitimate); score = P(legitimate | x).
    Prediction predict(const SparseVector& x) const {
        const auto s = log_scores(x);
        const auto p = posterior(x);
        return {s[1] > s[0] ? Label::Legitimate : Label::Illegitimate, p[1]};
    }

    std::size_t n_features() const noexcept { return log_likelihood_[0].size(); }
    const std::array<double, 2>& log_prior() const noexcept { return log_prior_; }
    const std::vector<double>& log_likelihood(Label c) const noexcept { return log_likelihood_[index_of(c)]; }
    const MultinomialNBConfig& config() const noexcept { return config_; }

    nlohmann::json to_json() const {
        return {{"config", {{"alpha", config_.alpha}, {"allow_fractional", config_.allow_fractional}}},
                {"log_prior", log_prior_},
                {"log_likelihood", log_likelihood_}};
    }

    static MultinomialNB from_json(const nlohmann::json& j) {
        MultinomialNB m;
        m.config_.alpha = j.at("config").at("alpha").get<double>();
        m.config_.allow_fractional = j.at("config").at("allow_fractional").get<bool>();
        m.log_prior_ = j.at("log_prior").get<std::array<double, 2>>();
        m.log_likelihood_ = j.at("log_likelihood").get<std::array<std::vector<double>, 2>>();
        if (m.log_likelihood_[0].size() != m.log_likelihood_[1].size()) {
            throw ConfigError("naive Bayes likelihood tables differ in width");
        }
        return m;
    }

private:
    std::array<double, 2> log_prior_{};
    std::array<std::vector<double>, 2> log_likelihood_;
    MultinomialNBConfig config_;
};

inline MultinomialNB train_mnb(const FeatureMatrix& X, std::span<const Label> y, const MultinomialNBConfig& cfg = {}) {
    return MultinomialNB::fit(X, y, cfg);
}

}  // namespace dnews
