// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/models/prediction.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dnews {

struct LogisticRegressionConfig {
    double learning_rate = 0.1;
    std::size_t epochs = 500;
    double l2_lambda = 1e-4;
    std::uint64_t seed = 0;  // weights start at zero; recorded for provenance
    /// Replace learning_rate by 1/L from the objective's Lipschitz bound.
    bool lipschitz_step = false;

    bool operator==(const LogisticRegressionConfig&) const = default;
};

inline double sigmoid(double z) noexcept {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// log(1 + e^z) without overflow.
inline double softplus(double z) noexcept { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

/// Mean binary cross-entropy plus (lambda/2)||w||^2 over a sparse design.
/// The bias is not regularized. y = 1 for legitimate.
class LogisticObjective {
public:
    LogisticObjective(const FeatureMatrix& X, std::span<const Label> y, double l2_lambda)
        : X_(X), y_(y), lambda_(l2_lambda) {}

    std::size_t dimension() const noexcept { return X_.n_cols; }

    double loss(std::span<const double> w, double b) const {
        double total = 0.0;
        for (std::size_t i = 0; i < X_.n_rows(); ++i) {
            const double z = X_.rows[i].dot(w) + b;
            total += softplus(z) - target(i) * z;
        }
        return total / static_cast<double>(X_.n_rows()) + 0.5 * lambda_ * squared(w);
    }

    /// Writes dL/dw into `grad_w` (size V) and returns the loss.
    double gradient(std::span<const double> w, double b, std::span<double> grad_w, double& grad_b) const {
        const double inv_n = 1.0 / static_cast<double>(X_.n_rows());
        for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] = lambda_ * w[j];
        grad_b = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < X_.n_rows(); ++i) {
            const double z = X_.rows[i].dot(w) + b;
            total += softplus(z) - target(i) * z;
            const double r = (sigmoid(z) - target(i)) * inv_n;
            for (const auto& e : X_.rows[i].entries) grad_w[e.index] += r * e.value;
            grad_b += r;
        }
        return total * inv_n + 0.5 * lambda_ * squared(w);
    }

    /// Upper bound on the Hessian's spectral norm:
    /// (1/4n) * ||[X 1]||_F^2 + lambda.
    double lipschitz_bound() const {
        double fro = 0.0;
        for (const auto& row : X_.rows) fro += row.squared_norm() + 1.0;
        return fro / (4.0 * static_cast<double>(X_.n_rows())) + lambda_;
    }

private:
    double target(std::size_t i) const { return y_[i] == Label::Legitimate ? 1.0 : 0.0; }
    static double squared(std::span<const double> w) {
        double s = 0.0;
        for (double v : w) s += v * v;
        return s;
    }

    const FeatureMatrix& X_;
    std::span<const Label> y_;
    double lambda_;
};

class LogisticRegression {
public:
    LogisticRegression() = default;

    /// Full-batch gradient descent from zero weights for exactly cfg.epochs
    /// steps. loss_trace() holds epochs + 1 values (before each step, then final).
    static LogisticRegression fit(const FeatureMatrix& X, std::span<const Label> y,
                                  const LogisticRegressionConfig& cfg = {}) {
        detail::check_training_set(X, y);
        LogisticObjective objective(X, y, cfg.l2_lambda);
        LogisticRegression m;
        m.config_ = cfg;
        m.weights_.assign(X.n_cols, 0.0);
        m.step_ = cfg.lipschitz_step ? 1.0 / objective.lipschitz_bound() : cfg.learning_rate;
        std::vector<double> gw(X.n_cols);
        double gb = 0.0;
        m.loss_trace_.reserve(cfg.epochs + 1);
        for (std::size_t epoch = 0; epoch <= cfg.epochs; ++epoch) {
            const double loss = objective.gradient(m.weights_, m.bias_, gw, gb);
            if (!std::isfinite(loss)) {
                throw TrainingError("divergence: non-finite loss at epoch " + std::to_string(epoch));
            }
            m.loss_trace_.push_back(loss);
            if (epoch == cfg.epochs) break;
            for (std::size_t j = 0; j < gw.size(); ++j) m.weights_[j] -= m.step_ * gw[j];
            m.bias_ -= m.step_ * gb;
        }
        return m;
    }

    double decision(const SparseVector& x) const {
        detail::check_dimensions(x, weights_.size());
        return x.dot(weights_) + bias_;
    }

    double predict_proba(const SparseVector& x) const { return sigmoid(decision(x)); }

    /// Legitimate only when p > 0.5; p == 0.5 is Illegitimate.
    Prediction predict(const SparseVector& x) const {
        const double p = predict_proba(x);
        return {p > 0.5 ? Label::Legitimate : Label::Illegitimate, p};
    }

    std::size_t n_features() const noexcept { return weights_.size(); }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }
    double step_size() const noexcept { return step_; }
    const LogisticRegressionConfig& config() const noexcept { return config_; }
    const std::vector<double>& loss_trace() const noexcept { return loss_trace_; }

    static LogisticRegression from_parameters(std::vector<double> w, double b) {
        LogisticRegression m;
        m.weights_ = std::move(w);
        m.bias_ = b;
        return m;
    }

    nlohmann::json to_json() const {
        return {{"weights", weights_},
                {"bias", bias_},
                {"step_size", step_},
                {"config",
                 {{"learning_rate", config_.learning_rate},
                  {"epochs", config_.epochs},
                  {"l2_lambda", config_.l2_lambda},
                  {"seed", config_.seed},
                  {"lipschitz_step", config_.lipschitz_step}}},
                {"loss_trace", loss_trace_}};
    }

    static LogisticRegression from_json(const nlohmann::json& j) {
        LogisticRegression m;
        m.weights_ = j.at("weights").get<std::vector<double>>();
        m.bias_ = j.at("bias").get<double>();
        m.step_ = j.value("step_size", 0.0);
        const auto& c = j.at("config");
        m.config_.learning_rate = c.at("learning_rate").get<double>();
        m.config_.epochs = c.at("epochs").get<std::size_t>();
        m.config_.l2_lambda = c.at("l2_lambda").get<double>();
        m.config_.seed = c.at("seed").get<std::uint64_t>();
        m.config_.lipschitz_step = c.value("lipschitz_step", false);
        m.loss_trace_ = j.value("loss_trace", std::vector<double>{});
        return m;
    }

private:
    std::vector<double> weights_;
    double bias_ = 0.0;
    double step_ = 0.0;
    LogisticRegressionConfig config_;
    std::vector<double> loss_trace_;
};

inline LogisticRegression train_lr(const FeatureMatrix& X, std::span<const Label> y,
                                   const LogisticRegressionConfig& cfg = {}) {
    return LogisticRegression::fit(X, y, cfg);
}

}  // namespace dnews
