// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/error.hpp"
#include "dnews/features.hpp"
#include "dnews/label.hpp"

#include <span>
#include <string>

namespace dnews {

/// `score` is the support for the positive (legitimate) class: a probability
/// for LR and MNB, a vote fraction for RF and the ensemble.
struct Prediction {
    Label label = Label::Illegitimate;
    double score = 0.0;
};

namespace detail {

inline void check_dimensions(const SparseVector& x, std::size_t n_features) {
    if (x.extent() > n_features) {
        throw DimensionError("feature index " + std::to_string(x.extent() - 1) + " >= model width " +
                             std::to_string(n_features));
    }
}

inline void check_training_set(const FeatureMatrix& X, std::span<const Label> y) {
    if (X.n_rows() == 0) throw TrainingError("empty training matrix");
    if (y.size() != X.n_rows()) throw TrainingError("label count does not match row count");
    bool seen[2] = {false, false};
    for (Label l : y) seen[index_of(l)] = true;
    if (!seen[0] || !seen[1]) throw TrainingError("both classes must be present in the training set");
    for (const auto& row : X.rows) check_dimensions(row, X.n_cols);
}

}  // namespace detail

template <class M>
concept Classifier = requires(const M& m, const SparseVector& x) {
    { m.predict(x) } -> std::same_as<Prediction>;
    { m.n_features() } -> std::convertible_to<std::size_t>;
};

template <Classifier M>
Prediction predict(const M& model, const SparseVector& x) {
    return model.predict(x);
}

}  // namespace dnews
