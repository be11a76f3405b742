// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

// Seeded random problems shared by the unit and acceptance suites.

#include "dnews/dnews.hpp"
#include "oracles/cart_oracle.hpp"
#include "oracles/finite_difference.hpp"
#include "oracles/nb_oracle.hpp"

#include <vector>

namespace dnews::oracle {

inline Label to_label(int y) { return y == 1 ? Label::Legitimate : Label::Illegitimate; }

inline FeatureMatrix to_matrix(const std::vector<std::vector<double>>& dense, std::size_t n_cols,
                               const std::vector<int>& y, FeatureKind kind = FeatureKind::Bow) {
    FeatureMatrix m;
    m.n_cols = n_cols;
    m.kind = kind;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        SparseVector v;
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (dense[i][j] != 0.0) v.entries.push_back({static_cast<std::uint32_t>(j), dense[i][j]});
        }
        m.rows.push_back(std::move(v));
        if (!y.empty()) m.labels.push_back(to_label(y[i]));
    }
    return m;
}

inline SparseVector to_sparse(const std::vector<int>& counts) {
    SparseVector v;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] != 0) v.entries.push_back({static_cast<std::uint32_t>(j), static_cast<double>(counts[j])});
    }
    return v;
}

/// V <= 5 terms, 2..6 documents with counts <= 3, both classes present.
inline NbCorpus random_nb_corpus(Rng& rng) {
    NbCorpus c;
    c.vocab_size = 1 + rng.below(5);
    const std::size_t n = 2 + rng.below(5);
    for (std::size_t d = 0; d < n; ++d) {
        std::vector<int> row(c.vocab_size);
        for (auto& v : row) v = static_cast<int>(rng.below(4));
        c.counts.push_back(row);
        c.labels.push_back(d < 2 ? static_cast<int>(d) : static_cast<int>(rng.below(2)));
    }
    return c;
}

inline FeatureMatrix nb_matrix(const NbCorpus& c) {
    std::vector<std::vector<double>> dense;
    for (const auto& row : c.counts) dense.emplace_back(row.begin(), row.end());
    return to_matrix(dense, c.vocab_size, c.labels);
}

struct CartDataset {
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    std::size_t V = 0;
};

/// n <= 12 rows, V <= 4 features with small integer values, both classes present.
inline CartDataset random_cart_dataset(Rng& rng) {
    CartDataset d;
    d.V = 1 + rng.below(4);
    const std::size_t n = 2 + rng.below(11);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(d.V);
        for (auto& v : row) v = static_cast<double>(rng.below(4));
        d.X.push_back(row);
        d.y.push_back(i < 2 ? static_cast<int>(i) : static_cast<int>(rng.below(2)));
    }
    return d;
}

/// n x V with roughly 30% nonzeros in [0, 3), both classes present.
inline DenseProblem random_sparse_problem(Rng& rng, std::size_t n, std::size_t V, double lambda) {
    DenseProblem p;
    p.lambda = lambda;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(V, 0.0);
        for (auto& v : row) {
            if (rng.uniform() < 0.3) v = 3.0 * rng.uniform();
        }
        p.X.push_back(row);
        p.y.push_back(i < 2 ? static_cast<int>(i) : static_cast<int>(rng.below(2)));
    }
    return p;
}

}  // namespace dnews::oracle
