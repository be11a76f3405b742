// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

// Brute-force Bayes' rule for the multinomial event model. Documents are
// expanded into token sequences and counted one occurrence at a time; the
// class-conditional probability of a query is the full multinomial pmf,
// coefficient included, evaluated in ordinary probability space.

#include <cmath>
#include <cstddef>
#include <vector>

namespace dnews::oracle {

struct NbCorpus {
    std::size_t vocab_size = 0;
    std::vector<std::vector<int>> counts;  // dense per-document term counts
    std::vector<int> labels;               // 0 or 1
};

inline double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/// P(class | query) for both classes.
inline std::vector<double> nb_posterior(const NbCorpus& corpus, const std::vector<int>& query, double alpha) {
    const std::size_t V = corpus.vocab_size;
    std::vector<double> prior(2, 0.0);
    std::vector<std::vector<double>> occurrences(2, std::vector<double>(V, 0.0));
    std::vector<double> total(2, 0.0);
    for (std::size_t d = 0; d < corpus.counts.size(); ++d) {
        const int c = corpus.labels[d];
        prior[c] += 1.0;
        std::vector<std::size_t> tokens;
        for (std::size_t t = 0; t < V; ++t) {
            for (int k = 0; k < corpus.counts[d][t]; ++k) tokens.push_back(t);
        }
        for (auto t : tokens) {
            occurrences[c][t] += 1.0;
            total[c] += 1.0;
        }
    }
    for (auto& p : prior) p /= static_cast<double>(corpus.counts.size());

    int length = 0;
    double coefficient_den = 1.0;
    for (int q : query) {
        length += q;
        coefficient_den *= factorial(q);
    }
    const double coefficient = factorial(length) / coefficient_den;

    std::vector<double> joint(2);
    for (int c = 0; c < 2; ++c) {
        double pmf = coefficient;
        for (std::size_t t = 0; t < V; ++t) {
            const double theta = (occurrences[c][t] + alpha) / (total[c] + alpha * static_cast<double>(V));
            pmf *= std::pow(theta, query[t]);
        }
        joint[c] = prior[c] * pmf;
    }
    const double evidence = joint[0] + joint[1];
    return {joint[0] / evidence, joint[1] / evidence};
}

}  // namespace dnews::oracle
