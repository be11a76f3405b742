// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/csv.hpp"
#include "dnews/error.hpp"
#include "dnews/label.hpp"
#include "dnews/textprep.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dnews {

/// 2x2 confusion matrix with Legitimate as the positive class.
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

inline ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> truth) {
    if (predictions.size() != truth.size()) {
        throw Error("confusion: " + std::to_string(predictions.size()) + " predictions vs " +
                    std::to_string(truth.size()) + " truth labels");
    }
    if (truth.empty()) throw Error("confusion: no predictions");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool pred_pos = predictions[i] == kPositiveLabel;
        const bool true_pos = truth[i] == kPositiveLabel;
        if (pred_pos && true_pos) ++cm.tp;
        else if (pred_pos) ++cm.fp;
        else if (true_pos) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

/// Zero denominators give zero precision, recall or F1.
inline Metrics metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw Error("metrics: empty confusion matrix");
    auto ratio = [](std::uint64_t a, std::uint64_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
    Metrics m;
    m.accuracy = ratio(cm.tp + cm.tn, cm.total());
    m.precision = ratio(cm.tp, cm.tp + cm.fp);
    m.recall = ratio(cm.tp, cm.tp + cm.fn);
    m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

/// Fraction rendered as a percentage with two decimals, ties to even.
inline std::string format_percent(double fraction) {
    const double hundredths = std::nearbyint(fraction * 10000.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", hundredths / 100.0);
    return buf;
}

inline nlohmann::json to_json(const ConfusionMatrix& cm) {
    return {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

inline nlohmann::json to_json(const Metrics& m) {
    return {{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

inline nlohmann::json percent_json(const Metrics& m) {
    return {{"accuracy", format_percent(m.accuracy)},
            {"precision", format_percent(m.precision)},
            {"recall", format_percent(m.recall)},
            {"f1", format_percent(m.f1)}};
}

// --- recovering integer cells from published percentages ------------------

/// Largest precision/recall deviation (percentage points) still accepted as
/// a two-decimal rounding of the cells' exact values.
inline constexpr double kReconstructionTolerancePp = 0.005;
/// Largest accuracy deviation accepted when comparing against a reported accuracy.
inline constexpr double kAccuracyTolerancePp = 0.01;

struct Reconstruction {
    ConfusionMatrix cells;
    double residual_pp = 0.0;  // max |recomputed - reported| over precision, recall
    bool consistent = false;   // residual_pp <= kReconstructionTolerancePp
};

/// Exhaustive search over tp in [0, n_pos], fp in [0, n_neg] for the cells
/// whose precision and recall are closest (minimax) to the given percentages.
/// Ties keep the smallest (tp, fp).
inline Reconstruction reconstruct_confusion(double precision_pct, double recall_pct, std::uint64_t n_pos,
                                            std::uint64_t n_neg) {
    if (!(precision_pct > 0.0 && precision_pct <= 100.0) || !(recall_pct > 0.0 && recall_pct <= 100.0)) {
        throw ConfigError("reconstruct_confusion: precision and recall must lie in (0, 100]");
    }
    if (n_pos == 0 || n_neg == 0) throw ConfigError("reconstruct_confusion: class sizes must be positive");
    Reconstruction best;
    best.residual_pp = INFINITY;
    for (std::uint64_t tp = 0; tp <= n_pos; ++tp) {
        const double recall = 100.0 * static_cast<double>(tp) / static_cast<double>(n_pos);
        for (std::uint64_t fp = 0; fp <= n_neg; ++fp) {
            const double precision = tp + fp == 0 ? 0.0 : 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp);
            const double r = std::max(std::abs(precision - precision_pct), std::abs(recall - recall_pct));
            if (r < best.residual_pp) {
                best.residual_pp = r;
                best.cells = {tp, fp, n_pos - tp, n_neg - fp};
            }
        }
    }
    best.consistent = best.residual_pp <= kReconstructionTolerancePp;
    return best;
}

/// One row of a published results table, all values in percent.
struct ReportedRow {
    std::string model;
    std::string features;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct ReportedTable {
    std::uint64_t n_pos = 0;
    std::uint64_t n_neg = 0;
    std::vector<ReportedRow> rows;
};

struct RowCheck {
    ReportedRow reported;
    Reconstruction reconstruction;
    Metrics recomputed;
    double accuracy_residual_pp = 0.0;
    double f1_residual_pp = 0.0;  // informational
    bool consistent = false;      // cells fit precision/recall AND reproduce accuracy
};

inline ReportedTable reported_table_from_json(const nlohmann::json& j) {
    ReportedTable t;
    try {
        t.n_pos = j.at("n_pos").get<std::uint64_t>();
        t.n_neg = j.at("n_neg").get<std::uint64_t>();
        for (const auto& r : j.at("rows")) {
            t.rows.push_back({r.at("model").get<std::string>(), r.at("features").get<std::string>(),
                              r.at("accuracy").get<double>(), r.at("precision").get<double>(),
                              r.at("recall").get<double>(), r.at("f1").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid reported table: ") + e.what());
    }
    return t;
}

inline ReportedTable load_reported_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("table '" + path.string() + "': " + e.what());
    }
    return reported_table_from_json(j);
}

inline std::vector<RowCheck> check_reported_table(const ReportedTable& table) {
    std::vector<RowCheck> out;
    for (const auto& row : table.rows) {
        RowCheck c;
        c.reported = row;
        c.reconstruction = reconstruct_confusion(row.precision, row.recall, table.n_pos, table.n_neg);
        c.recomputed = metrics(c.reconstruction.cells);
        c.accuracy_residual_pp = std::abs(100.0 * c.recomputed.accuracy - row.accuracy);
        c.f1_residual_pp = std::abs(100.0 * c.recomputed.f1 - row.f1);
        c.consistent = c.reconstruction.consistent && c.accuracy_residual_pp <= kAccuracyTolerancePp;
        out.push_back(std::move(c));
    }
    return out;
}

inline nlohmann::json to_json(const RowCheck& c) {
    return {{"model", c.reported.model},
            {"features", c.reported.features},
            {"reported", {{"accuracy", c.reported.accuracy}, {"precision", c.reported.precision},
                          {"recall", c.reported.recall}, {"f1", c.reported.f1}}},
            {"cells", to_json(c.reconstruction.cells)},
            {"recomputed", percent_json(c.recomputed)},
            {"precision_recall_residual_pp", c.reconstruction.residual_pp},
            {"accuracy_residual_pp", c.accuracy_residual_pp},
            {"f1_residual_pp", c.f1_residual_pp},
            {"consistent", c.consistent}};
}

// --- term frequency reports ------------------------------------------------

struct TermCount {
    std::string term;
    std::uint64_t count = 0;
    bool operator==(const TermCount&) const = default;
};

/// Ranked by count descending, ties lexicographic; at most k entries.
struct FrequencyReport {
    Label label = Label::Legitimate;
    std::vector<TermCount> terms;
};

inline FrequencyReport top_k_terms(std::span<const TokenizedDoc> docs, Label label, std::size_t k) {
    if (k == 0) throw ConfigError("top_k_terms: k must be >= 1");
    std::map<std::string, std::uint64_t> counts;
    for (const auto& d : docs) {
        if (d.label != label) continue;
        for (const auto& t : d.tokens) ++counts[t];
    }
    FrequencyReport r{label, {}};
    r.terms.reserve(counts.size());
    for (auto& [t, c] : counts) r.terms.push_back({t, c});
    std::ranges::stable_sort(r.terms, [](const TermCount& a, const TermCount& b) { return a.count > b.count; });
    if (r.terms.size() > k) r.terms.resize(k);
    return r;
}

/// Columns: rank, term, count.
inline std::string format_frequency_csv(const FrequencyReport& report) {
    std::string out = csv::format_row({"rank", "term", "count"});
    for (std::size_t i = 0; i < report.terms.size(); ++i) {
        out += csv::format_row({std::to_string(i + 1), report.terms[i].term, std::to_string(report.terms[i].count)});
    }
    return out;
}

}  // namespace dnews
