// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

// train / evaluate / classify as reusable functions; the CLI is a thin shell
// over these.

#include "dnews/bundle.hpp"
#include "dnews/eval.hpp"
#include "dnews/wordcloud.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace dnews {

inline constexpr const char* kReportFormat = "dnews-report/1";

/// Built-in defaults, optionally replaced by the prep config file and then
/// by a standalone stopword list.
inline PrepConfig resolve_prep_config(const RunConfig& rc) {
    PrepConfig p = rc.paths.prep_config.empty() ? PrepConfig::defaults() : load_prep_config(rc.paths.prep_config);
    if (!rc.paths.stopwords.empty()) {
        p.stopwords = load_stopwords(rc.paths.stopwords);
        validate(p);
    }
    return p;
}

struct PreparedSplit {
    SplitCorpus split;
    std::vector<TokenizedDoc> train_docs;
    std::vector<TokenizedDoc> test_docs;
    Vocabulary vocabulary;
};

/// Split, preprocess both halves and build the vocabulary from train only.
inline PreparedSplit prepare_split(const Corpus& corpus, const RunConfig& rc, const PrepConfig& prep) {
    PreparedSplit p{stratified_split(corpus, rc.train_ratio, split_seed(rc)), {}, {}, {}};
    p.train_docs = prepare_all(p.split.train.articles(), prep);
    p.test_docs = prepare_all(p.split.test.articles(), prep);
    p.vocabulary = build_vocabulary(p.train_docs, rc.vocabulary);
    return p;
}

namespace detail {

inline std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

inline nlohmann::json class_counts_json(const Corpus& c) {
    return {{"illegitimate", c.class_count(Label::Illegitimate)},
            {"legitimate", c.class_count(Label::Legitimate)},
            {"total", c.size()}};
}

}  // namespace detail

/// Trains every requested model on every requested feature kind. Writes a
/// human-readable log (split sizes, vocabulary, LR loss trace) to `log`.
inline ModelBundle train_bundle(const Corpus& corpus, const RunConfig& rc, const PrepConfig& prep, std::ostream& log) {
    auto prepared = prepare_split(corpus, rc, prep);
    const auto& split = prepared.split;
    log << "split: train=" << split.train.size() << " (illegitimate=" << split.train.class_count(Label::Illegitimate)
        << ", legitimate=" << split.train.class_count(Label::Legitimate) << ") test=" << split.test.size()
        << " (illegitimate=" << split.test.class_count(Label::Illegitimate)
        << ", legitimate=" << split.test.class_count(Label::Legitimate) << ")\n";
    log << "vocabulary: " << prepared.vocabulary.size() << " terms, sha256 " << prepared.vocabulary.hash() << "\n";

    ModelBundle bundle;
    bundle.run = rc;
    bundle.prep = prep;
    bundle.vocabulary = std::move(prepared.vocabulary);
    bundle.train_counts = split.train.class_counts();
    bundle.test_counts = split.test.class_counts();

    for (FeatureKind kind : feature_kinds(rc.features)) {
        const auto X = build_feature_matrix(prepared.train_docs, bundle.vocabulary, kind);
        const auto& y = X.labels;
        const std::string tag(to_string(kind));
        KindModels m;
        if (rc.wants("lr")) {
            auto cfg = rc.lr;
            cfg.seed = lr_seed(rc);
            m.lr = train_lr(X, y, cfg);
            const auto& trace = m.lr->loss_trace();
            log << "lr[" << tag << "]: step " << detail::fixed(m.lr->step_size(), 6) << ", loss trace";
            const std::size_t stride = std::max<std::size_t>(1, (trace.size() - 1) / 10);
            for (std::size_t e = 0; e < trace.size(); e += stride) {
                log << " " << e << ":" << detail::fixed(trace[e], 6);
            }
            if ((trace.size() - 1) % stride != 0) log << " " << trace.size() - 1 << ":" << detail::fixed(trace.back(), 6);
            log << "\n";
        }
        if (rc.wants("rf")) {
            auto cfg = rc.rf;
            cfg.seed = rf_seed(rc);
            m.rf = train_rf(X, y, cfg);
            log << "rf[" << tag << "]: " << m.rf->trees().size() << " trees, " << m.rf->config().features_per_split
                << " features per split\n";
        }
        if (rc.wants("mnb")) {
            auto cfg = rc.mnb;
            // TF-IDF weights are used as pseudo-counts.
            cfg.allow_fractional = kind != FeatureKind::Bow;
            m.mnb = train_mnb(X, y, cfg);
            log << "mnb[" << tag << "]: alpha " << cfg.alpha << "\n";
        }
        bundle.models.emplace(kind, std::move(m));
    }
    return bundle;
}

inline ModelBundle run_train(const RunConfig& rc, std::ostream& log) {
    if (rc.paths.model_bundle.empty()) throw ConfigError("no output path for the model bundle");
    const auto corpus = load_corpus(rc.paths.corpus);
    auto bundle = train_bundle(corpus, rc, resolve_prep_config(rc), log);
    save_bundle(bundle, rc.paths.model_bundle);
    log << "bundle: " << rc.paths.model_bundle << "\n";
    return bundle;
}

struct EvaluateOptions {
    std::string bundle;
    std::string corpus;
    std::string report_dir;
    std::string paper_check;  // reported-table JSON; empty disables the check
    bool svg_clouds = false;
};

namespace detail {

inline nlohmann::json result_json(const std::vector<Label>& predicted, const std::vector<Label>& truth) {
    const auto cm = confusion(predicted, truth);
    const auto m = metrics(cm);
    return {{"confusion", to_json(cm)}, {"metrics", to_json(m)}, {"percent", percent_json(m)}};
}

}  // namespace detail

/// Scores every model of `bundle` on the test half of `corpus` and writes
/// report.json, report.meta.json, the frequency CSVs and optional SVGs into
/// opts.report_dir. Returns the report.
inline nlohmann::json evaluate_bundle(const ModelBundle& bundle, const Corpus& corpus, const EvaluateOptions& opts,
                                      std::ostream& log) {
    const auto& rc = bundle.run;
    auto prepared = prepare_split(corpus, rc, bundle.prep);
    if (prepared.vocabulary.hash() != bundle.vocabulary.hash()) {
        throw CompatibilityError("corpus does not reproduce the bundle vocabulary (sha256 " +
                                 prepared.vocabulary.hash() + " vs " + bundle.vocabulary.hash() + ")");
    }
    const std::filesystem::path dir(opts.report_dir);
    std::filesystem::create_directories(dir);

    RunConfig reported_rc = rc;
    reported_rc.paths.corpus = opts.corpus;
    reported_rc.paths.model_bundle = opts.bundle;
    reported_rc.paths.report_dir = opts.report_dir;

    std::vector<Label> truth;
    for (const auto& d : prepared.test_docs) truth.push_back(*d.label);

    nlohmann::json results = nlohmann::json::object();
    nlohmann::json predictions = nlohmann::json::object();
    for (const auto& [kind, models] : bundle.models) {
        const std::string tag(to_string(kind));
        const auto X = build_feature_matrix(prepared.test_docs, bundle.vocabulary, kind);
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& d : prepared.test_docs) rows.push_back({{"id", d.id}, {"true_label", to_string(*d.label)}});

        auto score_member = [&](std::string_view name, const auto& model) {
            std::vector<Label> predicted;
            for (std::size_t i = 0; i < X.n_rows(); ++i) {
                const auto p = model.predict(X.rows[i]);
                predicted.push_back(p.label);
                rows[i][std::string(name)] = {{"label", to_string(p.label)}, {"score", p.score}};
            }
            results[tag][std::string(name)] = detail::result_json(predicted, truth);
        };
        if (models.lr) score_member("lr", *models.lr);
        if (models.rf) score_member("rf", *models.rf);
        if (models.mnb) score_member("mnb", *models.mnb);
        if (rc.wants_ensemble() && models.complete()) {
            const auto ensemble = bundle.ensemble(kind);
            std::vector<Label> predicted;
            for (std::size_t i = 0; i < X.n_rows(); ++i) {
                const auto p = ensemble.predict_detailed(X.rows[i]);
                predicted.push_back(p.label);
                nlohmann::json votes = nlohmann::json::object();
                for (std::size_t k = 0; k < 3; ++k) votes[std::string(kMemberNames[k])] = to_string(p.votes[k]);
                rows[i]["ensemble"] = {{"label", to_string(p.label)}, {"score", p.score}, {"member_votes", votes}};
            }
            results[tag]["ensemble"] = detail::result_json(predicted, truth);
        }
        predictions[tag] = std::move(rows);
        for (const auto& [name, r] : results[tag].items()) {
            log << name << "[" << tag << "]: accuracy " << r["percent"]["accuracy"].get<std::string>() << "% f1 "
                << r["percent"]["f1"].get<std::string>() << "%\n";
        }
    }

    // Term frequencies over the whole labelled corpus.
    const auto all_docs = prepare_all(corpus.articles(), bundle.prep);
    nlohmann::json frequency = {{"scope", "corpus"}, {"top_k", rc.top_k}};
    for (Label label : {Label::Legitimate, Label::Illegitimate}) {
        const std::string name(to_string(label));
        const auto report = top_k_terms(all_docs, label, rc.top_k);
        const std::string csv_name = "top_terms_" + name + ".csv";
        detail::write_text(dir / csv_name, format_frequency_csv(report));
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : report.terms) terms.push_back({{"term", t.term}, {"count", t.count}});
        nlohmann::json entry = {{"csv", csv_name}, {"svg", nullptr}, {"terms", std::move(terms)}};
        if (opts.svg_clouds && !report.terms.empty()) {
            const std::string svg_name = "wordcloud_" + name + ".svg";
            WordCloudOptions wc;
            wc.seed = derive_seed(wordcloud_seed(rc), name);
            wordcloud_svg(report, dir / svg_name, wc);
            entry["svg"] = svg_name;
        }
        frequency[name] = std::move(entry);
    }

    nlohmann::json table_check = nullptr;
    if (!opts.paper_check.empty()) {
        const auto table = load_reported_table(opts.paper_check);
        nlohmann::json rows = nlohmann::json::array();
        std::size_t consistent = 0;
        for (const auto& c : check_reported_table(table)) {
            consistent += c.consistent;
            rows.push_back(to_json(c));
            log << "table " << c.reported.model << "-" << c.reported.features << ": "
                << (c.consistent ? "consistent" : "INCONSISTENT") << " (accuracy residual "
                << detail::fixed(c.accuracy_residual_pp, 4) << " pp)\n";
        }
        table_check = {{"source", std::filesystem::path(opts.paper_check).filename().string()},
                       {"n_pos", table.n_pos},
                       {"n_neg", table.n_neg},
                       {"reconstruction_tolerance_pp", kReconstructionTolerancePp},
                       {"accuracy_tolerance_pp", kAccuracyTolerancePp},
                       {"consistent_rows", consistent},
                       {"flagged_rows", rows.size() - consistent},
                       {"rows", std::move(rows)}};
    }

    nlohmann::json report = {
        {"format_version", kReportFormat},
        {"run_config", to_json(reported_rc)},
        {"provenance",
         {{"stopwords_sha256", stopwords_hash(bundle.prep)},
          {"prep_config_sha256", prep_config_hash(bundle.prep)},
          {"vocabulary_sha256", bundle.vocabulary.hash()},
          {"vocabulary_size", bundle.vocabulary.size()},
          {"idf_variant", kIdfVariant},
          {"positive_class", std::string(to_string(kPositiveLabel))},
          {"prng", kPrngVersion}}},
        {"split",
         {{"train", detail::class_counts_json(prepared.split.train)},
          {"test", detail::class_counts_json(prepared.split.test)}}},
        {"results", std::move(results)},
        {"predictions", std::move(predictions)},
        {"frequency", std::move(frequency)},
        {"table_check", std::move(table_check)}};

    detail::write_text(dir / "report.json", report.dump(2) + "\n");
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    const nlohmann::json meta = {{"report", "report.json"}, {"generated_at", stamp}};
    detail::write_text(dir / "report.meta.json", meta.dump(2) + "\n");
    log << "report: " << (dir / "report.json").string() << "\n";
    return report;
}

inline nlohmann::json run_evaluate(const EvaluateOptions& opts, std::ostream& log) {
    const auto bundle = load_bundle(opts.bundle);
    const auto corpus = load_corpus(opts.corpus);
    return evaluate_bundle(bundle, corpus, opts, log);
}

struct ClassifyOptions {
    std::string bundle;
    std::string input;
    std::string output;
    std::optional<FeatureKind> features;  // default: first kind in the bundle
};

/// Labels every article of opts.input and writes JSONL with predicted_label,
/// score and member_votes appended. Returns the number of articles written.
inline std::size_t run_classify(const ClassifyOptions& opts, std::ostream& log) {
    const auto bundle = load_bundle(opts.bundle);
    if (bundle.models.empty()) throw ConfigError("bundle holds no models");
    const FeatureKind kind = opts.features.value_or(bundle.models.begin()->first);
    const auto it = bundle.models.find(kind);
    if (it == bundle.models.end()) {
        throw ConfigError("bundle has no " + std::string(to_string(kind)) + " models");
    }
    const auto& models = it->second;
    const auto articles = read_articles(opts.input, format_for_path(opts.input), false);

    std::optional<VotingEnsemble> ensemble;
    if (bundle.run.wants_ensemble() && models.complete()) ensemble.emplace(bundle.ensemble(kind));

    std::ofstream out(opts.output, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + opts.output + "'");
    for (const auto& a : articles) {
        const auto x = vectorize(prepare(a, bundle.prep), bundle.vocabulary, kind);
        auto j = article_to_json(a);
        nlohmann::ordered_json votes = nlohmann::ordered_json::object();
        Prediction p;
        std::string model_name;
        if (ensemble) {
            const auto d = ensemble->predict_detailed(x);
            for (std::size_t k = 0; k < 3; ++k) votes[std::string(kMemberNames[k])] = to_string(d.votes[k]);
            p = {d.label, d.score};
            model_name = "ensemble";
        } else if (models.lr) {
            p = models.lr->predict(x);
            model_name = "lr";
        } else if (models.rf) {
            p = models.rf->predict(x);
            model_name = "rf";
        } else {
            p = models.mnb->predict(x);
            model_name = "mnb";
        }
        if (!ensemble) votes[model_name] = to_string(p.label);
        j["predicted_label"] = to_string(p.label);
        j["score"] = p.score;
        j["member_votes"] = std::move(votes);
        j["model"] = model_name;
        j["features"] = to_string(kind);
        out << j.dump() << '\n';
    }
    if (!out) throw Error("failed writing '" + opts.output + "'");
    log << "classified " << articles.size() << " articles with " << (ensemble ? "ensemble" : "single model") << " ["
        << to_string(kind) << "]\n";
    return articles.size();
}

}  // namespace dnews
