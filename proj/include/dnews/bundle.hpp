// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/corpus.hpp"
#include "dnews/features.hpp"
#include "dnews/models/ensemble.hpp"
#include "dnews/random.hpp"
#include "dnews/textprep.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dnews {

enum class FeatureSelection { Bow, Tfidf, Both };
enum class ModelSelection { Lr, Rf, Mnb, Ensemble, All };

inline constexpr std::string_view to_string(FeatureSelection f) noexcept {
    switch (f) {
        case FeatureSelection::Bow: return "bow";
        case FeatureSelection::Tfidf: return "tfidf";
        case FeatureSelection::Both: return "both";
    }
    return "both";
}

inline constexpr std::string_view to_string(ModelSelection m) noexcept {
    switch (m) {
        case ModelSelection::Lr: return "lr";
        case ModelSelection::Rf: return "rf";
        case ModelSelection::Mnb: return "mnb";
        case ModelSelection::Ensemble: return "ensemble";
        case ModelSelection::All: return "all";
    }
    return "all";
}

inline FeatureSelection parse_feature_selection(std::string_view s) {
    if (s == "bow") return FeatureSelection::Bow;
    if (s == "tfidf") return FeatureSelection::Tfidf;
    if (s == "both") return FeatureSelection::Both;
    throw ConfigError("unknown feature kind '" + std::string(s) + "' (expected bow, tfidf or both)");
}

inline ModelSelection parse_model_selection(std::string_view s) {
    if (s == "lr") return ModelSelection::Lr;
    if (s == "rf") return ModelSelection::Rf;
    if (s == "mnb") return ModelSelection::Mnb;
    if (s == "ensemble") return ModelSelection::Ensemble;
    if (s == "all") return ModelSelection::All;
    throw ConfigError("unknown model '" + std::string(s) + "' (expected lr, rf, mnb, ensemble or all)");
}

inline std::vector<FeatureKind> feature_kinds(FeatureSelection f) {
    switch (f) {
        case FeatureSelection::Bow: return {FeatureKind::Bow};
        case FeatureSelection::Tfidf: return {FeatureKind::Tfidf};
        case FeatureSelection::Both: break;
    }
    return {FeatureKind::Bow, FeatureKind::Tfidf};
}

struct RunPaths {
    std::string corpus;
    std::string model_bundle;
    std::string report_dir;
    std::string prep_config;  // empty: built-in defaults
    std::string stopwords;    // empty: list from the prep config
};

/// Every knob of a run. Serialized verbatim into bundles and reports.
struct RunConfig {
    std::uint64_t seed = 42;
    Ratio train_ratio{3, 10};
    FeatureSelection features = FeatureSelection::Both;
    ModelSelection model = ModelSelection::All;
    RunPaths paths;
    VocabularyOptions vocabulary;
    LogisticRegressionConfig lr;
    RandomForestConfig rf;
    MultinomialNBConfig mnb;
    VotingMode voting = VotingMode::Hard;
    std::size_t top_k = 30;

    bool wants(std::string_view member) const {
        if (model == ModelSelection::All || model == ModelSelection::Ensemble) return true;
        return to_string(model) == member;
    }
    bool wants_ensemble() const { return model == ModelSelection::All || model == ModelSelection::Ensemble; }
};

/// Module seeds, all derived from the run seed by label.
inline std::uint64_t split_seed(const RunConfig& rc) { return derive_seed(rc.seed, "split"); }
inline std::uint64_t lr_seed(const RunConfig& rc) { return derive_seed(rc.seed, "lr"); }
inline std::uint64_t rf_seed(const RunConfig& rc) { return derive_seed(rc.seed, "rf"); }
inline std::uint64_t wordcloud_seed(const RunConfig& rc) { return derive_seed(rc.seed, "wordcloud"); }

inline nlohmann::json to_json(const RunConfig& rc) {
    return {{"seed", rc.seed},
            {"train_ratio", rc.train_ratio.str()},
            {"features", std::string(to_string(rc.features))},
            {"model", std::string(to_string(rc.model))},
            {"paths",
             {{"corpus", rc.paths.corpus},
              {"model_bundle", rc.paths.model_bundle},
              {"report_dir", rc.paths.report_dir},
              {"prep_config", rc.paths.prep_config},
              {"stopwords", rc.paths.stopwords}}},
            {"vocabulary", {{"min_df", rc.vocabulary.min_df}, {"ngram_max", rc.vocabulary.ngram_max}}},
            {"lr",
             {{"learning_rate", rc.lr.learning_rate},
              {"epochs", rc.lr.epochs},
              {"l2_lambda", rc.lr.l2_lambda},
              {"lipschitz_step", rc.lr.lipschitz_step}}},
            {"rf",
             {{"n_trees", rc.rf.n_trees},
              {"max_depth", rc.rf.max_depth},
              {"min_leaf", rc.rf.min_leaf},
              {"features_per_split", rc.rf.features_per_split},
              {"bootstrap", rc.rf.bootstrap}}},
            {"mnb", {{"alpha", rc.mnb.alpha}}},
            {"voting", std::string(to_string(rc.voting))},
            {"top_k", rc.top_k}};
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig rc;
    try {
        rc.seed = j.at("seed").get<std::uint64_t>();
        rc.train_ratio = Ratio::parse(j.at("train_ratio").get<std::string>());
        rc.features = parse_feature_selection(j.at("features").get<std::string>());
        rc.model = parse_model_selection(j.at("model").get<std::string>());
        const auto& p = j.at("paths");
        rc.paths = {p.at("corpus").get<std::string>(), p.at("model_bundle").get<std::string>(),
                    p.at("report_dir").get<std::string>(), p.at("prep_config").get<std::string>(),
                    p.at("stopwords").get<std::string>()};
        rc.vocabulary.min_df = j.at("vocabulary").at("min_df").get<std::size_t>();
        rc.vocabulary.ngram_max = j.at("vocabulary").at("ngram_max").get<std::size_t>();
        const auto& lr = j.at("lr");
        rc.lr.learning_rate = lr.at("learning_rate").get<double>();
        rc.lr.epochs = lr.at("epochs").get<std::size_t>();
        rc.lr.l2_lambda = lr.at("l2_lambda").get<double>();
        rc.lr.lipschitz_step = lr.at("lipschitz_step").get<bool>();
        const auto& rf = j.at("rf");
        rc.rf.n_trees = rf.at("n_trees").get<std::size_t>();
        rc.rf.max_depth = rf.at("max_depth").get<std::size_t>();
        rc.rf.min_leaf = rf.at("min_leaf").get<std::size_t>();
        rc.rf.features_per_split = rf.at("features_per_split").get<std::size_t>();
        rc.rf.bootstrap = rf.at("bootstrap").get<bool>();
        rc.mnb.alpha = j.at("mnb").at("alpha").get<double>();
        const auto voting = parse_voting_mode(j.at("voting").get<std::string>());
        if (!voting) throw ConfigError("unknown voting mode");
        rc.voting = *voting;
        rc.top_k = j.at("top_k").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid run config: ") + e.what());
    }
    return rc;
}

/// Models trained on one feature kind.
struct KindModels {
    std::optional<LogisticRegression> lr;
    std::optional<RandomForest> rf;
    std::optional<MultinomialNB> mnb;

    bool complete() const { return lr && rf && mnb; }
};

inline constexpr const char* kBundleFormat = "dnews-bundle/1";

/// Everything needed to featurize and classify new articles.
struct ModelBundle {
    RunConfig run;
    PrepConfig prep;
    Vocabulary vocabulary;
    std::map<FeatureKind, KindModels> models;
    std::array<std::size_t, 2> train_counts{};  // indexed by index_of(Label)
    std::array<std::size_t, 2> test_counts{};

    /// Voting ensemble over the members of `kind`; throws when one is missing.
    VotingEnsemble ensemble(FeatureKind kind) const {
        const auto& m = models.at(kind);
        if (!m.complete()) throw ConfigError("bundle lacks ensemble members for " + std::string(to_string(kind)));
        const auto h = vocabulary.hash();
        return VotingEnsemble(*m.lr, *m.rf, *m.mnb, {h, h, h}, run.voting);
    }

    nlohmann::json to_json() const {
        nlohmann::json models_json = nlohmann::json::object();
        for (const auto& [kind, m] : models) {
            nlohmann::json k = nlohmann::json::object();
            if (m.lr) k["lr"] = m.lr->to_json();
            if (m.rf) k["rf"] = m.rf->to_json();
            if (m.mnb) k["mnb"] = m.mnb->to_json();
            models_json[std::string(to_string(kind))] = std::move(k);
        }
        auto counts = [](const std::array<std::size_t, 2>& c) {
            return nlohmann::json{{"illegitimate", c[0]}, {"legitimate", c[1]}, {"total", c[0] + c[1]}};
        };
        return {{"format_version", kBundleFormat},
                {"run_config", dnews::to_json(run)},
                {"prep", dnews::to_json(prep)},
                {"stopwords_sha256", stopwords_hash(prep)},
                {"prep_config_sha256", prep_config_hash(prep)},
                {"idf_variant", kIdfVariant},
                {"positive_class", std::string(to_string(kPositiveLabel))},
                {"prng", kPrngVersion},
                {"split", {{"train", counts(train_counts)}, {"test", counts(test_counts)}}},
                {"vocabulary", vocabulary.to_json()},
                {"vocabulary_sha256", vocabulary.hash()},
                {"models", std::move(models_json)}};
    }

    static ModelBundle from_json(const nlohmann::json& j) {
        ModelBundle b;
        try {
            if (j.at("format_version").get<std::string>() != kBundleFormat) {
                throw CompatibilityError("unsupported bundle format '" + j.at("format_version").get<std::string>() +
                                         "'");
            }
            b.run = run_config_from_json(j.at("run_config"));
            b.prep = prep_config_from_json(j.at("prep"));
            b.vocabulary = Vocabulary::from_json(j.at("vocabulary"));
            if (b.vocabulary.hash() != j.at("vocabulary_sha256").get<std::string>()) {
                throw CompatibilityError("bundle vocabulary does not match its recorded hash");
            }
            for (const auto& [name, k] : j.at("models").items()) {
                const auto kind = parse_feature_kind(name);
                if (!kind) throw ConfigError("unknown feature kind '" + name + "' in bundle");
                KindModels m;
                if (k.contains("lr")) m.lr = LogisticRegression::from_json(k.at("lr"));
                if (k.contains("rf")) m.rf = RandomForest::from_json(k.at("rf"));
                if (k.contains("mnb")) m.mnb = MultinomialNB::from_json(k.at("mnb"));
                b.models.emplace(*kind, std::move(m));
            }
            const auto& split = j.at("split");
            for (const char* part : {"train", "test"}) {
                auto& dst = std::string_view(part) == "train" ? b.train_counts : b.test_counts;
                dst = {split.at(part).at("illegitimate").get<std::size_t>(),
                       split.at(part).at("legitimate").get<std::size_t>()};
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("invalid model bundle: ") + e.what());
        }
        return b;
    }
};

inline void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write bundle '" + path.string() + "'");
    out << bundle.to_json().dump() << '\n';
    if (!out) throw Error("failed writing bundle '" + path.string() + "'");
}

inline ModelBundle load_bundle(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open bundle '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bundle '" + path.string() + "': " + e.what());
    }
    return ModelBundle::from_json(j);
}

}  // namespace dnews
