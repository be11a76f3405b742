// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

// dnews: harvest, train, evaluate and classify disaster-news articles.
// Exit codes: 0 success, 1 partial or quality failure, 2 usage or input error.

#include "dnews/dnews.hpp"
#include "dnews/harvester/http_fetcher.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

struct HarvestArgs {
    std::string rules;
    std::string seeds;
    std::string offline;
    std::string out;
    std::optional<std::int64_t> delay_ms;  // default: 0 offline, 1000 live
    int max_retries = 2;
};

struct TrainArgs {
    std::string corpus;
    std::string out;
    std::string model = "all";
    std::string features = "both";
    std::string train_ratio = "0.3";
    std::uint64_t seed = 42;
    std::string prep_config;
    std::string stopwords;
    unsigned threads = 0;
    bool soft_voting = false;
    std::size_t n_trees = 100;
    std::size_t epochs = 500;
    std::size_t ngram_max = 1;
    std::size_t min_df = 1;
};

struct SynthArgs {
    std::string out;
    std::uint64_t seed = 42;
    std::size_t per_class = 80;
};

int cmd_synth(const SynthArgs& a) {
    dnews::SynthConfig cfg;
    cfg.seed = a.seed;
    cfg.per_class = a.per_class;
    dnews::save_corpus(dnews::generate_synthetic_corpus(cfg), a.out);
    std::cout << "wrote " << 2 * a.per_class << " articles to " << a.out << "\n";
    return kExitOk;
}

int cmd_harvest(const HarvestArgs& a) {
    const auto rules = dnews::load_rules(a.rules);
    std::string seeds_path = a.seeds;
    if (seeds_path.empty()) {
        if (a.offline.empty()) throw dnews::ConfigError("--seeds is required without --offline");
        seeds_path = (std::filesystem::path(a.offline) / "seeds.txt").string();
    }
    const auto seeds = dnews::load_seed_urls(seeds_path);

    dnews::FetchPolicy policy;
    policy.delay_ms = a.delay_ms.value_or(a.offline.empty() ? 1000 : 0);
    policy.max_retries = a.max_retries;
    std::unique_ptr<dnews::Fetcher> fetcher;
    if (a.offline.empty()) {
        fetcher = std::make_unique<dnews::HttpFetcher>();
    } else {
        fetcher = std::make_unique<dnews::OfflineFetcher>(a.offline);
    }
    dnews::SystemClock clock;
    const auto summary = dnews::harvest(seeds, rules, policy, a.out, *fetcher, clock);
    std::cout << "fetched=" << summary.fetched << " extracted=" << summary.extracted << " failed=" << summary.failed
              << " skipped=" << summary.skipped << "\n";
    for (const auto& f : summary.failures) std::cerr << "failed: " << f.url << ": " << f.reason << "\n";
    return summary.failed == 0 ? kExitOk : kExitPartial;
}

int cmd_train(const TrainArgs& a) {
    dnews::RunConfig rc;
    rc.seed = a.seed;
    rc.train_ratio = dnews::Ratio::parse(a.train_ratio);
    rc.features = dnews::parse_feature_selection(a.features);
    rc.model = dnews::parse_model_selection(a.model);
    rc.paths.corpus = a.corpus;
    rc.paths.model_bundle = a.out;
    rc.paths.prep_config = a.prep_config;
    rc.paths.stopwords = a.stopwords;
    rc.rf.threads = a.threads;
    rc.rf.n_trees = a.n_trees;
    rc.lr.epochs = a.epochs;
    rc.vocabulary.ngram_max = a.ngram_max;
    rc.vocabulary.min_df = a.min_df;
    rc.voting = a.soft_voting ? dnews::VotingMode::Soft : dnews::VotingMode::Hard;
    dnews::run_train(rc, std::cout);
    return kExitOk;
}

int cmd_evaluate(const dnews::EvaluateOptions& opts) {
    dnews::run_evaluate(opts, std::cout);
    return kExitOk;
}

int cmd_classify(const dnews::ClassifyOptions& opts) {
    dnews::run_classify(opts, std::cout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Legitimate / illegitimate disaster-news classification"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "Write a seeded synthetic labelled corpus");
    s->add_option("--out", synth.out, "Output corpus (.jsonl or .csv)")->required();
    s->add_option("--seed", synth.seed, "Generator seed");
    s->add_option("--per-class", synth.per_class, "Articles per class");

    HarvestArgs harvest;
    auto* h = app.add_subcommand("harvest", "Fetch seed URLs and extract articles");
    h->add_option("--rules", harvest.rules, "Extraction rules (JSON array)")->required();
    h->add_option("--seeds", harvest.seeds, "Seed URL list (default: <offline>/seeds.txt)");
    h->add_option("--offline", harvest.offline, "Serve pages from a mirror directory DIR/host/path");
    h->add_option("--out", harvest.out, "Corpus JSONL sink (appended)")->required();
    h->add_option("--delay-ms", harvest.delay_ms, "Minimum spacing between requests to one domain");
    h->add_option("--max-retries", harvest.max_retries, "Retries per URL");

    TrainArgs train;
    auto* t = app.add_subcommand("train", "Split, featurize, train and write a model bundle");
    t->add_option("--corpus", train.corpus, "Labelled corpus")->required();
    t->add_option("--out", train.out, "Model bundle path")->required();
    t->add_option("--model", train.model, "lr, rf, mnb, ensemble or all");
    t->add_option("--features", train.features, "bow, tfidf or both");
    t->add_option("--train-ratio", train.train_ratio, "Training fraction, e.g. 0.3 or 3/10");
    t->add_option("--seed", train.seed, "Run seed");
    t->add_option("--prep-config", train.prep_config, "Preprocessing config JSON");
    t->add_option("--stopwords", train.stopwords, "Stopword list, one word per line");
    t->add_option("--threads", train.threads, "Random forest worker threads (0 = all cores)");
    t->add_option("--trees", train.n_trees, "Random forest size");
    t->add_option("--epochs", train.epochs, "Logistic regression epochs");
    t->add_option("--ngram-max", train.ngram_max, "1 for unigrams, 2 adds bigrams");
    t->add_option("--min-df", train.min_df, "Minimum document frequency");
    t->add_flag("--soft-voting", train.soft_voting, "Average member scores instead of majority vote");

    dnews::EvaluateOptions eval;
    auto* e = app.add_subcommand("evaluate", "Score a bundle on the test split and write a report");
    e->add_option("--bundle", eval.bundle, "Model bundle")->required();
    e->add_option("--corpus", eval.corpus, "Corpus the bundle was trained on")->required();
    e->add_option("--out", eval.report_dir, "Report directory")->required();
    e->add_option("--paper-check", eval.paper_check, "Reported results table to reconstruct");
    e->add_flag("--svg-clouds", eval.svg_clouds, "Also write word-cloud SVGs");

    dnews::ClassifyOptions cls;
    std::string cls_features;
    auto* c = app.add_subcommand("classify", "Label new articles with a trained bundle");
    c->add_option("--bundle", cls.bundle, "Model bundle")->required();
    c->add_option("--input", cls.input, "Articles to label (.jsonl or .csv)")->required();
    c->add_option("--out", cls.output, "Predictions JSONL")->required();
    c->add_option("--features", cls_features, "bow or tfidf (default: first in bundle)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return kExitUsage;
    }

    try {
        if (*s) return cmd_synth(synth);
        if (*h) return cmd_harvest(harvest);
        if (*t) return cmd_train(train);
        if (*e) return cmd_evaluate(eval);
        if (*c) {
            if (!cls_features.empty()) {
                cls.features = dnews::parse_feature_kind(cls_features);
                if (!cls.features) throw dnews::ConfigError("unknown feature kind '" + cls_features + "'");
            }
            return cmd_classify(cls);
        }
    } catch (const dnews::TrainingError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitPartial;
    } catch (const dnews::CorpusError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const dnews::ConfigError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const dnews::CompatibilityError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const dnews::DimensionError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitPartial;
    }
    return kExitUsage;
}
