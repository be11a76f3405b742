// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include "oracles/generators.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace {

using namespace dnews;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and limits.
constexpr double kTableTimeLimitS = 1.0;
constexpr std::size_t kConsistentRows = 6;
constexpr double kFlaggedResidualPp = 0.05;
constexpr double kF1Expected = 91.38;
constexpr double kF1TolerancePp = 0.01;
constexpr std::size_t kSplitTrain = 48, kSplitTest = 112, kSplitRuns = 5;
constexpr int kNbCorpora = 200;
constexpr double kNbLogTolerance = 1e-10;
constexpr double kNbTimeLimitS = 5.0;
constexpr std::size_t kGradRows = 20, kGradCols = 10;
constexpr int kGradPoints = 10;
constexpr double kGradStep = 1e-5;
constexpr double kGradRelTolerance = 1e-6;
constexpr int kCartDatasets = 50;
constexpr double kMnbMinAccuracy = 0.95;
constexpr double kEnsembleMinAccuracy = 0.90;
constexpr double kEndToEndTimeLimitS = 10.0;
constexpr double kTfidfStorm = 0.94215, kTfidfCity = 0.33518, kTfidfTolerance = 1e-4;
constexpr double kUnitNormTolerance = 1e-9;
constexpr std::size_t kHarvestArticles = 6;
constexpr std::int64_t kHarvestDelayMs = 250;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::filesystem::path fixture_corpus() { return testing::data_dir() / "corpus_160.jsonl"; }

Outcome table_reconstruction() {
    const auto t0 = Clock::now();
    const auto table = load_reported_table(testing::source_dir() / "data" / "reference_tables.json");
    const auto checks = check_reported_table(table);
    const double elapsed = seconds_since(t0);
    std::size_t consistent = 0;
    bool forest_flagged = true;
    for (const auto& c : checks) {
        consistent += c.consistent;
        if (c.reported.model == "rf") forest_flagged &= !c.consistent && c.accuracy_residual_pp > kFlaggedResidualPp;
        if (c.reported.model != "rf") forest_flagged &= c.consistent;
    }
    return {consistent == kConsistentRows && forest_flagged && elapsed < kTableTimeLimitS,
            std::to_string(consistent) + "/" + std::to_string(checks.size()) + " consistent, forest rows " +
                (forest_flagged ? "flagged" : "NOT flagged") + ", " + fmt("%.4f s", elapsed)};
}

Outcome combined_f1() {
    const double f1 = 100.0 * metrics({53, 7, 3, 49}).f1;
    return {std::abs(f1 - kF1Expected) <= kF1TolerancePp, "f1 " + fmt("%.4f", f1)};
}

Outcome split_sizes() {
    const auto corpus = load_corpus(fixture_corpus());
    const auto reference = stratified_split(corpus, {3, 10}, derive_seed(42, "split"));
    bool ok = reference.train.size() == kSplitTrain && reference.test.size() == kSplitTest &&
              reference.train.class_count(Label::Legitimate) == kSplitTrain / 2 &&
              reference.test.class_count(Label::Legitimate) == kSplitTest / 2;
    for (std::size_t run = 1; run < kSplitRuns; ++run) {
        const auto again = stratified_split(corpus, {3, 10}, derive_seed(42, "split"));
        ok &= again.train == reference.train && again.test == reference.test;
    }
    return {ok, "train " + std::to_string(reference.train.size()) + " test " + std::to_string(reference.test.size()) +
                    ", " + std::to_string(kSplitRuns) + " runs"};
}

Outcome nb_oracle() {
    const auto t0 = Clock::now();
    Rng rng(derive_seed(2026, "acceptance/mnb"));
    double worst = 0.0;
    for (int trial = 0; trial < kNbCorpora; ++trial) {
        const auto c = oracle::random_nb_corpus(rng);
        const double alpha = rng.below(2) ? 1.0 : 0.05 + 2.0 * rng.uniform();
        const auto X = oracle::nb_matrix(c);
        const auto m = train_mnb(X, X.labels, {.alpha = alpha});
        std::vector<int> query(c.vocab_size);
        for (auto& v : query) v = static_cast<int>(rng.below(4));
        const auto expected = oracle::nb_posterior(c, query, alpha);
        const auto got = m.posterior(oracle::to_sparse(query));
        for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(std::log(got[k]) - std::log(expected[k])));
    }
    const double elapsed = seconds_since(t0);
    return {worst <= kNbLogTolerance && elapsed < kNbTimeLimitS,
            fmt("max log error %.3g", worst) + ", " + fmt("%.3f s", elapsed)};
}

Outcome lr_gradient() {
    Rng rng(derive_seed(2026, "acceptance/lr"));
    const auto problem = oracle::random_sparse_problem(rng, kGradRows, kGradCols, 1e-3);
    const auto X = oracle::to_matrix(problem.X, kGradCols, problem.y);
    LogisticObjective objective(X, X.labels, problem.lambda);
    double worst = 0.0;
    for (int point = 0; point < kGradPoints; ++point) {
        std::vector<double> theta(kGradCols + 1);
        for (auto& t : theta) t = 2.0 * rng.uniform() - 1.0;
        const std::vector<double> w(theta.begin(), theta.end() - 1);
        std::vector<double> gw(kGradCols);
        double gb = 0.0;
        objective.gradient(w, theta.back(), gw, gb);
        gw.push_back(gb);
        worst = std::max(worst, oracle::relative_error(gw, oracle::central_difference(problem, theta, kGradStep)));
    }
    const auto m = train_lr(X, X.labels, {.epochs = 200, .l2_lambda = problem.lambda, .lipschitz_step = true});
    const auto& trace = m.loss_trace();
    bool monotone = true;
    for (std::size_t i = 1; i < trace.size(); ++i) monotone &= trace[i] <= trace[i - 1];
    return {worst < kGradRelTolerance && monotone,
            fmt("max relative error %.3g", worst) + ", loss " + (monotone ? "monotone" : "NOT monotone")};
}

Outcome rf_cart() {
    Rng rng(derive_seed(2026, "acceptance/cart"));
    int mismatches = 0;
    for (int trial = 0; trial < kCartDatasets; ++trial) {
        const auto d = oracle::random_cart_dataset(rng);
        const auto X = oracle::to_matrix(d.X, d.V, d.y);
        const auto f = train_rf(
            X, X.labels,
            {.n_trees = 1, .max_depth = 16, .min_leaf = 1, .features_per_split = d.V, .bootstrap = false, .seed = 1});
        const oracle::CartOracle cart(d.X, d.y, 16, 1);
        bool same = true;
        for (std::size_t i = 0; i < d.X.size(); ++i) {
            same &= index_of(f.predict(X.rows[i]).label) == static_cast<std::size_t>(cart.predict(d.X[i]));
        }
        mismatches += !same;
    }
    return {mismatches == 0, std::to_string(kCartDatasets - mismatches) + "/" + std::to_string(kCartDatasets) +
                                 " datasets identical"};
}

struct EndToEnd {
    std::vector<nlohmann::json> reports;
    std::vector<std::string> report_bytes;
    double elapsed_s = 0.0;
};

EndToEnd run_end_to_end(const testing::TempDir& dir) {
    EndToEnd out;
    std::vector<std::string> bundles;
    // Both runs write to the same paths so the paths recorded in the reports agree.
    for (int run = 0; run < 2; ++run) {
        const auto t0 = Clock::now();
        RunConfig rc;
        rc.paths.corpus = fixture_corpus().string();
        rc.paths.model_bundle = (dir / "bundle.json").string();
        std::ostringstream log;
        run_train(rc, log);
        out.reports.push_back(
            run_evaluate({rc.paths.model_bundle, rc.paths.corpus, (dir / "report").string(), {}, false}, log));
        out.elapsed_s = std::max(out.elapsed_s, seconds_since(t0));
        out.report_bytes.push_back(testing::slurp(dir / "report" / "report.json"));
        bundles.push_back(testing::slurp(dir / "bundle.json"));
    }
    if (bundles[0] != bundles[1]) out.report_bytes.back() += "\n(bundle differs)";
    return out;
}

Outcome ensemble_votes(const EndToEnd& e2e) {
    std::size_t rows = 0, bad = 0;
    for (const auto& report : e2e.reports) {
        for (const auto& [kind, preds] : report["predictions"].items()) {
            for (const auto& row : preds) {
                const auto& ens = row["ensemble"];
                std::vector<Label> votes;
                for (const char* m : {"lr", "rf", "mnb"}) {
                    votes.push_back(ens["member_votes"][m] == "legitimate" ? Label::Legitimate : Label::Illegitimate);
                }
                ++rows;
                bad += std::string(to_string(majority(votes))) != ens["label"].get<std::string>();
            }
        }
    }
    return {rows > 0 && bad == 0, std::to_string(rows - bad) + "/" + std::to_string(rows) + " rows re-majorize"};
}

Outcome end_to_end(const EndToEnd& e2e) {
    // Closed-form MNB on the synthetic corpus, outside the pipeline.
    const auto corpus = load_corpus(fixture_corpus());
    const bool fixture_is_synthetic = corpus == generate_synthetic_corpus();
    const auto split = stratified_split(corpus, {3, 10}, derive_seed(42, "split"));
    const auto train_docs = prepare_all(split.train.articles(), PrepConfig::defaults());
    const auto test_docs = prepare_all(split.test.articles(), PrepConfig::defaults());
    const auto vocab = build_vocabulary(train_docs);
    const auto Xtr = build_feature_matrix(train_docs, vocab, FeatureKind::Bow);
    const auto Xte = build_feature_matrix(test_docs, vocab, FeatureKind::Bow);
    const auto mnb = train_mnb(Xtr, Xtr.labels);
    std::vector<Label> predicted;
    for (const auto& x : Xte.rows) predicted.push_back(mnb.predict(x).label);
    const double mnb_acc = metrics(confusion(predicted, Xte.labels)).accuracy;

    const double ens_acc = e2e.reports[0]["results"]["bow"]["ensemble"]["metrics"]["accuracy"].get<double>();
    const bool identical = e2e.report_bytes[0] == e2e.report_bytes[1];
    return {fixture_is_synthetic && mnb_acc >= kMnbMinAccuracy && ens_acc >= kEnsembleMinAccuracy && identical &&
                e2e.elapsed_s < kEndToEndTimeLimitS,
            fmt("mnb %.4f", mnb_acc) + fmt(", ensemble[bow] %.4f", ens_acc) +
                (identical ? ", reports identical" : ", reports DIFFER") + fmt(", %.2f s", e2e.elapsed_s)};
}

Outcome tfidf() {
    const std::vector<TokenizedDoc> docs{testing::doc({"storm", "storm", "city"}), testing::doc({"city"})};
    const auto v = build_vocabulary(docs);
    const auto x = vectorize_tfidf(docs[0], v);
    const double storm = x.at(*v.index_of("storm")), city = x.at(*v.index_of("city"));
    bool ok = std::abs(storm - kTfidfStorm) <= kTfidfTolerance && std::abs(city - kTfidfCity) <= kTfidfTolerance;

    const auto all = prepare_all(load_corpus(fixture_corpus()).articles(), PrepConfig::defaults());
    const auto X = build_feature_matrix(all, build_vocabulary(all), FeatureKind::Tfidf);
    double worst = 0.0;
    for (const auto& row : X.rows) {
        if (row.empty()) continue;
        double sq = 0.0;
        for (const auto& e : row.entries) sq += e.value * e.value;
        worst = std::max(worst, std::abs(std::sqrt(sq) - 1.0));
    }
    ok &= worst <= kUnitNormTolerance;
    return {ok, fmt("storm %.5f", storm) + fmt(" city %.5f", city) + fmt(", max norm error %.3g", worst)};
}

Outcome harvester() {
    testing::TempDir dir;
    const auto root = testing::data_dir() / "harvest";
    OfflineFetcher fetcher(root / "offline");
    FakeClock clock;
    const auto summary = harvest(load_seed_urls(root / "offline" / "seeds.txt"), load_rules(root / "rules.json"),
                                 {.delay_ms = kHarvestDelayMs}, dir / "sink.jsonl", fetcher, clock);
    const auto articles = read_articles(dir / "sink.jsonl", CorpusFormat::Jsonl, true);
    bool populated = articles.size() == kHarvestArticles;
    for (const auto& a : articles) {
        for (const auto* f : {&a.id, &a.title, &a.body, &a.url, &a.date, &a.location, &a.publisher, &a.disaster,
                              &a.author}) {
            populated &= !f->empty();
        }
    }
    std::map<std::string, std::int64_t> last;
    std::int64_t min_gap = std::numeric_limits<std::int64_t>::max();
    for (const auto& r : summary.requests) {
        if (auto it = last.find(r.domain); it != last.end()) min_gap = std::min(min_gap, r.time_ms - it->second);
        last[r.domain] = r.time_ms;
    }
    return {populated && min_gap >= kHarvestDelayMs,
            std::to_string(articles.size()) + " articles" + (populated ? " fully populated" : " MISSING fields") +
                ", min same-domain gap " +
                (min_gap == std::numeric_limits<std::int64_t>::max() ? std::string("n/a") : std::to_string(min_gap)) +
                " ms"};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    };

    dnews::testing::TempDir dir;
    EndToEnd e2e;
    std::string e2e_error;
    try {
        e2e = run_end_to_end(dir);
    } catch (const std::exception& e) {
        e2e_error = e.what();
    }
    auto needs_e2e = [&](Outcome (*f)(const EndToEnd&)) {
        return [&, f] {
            if (!e2e_error.empty()) throw std::runtime_error(e2e_error);
            return f(e2e);
        };
    };

    report(1, "table reconstruction", table_reconstruction);
    report(2, "combined f1", combined_f1);
    report(3, "stratified split", split_sizes);
    report(4, "naive bayes oracle", nb_oracle);
    report(5, "logistic gradient", lr_gradient);
    report(6, "forest vs cart", rf_cart);
    report(7, "ensemble votes", needs_e2e(ensemble_votes));
    report(8, "end to end", needs_e2e(end_to_end));
    report(9, "tf-idf", tfidf);
    report(10, "harvester", harvester);
    return failures == 0 ? 0 : 1;
}
