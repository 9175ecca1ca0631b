#include "adlex/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "adlex/io.hpp"
#include "adlex/rng.hpp"

namespace adlex {

const char* representation_name(Representation r) { return r == Representation::bow ? "bow" : "tfidf"; }

const char* model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::linear_svm: return "linear_svm";
        case ModelKind::sgd: return "sgd";
        case ModelKind::naive_bayes: return "naive_bayes";
        case ModelKind::knn: return "knn";
        case ModelKind::decision_tree: return "decision_tree";
        case ModelKind::random_forest: return "random_forest";
    }
    return "?";
}

Representation parse_representation(const std::string& s) {
    if (s == "bow") return Representation::bow;
    if (s == "tfidf") return Representation::tfidf;
    throw std::runtime_error("unknown representation \"" + s + "\" (expected bow|tfidf)");
}

ModelKind parse_model_kind(const std::string& s) {
    if (s == "linear_svm" || s == "svm") return ModelKind::linear_svm;
    if (s == "sgd") return ModelKind::sgd;
    if (s == "naive_bayes" || s == "nb") return ModelKind::naive_bayes;
    if (s == "knn") return ModelKind::knn;
    if (s == "decision_tree" || s == "tree") return ModelKind::decision_tree;
    if (s == "random_forest" || s == "forest") return ModelKind::random_forest;
    throw std::runtime_error("unknown model \"" + s +
                             "\" (expected linear_svm|sgd|naive_bayes|knn|decision_tree|random_forest)");
}

AnyModel train_model(const PipelineConfig& config, const std::vector<DocVector>& X, const std::vector<Label>& y,
                     std::size_t dim, std::uint64_t seed) {
    const ModelParams& p = config.params;
    switch (config.model) {
        case ModelKind::linear_svm:
            return train_linear_svm(X, y, dim, p.svm_c, p.svm_max_iter, p.svm_tol);
        case ModelKind::sgd:
            return train_sgd(X, y, dim, p.sgd_loss, p.sgd_lambda, p.sgd_epochs, seed);
        case ModelKind::naive_bayes:
            return train_naive_bayes(X, y, dim, p.nb_alpha);
        case ModelKind::knn:
            return make_knn(X, y, p.knn_k);
        case ModelKind::decision_tree:
            return train_decision_tree(X, y, dim, p.tree_max_depth, p.tree_min_leaf);
        case ModelKind::random_forest: {
            std::size_t m = p.forest_m.value_or(
                static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(dim)))));
            m = std::min(std::max<std::size_t>(m, 1), dim);
            return train_random_forest(X, y, dim, p.forest_trees, m, seed, p.tree_max_depth, p.tree_min_leaf);
        }
    }
    throw std::runtime_error("unknown model kind");
}

std::vector<DocVector> featurize(const Corpus& docs, const Vocabulary& vocab, Representation representation) {
    std::vector<DocVector> counts = vectorize_corpus(docs, vocab);
    if (representation == Representation::bow) return counts;
    return apply_tfidf(counts, vocab);
}

Aggregate aggregate(const std::vector<double>& values) {
    Aggregate a;
    if (values.empty()) return a;
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - a.mean) * (v - a.mean);
        a.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return a;
}

namespace {

std::vector<Label> labels_of(const Corpus& corpus) {
    std::vector<Label> y;
    y.reserve(corpus.docs.size());
    for (const auto& d : corpus.docs) y.push_back(d.label);
    return y;
}

void assert_no_leakage(const Vocabulary& vocab) {
    for (std::size_t i = 0; i < vocab.size(); ++i)
        if (vocab.df[i] < 1) throw std::logic_error("leakage: vocabulary term with zero train-split df");
}

Metrics evaluate_split(const PipelineConfig& config, const Corpus& train, const Corpus& test, std::uint64_t seed) {
    Vocabulary vocab = build_vocabulary(train, config.max_features, config.stopwords);
    assert_no_leakage(vocab);
    std::vector<DocVector> train_x = featurize(train, vocab, config.representation);
    std::vector<DocVector> test_x = featurize(test, vocab, config.representation);
    AnyModel model = train_model(config, train_x, labels_of(train), vocab.size(), seed);
    std::vector<double> scores;
    scores.reserve(test_x.size());
    for (const auto& x : test_x) scores.push_back(decision_score(model, x));
    return compute_metrics(scores, labels_of(test));
}

std::string fmt_pm(const Aggregate& a) { return format_fixed(a.mean, 2) + "+/-" + format_fixed(a.stddev, 2); }

}  // namespace

Aggregate ReportRow::accuracy() const {
    std::vector<double> v;
    for (const auto& m : folds) v.push_back(m.accuracy);
    return aggregate(v);
}

Aggregate ReportRow::f1() const {
    std::vector<double> v;
    for (const auto& m : folds) v.push_back(m.f1);
    return aggregate(v);
}

std::optional<Aggregate> ReportRow::auc() const {
    std::vector<double> v;
    for (const auto& m : folds) {
        if (!m.auc) return std::nullopt;
        v.push_back(*m.auc);
    }
    return aggregate(v);
}

std::string EvalReport::to_csv() const {
    std::string out = "representation,model,accuracy_mean,accuracy_std,f1_mean,f1_std,auc_mean,auc_std\n";
    for (const auto& row : rows) {
        Aggregate acc = row.accuracy(), f1 = row.f1();
        auto auc = row.auc();
        out += row.representation + "," + row.model + "," + format_double_sig(acc.mean, 12) + "," +
               format_double_sig(acc.stddev, 12) + "," + format_double_sig(f1.mean, 12) + "," +
               format_double_sig(f1.stddev, 12) + ",";
        if (auc)
            out += format_double_sig(auc->mean, 12) + "," + format_double_sig(auc->stddev, 12);
        else
            out += "undefined,undefined";
        out += "\n";
    }
    return out;
}

std::string EvalReport::to_table() const {
    std::vector<std::array<std::string, 5>> cells;
    cells.push_back({"representation", "model", "accuracy", "f1", "auc"});
    for (const auto& row : rows) {
        auto auc = row.auc();
        cells.push_back({row.representation, row.model, fmt_pm(row.accuracy()), fmt_pm(row.f1()),
                         auc ? fmt_pm(*auc) : std::string("undefined")});
    }
    std::array<std::size_t, 5> width{};
    for (const auto& r : cells)
        for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], r[c].size());
    std::string out;
    for (const auto& r : cells) {
        for (std::size_t c = 0; c < 5; ++c) {
            out += r[c];
            if (c + 1 < 5) out += std::string(width[c] - r[c].size() + 2, ' ');
        }
        out += "\n";
    }
    return out;
}

EvalReport cross_validate(const Corpus& corpus, const std::vector<PipelineConfig>& configs, int k,
                          std::uint64_t seed) {
    if (k < 2) throw std::runtime_error("cross validation requires k >= 2");
    auto folds = split_stratified_kfold(corpus, k, seed);

    EvalReport report;
    report.k = k;
    report.seed = seed;
    for (const auto& config : configs) {
        ReportRow row;
        row.representation = representation_name(config.representation);
        row.model = model_kind_name(config.model);
        for (std::size_t f = 0; f < folds.size(); ++f) {
            Corpus train = subset_by_ids(corpus, folds[f].first);
            Corpus test = subset_by_ids(corpus, folds[f].second);
            try {
                row.folds.push_back(
                    evaluate_split(config, train, test, derive_seed(seed, "cv-fold", static_cast<std::uint64_t>(f))));
            } catch (const std::exception& e) {
                throw std::runtime_error("fold " + std::to_string(f) + " (" + row.representation + "/" + row.model +
                                         "): " + e.what());
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

Aggregate CrossDomainTable::row_marginal(std::size_t medium) const {
    std::vector<double> v;
    for (std::size_t m = 0; m < models.size(); ++m) v.push_back(cells[medium][m].accuracy);
    return aggregate(v);
}

Aggregate CrossDomainTable::column_marginal(std::size_t model) const {
    std::vector<double> v;
    for (std::size_t r = 0; r < media.size(); ++r) v.push_back(cells[r][model].accuracy);
    return aggregate(v);
}

std::string CrossDomainTable::to_csv() const {
    std::string out = "test_medium";
    for (const auto& m : models) out += "," + m;
    out += ",row_mean,row_std\n";
    for (std::size_t r = 0; r < media.size(); ++r) {
        out += media[r];
        for (std::size_t c = 0; c < models.size(); ++c) out += "," + format_double_sig(cells[r][c].accuracy, 12);
        Aggregate a = row_marginal(r);
        out += "," + format_double_sig(a.mean, 12) + "," + format_double_sig(a.stddev, 12) + "\n";
    }
    out += "column_mean";
    for (std::size_t c = 0; c < models.size(); ++c) out += "," + format_double_sig(column_marginal(c).mean, 12);
    out += ",,\ncolumn_std";
    for (std::size_t c = 0; c < models.size(); ++c) out += "," + format_double_sig(column_marginal(c).stddev, 12);
    out += ",,\n";
    return out;
}

std::string CrossDomainTable::to_table() const {
    std::vector<std::vector<std::string>> cells_text;
    std::vector<std::string> header{"test medium"};
    header.insert(header.end(), models.begin(), models.end());
    header.push_back("mean+/-std");
    cells_text.push_back(header);
    for (std::size_t r = 0; r < media.size(); ++r) {
        std::vector<std::string> row{media[r]};
        for (std::size_t c = 0; c < models.size(); ++c) row.push_back(format_fixed(cells[r][c].accuracy, 2));
        row.push_back(fmt_pm(row_marginal(r)));
        cells_text.push_back(row);
    }
    std::vector<std::string> footer{""};
    for (std::size_t c = 0; c < models.size(); ++c) footer.push_back(fmt_pm(column_marginal(c)));
    footer.push_back("");
    cells_text.push_back(footer);

    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells_text)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    for (const auto& row : cells_text) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out += "\n";
    }
    return out;
}

CrossDomainTable cross_domain_evaluate(const Corpus& corpus, const std::vector<PipelineConfig>& configs,
                                       std::uint64_t seed) {
    if (corpus.media.size() < 2) throw std::runtime_error("cross-domain evaluation needs at least two media");
    CrossDomainTable table;
    table.media.assign(corpus.media.begin(), corpus.media.end());
    for (const auto& config : configs) table.models.push_back(model_kind_name(config.model));

    for (std::size_t r = 0; r < table.media.size(); ++r) {
        auto [train, test] = split_leave_one_medium_out(corpus, table.media[r]);
        std::vector<Metrics> row;
        for (std::size_t c = 0; c < configs.size(); ++c) {
            row.push_back(
                evaluate_split(configs[c], train, test, derive_seed(seed, "crossdomain", r * 101 + c)));
        }
        table.cells.push_back(std::move(row));
    }
    return table;
}

std::vector<SweepPoint> feature_sweep(const Corpus& corpus, const PipelineConfig& config,
                                      const std::vector<std::size_t>& feature_counts, int k, std::uint64_t seed) {
    if (!std::is_sorted(feature_counts.begin(), feature_counts.end()))
        throw std::runtime_error("feature counts must be sorted ascending");
    std::vector<SweepPoint> points;
    for (std::size_t count : feature_counts) {
        PipelineConfig c = config;
        c.max_features = count;
        EvalReport report = cross_validate(corpus, {c}, k, seed);
        points.push_back({count, report.rows[0].accuracy()});
    }
    return points;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
    std::string out = "max_features,accuracy_mean,accuracy_std\n";
    for (const auto& p : points)
        out += std::to_string(p.max_features) + "," + format_double_sig(p.accuracy.mean, 12) + "," +
               format_double_sig(p.accuracy.stddev, 12) + "\n";
    return out;
}

}  // namespace adlex
