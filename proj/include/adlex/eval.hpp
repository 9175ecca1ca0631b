#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/metrics.hpp"
#include "adlex/model.hpp"
#include "adlex/vectorize.hpp"

namespace adlex {

enum class Representation { bow, tfidf };
enum class ModelKind { linear_svm, sgd, naive_bayes, knn, decision_tree, random_forest };

const char* representation_name(Representation r);
const char* model_kind_name(ModelKind k);
Representation parse_representation(const std::string& s);
ModelKind parse_model_kind(const std::string& s);

struct ModelParams {
    double svm_c = 1.0;
    int svm_max_iter = 5000;
    double svm_tol = 1e-4;
    SgdLoss sgd_loss = SgdLoss::hinge;
    double sgd_lambda = 1e-4;
    int sgd_epochs = 5000;
    double nb_alpha = 1.0;
    int knn_k = 5;
    std::optional<int> tree_max_depth;  // nullopt = unbounded
    int tree_min_leaf = 1;
    int forest_trees = 100;
    std::optional<std::size_t> forest_m;  // default ceil(sqrt(dim))
};

struct PipelineConfig {
    Representation representation = Representation::tfidf;
    ModelKind model = ModelKind::linear_svm;
    std::size_t max_features = 5000;
    StopwordSet stopwords;
    ModelParams params;
};

AnyModel train_model(const PipelineConfig& config, const std::vector<DocVector>& X, const std::vector<Label>& y,
                     std::size_t dim, std::uint64_t seed);

// Fits vocabulary on `fit` and produces feature vectors for `docs` under the
// configured representation (BoW counts or L2-normalized TF-IDF).
std::vector<DocVector> featurize(const Corpus& docs, const Vocabulary& vocab, Representation representation);

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;  // sample (n-1); 0 when n == 1
};
Aggregate aggregate(const std::vector<double>& values);

struct ReportRow {
    std::string representation;
    std::string model;
    std::vector<Metrics> folds;

    Aggregate accuracy() const;
    Aggregate f1() const;
    std::optional<Aggregate> auc() const;  // absent unless defined on every fold
};

struct EvalReport {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<ReportRow> rows;

    std::string to_csv() const;
    std::string to_table() const;  // aligned, mean +/- std
};

// k-fold cross validation: vocabulary and idf refit on the train split of
// every fold, so no test-set term statistics leak into training.
EvalReport cross_validate(const Corpus& corpus, const std::vector<PipelineConfig>& configs, int k,
                          std::uint64_t seed);

struct CrossDomainTable {
    std::vector<std::string> media;   // rows: the held-out test medium
    std::vector<std::string> models;  // columns
    std::vector<std::vector<Metrics>> cells;  // [medium][model]

    double accuracy(std::size_t medium, std::size_t model) const { return cells[medium][model].accuracy; }
    Aggregate row_marginal(std::size_t medium) const;
    Aggregate column_marginal(std::size_t model) const;
    std::string to_csv() const;
    std::string to_table() const;
};

// Leave-one-medium-out: for each medium, train on the complement and test on
// the held-out medium.
CrossDomainTable cross_domain_evaluate(const Corpus& corpus, const std::vector<PipelineConfig>& configs,
                                       std::uint64_t seed);

struct SweepPoint {
    std::size_t max_features = 0;
    Aggregate accuracy;
};

std::vector<SweepPoint> feature_sweep(const Corpus& corpus, const PipelineConfig& config,
                                      const std::vector<std::size_t>& feature_counts, int k, std::uint64_t seed);
std::string sweep_to_csv(const std::vector<SweepPoint>& points);

}  // namespace adlex
