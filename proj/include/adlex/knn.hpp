#pragma once

#include <utility>
#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/vectorize.hpp"

namespace adlex {

// Instance-based classifier: cosine similarity on TF-IDF vectors.
struct KnnModel {
    std::vector<DocVector> train_x;
    std::vector<Label> train_y;
    int k = 5;

    // (#commercial neighbors - #editorial neighbors) / k
    double decision_score(const DocVector& x) const;
};

KnnModel make_knn(std::vector<DocVector> X, std::vector<Label> y, int k);

// Neighbor vote among the k nearest; similarity ties broken by lower
// training index, label ties go to editorial.
std::pair<Label, double> knn_predict(const KnnModel& model, const DocVector& x);

double cosine_similarity(const DocVector& a, const DocVector& b);

}  // namespace adlex
