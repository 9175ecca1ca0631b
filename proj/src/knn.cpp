#include "adlex/knn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adlex {

double cosine_similarity(const DocVector& a, const DocVector& b) {
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        if (a.entries[i].first == b.entries[j].first) {
            dot += a.entries[i].second * b.entries[j].second;
            ++i;
            ++j;
        } else if (a.entries[i].first < b.entries[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    double na = a.l2_norm(), nb = b.l2_norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (na * nb);
}

KnnModel make_knn(std::vector<DocVector> X, std::vector<Label> y, int k) {
    if (X.empty()) throw std::runtime_error("empty training set");
    if (X.size() != y.size()) throw std::runtime_error("X and y size mismatch");
    if (k < 1) throw std::runtime_error("k must be >= 1");
    if (static_cast<std::size_t>(k) > X.size()) throw std::runtime_error("k exceeds training set size");
    return KnnModel{std::move(X), std::move(y), k};
}

std::pair<Label, double> knn_predict(const KnnModel& model, const DocVector& x) {
    if (model.train_x.empty()) throw std::runtime_error("empty training set");
    const std::size_t n = model.train_x.size();
    std::vector<std::pair<double, std::size_t>> sims(n);
    for (std::size_t i = 0; i < n; ++i) sims[i] = {cosine_similarity(model.train_x[i], x), i};
    // highest similarity first, equal similarities by lower training index
    std::sort(sims.begin(), sims.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    int commercial = 0, editorial = 0;
    for (int i = 0; i < model.k; ++i) {
        if (model.train_y[sims[static_cast<std::size_t>(i)].second] == Label::commercial)
            ++commercial;
        else
            ++editorial;
    }
    double score = static_cast<double>(commercial - editorial) / static_cast<double>(model.k);
    return {score > 0.0 ? Label::commercial : Label::editorial, score};
}

double KnnModel::decision_score(const DocVector& x) const { return knn_predict(*this, x).second; }

}  // namespace adlex
