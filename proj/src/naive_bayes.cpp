#include "adlex/naive_bayes.hpp"

#include <cmath>
#include <stdexcept>

namespace adlex {

double NBModel::decision_score(const DocVector& x) const {
    if (!x.entries.empty() && x.entries.back().first >= log_lik_commercial.size())
        throw std::runtime_error("dimension mismatch: vector index exceeds model vocabulary");
    double score = log_prior_commercial - log_prior_editorial;
    for (const auto& [i, v] : x.entries) score += v * (log_lik_commercial[i] - log_lik_editorial[i]);
    return score;
}

NBModel train_naive_bayes(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim,
                          double alpha) {
    if (X.size() != y.size()) throw std::runtime_error("X and y size mismatch");
    if (X.empty()) throw std::runtime_error("empty training set");
    if (alpha <= 0.0) throw std::runtime_error("alpha must be > 0");

    std::vector<double> mass_c(dim, 0.0), mass_e(dim, 0.0);
    double total_c = 0.0, total_e = 0.0;
    std::size_t n_c = 0, n_e = 0;
    for (std::size_t k = 0; k < X.size(); ++k) {
        const bool commercial = y[k] == Label::commercial;
        auto& mass = commercial ? mass_c : mass_e;
        auto& total = commercial ? total_c : total_e;
        (commercial ? n_c : n_e) += 1;
        for (const auto& [i, v] : X[k].entries) {
            if (v < 0.0) throw std::runtime_error("negative feature value in naive Bayes input");
            if (i >= dim) throw std::runtime_error("feature index exceeds declared dimension");
            mass[i] += v;
            total += v;
        }
    }
    if (n_c == 0 || n_e == 0) throw std::runtime_error("degenerate labels: training data contains a single class");

    NBModel model;
    model.alpha = alpha;
    model.log_prior_commercial = std::log(static_cast<double>(n_c) / static_cast<double>(X.size()));
    model.log_prior_editorial = std::log(static_cast<double>(n_e) / static_cast<double>(X.size()));
    model.log_lik_commercial.resize(dim);
    model.log_lik_editorial.resize(dim);
    const double denom_c = total_c + alpha * static_cast<double>(dim);
    const double denom_e = total_e + alpha * static_cast<double>(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        model.log_lik_commercial[i] = std::log((mass_c[i] + alpha) / denom_c);
        model.log_lik_editorial[i] = std::log((mass_e[i] + alpha) / denom_e);
    }
    return model;
}

}  // namespace adlex
