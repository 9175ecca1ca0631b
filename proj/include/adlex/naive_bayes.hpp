#pragma once

#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/vectorize.hpp"

namespace adlex {

// Multinomial naive Bayes over nonnegative feature mass.
//   log P(t|c) = ln((mass(t,c) + alpha) / (mass(c) + alpha * |vocab|))
struct NBModel {
    double log_prior_commercial = 0.0;
    double log_prior_editorial = 0.0;
    std::vector<double> log_lik_commercial;  // per term
    std::vector<double> log_lik_editorial;
    double alpha = 1.0;

    // log P(commercial|x) - log P(editorial|x)
    double decision_score(const DocVector& x) const;
};

NBModel train_naive_bayes(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim,
                          double alpha = 1.0);

}  // namespace adlex
