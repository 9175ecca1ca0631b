#pragma once

#include <cstdint>
#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/vectorize.hpp"

namespace adlex {

enum class LinearSolver { dcd, sgd };
enum class SgdLoss { hinge, logistic };

// Linear decision function over the vocabulary space. Sign convention is
// project-wide: commercial = +1, editorial = -1.
struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    double c_or_lambda = 1.0;
    LinearSolver solver = LinearSolver::dcd;
    // Both objectives recorded per epoch. The dual is the quantity coordinate
    // descent actually drives down; the primal can tick up between epochs.
    std::vector<double> objective_trace;       // primal
    std::vector<double> dual_objective_trace;  // dual
    int epochs_run = 0;

    double decision_score(const DocVector& x) const;  // dot(weights, x) + bias
};

// L1-hinge SVM trained by dual coordinate descent:
//   min_w 1/2 (||w||^2 + b^2) + C * sum_i max(0, 1 - y_i (w.x_i + b))
// The bias rides along as an implicit constant-1 feature, so it is inside
// the regularizer (the usual augmented formulation for dual solvers).
// Stops after max_iter epochs or when the projected-gradient violation
// range falls below tol.
LinearModel train_linear_svm(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim,
                             double C = 1.0, int max_iter = 5000, double tol = 1e-4);

// Primal objective of the model above on a dataset; exposed for tests.
double svm_primal_objective(const std::vector<double>& weights, double bias, const std::vector<DocVector>& X,
                            const std::vector<Label>& y, double C);

// Per-sample SGD on  lambda/2 ||w||^2 + 1/n sum_i loss(y_i, w.x_i + b)
// with step eta_t = 1 / (lambda * (t + t0)), t0 = 1/lambda. The bias is
// updated without regularization. Deterministic for a fixed seed.
LinearModel train_sgd(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim,
                      SgdLoss loss = SgdLoss::hinge, double lambda = 1e-4, int epochs = 5000,
                      std::uint64_t seed = 0);

double sgd_objective(const LinearModel& model, const std::vector<DocVector>& X, const std::vector<Label>& y,
                     SgdLoss loss, double lambda);

}  // namespace adlex
