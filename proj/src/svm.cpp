#include "adlex/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "adlex/rng.hpp"

namespace adlex {

namespace {

void check_labels(const std::vector<DocVector>& X, const std::vector<Label>& y) {
    if (X.size() != y.size()) throw std::runtime_error("X and y size mismatch");
    if (X.empty()) throw std::runtime_error("empty training set");
    bool pos = false, neg = false;
    for (Label l : y) (l == Label::commercial ? pos : neg) = true;
    if (!pos || !neg) throw std::runtime_error("degenerate labels: training data contains a single class");
}

double sparse_dot(const std::vector<double>& w, const DocVector& x) {
    double s = 0.0;
    for (const auto& [i, v] : x.entries) s += w[i] * v;
    return s;
}

void sparse_axpy(double a, const DocVector& x, std::vector<double>& w) {
    for (const auto& [i, v] : x.entries) w[i] += a * v;
}

void check_dim(const std::vector<DocVector>& X, std::size_t dim) {
    for (const auto& x : X)
        if (!x.entries.empty() && x.entries.back().first >= dim)
            throw std::runtime_error("feature index exceeds declared dimension");
}

}  // namespace

double LinearModel::decision_score(const DocVector& x) const {
    if (!x.entries.empty() && x.entries.back().first >= weights.size())
        throw std::runtime_error("dimension mismatch: vector index exceeds model weights");
    return sparse_dot(weights, x) + bias;
}

double svm_primal_objective(const std::vector<double>& weights, double bias, const std::vector<DocVector>& X,
                            const std::vector<Label>& y, double C) {
    double reg = bias * bias;
    for (double w : weights) reg += w * w;
    double hinge = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double yi = y[i] == Label::commercial ? 1.0 : -1.0;
        hinge += std::max(0.0, 1.0 - yi * (sparse_dot(weights, X[i]) + bias));
    }
    return 0.5 * reg + C * hinge;
}

LinearModel train_linear_svm(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim,
                             double C, int max_iter, double tol) {
    check_labels(X, y);
    check_dim(X, dim);
    if (C <= 0.0) throw std::runtime_error("C must be > 0");
    const std::size_t n = X.size();
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    std::vector<double> alpha(n, 0.0);
    std::vector<double> qd(n);
    std::vector<double> ylab(n);
    std::vector<std::size_t> index(n);
    for (std::size_t i = 0; i < n; ++i) {
        ylab[i] = y[i] == Label::commercial ? 1.0 : -1.0;
        double nrm2 = 1.0;  // the constant bias feature
        for (const auto& [j, v] : X[i].entries) nrm2 += v * v;
        qd[i] = nrm2;
        index[i] = i;
    }

    LinearModel model;
    model.c_or_lambda = C;
    model.solver = LinearSolver::dcd;

    Rng rng(derive_seed(0x51u, "dcd-shuffle"));
    std::size_t active = n;
    double pg_max_old = inf, pg_min_old = -inf;
    int iter = 0;
    while (iter < max_iter) {
        double pg_max_new = -inf, pg_min_new = inf;
        for (std::size_t i = 0; i < active; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(active - i));
            std::swap(index[i], index[j]);
        }

        for (std::size_t s = 0; s < active; ++s) {
            std::size_t i = index[s];
            const double yi = ylab[i];
            double g = yi * (sparse_dot(w, X[i]) + b) - 1.0;

            double pg = 0.0;
            if (alpha[i] == 0.0) {
                if (g > pg_max_old) {
                    --active;
                    std::swap(index[s], index[active]);
                    --s;
                    continue;
                }
                if (g < 0.0) pg = g;
            } else if (alpha[i] == C) {
                if (g < pg_min_old) {
                    --active;
                    std::swap(index[s], index[active]);
                    --s;
                    continue;
                }
                if (g > 0.0) pg = g;
            } else {
                pg = g;
            }

            pg_max_new = std::max(pg_max_new, pg);
            pg_min_new = std::min(pg_min_new, pg);

            if (std::fabs(pg) > 1e-12) {
                double alpha_old = alpha[i];
                alpha[i] = std::min(std::max(alpha[i] - g / qd[i], 0.0), C);
                double d = (alpha[i] - alpha_old) * yi;
                sparse_axpy(d, X[i], w);
                b += d;
            }
        }

        ++iter;
        model.objective_trace.push_back(svm_primal_objective(w, b, X, y, C));
        {
            // dual objective 1/2 ||w_aug||^2 - sum(alpha); w_aug includes b
            double reg = b * b;
            for (double wv : w) reg += wv * wv;
            double alpha_sum = 0.0;
            for (double a : alpha) alpha_sum += a;
            model.dual_objective_trace.push_back(0.5 * reg - alpha_sum);
        }

        if (pg_max_new - pg_min_new <= tol && std::fabs(pg_max_new) <= tol && std::fabs(pg_min_new) <= tol) {
            if (active == n) break;
            active = n;
            pg_max_old = inf;
            pg_min_old = -inf;
            continue;
        }
        pg_max_old = pg_max_new;
        pg_min_old = pg_min_new;
        if (pg_max_old <= 0.0) pg_max_old = inf;
        if (pg_min_old >= 0.0) pg_min_old = -inf;
    }

    model.weights = std::move(w);
    model.bias = b;
    model.epochs_run = iter;
    return model;
}

double sgd_objective(const LinearModel& model, const std::vector<DocVector>& X, const std::vector<Label>& y,
                     SgdLoss loss, double lambda) {
    double reg = 0.0;
    for (double w : model.weights) reg += w * w;
    double total = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double yi = y[i] == Label::commercial ? 1.0 : -1.0;
        double z = yi * model.decision_score(X[i]);
        if (loss == SgdLoss::hinge)
            total += std::max(0.0, 1.0 - z);
        else
            total += z >= 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
    }
    return 0.5 * lambda * reg + total / static_cast<double>(X.size());
}

LinearModel train_sgd(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim, SgdLoss loss,
                      double lambda, int epochs, std::uint64_t seed) {
    check_labels(X, y);
    check_dim(X, dim);
    if (lambda <= 0.0) throw std::runtime_error("lambda must be > 0");
    if (epochs < 1) throw std::runtime_error("epochs must be >= 1");
    const std::size_t n = X.size();

    // w is stored as scale * wv so the L2 decay is O(1) per sample
    std::vector<double> wv(dim, 0.0);
    double scale = 1.0;
    double b = 0.0;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    const double t0 = 1.0 / lambda;
    double t = 0.0;
    for (int e = 0; e < epochs; ++e) {
        Rng rng(derive_seed(seed, "sgd-epoch", static_cast<std::uint64_t>(e)));
        rng.shuffle(order);
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t i = order[s];
            t += 1.0;
            const double eta = 1.0 / (lambda * (t + t0));
            const double yi = y[i] == Label::commercial ? 1.0 : -1.0;
            const double z = yi * (scale * sparse_dot(wv, X[i]) + b);
            scale *= 1.0 - eta * lambda;
            if (loss == SgdLoss::hinge) {
                if (z < 1.0) {
                    sparse_axpy(eta * yi / scale, X[i], wv);
                    b += eta * yi;
                }
            } else {
                const double sig = 1.0 / (1.0 + std::exp(z));  // sigma(-z)
                sparse_axpy(eta * yi * sig / scale, X[i], wv);
                b += eta * yi * sig;
            }
            if (scale < 1e-9) {
                for (double& wj : wv) wj *= scale;
                scale = 1.0;
            }
        }
    }

    LinearModel model;
    model.weights = std::move(wv);
    for (double& wj : model.weights) wj *= scale;
    model.bias = b;
    model.c_or_lambda = lambda;
    model.solver = LinearSolver::sgd;
    model.epochs_run = epochs;
    return model;
}

}  // namespace adlex
