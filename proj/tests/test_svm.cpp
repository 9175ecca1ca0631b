#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <limits>

#include "adlex/rng.hpp"
#include "adlex/svm.hpp"

using namespace adlex;

namespace {

DocVector sparse(std::initializer_list<std::pair<std::uint32_t, double>> entries) {
    DocVector v;
    v.entries.assign(entries.begin(), entries.end());
    return v;
}

// Random sparse dataset with a planted separating direction plus noise.
void random_problem(Rng& rng, std::size_t n, std::size_t dim, std::vector<DocVector>& X, std::vector<Label>& y) {
    X.clear();
    y.clear();
    for (std::size_t i = 0; i < n; ++i) {
        DocVector v;
        bool positive = rng.next_double() < 0.5;
        for (std::uint32_t f = 0; f < dim; ++f) {
            double base = (f == 0 ? (positive ? 1.0 : -1.0) : 0.0);
            double value = base + 0.6 * rng.next_normal();
            if (value != 0.0) v.entries.emplace_back(f, value);
        }
        X.push_back(std::move(v));
        y.push_back(positive ? Label::commercial : Label::editorial);
    }
    // make sure both classes are present
    y[0] = Label::commercial;
    y[1] = Label::editorial;
}

// Exhaustive nested grid search over (w0, w1, b) of the primal objective,
// refined until the grid step is ~2e-5. Independent of the solver path.
double grid_search_objective(const std::vector<DocVector>& X, const std::vector<Label>& y, double C) {
    double cw0 = 0.0, cw1 = 0.0, cb = 0.0;
    double width = 3.0;
    double best = 0.0;
    for (int round = 0; round < 11; ++round) {
        double step = width / 6.0;
        double best_w0 = cw0, best_w1 = cw1, best_b = cb;
        best = std::numeric_limits<double>::infinity();
        for (int i = -6; i <= 6; ++i) {
            for (int j = -6; j <= 6; ++j) {
                for (int k = -6; k <= 6; ++k) {
                    std::vector<double> w{cw0 + i * step, cw1 + j * step};
                    double b = cb + k * step;
                    double obj = svm_primal_objective(w, b, X, y, C);
                    if (obj < best) {
                        best = obj;
                        best_w0 = w[0];
                        best_w1 = w[1];
                        best_b = b;
                    }
                }
            }
        }
        cw0 = best_w0;
        cw1 = best_w1;
        cb = best_b;
        width = 3.0 * step;  // keep the refined box around the winner
    }
    return best;
}

}  // namespace

TEST_CASE("linear svm separates the two-point problem and matches the grid oracle") {
    std::vector<DocVector> X{sparse({{0, 1.0}}), sparse({{0, -1.0}})};
    std::vector<Label> y{Label::commercial, Label::editorial};

    LinearModel model = train_linear_svm(X, y, 2, 1.0, 5000, 1e-8);
    CHECK(model.decision_score(X[0]) > 0.0);
    CHECK(model.decision_score(X[1]) < 0.0);
    CHECK(model.weights[0] > 0.5);
    CHECK(std::fabs(model.weights[1]) < 1e-9);

    double solver_obj = svm_primal_objective(model.weights, model.bias, X, y, 1.0);
    double oracle_obj = grid_search_objective(X, y, 1.0);
    CHECK(solver_obj == doctest::Approx(oracle_obj).epsilon(1e-3));
    // analytic optimum of this instance: w = (1, 0), b = 0, objective 1/2
    CHECK(solver_obj == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("grid oracle agrees on a noisy 2-d problem") {
    Rng rng(301);
    std::vector<DocVector> X;
    std::vector<Label> y;
    random_problem(rng, 16, 2, X, y);

    LinearModel model = train_linear_svm(X, y, 2, 1.0, 5000, 1e-10);
    double solver_obj = svm_primal_objective(model.weights, model.bias, X, y, 1.0);
    double oracle_obj = grid_search_objective(X, y, 1.0);
    CHECK(solver_obj <= oracle_obj + 1e-3);
    CHECK(solver_obj >= oracle_obj - 1e-3);
}

TEST_CASE("duplicating every point while halving C keeps the solution") {
    Rng rng(302);
    std::vector<DocVector> X;
    std::vector<Label> y;
    random_problem(rng, 24, 4, X, y);

    std::vector<DocVector> X2;
    std::vector<Label> y2;
    for (std::size_t i = 0; i < X.size(); ++i) {
        X2.push_back(X[i]);
        X2.push_back(X[i]);
        y2.push_back(y[i]);
        y2.push_back(y[i]);
    }

    LinearModel a = train_linear_svm(X, y, 4, 1.0, 20000, 1e-10);
    LinearModel b = train_linear_svm(X2, y2, 4, 0.5, 20000, 1e-10);
    for (std::size_t f = 0; f < 4; ++f) CHECK(a.weights[f] == doctest::Approx(b.weights[f]).epsilon(1e-4));
    CHECK(a.bias == doctest::Approx(b.bias).epsilon(1e-4));
}

// The solver is a dual method: its dual objective decreases every epoch,
// while the recorded primal may tick up transiently before settling at the
// minimum. Both traces are recorded; the dual carries the hard guarantee.
TEST_CASE("dcd objective traces: dual non-increasing, primal settles at its minimum") {
    Rng rng(303);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<DocVector> X;
        std::vector<Label> y;
        random_problem(rng, 30, 6, X, y);
        LinearModel model = train_linear_svm(X, y, 6, 1.0, 500, 1e-10);
        REQUIRE(model.objective_trace.size() >= 2);
        REQUIRE(model.dual_objective_trace.size() == model.objective_trace.size());
        for (std::size_t e = 1; e < model.dual_objective_trace.size(); ++e) {
            CHECK(model.dual_objective_trace[e] <=
                  model.dual_objective_trace[e - 1] +
                      1e-9 * std::max(1.0, std::fabs(model.dual_objective_trace[e - 1])));
        }
        double primal_min = model.objective_trace[0];
        for (double p : model.objective_trace) primal_min = std::min(primal_min, p);
        CHECK(model.objective_trace.back() <= model.objective_trace.front());
        CHECK(model.objective_trace.back() <= primal_min + 1e-6 * (1.0 + std::fabs(primal_min)));
        // at convergence strong duality closes the gap: primal ~ -dual
        CHECK(model.objective_trace.back() ==
              doctest::Approx(-model.dual_objective_trace.back()).epsilon(1e-6));
    }
}

TEST_CASE("dcd is deterministic") {
    Rng rng(304);
    std::vector<DocVector> X;
    std::vector<Label> y;
    random_problem(rng, 20, 5, X, y);
    LinearModel a = train_linear_svm(X, y, 5);
    LinearModel b = train_linear_svm(X, y, 5);
    CHECK(a.weights == b.weights);
    CHECK(a.bias == b.bias);
}

TEST_CASE("degenerate labels are rejected") {
    std::vector<DocVector> X{sparse({{0, 1.0}}), sparse({{0, 2.0}})};
    std::vector<Label> y{Label::commercial, Label::commercial};
    CHECK_THROWS_WITH_AS(train_linear_svm(X, y, 1), doctest::Contains("degenerate labels"), std::runtime_error);
    CHECK_THROWS_AS(train_sgd(X, y, 1), std::runtime_error);
}

TEST_CASE("label swap negates linear model scores") {
    Rng rng(305);
    std::vector<DocVector> X;
    std::vector<Label> y;
    random_problem(rng, 20, 4, X, y);
    std::vector<Label> flipped;
    for (Label l : y) flipped.push_back(l == Label::commercial ? Label::editorial : Label::commercial);

    LinearModel a = train_linear_svm(X, y, 4, 1.0, 300, 1e-6);
    LinearModel b = train_linear_svm(X, flipped, 4, 1.0, 300, 1e-6);
    for (const auto& x : X) CHECK(a.decision_score(x) == doctest::Approx(-b.decision_score(x)).epsilon(1e-9));

    LinearModel sa = train_sgd(X, y, 4, SgdLoss::hinge, 1e-3, 30, 9);
    LinearModel sb = train_sgd(X, flipped, 4, SgdLoss::hinge, 1e-3, 30, 9);
    for (const auto& x : X)
        CHECK(sa.decision_score(x) == doctest::Approx(-sb.decision_score(x)).epsilon(1e-9));
}

TEST_CASE("feature permutation permutes weights and the argmax term") {
    Rng rng(306);
    std::vector<DocVector> X;
    std::vector<Label> y;
    random_problem(rng, 24, 5, X, y);

    std::vector<std::uint32_t> perm{3, 0, 4, 1, 2};
    std::vector<DocVector> Xp;
    for (const auto& x : X) {
        DocVector v;
        v.entries.resize(x.entries.size());
        for (std::size_t e = 0; e < x.entries.size(); ++e)
            v.entries[e] = {perm[x.entries[e].first], x.entries[e].second};
        std::sort(v.entries.begin(), v.entries.end());
        Xp.push_back(std::move(v));
    }

    LinearModel a = train_linear_svm(X, y, 5, 1.0, 2000, 1e-10);
    LinearModel b = train_linear_svm(Xp, y, 5, 1.0, 2000, 1e-10);
    for (std::size_t f = 0; f < 5; ++f) CHECK(b.weights[perm[f]] == doctest::Approx(a.weights[f]).epsilon(1e-6));

    auto argmax_abs = [](const std::vector<double>& w) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < w.size(); ++i)
            if (std::fabs(w[i]) > std::fabs(w[best])) best = i;
        return best;
    };
    CHECK(argmax_abs(b.weights) == perm[argmax_abs(a.weights)]);
}

TEST_CASE("decision_score checks dimensions") {
    LinearModel m;
    m.weights = {2.0, -1.0};
    m.bias = 0.0;
    CHECK(m.decision_score(sparse({{0, 1.0}})) == 2.0);
    CHECK_THROWS_AS(m.decision_score(sparse({{5, 1.0}})), std::runtime_error);
}

TEST_CASE("sgd converges on the separable problem") {
    std::vector<DocVector> X{sparse({{0, 1.0}}), sparse({{0, -1.0}})};
    std::vector<Label> y{Label::commercial, Label::editorial};
    LinearModel model = train_sgd(X, y, 2, SgdLoss::hinge, 1e-3, 2000, 4);
    CHECK(model.decision_score(X[0]) > 0.0);
    CHECK(model.decision_score(X[1]) < 0.0);
    // hinge part of the objective is essentially zero at the optimum
    double hinge = sgd_objective(model, X, y, SgdLoss::hinge, 1e-3) -
                   0.5 * 1e-3 * (model.weights[0] * model.weights[0] + model.weights[1] * model.weights[1]);
    CHECK(hinge < 1e-2);
}

TEST_CASE("huge lambda shrinks sgd weights to near zero") {
    Rng rng(307);
    std::vector<DocVector> X;
    std::vector<Label> y;
    random_problem(rng, 12, 3, X, y);
    LinearModel model = train_sgd(X, y, 3, SgdLoss::hinge, 1e6, 5, 1);
    double norm = 0.0;
    for (double w : model.weights) norm += w * w;
    CHECK(std::sqrt(norm) < 1e-2);
}

TEST_CASE("sgd is deterministic per seed") {
    Rng rng(308);
    std::vector<DocVector> X;
    std::vector<Label> y;
    random_problem(rng, 16, 3, X, y);
    LinearModel a = train_sgd(X, y, 3, SgdLoss::logistic, 1e-3, 20, 77);
    LinearModel b = train_sgd(X, y, 3, SgdLoss::logistic, 1e-3, 20, 77);
    CHECK(a.weights == b.weights);
    CHECK(a.bias == b.bias);
}

TEST_CASE("sgd logistic loss reduces the objective from zero") {
    Rng rng(309);
    std::vector<DocVector> X;
    std::vector<Label> y;
    random_problem(rng, 30, 4, X, y);
    LinearModel zero;
    zero.weights.assign(4, 0.0);
    LinearModel model = train_sgd(X, y, 4, SgdLoss::logistic, 1e-3, 50, 5);
    CHECK(sgd_objective(model, X, y, SgdLoss::logistic, 1e-3) <
          sgd_objective(zero, X, y, SgdLoss::logistic, 1e-3));
}
