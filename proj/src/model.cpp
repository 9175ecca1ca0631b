#include "adlex/model.hpp"

#include <json.hpp>

#include "adlex/io.hpp"

namespace adlex {

using nlohmann::json;

double decision_score(const AnyModel& model, const DocVector& x) {
    return std::visit([&x](const auto& m) { return m.decision_score(x); }, model);
}

Label predict(const AnyModel& model, const DocVector& x) { return predict_from_score(decision_score(model, x)); }

const char* model_kind_name(const AnyModel& model) {
    struct Visitor {
        const char* operator()(const LinearModel& m) const {
            return m.solver == LinearSolver::dcd ? "linear_svm" : "sgd";
        }
        const char* operator()(const NBModel&) const { return "naive_bayes"; }
        const char* operator()(const KnnModel&) const { return "knn"; }
        const char* operator()(const TreeModel&) const { return "decision_tree"; }
        const char* operator()(const ForestModel&) const { return "random_forest"; }
    };
    return std::visit(Visitor{}, model);
}

namespace {

json sparse_weights(const std::vector<double>& w) {
    json arr = json::array();
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0.0) arr.push_back(json::array({i, w[i]}));
    return arr;
}

json tree_to_json(const TreeModel& tree) {
    json nodes = json::array();
    for (const auto& n : tree.nodes) {
        json obj;
        if (n.is_leaf()) {
            obj["p_commercial"] = n.p_commercial;
            obj["p_editorial"] = n.p_editorial;
        } else {
            obj["feature"] = n.feature;
            obj["threshold"] = n.threshold;
            obj["left"] = n.left;
            obj["right"] = n.right;
        }
        nodes.push_back(std::move(obj));
    }
    return nodes;
}

}  // namespace

std::string model_to_json(const AnyModel& model, std::uint64_t vocab_hash) {
    json out;
    out["kind"] = model_kind_name(model);
    out["vocab_hash"] = to_hex(vocab_hash);

    struct Visitor {
        json& out;
        void operator()(const LinearModel& m) const {
            out["weights"] = sparse_weights(m.weights);
            out["bias"] = m.bias;
            out["dim"] = m.weights.size();
            out["params"] = {{m.solver == LinearSolver::dcd ? "C" : "lambda", m.c_or_lambda},
                             {"epochs_run", m.epochs_run}};
        }
        void operator()(const NBModel& m) const {
            out["log_prior_commercial"] = m.log_prior_commercial;
            out["log_prior_editorial"] = m.log_prior_editorial;
            out["log_lik_commercial"] = m.log_lik_commercial;
            out["log_lik_editorial"] = m.log_lik_editorial;
            out["params"] = {{"alpha", m.alpha}};
        }
        void operator()(const KnnModel& m) const {
            json train = json::array();
            for (std::size_t i = 0; i < m.train_x.size(); ++i) {
                json row;
                row["y"] = m.train_y[i] == Label::commercial ? "commercial" : "editorial";
                json entries = json::array();
                for (const auto& [idx, v] : m.train_x[i].entries) entries.push_back(json::array({idx, v}));
                row["x"] = std::move(entries);
                train.push_back(std::move(row));
            }
            out["train"] = std::move(train);
            out["params"] = {{"k", m.k}};
        }
        void operator()(const TreeModel& m) const {
            out["tree"] = tree_to_json(m);
            out["params"] = json::object();
        }
        void operator()(const ForestModel& m) const {
            json trees = json::array();
            for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
            out["trees"] = std::move(trees);
            out["params"] = {{"n_trees", m.trees.size()}, {"m_features", m.m_features}};
        }
    };
    std::visit(Visitor{out}, model);
    return out.dump(2) + "\n";
}

}  // namespace adlex
