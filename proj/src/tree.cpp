#include "adlex/tree.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "adlex/rng.hpp"

namespace adlex {

namespace {

// Split quality is maximized:  f = A_L/n_L + A_R/n_R  with A = c+^2 + c-^2,
// equivalent to minimizing the weighted Gini. Stored as an exact fraction so
// comparisons are free of floating-point noise.
struct SplitScore {
    __int128 num = -1;  // (A_L*n_R + A_R*n_L)
    __int128 den = 1;   // n_L * n_R

    bool better_than(const SplitScore& other) const {
        return num * other.den > other.num * den;
    }
};

struct Builder {
    const std::vector<DocVector>& X;
    const std::vector<Label>& y;
    std::size_t dim;
    std::optional<int> max_depth;
    int min_leaf;
    // returns candidate features for one node; nullptr = all features
    std::function<std::vector<std::uint32_t>()> sample_features;
    std::vector<TreeNode> nodes;

    int build(std::vector<std::size_t>& samples, int depth) {
        std::int64_t n = static_cast<std::int64_t>(samples.size());
        std::int64_t n_pos = 0;
        for (std::size_t i : samples) n_pos += y[i] == Label::commercial ? 1 : 0;

        auto make_leaf = [&]() {
            TreeNode leaf;
            // both probabilities straight from counts so a label swap mirrors
            // the leaf exactly
            leaf.p_commercial = static_cast<double>(n_pos) / static_cast<double>(n);
            leaf.p_editorial = static_cast<double>(n - n_pos) / static_cast<double>(n);
            nodes.push_back(leaf);
            return static_cast<int>(nodes.size() - 1);
        };

        bool pure = n_pos == 0 || n_pos == n;
        bool depth_capped = max_depth.has_value() && depth >= *max_depth;
        if (pure || depth_capped || n < 2 * static_cast<std::int64_t>(min_leaf)) return make_leaf();

        std::vector<std::uint32_t> features;
        if (sample_features)
            features = sample_features();
        else {
            features.resize(dim);
            for (std::uint32_t f = 0; f < dim; ++f) features[f] = f;
        }

        SplitScore best;
        std::uint32_t best_feature = 0;
        double best_threshold = 0.0;
        bool found = false;

        std::vector<std::pair<double, bool>> column(samples.size());  // (value, is_commercial)
        for (std::uint32_t f : features) {
            for (std::size_t s = 0; s < samples.size(); ++s)
                column[s] = {X[samples[s]].get(f), y[samples[s]] == Label::commercial};
            std::sort(column.begin(), column.end());

            std::int64_t left_n = 0, left_pos = 0;
            for (std::size_t s = 0; s + 1 < column.size(); ++s) {
                ++left_n;
                left_pos += column[s].second ? 1 : 0;
                if (column[s].first == column[s + 1].first) continue;  // not a boundary
                std::int64_t right_n = n - left_n;
                if (left_n < min_leaf || right_n < min_leaf) continue;
                std::int64_t right_pos = n_pos - left_pos;
                __int128 a_l = static_cast<__int128>(left_pos) * left_pos +
                               static_cast<__int128>(left_n - left_pos) * (left_n - left_pos);
                __int128 a_r = static_cast<__int128>(right_pos) * right_pos +
                               static_cast<__int128>(right_n - right_pos) * (right_n - right_pos);
                SplitScore score;
                score.num = a_l * right_n + a_r * left_n;
                score.den = static_cast<__int128>(left_n) * right_n;
                if (!found || score.better_than(best)) {
                    found = true;
                    best = score;
                    best_feature = f;
                    best_threshold = column[s].first + 0.5 * (column[s + 1].first - column[s].first);
                }
            }
        }

        if (!found) return make_leaf();

        std::vector<std::size_t> left_samples, right_samples;
        for (std::size_t i : samples) {
            if (X[i].get(best_feature) <= best_threshold)
                left_samples.push_back(i);
            else
                right_samples.push_back(i);
        }

        int node_index = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[node_index].feature = static_cast<int>(best_feature);
        nodes[node_index].threshold = best_threshold;
        int left = build(left_samples, depth + 1);
        int right = build(right_samples, depth + 1);
        nodes[node_index].left = left;
        nodes[node_index].right = right;
        return node_index;
    }
};

}  // namespace

const TreeNode& TreeModel::leaf_for(const DocVector& x) const {
    const TreeNode* node = &nodes.at(0);
    while (!node->is_leaf()) {
        if (x.get(static_cast<std::uint32_t>(node->feature)) <= node->threshold)
            node = &nodes[static_cast<std::size_t>(node->left)];
        else
            node = &nodes[static_cast<std::size_t>(node->right)];
    }
    return *node;
}

double TreeModel::decision_score(const DocVector& x) const {
    // identical to P(commercial) - 0.5 but antisymmetric under a label swap
    const TreeNode& leaf = leaf_for(x);
    return 0.5 * (leaf.p_commercial - leaf.p_editorial);
}

int TreeModel::depth() const {
    std::function<int(int)> walk = [&](int idx) -> int {
        const TreeNode& node = nodes[static_cast<std::size_t>(idx)];
        if (node.is_leaf()) return 0;
        return 1 + std::max(walk(node.left), walk(node.right));
    };
    return nodes.empty() ? 0 : walk(0);
}

double ForestModel::decision_score(const DocVector& x) const {
    // mean leaf P(commercial) - 0.5, written antisymmetrically
    double sum = 0.0;
    for (const auto& tree : trees) {
        const TreeNode& leaf = tree.leaf_for(x);
        sum += 0.5 * (leaf.p_commercial - leaf.p_editorial);
    }
    return sum / static_cast<double>(trees.size());
}

TreeModel train_decision_tree(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim,
                              std::optional<int> max_depth, int min_leaf) {
    if (X.empty()) throw std::runtime_error("empty training set");
    if (X.size() != y.size()) throw std::runtime_error("X and y size mismatch");
    if (min_leaf < 1) throw std::runtime_error("min_leaf must be >= 1");

    Builder builder{X, y, dim, max_depth, min_leaf, nullptr, {}};
    std::vector<std::size_t> samples(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) samples[i] = i;
    builder.build(samples, 0);

    TreeModel model;
    model.nodes = std::move(builder.nodes);
    return model;
}

ForestModel train_random_forest(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim,
                                int n_trees, std::size_t m_features, std::uint64_t seed,
                                std::optional<int> max_depth, int min_leaf, bool bootstrap) {
    if (X.empty()) throw std::runtime_error("empty training set");
    if (X.size() != y.size()) throw std::runtime_error("X and y size mismatch");
    if (n_trees < 1) throw std::runtime_error("n_trees must be >= 1");
    if (m_features < 1 || m_features > dim) throw std::runtime_error("m_features must be in [1, dim]");

    ForestModel forest;
    forest.m_features = m_features;
    std::vector<std::uint32_t> pool(dim);
    for (std::uint32_t f = 0; f < dim; ++f) pool[f] = f;

    for (int t = 0; t < n_trees; ++t) {
        std::uint64_t tree_seed = derive_seed(seed, "forest-tree", static_cast<std::uint64_t>(t));
        forest.tree_seeds.push_back(tree_seed);
        Rng rng(tree_seed);

        std::vector<std::size_t> samples;
        samples.reserve(X.size());
        if (bootstrap) {
            for (std::size_t i = 0; i < X.size(); ++i)
                samples.push_back(static_cast<std::size_t>(rng.below(X.size())));
        } else {
            for (std::size_t i = 0; i < X.size(); ++i) samples.push_back(i);
        }

        Builder builder{X, y, dim, max_depth, min_leaf, nullptr, {}};
        auto features = pool;
        builder.sample_features = [&rng, features, m_features]() mutable {
            // partial Fisher-Yates draw of m distinct features
            std::vector<std::uint32_t> picked(m_features);
            for (std::size_t i = 0; i < m_features; ++i) {
                std::size_t j = i + static_cast<std::size_t>(rng.below(features.size() - i));
                std::swap(features[i], features[j]);
                picked[i] = features[i];
            }
            std::sort(picked.begin(), picked.end());  // lowest-index tie rule needs ascending order
            return picked;
        };
        builder.build(samples, 0);

        TreeModel tree;
        tree.nodes = std::move(builder.nodes);
        forest.trees.push_back(std::move(tree));
    }
    return forest;
}

}  // namespace adlex
