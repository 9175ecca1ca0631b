#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adlex/corpus.hpp"
#include "adlex/vectorize.hpp"

namespace adlex {

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double p_commercial = 0.0;
    double p_editorial = 0.0;

    bool is_leaf() const { return feature < 0; }
};

// CART with Gini impurity. Thresholds are midpoints of sorted observed
// values; split scores are compared in exact integer arithmetic so ties
// resolve deterministically (lowest feature index, then lowest threshold).
struct TreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    const TreeNode& leaf_for(const DocVector& x) const;
    double decision_score(const DocVector& x) const;  // leaf P(commercial) - 0.5
    int depth() const;
};

struct ForestModel {
    std::vector<TreeModel> trees;
    std::vector<std::uint64_t> tree_seeds;
    std::size_t m_features = 0;

    double decision_score(const DocVector& x) const;  // mean leaf P(commercial) - 0.5
};

// Single-class input yields a one-leaf tree (not an error). Growth stops at
// purity, max_depth, or when min_leaf forbids every split.
TreeModel train_decision_tree(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim,
                              std::optional<int> max_depth = std::nullopt, int min_leaf = 1);

// Bagging with per-tree bootstrap and m random candidate features per split.
// `bootstrap = false` is a test hook that trains every tree on the full set.
ForestModel train_random_forest(const std::vector<DocVector>& X, const std::vector<Label>& y, std::size_t dim,
                                int n_trees, std::size_t m_features, std::uint64_t seed,
                                std::optional<int> max_depth = std::nullopt, int min_leaf = 1,
                                bool bootstrap = true);

}  // namespace adlex
