#include "polyml/forest.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "polyml/rng.hpp"

namespace polyml {

int DecisionTree::classify(const std::vector<double>& x) const {
    int node = 0;
    while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
        const Node& n = nodes[static_cast<std::size_t>(node)];
        node = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(node)].label;
}

namespace {

struct TreeBuilder {
    const Dataset& data;
    Rng& rng;
    std::size_t feature_count;
    std::size_t mtry;
    DecisionTree tree;

    int majority(const std::vector<std::size_t>& idx) const {
        std::size_t ones = 0;
        for (std::size_t i : idx)
            if (data.labels[i] >= 0.5) ++ones;
        return 2 * ones > idx.size() ? 1 : 0;  // ties resolve to class 0
    }

    static double gini(std::size_t ones, std::size_t total) {
        if (total == 0) return 0.0;
        double p = static_cast<double>(ones) / static_cast<double>(total);
        return 2.0 * p * (1.0 - p);
    }

    int build(std::vector<std::size_t> idx, int depth) {
        std::size_t ones = 0;
        for (std::size_t i : idx)
            if (data.labels[i] >= 0.5) ++ones;
        const bool pure = ones == 0 || ones == idx.size();

        if (pure || idx.size() < 2 || depth >= 64) return emit_leaf(idx);

        // sample mtry distinct candidate features, examined in sorted order
        std::set<std::size_t> candidates;
        while (candidates.size() < mtry)
            candidates.insert(static_cast<std::size_t>(rng.next_below(feature_count)));

        double best_score = gini(ones, idx.size());  // split must beat the parent
        int best_feature = -1;
        double best_threshold = 0.0;

        for (std::size_t f : candidates) {
            std::vector<std::pair<double, double>> vals;  // (feature value, label)
            vals.reserve(idx.size());
            for (std::size_t i : idx) vals.emplace_back(data.features[i].values[f], data.labels[i]);
            std::sort(vals.begin(), vals.end());

            std::size_t left_n = 0, left_ones = 0;
            const std::size_t total = vals.size();
            for (std::size_t s = 0; s + 1 < total; ++s) {
                ++left_n;
                if (vals[s].second >= 0.5) ++left_ones;
                if (vals[s].first == vals[s + 1].first) continue;
                double threshold = vals[s].first + (vals[s + 1].first - vals[s].first) / 2.0;
                std::size_t right_n = total - left_n;
                std::size_t right_ones = ones - left_ones;
                double score =
                    (static_cast<double>(left_n) * gini(left_ones, left_n) +
                     static_cast<double>(right_n) * gini(right_ones, right_n)) /
                    static_cast<double>(total);
                if (score + 1e-12 < best_score) {
                    best_score = score;
                    best_feature = static_cast<int>(f);
                    best_threshold = threshold;
                }
            }
        }

        if (best_feature < 0) return emit_leaf(idx);

        std::vector<std::size_t> left, right;
        for (std::size_t i : idx) {
            if (data.features[i].values[static_cast<std::size_t>(best_feature)] <= best_threshold)
                left.push_back(i);
            else
                right.push_back(i);
        }
        if (left.empty() || right.empty()) return emit_leaf(idx);

        int node = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[static_cast<std::size_t>(node)].feature = best_feature;
        tree.nodes[static_cast<std::size_t>(node)].threshold = best_threshold;
        int l = build(std::move(left), depth + 1);
        int r = build(std::move(right), depth + 1);
        tree.nodes[static_cast<std::size_t>(node)].left = l;
        tree.nodes[static_cast<std::size_t>(node)].right = r;
        return node;
    }

    int emit_leaf(const std::vector<std::size_t>& idx) {
        int node = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[static_cast<std::size_t>(node)].label = majority(idx);
        return node;
    }
};

}  // namespace

RandomForestModel train_random_forest(const Dataset& data, std::size_t tree_count,
                                      std::uint64_t seed) {
    if (tree_count == 0) throw std::invalid_argument("train_random_forest: need >= 1 tree");
    if (data.size() == 0) throw std::invalid_argument("train_random_forest: empty dataset");
    bool has0 = false, has1 = false;
    for (double y : data.labels) {
        if (y != 0.0 && y != 1.0)
            throw std::invalid_argument("train_random_forest: labels must be binary");
        (y >= 0.5 ? has1 : has0) = true;
    }
    if (!has0 || !has1) throw std::invalid_argument("train_random_forest: degenerate labels");

    RandomForestModel model;
    model.feature_count = data.feature_length();
    const std::size_t n = data.size();
    const std::size_t mtry = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::sqrt(static_cast<double>(model.feature_count))));

    for (std::size_t t = 0; t < tree_count; ++t) {
        Rng rng(Rng::derive(seed, 0x7000 + t));  // per-tree bootstrap stream
        std::vector<std::size_t> sample(n);
        for (std::size_t i = 0; i < n; ++i)
            sample[i] = static_cast<std::size_t>(rng.next_below(n));

        TreeBuilder builder{data, rng, model.feature_count, mtry, {}};
        std::set<std::size_t> unique(sample.begin(), sample.end());
        builder.tree.inbag.assign(unique.begin(), unique.end());
        builder.build(std::move(sample), 0);
        model.trees.push_back(std::move(builder.tree));
    }
    return model;
}

double forest_proba(const RandomForestModel& model, const std::vector<double>& x) {
    if (x.size() != model.feature_count)
        throw std::invalid_argument("forest_proba: feature length mismatch");
    std::size_t ones = 0;
    for (const DecisionTree& t : model.trees)
        if (t.classify(x) == 1) ++ones;
    return static_cast<double>(ones) / static_cast<double>(model.trees.size());
}

int forest_classify(const RandomForestModel& model, const std::vector<double>& x) {
    return forest_proba(model, x) > 0.5 ? 1 : 0;
}

double forest_accuracy(const RandomForestModel& model, const Dataset& test) {
    if (test.size() == 0) throw std::invalid_argument("forest_accuracy: empty test set");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < test.size(); ++i)
        if (forest_classify(model, test.features[i].values) == (test.labels[i] >= 0.5 ? 1 : 0))
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(test.size());
}

}  // namespace polyml
