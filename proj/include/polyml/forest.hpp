// Random forest binary classifier: bootstrap-sampled CART trees with Gini
// splits and sqrt(F) feature subsampling, majority-vote prediction.

#pragma once

#include <cstdint>
#include <vector>

#include "polyml/mlkit.hpp"

namespace polyml {

struct DecisionTree {
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        int label = -1;  // leaf majority class
    };
    std::vector<Node> nodes;
    std::vector<std::size_t> inbag;  // sorted unique bootstrap indices

    int classify(const std::vector<double>& x) const;
};

struct RandomForestModel {
    std::vector<DecisionTree> trees;
    std::size_t feature_count = 0;
};

/// Labels must be binary (0/1); throws "degenerate labels" for a single-class
/// dataset. Deterministic for a fixed seed.
RandomForestModel train_random_forest(const Dataset& data, std::size_t tree_count = 70,
                                      std::uint64_t seed = 0);

/// Fraction of trees voting class 1.
double forest_proba(const RandomForestModel& model, const std::vector<double>& x);
/// Majority vote; exact ties resolve to class 0.
int forest_classify(const RandomForestModel& model, const std::vector<double>& x);

double forest_accuracy(const RandomForestModel& model, const Dataset& test);

}  // namespace polyml
