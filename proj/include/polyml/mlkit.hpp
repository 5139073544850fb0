// Feature encodings, dataset container, regression metrics and k-fold
// splitting for the learning experiments.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polyml {

enum class Encoding {
    plucker,          // coordinates, zero padded
    vertices,         // flattened vertex list, zero padded
    plucker_gcd2,     // coordinates + all pairwise gcds
    plucker_gcdl1,    // coordinates + gcds of all leave-one-out subsets
    onehot,           // per-coordinate one-hot over a clipped integer window
    inverse_problem,  // coordinates minus the final one, volume appended
};

Encoding encoding_from_string(const std::string& name);
std::string encoding_to_string(Encoding e);

struct FeatureVector {
    std::vector<double> values;
    Encoding scheme = Encoding::plucker;
};

/// Raw per-record material the encoders draw from.
struct EncodeInput {
    std::vector<long long> plucker;
    std::vector<long long> vertices;  // flattened, row per vertex
    double volume = 0.0;
};

/// Encode one record. pad_to is the final length of the coordinate block
/// (before the one-hot expansion, which multiplies it by the window size);
/// it must cover the natural length. onehot_clip bounds the represented
/// integer window [-clip, clip], with one overflow bucket per side.
FeatureVector encode(const EncodeInput& input, Encoding scheme, std::size_t pad_to,
                     long long onehot_clip = 20);

struct Dataset {
    std::vector<FeatureVector> features;
    std::vector<double> labels;
    std::string label_name;
    double label_min = 0.0;
    double label_max = 0.0;

    std::size_t size() const { return features.size(); }
    std::size_t feature_length() const { return features.empty() ? 0 : features[0].values.size(); }
    void update_range();
    Dataset subset(const std::vector<std::size_t>& idx) const;
};

/// k disjoint (train, test) index partitions covering 0..n-1.
std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> kfold_split(
    std::size_t n, std::size_t k, std::uint64_t seed);

struct Metrics {
    double mae = 0.0;
    double mape = 0.0;  // percent, over records with nonzero truth
    double mse = 0.0;
    double logcosh = 0.0;
    double pmcc = 0.0;
    bool pmcc_degenerate = false;
    std::vector<std::pair<double, double>> bin_accuracy;  // (half width, accuracy)
};

/// Numerically stable log(cosh(e)).
double logcosh_value(double e);

Metrics evaluate_predictions(const std::vector<double>& truth, const std::vector<double>& predicted,
                             const std::vector<double>& half_widths);

std::string metrics_csv_header();
std::string metrics_csv_row(const Metrics& m);

}  // namespace polyml
