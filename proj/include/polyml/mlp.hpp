// Dense feed-forward networks trained from scratch with Adam. Hidden layers
// use leaky-ReLU; the output is a single linear neuron for regression or a
// softmax pair for binary classification. Training is bit-reproducible for a
// fixed seed.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polyml/mlkit.hpp"

namespace polyml {

enum class Loss { logcosh, mse };

Loss loss_from_string(const std::string& name);
std::string loss_to_string(Loss loss);

struct MLPModel {
    std::vector<std::size_t> layer_sizes;      // input, hidden..., output
    std::vector<std::vector<double>> weights;  // per layer, out x in row-major
    std::vector<std::vector<double>> biases;
    double leaky_alpha = 0.01;
    bool softmax_output = false;

    std::size_t input_dim() const { return layer_sizes.front(); }
    std::size_t output_dim() const { return layer_sizes.back(); }
    std::size_t parameter_count() const;
};

struct TrainConfig {
    std::size_t batch_size = 32;
    std::size_t epochs = 20;
    Loss loss = Loss::logcosh;
    double learning_rate = 1e-3;  // Adam defaults
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;
};

struct TrainLog {
    std::vector<double> train_loss;  // one entry per epoch
    std::vector<double> val_loss;    // present when a validation set is given
};

/// Fresh network with seeded uniform(+-sqrt(6/(fan_in+fan_out))) weights.
MLPModel make_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                  std::size_t output_dim, double leaky_alpha, bool softmax_output,
                  std::uint64_t seed);

/// Mini-batch Adam training; continues from the model's current weights with
/// fresh optimizer moments, so the same call performs fine tuning. Throws
/// std::runtime_error naming the epoch if the loss degenerates.
TrainLog train_mlp(MLPModel& model, const Dataset& data, const TrainConfig& config,
                   const Dataset* validation = nullptr);

/// Forward pass; scalar output (regression models only).
double predict(const MLPModel& model, const std::vector<double>& features);
/// Forward pass through the softmax head (classification models only).
std::array<double, 2> predict_proba(const MLPModel& model, const std::vector<double>& features);

std::vector<double> predict_all(const MLPModel& model, const Dataset& data);

Metrics evaluate_regression(const MLPModel& model, const Dataset& test,
                            const std::vector<double>& half_widths);

/// Self-describing text serialization; round-trips bit-exactly.
void save_mlp(const std::string& path, const MLPModel& model);
MLPModel load_mlp(const std::string& path);

namespace detail {

/// Mean loss of the model on a batch (targets are scalars; for softmax models
/// they are class indices expanded to one-hot internally).
double batch_loss(const MLPModel& model, const std::vector<const std::vector<double>*>& inputs,
                  const std::vector<double>& targets, Loss loss);

/// Mean loss and its gradient over the flattened parameter vector
/// [W0, b0, W1, b1, ...].
double batch_loss_gradient(const MLPModel& model,
                           const std::vector<const std::vector<double>*>& inputs,
                           const std::vector<double>& targets, Loss loss,
                           std::vector<double>& grad);

std::vector<double> flatten_parameters(const MLPModel& model);
void assign_parameters(MLPModel& model, const std::vector<double>& flat);

}  // namespace detail

}  // namespace polyml
