#include "polyml/mlp.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "polyml/rng.hpp"

namespace polyml {

Loss loss_from_string(const std::string& name) {
    if (name == "logcosh") return Loss::logcosh;
    if (name == "mse") return Loss::mse;
    throw std::invalid_argument("unknown loss '" + name + "'");
}

std::string loss_to_string(Loss loss) { return loss == Loss::logcosh ? "logcosh" : "mse"; }

std::size_t MLPModel::parameter_count() const {
    std::size_t count = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l)
        count += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
    return count;
}

MLPModel make_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                  std::size_t output_dim, double leaky_alpha, bool softmax_output,
                  std::uint64_t seed) {
    if (input_dim == 0 || output_dim == 0)
        throw std::invalid_argument("make_mlp: zero-sized layer");
    if (softmax_output && output_dim != 2)
        throw std::invalid_argument("make_mlp: softmax head is a class pair");
    MLPModel m;
    m.layer_sizes.push_back(input_dim);
    for (std::size_t h : hidden) m.layer_sizes.push_back(h);
    m.layer_sizes.push_back(output_dim);
    m.leaky_alpha = leaky_alpha;
    m.softmax_output = softmax_output;

    Rng rng(Rng::derive(seed, 0x11));
    for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        std::size_t fan_in = m.layer_sizes[l], fan_out = m.layer_sizes[l + 1];
        double s = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::vector<double> w(fan_in * fan_out);
        for (double& x : w) x = rng.next_double(-s, s);
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(fan_out, 0.0);
    }
    return m;
}

namespace {

struct ForwardState {
    std::vector<std::vector<double>> pre;   // z per layer (excluding input)
    std::vector<std::vector<double>> post;  // activations including input
};

void forward(const MLPModel& m, const std::vector<double>& x, ForwardState& fs) {
    if (x.size() != m.input_dim()) throw std::invalid_argument("mlp: feature length mismatch");
    const std::size_t layers = m.weights.size();
    fs.pre.assign(layers, {});
    fs.post.assign(layers + 1, {});
    fs.post[0] = x;
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
        std::vector<double> z(out);
        const double* w = m.weights[l].data();
        for (std::size_t o = 0; o < out; ++o) {
            double acc = m.biases[l][o];
            const double* row = w + o * in;
            for (std::size_t i = 0; i < in; ++i) acc += row[i] * fs.post[l][i];
            z[o] = acc;
        }
        fs.pre[l] = z;
        if (l + 1 < layers) {
            for (double& v : z)
                if (v < 0) v *= m.leaky_alpha;
            fs.post[l + 1] = std::move(z);
        } else if (m.softmax_output) {
            double mx = std::max(z[0], z[1]);
            double e0 = std::exp(z[0] - mx), e1 = std::exp(z[1] - mx);
            fs.post[l + 1] = {e0 / (e0 + e1), e1 / (e0 + e1)};
        } else {
            fs.post[l + 1] = std::move(z);
        }
    }
}

double output_loss(const MLPModel& m, const std::vector<double>& yhat, double target, Loss loss,
                   std::vector<double>* dldy) {
    std::vector<double> t;
    if (m.softmax_output) t = {target < 0.5 ? 1.0 : 0.0, target < 0.5 ? 0.0 : 1.0};
    else t = {target};
    double total = 0;
    if (dldy) dldy->assign(yhat.size(), 0.0);
    for (std::size_t i = 0; i < yhat.size(); ++i) {
        double e = yhat[i] - t[i];
        if (loss == Loss::mse) {
            total += e * e;
            if (dldy) (*dldy)[i] = 2.0 * e;
        } else {
            total += logcosh_value(e);
            if (dldy) (*dldy)[i] = std::tanh(e);
        }
    }
    double scale = 1.0 / static_cast<double>(yhat.size());
    if (dldy)
        for (double& v : *dldy) v *= scale;
    return total * scale;
}

struct Gradients {
    std::vector<std::vector<double>> dw;
    std::vector<std::vector<double>> db;
    void init(const MLPModel& m) {
        dw.clear();
        db.clear();
        for (std::size_t l = 0; l < m.weights.size(); ++l) {
            dw.emplace_back(m.weights[l].size(), 0.0);
            db.emplace_back(m.biases[l].size(), 0.0);
        }
    }
};

void backward(const MLPModel& m, const ForwardState& fs, const std::vector<double>& dldy,
              Gradients& g) {
    const std::size_t layers = m.weights.size();
    std::vector<double> delta;  // dL/dz at the current layer

    if (m.softmax_output) {
        const std::vector<double>& p = fs.post[layers];
        delta.assign(2, 0.0);
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t i = 0; i < 2; ++i)
                delta[j] += dldy[i] * p[i] * ((i == j ? 1.0 : 0.0) - p[j]);
    } else {
        delta = dldy;
    }

    for (std::size_t l = layers; l-- > 0;) {
        const std::size_t in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
        double* dw = g.dw[l].data();
        for (std::size_t o = 0; o < out; ++o) {
            g.db[l][o] += delta[o];
            double* row = dw + o * in;
            const double d = delta[o];
            for (std::size_t i = 0; i < in; ++i) row[i] += d * fs.post[l][i];
        }
        if (l == 0) break;
        std::vector<double> prev(in, 0.0);
        const double* w = m.weights[l].data();
        for (std::size_t o = 0; o < out; ++o) {
            const double d = delta[o];
            const double* row = w + o * in;
            for (std::size_t i = 0; i < in; ++i) prev[i] += row[i] * d;
        }
        for (std::size_t i = 0; i < in; ++i)
            if (fs.pre[l - 1][i] < 0) prev[i] *= m.leaky_alpha;
        delta = std::move(prev);
    }
}

}  // namespace

namespace detail {

double batch_loss(const MLPModel& model, const std::vector<const std::vector<double>*>& inputs,
                  const std::vector<double>& targets, Loss loss) {
    ForwardState fs;
    double total = 0;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        forward(model, *inputs[s], fs);
        total += output_loss(model, fs.post.back(), targets[s], loss, nullptr);
    }
    return total / static_cast<double>(inputs.size());
}

double batch_loss_gradient(const MLPModel& model,
                           const std::vector<const std::vector<double>*>& inputs,
                           const std::vector<double>& targets, Loss loss,
                           std::vector<double>& grad) {
    Gradients g;
    g.init(model);
    ForwardState fs;
    std::vector<double> dldy;
    double total = 0;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        forward(model, *inputs[s], fs);
        total += output_loss(model, fs.post.back(), targets[s], loss, &dldy);
        backward(model, fs, dldy, g);
    }
    const double inv = 1.0 / static_cast<double>(inputs.size());
    grad.clear();
    for (std::size_t l = 0; l < g.dw.size(); ++l) {
        for (double v : g.dw[l]) grad.push_back(v * inv);
        for (double v : g.db[l]) grad.push_back(v * inv);
    }
    return total * inv;
}

std::vector<double> flatten_parameters(const MLPModel& model) {
    std::vector<double> flat;
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        flat.insert(flat.end(), model.weights[l].begin(), model.weights[l].end());
        flat.insert(flat.end(), model.biases[l].begin(), model.biases[l].end());
    }
    return flat;
}

void assign_parameters(MLPModel& model, const std::vector<double>& flat) {
    std::size_t pos = 0;
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        for (double& w : model.weights[l]) w = flat[pos++];
        for (double& b : model.biases[l]) b = flat[pos++];
    }
    if (pos != flat.size()) throw std::invalid_argument("assign_parameters: length mismatch");
}

}  // namespace detail

TrainLog train_mlp(MLPModel& model, const Dataset& data, const TrainConfig& config,
                   const Dataset* validation) {
    if (data.size() == 0) throw std::invalid_argument("train_mlp: empty dataset");
    if (config.batch_size == 0) throw std::invalid_argument("train_mlp: batch size must be >= 1");

    const std::size_t n = data.size();
    std::vector<double> m_state(model.parameter_count(), 0.0);
    std::vector<double> v_state(model.parameter_count(), 0.0);
    std::vector<double> params = detail::flatten_parameters(model);
    std::vector<double> grad;
    long long step = 0;

    TrainLog log;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        Rng shuffle_rng(Rng::derive(config.seed, 0x1000 + epoch));
        shuffle_rng.shuffle(order);

        double epoch_loss = 0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < n; start += config.batch_size) {
            std::size_t stop = std::min(n, start + config.batch_size);
            std::vector<const std::vector<double>*> inputs;
            std::vector<double> targets;
            inputs.reserve(stop - start);
            for (std::size_t i = start; i < stop; ++i) {
                inputs.push_back(&data.features[order[i]].values);
                targets.push_back(data.labels[order[i]]);
            }
            double loss = detail::batch_loss_gradient(model, inputs, targets, config.loss, grad);
            epoch_loss += loss * static_cast<double>(stop - start);
            seen += stop - start;

            ++step;
            const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
            for (std::size_t i = 0; i < params.size(); ++i) {
                m_state[i] = config.beta1 * m_state[i] + (1.0 - config.beta1) * grad[i];
                v_state[i] = config.beta2 * v_state[i] + (1.0 - config.beta2) * grad[i] * grad[i];
                params[i] -= config.learning_rate * (m_state[i] / bc1) /
                             (std::sqrt(v_state[i] / bc2) + config.epsilon);
            }
            detail::assign_parameters(model, params);
        }
        epoch_loss /= static_cast<double>(seen);
        if (!std::isfinite(epoch_loss))
            throw std::runtime_error("train_mlp: training diverged at epoch " +
                                     std::to_string(epoch));
        log.train_loss.push_back(epoch_loss);

        if (validation && validation->size() > 0) {
            std::vector<const std::vector<double>*> inputs;
            std::vector<double> targets;
            for (std::size_t i = 0; i < validation->size(); ++i) {
                inputs.push_back(&validation->features[i].values);
                targets.push_back(validation->labels[i]);
            }
            log.val_loss.push_back(detail::batch_loss(model, inputs, targets, config.loss));
        }
    }
    return log;
}

double predict(const MLPModel& model, const std::vector<double>& features) {
    if (model.softmax_output)
        throw std::invalid_argument("predict: classification model, use predict_proba");
    ForwardState fs;
    forward(model, features, fs);
    return fs.post.back()[0];
}

std::array<double, 2> predict_proba(const MLPModel& model, const std::vector<double>& features) {
    if (!model.softmax_output)
        throw std::invalid_argument("predict_proba: regression model, use predict");
    ForwardState fs;
    forward(model, features, fs);
    return {fs.post.back()[0], fs.post.back()[1]};
}

std::vector<double> predict_all(const MLPModel& model, const Dataset& data) {
    std::vector<double> out;
    out.reserve(data.size());
    for (const FeatureVector& f : data.features)
        out.push_back(model.softmax_output ? predict_proba(model, f.values)[1]
                                           : predict(model, f.values));
    return out;
}

Metrics evaluate_regression(const MLPModel& model, const Dataset& test,
                            const std::vector<double>& half_widths) {
    if (test.size() == 0) throw std::invalid_argument("evaluate_regression: empty test set");
    return evaluate_predictions(test.labels, predict_all(model, test), half_widths);
}

void save_mlp(const std::string& path, const MLPModel& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_mlp: cannot open '" + path + "'");
    out << "polyml-mlp 1\n";
    out << "layers";
    for (std::size_t s : model.layer_sizes) out << ' ' << s;
    out << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", model.leaky_alpha);
    out << "leaky_alpha " << buf << '\n';
    out << "softmax " << (model.softmax_output ? 1 : 0) << '\n';
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        out << "W" << l;
        for (double w : model.weights[l]) {
            std::snprintf(buf, sizeof buf, "%.17g", w);
            out << ' ' << buf;
        }
        out << '\n';
        out << "b" << l;
        for (double b : model.biases[l]) {
            std::snprintf(buf, sizeof buf, "%.17g", b);
            out << ' ' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("save_mlp: write failed for '" + path + "'");
}

MLPModel load_mlp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_mlp: cannot open '" + path + "'");
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "polyml-mlp" || version != 1)
        throw std::runtime_error("load_mlp: unrecognized model file '" + path + "'");
    MLPModel m;
    std::string tag;
    in >> tag;
    if (tag != "layers") throw std::runtime_error("load_mlp: malformed model file");
    std::string line;
    std::getline(in, line);
    {
        std::istringstream ls(line);
        std::size_t s;
        while (ls >> s) m.layer_sizes.push_back(s);
    }
    if (m.layer_sizes.size() < 2) throw std::runtime_error("load_mlp: malformed layer list");
    int softmax_flag = 0;
    in >> tag >> m.leaky_alpha;
    if (tag != "leaky_alpha") throw std::runtime_error("load_mlp: malformed model file");
    in >> tag >> softmax_flag;
    if (tag != "softmax") throw std::runtime_error("load_mlp: malformed model file");
    m.softmax_output = softmax_flag != 0;
    for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        std::size_t in_dim = m.layer_sizes[l], out_dim = m.layer_sizes[l + 1];
        std::vector<double> w(in_dim * out_dim), b(out_dim);
        in >> tag;
        if (tag != "W" + std::to_string(l)) throw std::runtime_error("load_mlp: malformed weights");
        for (double& x : w) in >> x;
        in >> tag;
        if (tag != "b" + std::to_string(l)) throw std::runtime_error("load_mlp: malformed biases");
        for (double& x : b) in >> x;
        if (!in) throw std::runtime_error("load_mlp: truncated model file");
        m.weights.push_back(std::move(w));
        m.biases.push_back(std::move(b));
    }
    return m;
}

}  // namespace polyml
