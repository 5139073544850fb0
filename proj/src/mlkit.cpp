#include "polyml/mlkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "polyml/rng.hpp"

namespace polyml {

Encoding encoding_from_string(const std::string& name) {
    if (name == "plucker") return Encoding::plucker;
    if (name == "vertices") return Encoding::vertices;
    if (name == "plucker+gcd2") return Encoding::plucker_gcd2;
    if (name == "plucker+gcdl1") return Encoding::plucker_gcdl1;
    if (name == "onehot") return Encoding::onehot;
    if (name == "inverse-problem") return Encoding::inverse_problem;
    throw std::invalid_argument("unknown encoding '" + name + "'");
}

std::string encoding_to_string(Encoding e) {
    switch (e) {
        case Encoding::plucker: return "plucker";
        case Encoding::vertices: return "vertices";
        case Encoding::plucker_gcd2: return "plucker+gcd2";
        case Encoding::plucker_gcdl1: return "plucker+gcdl1";
        case Encoding::onehot: return "onehot";
        case Encoding::inverse_problem: return "inverse-problem";
    }
    return "?";
}

namespace {

long long ll_gcd(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<double> pad_to_length(std::vector<double> v, std::size_t pad_to) {
    if (v.size() > pad_to) throw std::invalid_argument("encode: pad_to too small");
    v.resize(pad_to, 0.0);
    return v;
}

}  // namespace

FeatureVector encode(const EncodeInput& input, Encoding scheme, std::size_t pad_to,
                     long long onehot_clip) {
    FeatureVector out;
    out.scheme = scheme;
    switch (scheme) {
        case Encoding::plucker: {
            std::vector<double> v(input.plucker.begin(), input.plucker.end());
            out.values = pad_to_length(std::move(v), pad_to);
            break;
        }
        case Encoding::vertices: {
            std::vector<double> v(input.vertices.begin(), input.vertices.end());
            out.values = pad_to_length(std::move(v), pad_to);
            break;
        }
        case Encoding::plucker_gcd2: {
            std::vector<double> v(input.plucker.begin(), input.plucker.end());
            for (std::size_t i = 0; i < input.plucker.size(); ++i)
                for (std::size_t j = i + 1; j < input.plucker.size(); ++j)
                    v.push_back(static_cast<double>(ll_gcd(input.plucker[i], input.plucker[j])));
            out.values = pad_to_length(std::move(v), pad_to);
            break;
        }
        case Encoding::plucker_gcdl1: {
            std::vector<double> v(input.plucker.begin(), input.plucker.end());
            const std::size_t l = input.plucker.size();
            for (std::size_t skip = 0; skip < l; ++skip) {
                long long g = 0;
                for (std::size_t i = 0; i < l; ++i)
                    if (i != skip) g = ll_gcd(g, input.plucker[i]);
                v.push_back(static_cast<double>(g));
            }
            out.values = pad_to_length(std::move(v), pad_to);
            break;
        }
        case Encoding::onehot: {
            if (input.plucker.size() > pad_to)
                throw std::invalid_argument("encode: pad_to too small");
            const std::size_t window = 2 * static_cast<std::size_t>(onehot_clip) + 3;
            out.values.assign(pad_to * window, 0.0);
            for (std::size_t i = 0; i < pad_to; ++i) {
                long long c = i < input.plucker.size() ? input.plucker[i] : 0;
                std::size_t slot;
                if (c < -onehot_clip) slot = 0;
                else if (c > onehot_clip) slot = window - 1;
                else slot = static_cast<std::size_t>(c + onehot_clip) + 1;
                out.values[i * window + slot] = 1.0;
            }
            break;
        }
        case Encoding::inverse_problem: {
            if (input.plucker.empty())
                throw std::invalid_argument("encode: empty coordinates for inverse problem");
            std::vector<double> v(input.plucker.begin(), input.plucker.end() - 1);
            if (pad_to == 0) throw std::invalid_argument("encode: pad_to too small");
            v = pad_to_length(std::move(v), pad_to - 1);
            v.push_back(input.volume);
            out.values = std::move(v);
            break;
        }
    }
    return out;
}

void Dataset::update_range() {
    if (labels.empty()) {
        label_min = label_max = 0.0;
        return;
    }
    auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
    label_min = *lo;
    label_max = *hi;
}

Dataset Dataset::subset(const std::vector<std::size_t>& idx) const {
    Dataset out;
    out.label_name = label_name;
    out.label_min = label_min;
    out.label_max = label_max;
    out.features.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (std::size_t i : idx) {
        out.features.push_back(features[i]);
        out.labels.push_back(labels[i]);
    }
    return out;
}

std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> kfold_split(
    std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("kfold_split: k must be >= 2");
    if (k > n) throw std::invalid_argument("kfold_split: k exceeds dataset size");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> folds(k);
    std::size_t start = 0;
    for (std::size_t f = 0; f < k; ++f) {
        std::size_t count = n / k + (f < n % k ? 1 : 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= start && i < start + count) folds[f].second.push_back(order[i]);
            else folds[f].first.push_back(order[i]);
        }
        start += count;
    }
    return folds;
}

double logcosh_value(double e) {
    double a = std::abs(e);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

Metrics evaluate_predictions(const std::vector<double>& truth, const std::vector<double>& predicted,
                             const std::vector<double>& half_widths) {
    if (truth.size() != predicted.size() || truth.empty())
        throw std::invalid_argument("evaluate_predictions: size mismatch or empty input");
    Metrics m;
    const double n = static_cast<double>(truth.size());
    std::size_t mape_count = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        double e = predicted[i] - truth[i];
        m.mae += std::abs(e);
        m.mse += e * e;
        m.logcosh += logcosh_value(e);
        if (truth[i] != 0.0) {
            m.mape += std::abs(e / truth[i]);
            ++mape_count;
        }
    }
    m.mae /= n;
    m.mse /= n;
    m.logcosh /= n;
    m.mape = mape_count ? 100.0 * m.mape / static_cast<double>(mape_count) : 0.0;

    for (double h : half_widths) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < truth.size(); ++i)
            if (std::abs(predicted[i] - truth[i]) <= h) ++hits;
        m.bin_accuracy.emplace_back(h, static_cast<double>(hits) / n);
    }

    double mean_t = 0, mean_p = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        mean_t += truth[i];
        mean_p += predicted[i];
    }
    mean_t /= n;
    mean_p /= n;
    double cov = 0, var_t = 0, var_p = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        cov += (truth[i] - mean_t) * (predicted[i] - mean_p);
        var_t += (truth[i] - mean_t) * (truth[i] - mean_t);
        var_p += (predicted[i] - mean_p) * (predicted[i] - mean_p);
    }
    if (var_t <= 0.0 || var_p <= 0.0) {
        m.pmcc = 0.0;
        m.pmcc_degenerate = true;
    } else {
        m.pmcc = cov / std::sqrt(var_t * var_p);
    }
    return m;
}

std::string metrics_csv_header() { return "mae,mape,mse,logcosh,pmcc,pmcc_degenerate"; }

std::string metrics_csv_row(const Metrics& m) {
    std::ostringstream os;
    os.precision(17);
    os << m.mae << ',' << m.mape << ',' << m.mse << ',' << m.logcosh << ',' << m.pmcc << ','
       << (m.pmcc_degenerate ? 1 : 0);
    return os.str();
}

}  // namespace polyml
