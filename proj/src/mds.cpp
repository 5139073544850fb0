#include "polyml/mds.hpp"

#include <cmath>
#include <stdexcept>

#include "polyml/rng.hpp"

namespace polyml {

namespace {

double point_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double stress_of(const std::vector<std::vector<double>>& x, const std::vector<double>& dist,
                 std::size_t n) {
    double s = 0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            double d = point_distance(x[i], x[j]);
            s += (dist[idx] - d) * (dist[idx] - d);
        }
    return std::sqrt(s);
}

void center(std::vector<std::vector<double>>& x, std::size_t k) {
    std::vector<double> mean(k, 0.0);
    for (const auto& p : x)
        for (std::size_t c = 0; c < k; ++c) mean[c] += p[c];
    for (double& m : mean) m /= static_cast<double>(x.size());
    for (auto& p : x)
        for (std::size_t c = 0; c < k; ++c) p[c] -= mean[c];
}

// Rotate a centered 2d embedding so its principal axis lies along axis 0,
// then fix each axis sign by the first point with a nonzero coordinate.
void principal_gauge(std::vector<std::vector<double>>& x) {
    double cxx = 0, cyy = 0, cxy = 0;
    for (const auto& p : x) {
        cxx += p[0] * p[0];
        cyy += p[1] * p[1];
        cxy += p[0] * p[1];
    }
    double theta = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
    double c = std::cos(theta), s = std::sin(theta);
    for (auto& p : x) {
        double x0 = c * p[0] + s * p[1];
        double x1 = -s * p[0] + c * p[1];
        p[0] = x0;
        p[1] = x1;
    }
    for (std::size_t axis = 0; axis < 2; ++axis) {
        for (const auto& p : x) {
            if (std::abs(p[axis]) <= 1e-12) continue;
            if (p[axis] < 0)
                for (auto& q : x) q[axis] = -q[axis];
            break;
        }
    }
}

void sign_gauge_1d(std::vector<std::vector<double>>& x) {
    for (const auto& p : x) {
        if (std::abs(p[0]) <= 1e-12) continue;
        if (p[0] < 0)
            for (auto& q : x) q[0] = -q[0];
        break;
    }
}

}  // namespace

Embedding mds_embed(const std::vector<std::vector<double>>& features, std::size_t components,
                    std::size_t max_iter, double tol, std::uint64_t seed) {
    const std::size_t n = features.size();
    if (n < 2) throw std::invalid_argument("mds_embed: need at least two points");
    if (components != 1 && components != 2)
        throw std::invalid_argument("mds_embed: components must be 1 or 2");
    for (const auto& f : features)
        if (f.size() != features[0].size())
            throw std::invalid_argument("mds_embed: inconsistent feature lengths");

    // upper-triangular input distances
    std::vector<double> dist;
    dist.reserve(n * (n - 1) / 2);
    double max_dist = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = point_distance(features[i], features[j]);
            dist.push_back(d);
            max_dist = std::max(max_dist, d);
        }

    Embedding emb;
    emb.components = components;
    if (max_dist == 0.0) {  // all inputs coincide
        emb.points.assign(n, std::vector<double>(components, 0.0));
        emb.stress = 0.0;
        emb.stress_history.push_back(0.0);
        return emb;
    }

    Rng rng(Rng::derive(seed, 0x3d5));
    std::vector<std::vector<double>> x(n, std::vector<double>(components, 0.0));
    for (auto& p : x)
        for (double& c : p) c = rng.next_double(-max_dist / 2, max_dist / 2);

    double stress = stress_of(x, dist, n);
    emb.stress_history.push_back(stress);

    std::vector<std::vector<double>> next(n, std::vector<double>(components, 0.0));
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // Guttman transform: next = (1/n) B(x) x
        for (auto& p : next)
            for (double& c : p) c = 0.0;
        std::vector<double> bdiag(n, 0.0);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j, ++idx) {
                double d = point_distance(x[i], x[j]);
                double w = d > 0 ? dist[idx] / d : 0.0;
                bdiag[i] += w;
                bdiag[j] += w;
                for (std::size_t c = 0; c < components; ++c) {
                    next[i][c] -= w * x[j][c];
                    next[j][c] -= w * x[i][c];
                }
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < components; ++c)
                next[i][c] = (bdiag[i] * x[i][c] + next[i][c]) / static_cast<double>(n);
        x.swap(next);

        double new_stress = stress_of(x, dist, n);
        emb.stress_history.push_back(new_stress);
        ++emb.iterations;
        double decrease = stress - new_stress;
        stress = new_stress;
        if (decrease < tol * std::max(stress, 1e-30)) break;
    }

    center(x, components);
    if (components == 2) principal_gauge(x);
    else sign_gauge_1d(x);

    emb.points = std::move(x);
    emb.stress = stress;
    return emb;
}

}  // namespace polyml
