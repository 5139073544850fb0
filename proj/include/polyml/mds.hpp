// Multidimensional scaling of feature vectors by SMACOF stress majorization,
// for 1- or 2-component embeddings.

#pragma once

#include <cstdint>
#include <vector>

namespace polyml {

struct Embedding {
    std::size_t components = 1;
    std::vector<std::vector<double>> points;  // N x components
    double stress = 0.0;                      // sqrt(sum (D_ij - d_ij)^2), i < j
    std::size_t iterations = 0;
    std::vector<double> stress_history;  // stress after init and each iteration
};

/// SMACOF from a seeded random start. Stops when the stress decrease falls
/// below tol (relative) or after max_iter iterations. The output is centered;
/// 2-component embeddings are additionally rotated onto their principal axes.
Embedding mds_embed(const std::vector<std::vector<double>>& features, std::size_t components,
                    std::size_t max_iter = 300, double tol = 1e-9, std::uint64_t seed = 0);

}  // namespace polyml
