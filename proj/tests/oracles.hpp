// Independent reference computations used by the tests. Everything here is
// deliberately written against first-principles formulas (shoelace sums,
// boundary gcd counts, cofactor expansions, brute-force enumerations) so the
// production code paths are checked by a second route.

#pragma once

#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "polyml/arith.hpp"
#include "polyml/int_matrix.hpp"
#include "polyml/polytope.hpp"

namespace oracles {

using polyml::BigInt;
using polyml::IntMatrix;
using polyml::Pt;

/// Normalized area (= 2 * Euclidean area) of a polygon given as a cyclic
/// vertex sequence, via the shoelace formula.
inline BigInt shoelace_normalized_area(const std::vector<Pt>& cycle) {
    BigInt sum = 0;
    const std::size_t n = cycle.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Pt& a = cycle[i];
        const Pt& b = cycle[(i + 1) % n];
        sum += a[0] * b[1] - b[0] * a[1];
    }
    return abs(sum);
}

/// Number of boundary lattice points of a polygon: sum of edge gcds.
inline BigInt boundary_point_count(const std::vector<Pt>& cycle) {
    BigInt count = 0;
    const std::size_t n = cycle.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Pt& a = cycle[i];
        const Pt& b = cycle[(i + 1) % n];
        count += polyml::gcd(b[0] - a[0], b[1] - a[1]);
    }
    return count;
}

/// Cofactor-expansion determinant for n <= 3.
inline BigInt cofactor_determinant(const IntMatrix& m) {
    if (m.rows() == 1) return m.at(0, 0);
    if (m.rows() == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    BigInt det = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        BigInt minor = m.at(1, (c + 1) % 3) * m.at(2, (c + 2) % 3) -
                       m.at(1, (c + 2) % 3) * m.at(2, (c + 1) % 3);
        det += m.at(0, c) * minor;
    }
    return det;
}

/// All integer solutions of M x = 0 with |x_i| <= bound, by exhaustion.
inline std::vector<std::vector<long long>> brute_force_kernel(const IntMatrix& m,
                                                              long long bound) {
    std::vector<std::vector<long long>> solutions;
    const std::size_t c = m.cols();
    std::vector<long long> x(c, -bound);
    while (true) {
        bool ok = true;
        for (std::size_t r = 0; r < m.rows() && ok; ++r) {
            BigInt v = 0;
            for (std::size_t j = 0; j < c; ++j) v += m.at(r, j) * polyml::to_big(x[j]);
            ok = v == 0;
        }
        if (ok) solutions.push_back(x);
        std::size_t i = c;
        while (i > 0) {
            --i;
            if (x[i] < bound) {
                ++x[i];
                break;
            }
            x[i] = -bound;
            if (i == 0) return solutions;
        }
    }
}

/// Whether some subset of coords sums to target (exhaustive subset search).
inline bool subset_sums_to(const std::vector<BigInt>& coords, const BigInt& target) {
    const std::size_t n = coords.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        BigInt sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) sum += coords[i];
        if (sum == target) return true;
    }
    return false;
}

/// Lattice points of the cone {y : w.y >= 0} with grading = last coordinate,
/// enumerated for degrees 1..max_degree inside per-degree boxes derived from
/// the height-one cross-section box [lo, hi].
inline std::set<std::vector<long long>> brute_cone_points(
    const std::vector<Pt>& facet_normals, const std::vector<double>& lo,
    const std::vector<double>& hi, long long max_degree) {
    std::set<std::vector<long long>> points;
    const std::size_t d = lo.size();
    for (long long t = 1; t <= max_degree; ++t) {
        std::vector<long long> box_lo(d), box_hi(d), x(d);
        for (std::size_t i = 0; i < d; ++i) {
            box_lo[i] = static_cast<long long>(std::floor(lo[i] * double(t))) - 1;
            box_hi[i] = static_cast<long long>(std::ceil(hi[i] * double(t))) + 1;
            x[i] = box_lo[i];
        }
        while (true) {
            bool inside = true;
            for (const Pt& w : facet_normals) {
                BigInt v = 0;
                for (std::size_t i = 0; i < d; ++i) v += w[i] * polyml::to_big(x[i]);
                v += w[d] * polyml::to_big(t);
                if (v < 0) {
                    inside = false;
                    break;
                }
            }
            if (inside) {
                std::vector<long long> y = x;
                y.push_back(t);
                points.insert(std::move(y));
            }
            std::size_t i = d;
            bool carry_out = false;
            while (i > 0) {
                --i;
                if (x[i] < box_hi[i]) {
                    ++x[i];
                    break;
                }
                x[i] = box_lo[i];
                if (i == 0) carry_out = true;
            }
            if (carry_out) break;
        }
    }
    return points;
}

/// Irreducible elements of a graded point set: not a sum of two members with
/// positive degree.
inline std::set<std::vector<long long>> brute_irreducibles(
    const std::set<std::vector<long long>>& points) {
    std::set<std::vector<long long>> basis;
    for (const auto& x : points) {
        bool reducible = false;
        for (const auto& y : points) {
            if (reducible) break;
            if (y.back() >= x.back()) continue;
            std::vector<long long> rest(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) rest[i] = x[i] - y[i];
            if (rest.back() > 0 && points.count(rest)) reducible = true;
        }
        if (!reducible) basis.insert(x);
    }
    return basis;
}

}  // namespace oracles
