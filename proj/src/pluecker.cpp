#include "polyml/pluecker.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "polyml/rng.hpp"

namespace polyml {

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

IntMatrix vertex_matrix(const LatticePolytope& p, const std::vector<std::size_t>& order) {
    const std::size_t n = p.vertex_count();
    const std::size_t d = static_cast<std::size_t>(p.dim());
    if (order.size() != n) throw std::invalid_argument("vertex_matrix: permutation of wrong length");
    std::vector<bool> seen(n, false);
    for (std::size_t i : order) {
        if (i >= n || seen[i]) throw std::invalid_argument("vertex_matrix: not a permutation");
        seen[i] = true;
    }
    IntMatrix v(d, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < d; ++r) v.at(r, c) = p.vertex(order[c])[r];
    return v;
}

bool vertices_generate_lattice(const LatticePolytope& p) {
    const std::size_t n = p.vertex_count();
    const std::size_t d = static_cast<std::size_t>(p.dim());
    IntMatrix rows(n, d);  // vertices as rows
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) rows.at(i, j) = p.vertex(i)[j];
    HermiteResult hr = hermite_normal_form(rows);
    // the vertex lattice is Z^d exactly when the HNF pivots are all 1
    BigInt prod = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < d && r < n; ++c)
        if (hr.h.at(r, c) != 0) prod *= hr.h.at(r, c), ++r;
    return r == d && prod == 1;
}

PlueckerCoordinates pluecker(const LatticePolytope& p, const std::vector<std::size_t>& order,
                             bool require_generating_vertices) {
    if (require_generating_vertices && !vertices_generate_lattice(p))
        throw std::invalid_argument("pluecker: non-saturated vertex lattice");
    const std::size_t n = p.vertex_count();
    const std::size_t d = static_cast<std::size_t>(p.dim());
    const std::size_t k = n - d;  // kernel dimension

    IntMatrix v = vertex_matrix(p, order);
    IntMatrix kernel = integer_kernel_basis(v);
    if (kernel.rows() != k) throw std::logic_error("pluecker: unexpected kernel rank");

    PlueckerCoordinates out;
    out.n = n;
    out.d = d;

    // lexicographic k-subsets of column indices
    std::vector<std::size_t> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
        IntMatrix minor(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) minor.at(r, c) = kernel.at(r, subset[c]);
        out.coords.push_back(determinant(minor));

        std::size_t i = k;
        bool done = true;
        while (i > 0) {
            --i;
            if (subset[i] < n - k + i) {
                ++subset[i];
                for (std::size_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
                done = false;
                break;
            }
        }
        if (done) break;
    }

    // projective normalization: content gcd to 1, first nonzero positive
    BigInt g = gcd_of_vector(out.coords);
    if (g == 0) throw std::logic_error("pluecker: all minors vanish");
    bool flip = false;
    for (const BigInt& c : out.coords) {
        if (c == 0) continue;
        flip = c < 0;
        break;
    }
    for (BigInt& c : out.coords) {
        if (g > 1) c = exact_div(c, g);
        if (flip) c = -c;
    }
    return out;
}

PlueckerCoordinates pluecker(const LatticePolytope& p, bool require_generating_vertices) {
    std::vector<std::size_t> order(p.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    return pluecker(p, order, require_generating_vertices);
}

std::vector<PlueckerCoordinates> sample_permutation_variants(const LatticePolytope& p,
                                                             std::size_t k, std::uint64_t seed) {
    if (k == 0) throw std::invalid_argument("sample_permutation_variants: k must be >= 1");
    std::vector<PlueckerCoordinates> out;
    std::set<std::vector<BigInt>> seen;

    PlueckerCoordinates canonical = pluecker(p);
    seen.insert(canonical.coords);
    out.push_back(std::move(canonical));

    Rng rng(seed);
    std::vector<std::size_t> order(p.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t max_attempts = 40 * k + 200;
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < k; ++attempt) {
        rng.shuffle(order);
        PlueckerCoordinates variant = pluecker(p, order);
        if (seen.insert(variant.coords).second) out.push_back(std::move(variant));
    }
    return out;
}

}  // namespace polyml
