// Pluecker coordinates of lattice polytopes: maximal minors of a saturated
// basis of the integer kernel of the vertex matrix, read over lexicographic
// column subsets and normalized projectively.

#pragma once

#include <cstdint>
#include <vector>

#include "polyml/int_matrix.hpp"
#include "polyml/polytope.hpp"

namespace polyml {

struct PlueckerCoordinates {
    std::size_t n = 0;  // vertex count
    std::size_t d = 0;  // polytope dimension
    std::vector<BigInt> coords;  // length C(n, n-d), gcd 1, first nonzero positive
    bool operator==(const PlueckerCoordinates& other) const = default;
};

/// C(n, k) as an exact integer.
BigInt binomial(std::size_t n, std::size_t k);

/// d x n matrix whose i-th column is vertex order[i] (0-based permutation).
IntMatrix vertex_matrix(const LatticePolytope& p, const std::vector<std::size_t>& order);

/// Whether the vertices generate the full lattice Z^d (the standing
/// assumption for Pluecker coordinates to determine the polytope).
bool vertices_generate_lattice(const LatticePolytope& p);

/// Pluecker coordinates for the given vertex order; the canonical stored
/// order is the identity permutation. The coordinates exist for any
/// full-dimensional polytope; with require_generating_vertices they throw
/// "non-saturated vertex lattice" unless the vertices generate Z^d (the
/// assumption under which they determine the polytope up to GL(d,Z)).
PlueckerCoordinates pluecker(const LatticePolytope& p, const std::vector<std::size_t>& order,
                             bool require_generating_vertices = false);
PlueckerCoordinates pluecker(const LatticePolytope& p, bool require_generating_vertices = false);

/// Up to k distinct coordinate vectors from sampled vertex permutations;
/// the identity-order canonical vector always comes first. Deterministic
/// for a fixed seed.
std::vector<PlueckerCoordinates> sample_permutation_variants(const LatticePolytope& p,
                                                             std::size_t k, std::uint64_t seed);

}  // namespace polyml
