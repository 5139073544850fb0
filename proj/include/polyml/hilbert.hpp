// Hilbert basis of the cone over the dual polytope at height one, and the
// codimension invariant derived from its cardinality.

#pragma once

#include <vector>

#include "polyml/polytope.hpp"

namespace polyml {

/// Pointed cone over dual(P) x {1} in R^(d+1). Generators are the primitive
/// integer ray representatives through (dual vertex, 1); membership is
/// facet_normals[f] . y >= 0 for all f. The grading of a point is its last
/// coordinate.
struct GradedCone {
    int dim = 0;  // ambient dimension d + 1
    std::vector<Pt> generators;
    std::vector<Pt> facet_normals;
    RationalPolytope dual;  // the height-one cross-section
};

struct HilbertBasis {
    std::vector<Pt> elements;  // sorted lexicographically
};

/// Cone over dual(p) x {1}; requires is_fano(p).
GradedCone cone_over_dual(const LatticePolytope& p);

/// Unique minimal generating set of the semigroup of cone lattice points.
/// Enumerates degrees 1..sum(generator degrees) slice by slice and removes
/// every point that splits as a sum of two lower-degree cone points.
HilbertBasis hilbert_basis(const GradedCone& cone);

/// |hilbert_basis(cone_over_dual(p))| - dim(p) - 1.
long long codimension(const LatticePolytope& p);

}  // namespace polyml
