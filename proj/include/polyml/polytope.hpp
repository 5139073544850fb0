// Lattice and rational polytopes in dimensions 2 and 3, with exact invariants:
// hulls, facet systems, polar duals, dilation, lattice-point enumeration,
// normalized volume, Fano/reflexivity predicates, Gorenstein index, and
// unimodular equivalence testing.

#pragma once

#include <optional>
#include <vector>

#include "polyml/arith.hpp"
#include "polyml/int_matrix.hpp"

namespace polyml {

using Pt = std::vector<BigInt>;
using RatPt = std::vector<Rat>;

/// Convex lattice polytope, stored as its extreme points in a canonical order:
/// 2d clockwise starting at the lexicographically largest vertex, 3d sorted
/// lexicographically. The zero-dilation point polytope {0} is representable
/// but rejected by operations that require full dimension.
class LatticePolytope {
  public:
    LatticePolytope() = default;
    int dim() const { return dim_; }
    std::size_t vertex_count() const { return verts_.size(); }
    const std::vector<Pt>& vertices() const { return verts_; }
    const Pt& vertex(std::size_t i) const { return verts_[i]; }
    bool is_point() const { return verts_.size() == 1; }
    bool operator==(const LatticePolytope& other) const = default;

    static LatticePolytope origin_point(int dim);

  private:
    friend LatticePolytope hull(const std::vector<Pt>& points);
    friend LatticePolytope dilate(const LatticePolytope& p, long long r);
    friend LatticePolytope to_lattice(const class RationalPolytope& q);
    LatticePolytope(int dim, std::vector<Pt> verts) : dim_(dim), verts_(std::move(verts)) {}

    int dim_ = 0;
    std::vector<Pt> verts_;
};

/// Rational polytope (typically a polar dual), same canonical vertex order.
class RationalPolytope {
  public:
    RationalPolytope() = default;
    int dim() const { return dim_; }
    std::size_t vertex_count() const { return verts_.size(); }
    const std::vector<RatPt>& vertices() const { return verts_; }
    const RatPt& vertex(std::size_t i) const { return verts_[i]; }
    bool operator==(const RationalPolytope& other) const = default;

  private:
    friend RationalPolytope rational_hull(const std::vector<RatPt>& points);
    friend RationalPolytope dilate(const RationalPolytope& p, long long r);
    RationalPolytope(int dim, std::vector<RatPt> verts) : dim_(dim), verts_(std::move(verts)) {}

    int dim_ = 0;
    std::vector<RatPt> verts_;
};

/// Irredundant facet description {x : normals[f] . x >= offsets[f]} with
/// primitive integer inward normals.
struct HalfspaceSystem {
    std::vector<Pt> normals;
    std::vector<Rat> offsets;
    std::size_t size() const { return normals.size(); }
};

/// Convex hull of full-dimensional integer point sets (d in {2,3}).
/// Throws std::invalid_argument("degenerate polytope") otherwise.
LatticePolytope hull(const std::vector<Pt>& points);
RationalPolytope rational_hull(const std::vector<RatPt>& points);

HalfspaceSystem facet_system(const LatticePolytope& p);
HalfspaceSystem facet_system(const RationalPolytope& p);

bool contains_origin_interior(const LatticePolytope& p);
bool contains_origin_interior(const RationalPolytope& p);

/// Fano: origin strictly interior and every vertex primitive.
bool is_fano(const LatticePolytope& p);
/// Canonical Fano: Fano with the origin as the only interior lattice point.
bool is_canonical_fano(const LatticePolytope& p);

/// Polar dual {v : u.v >= -1 for all u in P}; vertex for facet (u, b) is u/|b|.
/// Throws "dual unbounded" unless the origin is strictly interior.
RationalPolytope dual_polytope(const LatticePolytope& p);

LatticePolytope dilate(const LatticePolytope& p, long long r);
RationalPolytope dilate(const RationalPolytope& p, long long r);

/// All lattice points of the polytope; interior_only restricts to the strict
/// interior.
std::vector<Pt> lattice_points(const LatticePolytope& p, bool interior_only = false);
std::vector<Pt> lattice_points(const RationalPolytope& p, bool interior_only = false);

/// Integer points of a halfspace system restricted to the box [lo, hi].
std::vector<Pt> lattice_points_in_box(const HalfspaceSystem& hs, const std::vector<BigInt>& lo,
                                      const std::vector<BigInt>& hi, bool strict = false);

/// d! times the Euclidean volume, computed exactly by fan triangulation.
BigInt normalized_volume(const LatticePolytope& p);
Rat normalized_volume(const RationalPolytope& p);

/// Smallest r >= 1 with r * dual(p) a lattice polytope; requires is_fano(p).
long long gorenstein_index(const LatticePolytope& p);

/// Reflexive: Fano with Gorenstein index 1.
bool is_reflexive(const LatticePolytope& p);

/// Conversion of an integral rational polytope; throws if any coordinate is
/// not an integer.
LatticePolytope to_lattice(const RationalPolytope& q);

/// A matrix M in GL(d,Z) with M * vertexset(p) = vertexset(q), if one exists.
std::optional<IntMatrix> is_unimodular_equivalent(const LatticePolytope& p,
                                                  const LatticePolytope& q);

/// Image of p under a unimodular matrix (vertices mapped, hull recanonicalized).
LatticePolytope apply_unimodular(const IntMatrix& m, const LatticePolytope& p);

}  // namespace polyml
