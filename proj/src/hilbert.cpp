#include "polyml/hilbert.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace polyml {

GradedCone cone_over_dual(const LatticePolytope& p) {
    if (!is_fano(p)) throw std::invalid_argument("cone_over_dual: polytope is not Fano");
    GradedCone cone;
    cone.dim = p.dim() + 1;
    cone.dual = dual_polytope(p);

    for (const RatPt& v : cone.dual.vertices()) {
        BigInt q = 1;
        for (const Rat& c : v) q = lcm(q, rat_den(c));
        Pt g;
        g.reserve(v.size() + 1);
        for (const Rat& c : v) g.push_back(rat_num(c) * exact_div(q, rat_den(c)));
        g.push_back(q);  // grading; primitive because q is the exact lcm
        cone.generators.push_back(std::move(g));
    }

    HalfspaceSystem facets = facet_system(cone.dual);
    for (std::size_t f = 0; f < facets.size(); ++f) {
        // (x, t) in cone  <=>  den*(u.x) - num*t >= 0
        const BigInt& den = rat_den(facets.offsets[f]);
        const BigInt& num = rat_num(facets.offsets[f]);
        Pt w;
        w.reserve(facets.normals[f].size() + 1);
        for (const BigInt& c : facets.normals[f]) w.push_back(c * den);
        w.push_back(-num);
        BigInt g = gcd_of_vector(w);
        if (g > 1)
            for (BigInt& c : w) c = exact_div(c, g);
        cone.facet_normals.push_back(std::move(w));
    }
    return cone;
}

namespace {

std::vector<long long> to_ll(const Pt& p) {
    std::vector<long long> out;
    out.reserve(p.size());
    for (const BigInt& c : p) out.push_back(to_int64(c));
    return out;
}

}  // namespace

HilbertBasis hilbert_basis(const GradedCone& cone) {
    for (const Pt& g : cone.generators)
        if (g.empty() || g.back() <= 0)
            throw std::invalid_argument("hilbert_basis: non-pointed cone");

    long long degree_bound = 0;
    for (const Pt& g : cone.generators) degree_bound += to_int64(g.back());

    const std::size_t d = static_cast<std::size_t>(cone.dim - 1);
    HalfspaceSystem facets = facet_system(cone.dual);

    // bounding box of the height-one cross-section
    std::vector<Rat> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        lo[i] = cone.dual.vertex(0)[i];
        hi[i] = cone.dual.vertex(0)[i];
        for (const RatPt& v : cone.dual.vertices()) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }

    // degree-k slice = lattice points of k * dual, collected as flat tuples
    std::vector<std::set<std::vector<long long>>> slice(
        static_cast<std::size_t>(degree_bound) + 1);
    for (long long k = 1; k <= degree_bound; ++k) {
        HalfspaceSystem scaled = facets;
        const Rat factor = make_rat(to_big(k), 1);
        std::vector<BigInt> klo(d), khi(d);
        for (std::size_t f = 0; f < scaled.size(); ++f) scaled.offsets[f] *= factor;
        for (std::size_t i = 0; i < d; ++i) {
            klo[i] = rat_ceil(Rat(lo[i] * factor));
            khi[i] = rat_floor(Rat(hi[i] * factor));
        }
        for (const Pt& x : lattice_points_in_box(scaled, klo, khi))
            slice[static_cast<std::size_t>(k)].insert(to_ll(x));
    }

    HilbertBasis basis;
    for (long long k = 1; k <= degree_bound; ++k) {
        for (const auto& x : slice[static_cast<std::size_t>(k)]) {
            bool reducible = false;
            for (long long j = 1; j * 2 <= k && !reducible; ++j) {
                const auto& low = slice[static_cast<std::size_t>(j)];
                const auto& high = slice[static_cast<std::size_t>(k - j)];
                for (const auto& y : low) {
                    std::vector<long long> rest(d);
                    for (std::size_t i = 0; i < d; ++i) rest[i] = x[i] - y[i];
                    if (high.count(rest)) {
                        reducible = true;
                        break;
                    }
                }
            }
            if (!reducible) {
                Pt elem;
                elem.reserve(d + 1);
                for (long long c : x) elem.push_back(to_big(c));
                elem.push_back(to_big(k));
                basis.elements.push_back(std::move(elem));
            }
        }
    }
    std::sort(basis.elements.begin(), basis.elements.end());
    return basis;
}

long long codimension(const LatticePolytope& p) {
    HilbertBasis basis = hilbert_basis(cone_over_dual(p));
    return static_cast<long long>(basis.elements.size()) - p.dim() - 1;
}

}  // namespace polyml
