#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "polyml/pluecker.hpp"
#include "polyml/polytope.hpp"
#include "polyml/rng.hpp"

using namespace polyml;

namespace {

Pt pt(long long x, long long y) { return {to_big(x), to_big(y)}; }

const std::vector<Pt> kPentagon = {pt(1, 0), pt(0, -1), pt(-1, -1), pt(-1, 0), pt(0, 1)};
const std::vector<Pt> kDualPentagon = {pt(1, 0), pt(1, -1), pt(0, -1), pt(-1, 0), pt(-1, 2)};

std::vector<BigInt> big_vec(std::initializer_list<long long> xs) {
    std::vector<BigInt> v;
    for (long long x : xs) v.push_back(to_big(x));
    return v;
}

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> o(n);
    std::iota(o.begin(), o.end(), 0);
    return o;
}

std::multiset<BigInt> abs_multiset(const std::vector<BigInt>& v) {
    std::multiset<BigInt> s;
    for (const BigInt& c : v) s.insert(abs(c));
    return s;
}

IntMatrix random_unimodular(Rng& rng, std::size_t d) {
    IntMatrix m = IntMatrix::identity(d);
    for (int s = 0; s < 3; ++s) {
        std::size_t i = static_cast<std::size_t>(rng.next_below(d));
        std::size_t j = static_cast<std::size_t>(rng.next_below(d));
        if (i != j && rng.next_below(2)) m.add_row_multiple(i, j, to_big(rng.next_int(-1, 1)));
        else m.negate_row(i);
    }
    return m;
}

LatticePolytope random_generating_fano_polygon(Rng& rng) {
    while (true) {
        std::vector<Pt> pts;
        long long n = rng.next_int(3, 7);
        for (long long i = 0; i < n; ++i)
            pts.push_back(pt(rng.next_int(-4, 4), rng.next_int(-4, 4)));
        try {
            LatticePolytope p = hull(pts);
            if (is_fano(p) && vertices_generate_lattice(p)) return p;
        } catch (const std::invalid_argument&) {
        }
    }
}

}  // namespace

TEST_CASE("vertex_matrix") {
    LatticePolytope p = hull(kPentagon);
    SUBCASE("identity order lays vertices out as columns") {
        IntMatrix v = vertex_matrix(p, identity_order(5));
        CHECK(v == IntMatrix{{1, 0, -1, -1, 0}, {0, -1, -1, 0, 1}});
    }
    SUBCASE("reversal order reverses columns") {
        IntMatrix v = vertex_matrix(p, {4, 3, 2, 1, 0});
        CHECK(v == IntMatrix{{0, -1, -1, 0, 1}, {1, 0, -1, -1, 0}});
    }
    SUBCASE("invalid permutations") {
        CHECK_THROWS_AS(vertex_matrix(p, {0, 1, 2}), std::invalid_argument);
        CHECK_THROWS_AS(vertex_matrix(p, {0, 0, 1, 2, 3}), std::invalid_argument);
    }
}

TEST_CASE("vertices_generate_lattice") {
    CHECK(vertices_generate_lattice(hull(kPentagon)));
    // corners of the [-1,1] square span only the even-sum sublattice
    CHECK_FALSE(vertices_generate_lattice(hull({pt(1, 1), pt(1, -1), pt(-1, 1), pt(-1, -1)})));
}

TEST_CASE("pluecker: reference values") {
    CHECK(pluecker(hull(kPentagon)).coords ==
          big_vec({1, -1, 1, 0, -1, 1, 1, 0, -1, 1}));
    CHECK(pluecker(hull(kDualPentagon)).coords ==
          big_vec({2, -1, 1, -1, -1, 1, 2, 0, -1, 1}));
    CHECK(pluecker(hull({pt(-1, -1), pt(1, 0), pt(0, 1)})).coords == big_vec({1, 1, 1}));
    CHECK(pluecker(hull({pt(-1, -1), pt(2, -1), pt(-1, 2)})).coords == big_vec({1, 1, 1}));
}

TEST_CASE("pluecker: lattice-generation enforcement") {
    LatticePolytope square = hull({pt(1, 1), pt(1, -1), pt(-1, 1), pt(-1, -1)});
    CHECK_THROWS_WITH_AS(pluecker(square, /*require_generating_vertices=*/true),
                         "pluecker: non-saturated vertex lattice", std::invalid_argument);
    // without the requirement the coordinates are still well defined
    CHECK_NOTHROW(pluecker(square));
}

TEST_CASE("pluecker: length, normalization and kernel consistency") {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        LatticePolytope p = random_generating_fano_polygon(rng);
        PlueckerCoordinates pc = pluecker(p);
        CHECK(BigInt(static_cast<long>(pc.coords.size())) ==
              binomial(p.vertex_count(), p.vertex_count() - 2));
        CHECK(gcd_of_vector(pc.coords) == 1);
        for (const BigInt& c : pc.coords) {
            if (c == 0) continue;
            CHECK(c > 0);
            break;
        }
        IntMatrix v = vertex_matrix(p, identity_order(p.vertex_count()));
        IntMatrix kernel = integer_kernel_basis(v);
        for (std::size_t r = 0; r < kernel.rows(); ++r)
            for (std::size_t i = 0; i < v.rows(); ++i) {
                BigInt dot = 0;
                for (std::size_t j = 0; j < v.cols(); ++j) dot += v.at(i, j) * kernel.at(r, j);
                CHECK(dot == 0);
            }
    }
}

TEST_CASE("pluecker: GL(d,Z) invariance") {
    Rng rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        LatticePolytope p = random_generating_fano_polygon(rng);
        IntMatrix u = random_unimodular(rng, 2);
        LatticePolytope q = apply_unimodular(u, p);

        // match each mapped vertex of p to its slot in q's canonical storage
        std::map<std::vector<std::string>, std::size_t> slot;
        for (std::size_t i = 0; i < q.vertex_count(); ++i) {
            std::vector<std::string> key;
            for (const BigInt& c : q.vertex(i)) key.push_back(c.get_str());
            slot[key] = i;
        }
        std::vector<std::size_t> order(p.vertex_count());
        for (std::size_t i = 0; i < p.vertex_count(); ++i) {
            Pt w(2, BigInt(0));
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) w[r] += u.at(r, c) * p.vertex(i)[c];
            std::vector<std::string> key;
            for (const BigInt& v : w) key.push_back(v.get_str());
            order[i] = slot.at(key);
        }
        CHECK(pluecker(q, order).coords == pluecker(p).coords);
    }
}

TEST_CASE("pluecker: permutations only permute and flip minors") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        LatticePolytope p = random_generating_fano_polygon(rng);
        std::vector<std::size_t> order = identity_order(p.vertex_count());
        rng.shuffle(order);
        CHECK(abs_multiset(pluecker(p, order).coords) == abs_multiset(pluecker(p).coords));
    }
}

TEST_CASE("subset of pentagon coordinates sums to its volume") {
    PlueckerCoordinates pc = pluecker(hull(kPentagon));
    CHECK(oracles::subset_sums_to(pc.coords, normalized_volume(hull(kPentagon))));
    PlueckerCoordinates dc = pluecker(hull(kDualPentagon));
    CHECK(oracles::subset_sums_to(dc.coords, normalized_volume(hull(kDualPentagon))));
}

TEST_CASE("sample_permutation_variants") {
    LatticePolytope p = hull(kPentagon);
    SUBCASE("identity-order vector comes first, all variants distinct") {
        auto variants = sample_permutation_variants(p, 3, 99);
        REQUIRE(!variants.empty());
        CHECK(variants.size() <= 3);
        CHECK(variants[0].coords == pluecker(p).coords);
        std::set<std::vector<BigInt>> seen;
        for (const auto& v : variants) CHECK(seen.insert(v.coords).second);
    }
    SUBCASE("deterministic under the seed") {
        auto a = sample_permutation_variants(p, 5, 1234);
        auto b = sample_permutation_variants(p, 5, 1234);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].coords == b[i].coords);
    }
    SUBCASE("k=1 returns only the canonical vector") {
        auto variants = sample_permutation_variants(p, 1, 7);
        REQUIRE(variants.size() == 1);
        CHECK(variants[0].coords == pluecker(p).coords);
    }
    SUBCASE("generic triangle has at most a handful of distinct variants") {
        LatticePolytope t = hull({pt(-1, -1), pt(1, 0), pt(0, 1)});
        auto variants = sample_permutation_variants(t, 6, 5);
        CHECK(variants.size() >= 1);
        // S_3 action on a length-3 vector cannot produce more than 6
        CHECK(variants.size() <= 6);
    }
}
