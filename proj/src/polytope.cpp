#include "polyml/polytope.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

namespace polyml {
namespace {

template <class Z>
struct Ops;

template <>
struct Ops<long long> {
    static long long abs(long long v) { return v < 0 ? -v : v; }
    static long long gcd(long long a, long long b) { return std::gcd(abs(a), abs(b)); }
};

template <>
struct Ops<BigInt> {
    static BigInt abs(const BigInt& v) { return ::abs(v); }
    static BigInt gcd(const BigInt& a, const BigInt& b) { return polyml::gcd(a, b); }
};

// The long long geometry path is exact as long as coordinates stay below
// these bounds (cross products and plane offsets then fit in 63 bits).
constexpr long long kSmallCoord2d = 1'000'000'000LL;
constexpr long long kSmallCoord3d = 300'000LL;

template <class Z>
using ZPt = std::vector<Z>;

template <class Z>
Z dot(const ZPt<Z>& a, const ZPt<Z>& b) {
    Z s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class Z>
ZPt<Z> sub(const ZPt<Z>& a, const ZPt<Z>& b) {
    ZPt<Z> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class Z>
Z cross2(const ZPt<Z>& a, const ZPt<Z>& b) {
    return a[0] * b[1] - a[1] * b[0];
}

template <class Z>
ZPt<Z> cross3(const ZPt<Z>& a, const ZPt<Z>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class Z>
bool is_zero(const ZPt<Z>& a) {
    for (const Z& v : a)
        if (v != 0) return false;
    return true;
}

template <class Z>
void make_primitive(ZPt<Z>& v) {
    Z g = 0;
    for (const Z& x : v) g = Ops<Z>::gcd(g, x);
    if (g > 1)
        for (Z& x : v) x = x / g;
}

// ---- 2d hull: monotone chain, counterclockwise, strictly convex ----

template <class Z>
std::vector<ZPt<Z>> hull2_ccw(std::vector<ZPt<Z>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw std::invalid_argument("degenerate polytope");
    auto turn = [](const ZPt<Z>& o, const ZPt<Z>& a, const ZPt<Z>& b) {
        return cross2(sub(a, o), sub(b, o));
    };
    std::vector<ZPt<Z>> h;
    for (const auto& p : pts) {  // lower chain
        while (h.size() >= 2 && turn(h[h.size() - 2], h[h.size() - 1], p) <= 0) h.pop_back();
        h.push_back(p);
    }
    std::size_t lower = h.size() + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {  // upper chain
        while (h.size() >= lower && turn(h[h.size() - 2], h[h.size() - 1], *it) <= 0) h.pop_back();
        h.push_back(*it);
    }
    h.pop_back();
    if (h.size() < 3) throw std::invalid_argument("degenerate polytope");
    return h;
}

// Canonical 2d storage: clockwise cycle starting at the lexicographic maximum.
// This is the order in which the vertices of both running-example polygons are
// conventionally listed, so downstream minor sequences are reproducible.
template <class Z>
std::vector<ZPt<Z>> canonicalize2(std::vector<ZPt<Z>> ccw) {
    std::reverse(ccw.begin(), ccw.end());
    auto it = std::max_element(ccw.begin(), ccw.end());
    std::rotate(ccw.begin(), it, ccw.end());
    return ccw;
}

// ---- 3d hull: supporting-plane enumeration over point triples ----

template <class Z>
struct Hull3 {
    std::vector<ZPt<Z>> vertices;                       // lexicographically sorted
    std::vector<std::pair<ZPt<Z>, Z>> facets;           // (primitive inward normal, offset)
    std::vector<std::vector<std::size_t>> facet_cycle;  // vertex indices, cyclic order
};

template <class Z>
bool normals_span_space(const std::vector<ZPt<Z>>& ns) {
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = i + 1; j < ns.size(); ++j) {
            ZPt<Z> c = cross3(ns[i], ns[j]);
            if (is_zero(c)) continue;
            for (std::size_t k = 0; k < ns.size(); ++k)
                if (dot(c, ns[k]) != 0) return true;
        }
    return false;
}

template <class Z>
Hull3<Z> hull3(std::vector<ZPt<Z>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 4) throw std::invalid_argument("degenerate polytope");

    // supporting planes through non-collinear triples
    std::map<std::pair<ZPt<Z>, Z>, std::vector<std::size_t>> planes;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                ZPt<Z> nrm = cross3(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if (is_zero(nrm)) continue;
                make_primitive(nrm);
                Z off = dot(nrm, pts[i]);
                bool above = false, below = false;
                for (std::size_t t = 0; t < n && !(above && below); ++t) {
                    Z v = dot(nrm, pts[t]);
                    if (v > off) above = true;
                    if (v < off) below = true;
                }
                if (above && below) continue;
                if (above) {
                    planes[{nrm, off}];
                } else {
                    for (Z& v : nrm) v = -v;
                    planes[{std::move(nrm), Z(-off)}];
                }
            }
    if (planes.empty()) throw std::invalid_argument("degenerate polytope");

    // hull vertices: points whose incident facet normals span R^3
    std::vector<ZPt<Z>> verts;
    for (std::size_t t = 0; t < n; ++t) {
        std::vector<ZPt<Z>> incident;
        for (const auto& [key, unused] : planes)
            if (dot(key.first, pts[t]) == key.second) incident.push_back(key.first);
        if (incident.size() >= 3 && normals_span_space(incident)) verts.push_back(pts[t]);
    }
    if (verts.size() < 4) throw std::invalid_argument("degenerate polytope");
    std::sort(verts.begin(), verts.end());

    Hull3<Z> out;
    out.vertices = verts;
    for (const auto& [key, unused] : planes) {
        const auto& [nrm, off] = key;
        std::vector<std::size_t> on_facet;
        for (std::size_t t = 0; t < verts.size(); ++t)
            if (dot(nrm, verts[t]) == off) on_facet.push_back(t);
        // cyclic order via a 2d hull of the projection that drops the
        // largest normal component
        std::size_t drop = 0;
        for (std::size_t c = 1; c < 3; ++c)
            if (Ops<Z>::abs(nrm[c]) > Ops<Z>::abs(nrm[drop])) drop = c;
        std::map<ZPt<Z>, std::size_t> back;
        std::vector<ZPt<Z>> proj;
        for (std::size_t idx : on_facet) {
            ZPt<Z> q;
            for (std::size_t c = 0; c < 3; ++c)
                if (c != drop) q.push_back(verts[idx][c]);
            back[q] = idx;
            proj.push_back(std::move(q));
        }
        std::vector<std::size_t> cycle;
        for (const auto& q : hull2_ccw(proj)) cycle.push_back(back.at(q));
        out.facets.emplace_back(nrm, off);
        out.facet_cycle.push_back(std::move(cycle));
    }
    return out;
}

// ---- conversions between the exact and the fast coordinate types ----

bool fits_small(const std::vector<Pt>& pts, long long limit) {
    for (const Pt& p : pts)
        for (const BigInt& c : p)
            if (!c.fits_slong_p() || Ops<long long>::abs(c.get_si()) > limit) return false;
    return true;
}

std::vector<ZPt<long long>> to_small(const std::vector<Pt>& pts) {
    std::vector<ZPt<long long>> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out[i].reserve(pts[i].size());
        for (const BigInt& c : pts[i]) out[i].push_back(c.get_si());
    }
    return out;
}

Pt big_point(const ZPt<long long>& p) {
    Pt out;
    out.reserve(p.size());
    for (long long c : p) out.push_back(to_big(c));
    return out;
}

std::vector<Pt> big_points(const std::vector<ZPt<long long>>& pts) {
    std::vector<Pt> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(big_point(p));
    return out;
}

void check_points(const std::vector<Pt>& points) {
    if (points.empty()) throw std::invalid_argument("degenerate polytope");
    const std::size_t d = points[0].size();
    if (d != 2 && d != 3) throw std::invalid_argument("unsupported dimension");
    for (const Pt& p : points)
        if (p.size() != d) throw std::invalid_argument("inconsistent point dimensions");
}

// Scales rational points by the lcm of all denominators; returns the scale.
BigInt clear_denominators(const std::vector<RatPt>& pts, std::vector<Pt>& out) {
    BigInt scale = 1;
    for (const RatPt& p : pts)
        for (const Rat& c : p) scale = lcm(scale, rat_den(c));
    out.clear();
    out.reserve(pts.size());
    for (const RatPt& p : pts) {
        Pt q;
        q.reserve(p.size());
        for (const Rat& c : p) q.push_back(rat_num(c) * exact_div(scale, rat_den(c)));
        out.push_back(std::move(q));
    }
    return scale;
}

std::vector<RatPt> unscale(const std::vector<Pt>& pts, const BigInt& scale) {
    std::vector<RatPt> out;
    out.reserve(pts.size());
    for (const Pt& p : pts) {
        RatPt q;
        q.reserve(p.size());
        for (const BigInt& c : p) q.push_back(make_rat(c, scale));
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<Pt> hull_vertices_2d(const std::vector<Pt>& points) {
    if (fits_small(points, kSmallCoord2d))
        return big_points(canonicalize2(hull2_ccw(to_small(points))));
    return canonicalize2(hull2_ccw(points));
}

std::vector<Pt> hull_vertices_3d(const std::vector<Pt>& points) {
    if (fits_small(points, kSmallCoord3d)) return big_points(hull3(to_small(points)).vertices);
    return hull3(points).vertices;
}

// Facet system of an integral point set (vertices of a polytope); offsets are
// returned as integers here and divided by the caller's scale if rational.
struct IntFacets {
    std::vector<Pt> normals;
    std::vector<BigInt> offsets;
    std::vector<std::vector<std::size_t>> cycles;  // 3d only: vertex indices per facet
};

IntFacets facets_2d(const std::vector<Pt>& verts) {
    IntFacets out;
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Pt& a = verts[i];
        const Pt& b = verts[(i + 1) % n];
        Pt u = {a[1] - b[1], b[0] - a[0]};  // rot90 of b - a
        make_primitive(u);
        BigInt off = dot(u, a);
        // orient inward: every other vertex must satisfy u.x >= off
        for (std::size_t t = 0; t < n; ++t) {
            BigInt v = dot(u, verts[t]);
            if (v < off) {
                u[0] = -u[0];
                u[1] = -u[1];
                off = -off;
                break;
            }
            if (v > off) break;
        }
        out.normals.push_back(std::move(u));
        out.offsets.push_back(std::move(off));
    }
    return out;
}

IntFacets facets_3d(const std::vector<Pt>& verts) {
    IntFacets out;
    if (fits_small(verts, kSmallCoord3d)) {
        Hull3<long long> h = hull3(to_small(verts));
        for (std::size_t f = 0; f < h.facets.size(); ++f) {
            out.normals.push_back(big_point(h.facets[f].first));
            out.offsets.push_back(to_big(h.facets[f].second));
        }
        out.cycles = h.facet_cycle;
    } else {
        Hull3<BigInt> h = hull3(verts);
        for (std::size_t f = 0; f < h.facets.size(); ++f) {
            out.normals.push_back(h.facets[f].first);
            out.offsets.push_back(h.facets[f].second);
        }
        out.cycles = h.facet_cycle;
    }
    return out;
}

IntFacets integral_facets(const std::vector<Pt>& verts, int dim) {
    return dim == 2 ? facets_2d(verts) : facets_3d(verts);
}

BigInt fan_volume(const std::vector<Pt>& verts, int dim, const IntFacets& facets, const Pt& apex) {
    BigInt total = 0;
    if (dim == 2) {
        const std::size_t n = verts.size();
        for (std::size_t i = 0; i < n; ++i) {
            BigInt det = cross2(sub(verts[i], apex), sub(verts[(i + 1) % n], apex));
            total += abs(det);
        }
    } else {
        for (const auto& cycle : facets.cycles) {
            for (std::size_t i = 1; i + 1 < cycle.size(); ++i) {
                Pt e1 = sub(verts[cycle[0]], apex);
                Pt e2 = sub(verts[cycle[i]], apex);
                Pt e3 = sub(verts[cycle[i + 1]], apex);
                BigInt det = dot(e1, cross3(e2, e3));
                total += abs(det);
            }
        }
    }
    return total;
}

bool origin_interior_facets(const IntFacets& facets) {
    for (const BigInt& off : facets.offsets)
        if (off >= 0) return false;
    return true;
}

// Enumerates integer points x with normals[f].x >= offsets[f] (or strictly >)
// inside the coordinate box [lo, hi].
std::vector<Pt> scan_box(const std::vector<Pt>& normals, const std::vector<BigInt>& offsets,
                         const std::vector<BigInt>& lo, const std::vector<BigInt>& hi,
                         bool strict) {
    const std::size_t d = lo.size();
    std::vector<Pt> out;
    for (std::size_t i = 0; i < d; ++i)
        if (lo[i] > hi[i]) return out;

    bool small = true;
    for (std::size_t i = 0; i < d && small; ++i)
        small = lo[i].fits_slong_p() && hi[i].fits_slong_p();
    for (std::size_t f = 0; f < normals.size() && small; ++f) {
        // worst-case |dot| within the box must stay inside int64
        BigInt m = abs(offsets[f]);
        for (std::size_t i = 0; i < d; ++i)
            m += abs(normals[f][i]) * std::max(abs(lo[i]), abs(hi[i]));
        if (m > BigInt("4611686018427387904")) small = false;  // 2^62
    }

    if (small) {
        std::vector<std::vector<long long>> ns(normals.size());
        std::vector<long long> os(normals.size());
        for (std::size_t f = 0; f < normals.size(); ++f) {
            os[f] = offsets[f].get_si();
            for (const BigInt& c : normals[f]) ns[f].push_back(c.get_si());
        }
        std::vector<long long> l(d), h(d), x(d);
        for (std::size_t i = 0; i < d; ++i) {
            l[i] = lo[i].get_si();
            h[i] = hi[i].get_si();
            x[i] = l[i];
        }
        while (true) {
            bool ok = true;
            for (std::size_t f = 0; f < ns.size() && ok; ++f) {
                long long v = 0;
                for (std::size_t i = 0; i < d; ++i) v += ns[f][i] * x[i];
                ok = strict ? (v > os[f]) : (v >= os[f]);
            }
            if (ok) {
                Pt p;
                p.reserve(d);
                for (long long c : x) p.push_back(to_big(c));
                out.push_back(std::move(p));
            }
            std::size_t i = d;
            while (i > 0) {
                --i;
                if (x[i] < h[i]) {
                    ++x[i];
                    break;
                }
                x[i] = l[i];
                if (i == 0) return out;
            }
        }
    }

    std::vector<BigInt> x = lo;
    while (true) {
        bool ok = true;
        for (std::size_t f = 0; f < normals.size() && ok; ++f) {
            BigInt v = dot(normals[f], x);
            ok = strict ? (v > offsets[f]) : (v >= offsets[f]);
        }
        if (ok) out.push_back(x);
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (x[i] < hi[i]) {
                ++x[i];
                break;
            }
            x[i] = lo[i];
            if (i == 0) return out;
        }
    }
}

void require_full_dim(const LatticePolytope& p, const char* what) {
    if (p.is_point()) throw std::invalid_argument(std::string(what) + ": degenerate polytope");
}

}  // namespace

LatticePolytope LatticePolytope::origin_point(int dim) {
    return LatticePolytope(dim, {Pt(static_cast<std::size_t>(dim), BigInt(0))});
}

LatticePolytope hull(const std::vector<Pt>& points) {
    check_points(points);
    const int d = static_cast<int>(points[0].size());
    std::vector<Pt> verts = d == 2 ? hull_vertices_2d(points) : hull_vertices_3d(points);
    return LatticePolytope(d, std::move(verts));
}

RationalPolytope rational_hull(const std::vector<RatPt>& points) {
    if (points.empty()) throw std::invalid_argument("degenerate polytope");
    const int d = static_cast<int>(points[0].size());
    if (d != 2 && d != 3) throw std::invalid_argument("unsupported dimension");
    for (const RatPt& p : points)
        if (p.size() != static_cast<std::size_t>(d))
            throw std::invalid_argument("inconsistent point dimensions");
    std::vector<Pt> scaled;
    BigInt scale = clear_denominators(points, scaled);
    std::vector<Pt> verts = d == 2 ? hull_vertices_2d(scaled) : hull_vertices_3d(scaled);
    return RationalPolytope(d, unscale(verts, scale));
}

HalfspaceSystem facet_system(const LatticePolytope& p) {
    require_full_dim(p, "facet_system");
    IntFacets f = integral_facets(p.vertices(), p.dim());
    HalfspaceSystem hs;
    hs.normals = std::move(f.normals);
    for (BigInt& off : f.offsets) hs.offsets.push_back(make_rat(off, 1));
    return hs;
}

HalfspaceSystem facet_system(const RationalPolytope& p) {
    std::vector<Pt> scaled;
    BigInt scale = clear_denominators(p.vertices(), scaled);
    IntFacets f = integral_facets(scaled, p.dim());
    HalfspaceSystem hs;
    hs.normals = std::move(f.normals);
    for (BigInt& off : f.offsets) hs.offsets.push_back(make_rat(off, scale));
    return hs;
}

bool contains_origin_interior(const LatticePolytope& p) {
    if (p.is_point()) return false;
    IntFacets f = integral_facets(p.vertices(), p.dim());
    return origin_interior_facets(f);
}

bool contains_origin_interior(const RationalPolytope& p) {
    std::vector<Pt> scaled;
    clear_denominators(p.vertices(), scaled);
    IntFacets f = integral_facets(scaled, p.dim());
    return origin_interior_facets(f);
}

bool is_fano(const LatticePolytope& p) {
    if (p.is_point()) return false;
    for (const Pt& v : p.vertices())
        if (!is_primitive(v)) return false;
    return contains_origin_interior(p);
}

bool is_canonical_fano(const LatticePolytope& p) {
    if (!is_fano(p)) return false;
    return lattice_points(p, /*interior_only=*/true).size() == 1;
}

RationalPolytope dual_polytope(const LatticePolytope& p) {
    require_full_dim(p, "dual_polytope");
    IntFacets f = integral_facets(p.vertices(), p.dim());
    if (!origin_interior_facets(f)) throw std::invalid_argument("dual unbounded");
    std::vector<RatPt> dual_pts;
    for (std::size_t i = 0; i < f.normals.size(); ++i) {
        RatPt v;
        for (const BigInt& c : f.normals[i]) v.push_back(make_rat(c, abs(f.offsets[i])));
        dual_pts.push_back(std::move(v));
    }
    return rational_hull(dual_pts);
}

LatticePolytope dilate(const LatticePolytope& p, long long r) {
    if (r < 0) throw std::invalid_argument("dilate: negative factor");
    if (r == 0) return LatticePolytope::origin_point(p.dim());
    std::vector<Pt> verts = p.vertices();
    for (Pt& v : verts)
        for (BigInt& c : v) c *= static_cast<long>(r);
    // positive scaling preserves the canonical order
    return LatticePolytope(p.dim(), std::move(verts));
}

RationalPolytope dilate(const RationalPolytope& p, long long r) {
    if (r <= 0) throw std::invalid_argument("dilate: factor must be positive");
    std::vector<RatPt> verts = p.vertices();
    for (RatPt& v : verts)
        for (Rat& c : v) c *= static_cast<long>(r);
    return RationalPolytope(p.dim(), std::move(verts));
}

std::vector<Pt> lattice_points(const LatticePolytope& p, bool interior_only) {
    if (p.is_point()) return interior_only ? std::vector<Pt>{} : std::vector<Pt>{p.vertex(0)};
    IntFacets f = integral_facets(p.vertices(), p.dim());
    const std::size_t d = static_cast<std::size_t>(p.dim());
    std::vector<BigInt> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        lo[i] = p.vertex(0)[i];
        hi[i] = p.vertex(0)[i];
        for (const Pt& v : p.vertices()) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    return scan_box(f.normals, f.offsets, lo, hi, interior_only);
}

std::vector<Pt> lattice_points_in_box(const HalfspaceSystem& hs, const std::vector<BigInt>& lo,
                                      const std::vector<BigInt>& hi, bool strict) {
    std::vector<Pt> normals = hs.normals;
    std::vector<BigInt> offsets(hs.size());
    for (std::size_t f = 0; f < hs.size(); ++f) {
        const BigInt& den = rat_den(hs.offsets[f]);
        offsets[f] = rat_num(hs.offsets[f]);
        if (den != 1)
            for (BigInt& c : normals[f]) c *= den;
    }
    return scan_box(normals, offsets, lo, hi, strict);
}

std::vector<Pt> lattice_points(const RationalPolytope& p, bool interior_only) {
    std::vector<Pt> scaled;
    BigInt scale = clear_denominators(p.vertices(), scaled);
    IntFacets f = integral_facets(scaled, p.dim());
    // facet of scaled polytope: u.x >= o  <=>  u.(x/scale) >= o/scale,
    // so integer points y of p satisfy u.y * scale >= o
    std::vector<Pt> normals = f.normals;
    std::vector<BigInt> offsets = f.offsets;
    for (Pt& u : normals)
        for (BigInt& c : u) c *= scale;
    const std::size_t d = static_cast<std::size_t>(p.dim());
    std::vector<BigInt> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        Rat mn = p.vertex(0)[i], mx = p.vertex(0)[i];
        for (const RatPt& v : p.vertices()) {
            mn = std::min(mn, v[i]);
            mx = std::max(mx, v[i]);
        }
        lo[i] = rat_ceil(mn);
        hi[i] = rat_floor(mx);
    }
    return scan_box(normals, offsets, lo, hi, interior_only);
}

BigInt normalized_volume(const LatticePolytope& p) {
    require_full_dim(p, "normalized_volume");
    IntFacets f = integral_facets(p.vertices(), p.dim());
    Pt apex = origin_interior_facets(f) ? Pt(static_cast<std::size_t>(p.dim()), BigInt(0))
                                        : p.vertex(0);
    return fan_volume(p.vertices(), p.dim(), f, apex);
}

Rat normalized_volume(const RationalPolytope& p) {
    std::vector<Pt> scaled;
    BigInt scale = clear_denominators(p.vertices(), scaled);
    IntFacets f = integral_facets(scaled, p.dim());
    Pt apex = origin_interior_facets(f) ? Pt(static_cast<std::size_t>(p.dim()), BigInt(0))
                                        : scaled[0];
    BigInt vol = fan_volume(scaled, p.dim(), f, apex);
    BigInt denom = scale;
    for (int i = 1; i < p.dim(); ++i) denom *= scale;
    return make_rat(vol, denom);
}

long long gorenstein_index(const LatticePolytope& p) {
    if (!is_fano(p)) throw std::invalid_argument("gorenstein_index: polytope is not Fano");
    RationalPolytope dual = dual_polytope(p);
    BigInt idx = 1;
    for (const RatPt& v : dual.vertices())
        for (const Rat& c : v) idx = lcm(idx, rat_den(c));
    return to_int64(idx);
}

bool is_reflexive(const LatticePolytope& p) {
    if (!is_fano(p)) return false;
    return gorenstein_index(p) == 1;
}

LatticePolytope to_lattice(const RationalPolytope& q) {
    std::vector<Pt> verts;
    verts.reserve(q.vertex_count());
    for (const RatPt& v : q.vertices()) {
        Pt p;
        for (const Rat& c : v) {
            if (!rat_is_integer(c))
                throw std::invalid_argument("to_lattice: non-integral vertex coordinate");
            p.push_back(rat_num(c));
        }
        verts.push_back(std::move(p));
    }
    // canonical order is scale-free, so it carries over unchanged
    return LatticePolytope(q.dim(), std::move(verts));
}

std::optional<IntMatrix> is_unimodular_equivalent(const LatticePolytope& p,
                                                  const LatticePolytope& q) {
    if (p.dim() != q.dim() || p.vertex_count() != q.vertex_count()) return std::nullopt;
    const std::size_t d = static_cast<std::size_t>(p.dim());
    const std::size_t n = p.vertex_count();

    // deterministic spanning frame from p
    std::vector<std::size_t> frame;
    {
        IntMatrix probe(0, 0);
        for (std::size_t i = 0; i < n && frame.size() < d; ++i) {
            IntMatrix trial(frame.size() + 1, d);
            for (std::size_t r = 0; r < frame.size(); ++r)
                for (std::size_t c = 0; c < d; ++c) trial.at(r, c) = p.vertex(frame[r])[c];
            for (std::size_t c = 0; c < d; ++c) trial.at(frame.size(), c) = p.vertex(i)[c];
            if (rank(trial) == frame.size() + 1) frame.push_back(i);
        }
    }
    if (frame.size() != d) return std::nullopt;

    IntMatrix bp(d, d);  // columns are frame vertices of p
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) bp.at(r, c) = p.vertex(frame[c])[r];
    BigInt det_bp = determinant(bp);

    // adjugate of bp
    IntMatrix adj(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            IntMatrix minor(d - 1, d - 1);
            for (std::size_t r = 0, mr = 0; r < d; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, mc = 0; c < d; ++c) {
                    if (c == i) continue;
                    minor.at(mr, mc++) = bp.at(r, c);
                }
                ++mr;
            }
            BigInt cof = determinant(minor);
            adj.at(i, j) = ((i + j) % 2 == 0) ? cof : BigInt(-cof);
        }

    std::vector<Pt> q_verts = q.vertices();
    std::sort(q_verts.begin(), q_verts.end());

    // all ordered d-tuples of distinct q vertices as candidate frame images
    std::vector<std::size_t> pick(d, 0);
    while (true) {
        bool distinct = true;
        for (std::size_t a = 0; a < d && distinct; ++a)
            for (std::size_t b = a + 1; b < d && distinct; ++b)
                if (pick[a] == pick[b]) distinct = false;
        if (distinct) {
            IntMatrix bq(d, d);
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t r = 0; r < d; ++r) bq.at(r, c) = q.vertex(pick[c])[r];
            IntMatrix prod = bq * adj;  // candidate * det_bp
            bool integral = true;
            IntMatrix cand(d, d);
            for (std::size_t r = 0; r < d && integral; ++r)
                for (std::size_t c = 0; c < d && integral; ++c) {
                    if (!mpz_divisible_p(prod.at(r, c).get_mpz_t(), det_bp.get_mpz_t())) {
                        integral = false;
                        break;
                    }
                    cand.at(r, c) = exact_div(prod.at(r, c), det_bp);
                }
            if (integral) {
                BigInt det_c = determinant(cand);
                if (det_c == 1 || det_c == -1) {
                    std::vector<Pt> mapped;
                    mapped.reserve(n);
                    for (const Pt& v : p.vertices()) {
                        Pt w(d, BigInt(0));
                        for (std::size_t r = 0; r < d; ++r)
                            for (std::size_t c = 0; c < d; ++c) w[r] += cand.at(r, c) * v[c];
                        mapped.push_back(std::move(w));
                    }
                    std::sort(mapped.begin(), mapped.end());
                    if (mapped == q_verts) return cand;
                }
            }
        }
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (pick[i] + 1 < n) {
                ++pick[i];
                break;
            }
            pick[i] = 0;
            if (i == 0) return std::nullopt;
        }
    }
}

LatticePolytope apply_unimodular(const IntMatrix& m, const LatticePolytope& p) {
    const std::size_t d = static_cast<std::size_t>(p.dim());
    if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("apply_unimodular: shape mismatch");
    std::vector<Pt> mapped;
    mapped.reserve(p.vertex_count());
    for (const Pt& v : p.vertices()) {
        Pt w(d, BigInt(0));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) w[r] += m.at(r, c) * v[c];
        mapped.push_back(std::move(w));
    }
    return hull(mapped);
}

}  // namespace polyml
