#include "polyml/dataio.hpp"

#include <algorithm>
#include <cstdio>
#include <atomic>
#include <functional>
#include <numeric>
#include <thread>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "polyml/hilbert.hpp"
#include "polyml/pluecker.hpp"
#include "polyml/rng.hpp"

namespace polyml {

namespace {

using nlohmann::json;

Pt make_pt(long long x, long long y) { return {to_big(x), to_big(y)}; }

std::string fingerprint(const LatticePolytope& p) {
    return std::to_string(p.vertex_count()) + ":" + normalized_volume(p).get_str();
}

struct Dedup {
    std::map<std::string, std::vector<std::size_t>> buckets;
    bool is_new(const LatticePolytope& p, const std::vector<LatticePolytope>& accepted) {
        auto& bucket = buckets[fingerprint(p)];
        for (std::size_t i : bucket)
            if (is_unimodular_equivalent(accepted[i], p).has_value()) return false;
        bucket.push_back(accepted.size());
        return true;
    }
};

template <typename Accept>
std::vector<LatticePolytope> rejection_sample(std::size_t count, std::size_t min_points,
                                              std::size_t max_points, int dim, long long max_coord,
                                              std::uint64_t seed, std::size_t attempts_per_accept,
                                              std::size_t fixed_vertex_count, Accept accept) {
    std::vector<LatticePolytope> out;
    Dedup dedup;
    Rng rng(Rng::derive(seed, 0x9e37));
    std::size_t attempts = 0;
    const std::size_t budget = attempts_per_accept * std::max<std::size_t>(count, 1);
    std::size_t rejected_degenerate = 0, rejected_predicate = 0, rejected_shape = 0,
                rejected_duplicate = 0;

    while (out.size() < count) {
        if (++attempts > budget) {
            std::ostringstream os;
            os << "generator starved after " << attempts - 1 << " attempts (accepted "
               << out.size() << "/" << count << "; degenerate " << rejected_degenerate
               << ", wrong shape " << rejected_shape << ", predicate " << rejected_predicate
               << ", duplicate " << rejected_duplicate << ")";
            throw std::runtime_error(os.str());
        }
        std::size_t m = min_points + static_cast<std::size_t>(
                                         rng.next_below(max_points - min_points + 1));
        std::vector<Pt> pts;
        pts.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            while (true) {
                Pt p;
                for (int c = 0; c < dim; ++c) p.push_back(to_big(rng.next_int(-max_coord, max_coord)));
                if (is_primitive(p)) {
                    pts.push_back(std::move(p));
                    break;
                }
            }
        }
        LatticePolytope p;
        try {
            p = hull(pts);
        } catch (const std::invalid_argument&) {
            ++rejected_degenerate;
            continue;
        }
        if (fixed_vertex_count && p.vertex_count() != fixed_vertex_count) {
            ++rejected_shape;
            continue;
        }
        if (!accept(p)) {
            ++rejected_predicate;
            continue;
        }
        if (!dedup.is_new(p, out)) {
            ++rejected_duplicate;
            continue;
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

std::vector<LatticePolytope> generate_fano_polygons(const PolygonGenConfig& config) {
    if (config.count == 0) throw std::invalid_argument("generate_fano_polygons: count must be >= 1");
    return rejection_sample(config.count, config.min_points, config.max_points, 2,
                            config.max_coord, config.seed, config.attempts_per_accept,
                            config.fixed_vertex_count, [&](const LatticePolytope& p) {
                                return is_fano(p) && vertices_generate_lattice(p) &&
                                       gorenstein_index(p) <= config.max_gorenstein;
                            });
}

std::vector<LatticePolytope> generate_canonical_fano_3d(const Polytope3dGenConfig& config) {
    if (config.count == 0)
        throw std::invalid_argument("generate_canonical_fano_3d: count must be >= 1");
    return rejection_sample(config.count, config.min_points, config.max_points, 3,
                            config.max_coord, config.seed, config.attempts_per_accept,
                            config.fixed_vertex_count, [&](const LatticePolytope& p) {
                                return is_canonical_fano(p) && vertices_generate_lattice(p) &&
                                       gorenstein_index(p) <= config.max_gorenstein;
                            });
}

RecordLabels compute_labels(const LatticePolytope& p) {
    RecordLabels labels;
    labels.volume = to_int64(normalized_volume(p));
    labels.dual_volume = normalized_volume(dual_polytope(p));
    labels.gorenstein_index = gorenstein_index(p);
    labels.codimension = codimension(p);
    labels.reflexive = labels.gorenstein_index == 1;
    return labels;
}

PolytopeRecord label(const LatticePolytope& p, long long id) {
    if (!vertices_generate_lattice(p))
        throw std::invalid_argument("label: vertices do not generate the lattice");
    PolytopeRecord record;
    record.id = id;
    record.poly = p;
    record.labels = compute_labels(p);
    return record;
}

std::vector<PolytopeRecord> label_all(const std::vector<PolytopeRecord>& records,
                                      unsigned threads) {
    std::vector<PolytopeRecord> out(records.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < records.size(); ++i) {
            out[i] = label(records[i].poly, records[i].id);
            out[i].plucker_variants = records[i].plucker_variants;
        }
        return out;
    }
    std::vector<std::string> errors(records.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= records.size()) return;
            try {
                out[i] = label(records[i].poly, records[i].id);
                out[i].plucker_variants = records[i].plucker_variants;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw std::invalid_argument("record " + std::to_string(records[i].id) + ": " +
                                        errors[i]);
    return out;
}

void augment_records(std::vector<PolytopeRecord>& records, std::size_t max_variants,
                     std::uint64_t seed) {
    if (max_variants == 0) throw std::invalid_argument("augment_records: need >= 1 variant");
    for (PolytopeRecord& record : records) {
        auto variants = sample_permutation_variants(
            record.poly, max_variants, Rng::derive(seed, static_cast<std::uint64_t>(record.id)));
        record.plucker_variants.clear();
        for (const PlueckerCoordinates& pc : variants) {
            std::vector<long long> coords;
            coords.reserve(pc.coords.size());
            for (const BigInt& c : pc.coords) coords.push_back(to_int64(c));
            record.plucker_variants.push_back(std::move(coords));
        }
    }
}

std::vector<LatticePolytope> enumerate_reflexive_2d(long long box) {
    // candidate vertices: primitive points of the box, sorted by angle
    std::vector<std::pair<long long, long long>> pts;
    for (long long x = -box; x <= box; ++x)
        for (long long y = -box; y <= box; ++y) {
            if (x == 0 && y == 0) continue;
            if (std::gcd(std::abs(x), std::abs(y)) != 1) continue;
            pts.emplace_back(x, y);
        }
    auto half = [](const std::pair<long long, long long>& p) {
        return (p.second > 0 || (p.second == 0 && p.first > 0)) ? 0 : 1;
    };
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        if (half(a) != half(b)) return half(a) < half(b);
        return a.first * b.second - a.second * b.first > 0;
    });
    const std::size_t n = pts.size();

    // an edge a -> b supports a reflexive polygon iff det(a,b) equals the
    // lattice length of b - a (all facet offsets are then -1)
    auto edge_ok = [&](std::size_t i, std::size_t j) {
        long long det = pts[i].first * pts[j].second - pts[i].second * pts[j].first;
        long long g = std::gcd(std::abs(pts[j].first - pts[i].first),
                               std::abs(pts[j].second - pts[i].second));
        return det == g;
    };
    auto left_turn = [&](std::size_t a, std::size_t b, std::size_t c) {
        long long ux = pts[b].first - pts[a].first, uy = pts[b].second - pts[a].second;
        long long vx = pts[c].first - pts[b].first, vy = pts[c].second - pts[b].second;
        return ux * vy - uy * vx > 0;
    };

    std::vector<LatticePolytope> classes;
    Dedup dedup;
    std::vector<std::size_t> path;

    auto emit = [&](const std::vector<std::size_t>& cycle) {
        std::vector<Pt> verts;
        for (std::size_t i : cycle) verts.push_back(make_pt(pts[i].first, pts[i].second));
        LatticePolytope p = hull(verts);
        if (p.vertex_count() != cycle.size()) return;  // safety, should not happen
        if (dedup.is_new(p, classes)) classes.push_back(std::move(p));
    };

    std::function<void(std::size_t)> extend = [&](std::size_t start) {
        std::size_t last = path.back();
        // close the cycle
        if (path.size() >= 3 && edge_ok(last, start) &&
            left_turn(path[path.size() - 2], last, start) &&
            left_turn(last, start, path[1])) {
            emit(path);
        }
        for (std::size_t next = last + 1; next < n; ++next) {
            if (!edge_ok(last, next)) continue;
            if (path.size() >= 2 && !left_turn(path[path.size() - 2], last, next)) continue;
            path.push_back(next);
            extend(start);
            path.pop_back();
        }
    };

    for (std::size_t start = 0; start < n; ++start) {
        path.assign(1, start);
        extend(start);
    }
    return classes;
}

// ---- JSONL ----

void write_polytopes_jsonl(const std::string& path, const std::vector<PolytopeRecord>& records,
                           const std::string& config_comment) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    if (!config_comment.empty()) {
        json meta;
        meta["_config"] = config_comment;
        out << meta.dump() << '\n';
    }
    for (const PolytopeRecord& r : records) {
        json obj;
        obj["id"] = r.id;
        json verts = json::array();
        for (const Pt& v : r.poly.vertices()) {
            json row = json::array();
            for (const BigInt& c : v) row.push_back(to_int64(c));
            verts.push_back(std::move(row));
        }
        obj["vertices"] = std::move(verts);
        if (r.labels) {
            json lab;
            lab["volume"] = r.labels->volume;
            lab["dual_volume"] = rat_to_string(r.labels->dual_volume);
            lab["gorenstein_index"] = r.labels->gorenstein_index;
            lab["codimension"] = r.labels->codimension;
            lab["reflexive"] = r.labels->reflexive;
            obj["labels"] = std::move(lab);
        }
        if (!r.plucker_variants.empty()) obj["plucker_variants"] = r.plucker_variants;
        out << obj.dump() << '\n';
    }
    if (!out) throw DataError("write failed for '" + path + "'");
}

std::vector<PolytopeRecord> read_polytopes_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::vector<PolytopeRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (obj.contains("_config")) continue;
        try {
            PolytopeRecord r;
            r.id = obj.at("id").get<long long>();
            const json& verts = obj.at("vertices");
            if (!verts.is_array() || verts.empty())
                throw DataError("missing or empty vertex list");
            std::size_t dim = verts[0].size();
            std::vector<Pt> points;
            for (const json& row : verts) {
                if (!row.is_array() || row.size() != dim)
                    throw DataError("vertex row of wrong arity");
                Pt p;
                for (const json& c : row) p.push_back(to_big(c.get<long long>()));
                points.push_back(std::move(p));
            }
            r.poly = hull(points);
            if (obj.contains("labels")) {
                const json& lab = obj["labels"];
                RecordLabels labels;
                labels.volume = lab.at("volume").get<long long>();
                labels.dual_volume = rat_from_string(lab.at("dual_volume").get<std::string>());
                labels.gorenstein_index = lab.at("gorenstein_index").get<long long>();
                labels.codimension = lab.at("codimension").get<long long>();
                labels.reflexive = lab.at("reflexive").get<bool>();
                r.labels = labels;
            }
            if (obj.contains("plucker_variants"))
                r.plucker_variants =
                    obj["plucker_variants"].get<std::vector<std::vector<long long>>>();
            records.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

// ---- CSV ----

void write_feature_csv(const std::string& path, const Dataset& data,
                       const std::string& config_comment) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    if (!config_comment.empty()) out << "# " << config_comment << '\n';
    const std::size_t width = data.feature_length();
    for (std::size_t i = 0; i < width; ++i) out << "feature_" << i << ',';
    out << "label\n";
    char buf[64];
    for (std::size_t r = 0; r < data.size(); ++r) {
        for (std::size_t i = 0; i < width; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", data.features[r].values[i]);
            out << buf << ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g", data.labels[r]);
        out << buf << '\n';
    }
    if (!out) throw DataError("write failed for '" + path + "'");
}

Dataset read_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    Dataset data;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!header_seen) {
            if (cells.empty() || cells.back() != "label")
                throw DataError(path + ":" + std::to_string(line_no) + ": bad header");
            width = cells.size() - 1;
            header_seen = true;
            continue;
        }
        if (cells.size() != width + 1)
            throw DataError(path + ":" + std::to_string(line_no) + ": wrong column count");
        FeatureVector f;
        try {
            for (std::size_t i = 0; i < width; ++i) f.values.push_back(std::stod(cells[i]));
            data.labels.push_back(std::stod(cells.back()));
        } catch (const std::exception&) {
            throw DataError(path + ":" + std::to_string(line_no) + ": bad numeric value");
        }
        data.features.push_back(std::move(f));
    }
    if (!header_seen) throw DataError(path + ": missing header");
    data.update_range();
    return data;
}

// ---- dataset assembly ----

std::size_t natural_length(const PolytopeRecord& record, Encoding scheme) {
    const std::size_t n = record.poly.vertex_count();
    const std::size_t d = static_cast<std::size_t>(record.poly.dim());
    std::size_t l = record.plucker_variants.empty() ? 0 : record.plucker_variants[0].size();
    if (l == 0) {
        // C(n, n - d) without recomputing the coordinates
        l = static_cast<std::size_t>(to_int64(binomial(n, n - d)));
    }
    switch (scheme) {
        case Encoding::plucker: return l;
        case Encoding::vertices: return n * d;
        case Encoding::plucker_gcd2: return l + l * (l - 1) / 2;
        case Encoding::plucker_gcdl1: return 2 * l;
        case Encoding::onehot: return l;  // window expansion happens in encode
        case Encoding::inverse_problem: return l;  // l - 1 coordinates + volume
    }
    return l;
}

Dataset build_dataset(const std::vector<PolytopeRecord>& records,
                      const DatasetBuildOptions& options) {
    if (records.empty()) throw std::invalid_argument("build_dataset: no records");
    std::size_t pad_to = options.pad_to;
    if (pad_to == 0)
        for (const PolytopeRecord& r : records)
            pad_to = std::max(pad_to, natural_length(r, options.scheme));

    Dataset data;
    data.label_name = options.scheme == Encoding::inverse_problem ? "withheld_coordinate"
                                                                  : options.label;
    for (const PolytopeRecord& r : records) {
        EncodeInput input;
        for (const Pt& v : r.poly.vertices())
            for (const BigInt& c : v) input.vertices.push_back(to_int64(c));
        double label_value = 0;
        if (options.scheme == Encoding::inverse_problem || options.label == "volume") {
            long long vol = r.labels ? r.labels->volume : to_int64(normalized_volume(r.poly));
            input.volume = static_cast<double>(vol);
        }
        if (options.scheme != Encoding::inverse_problem) {
            if (options.label == "volume") {
                label_value = input.volume;
            } else {
                if (!r.labels)
                    throw std::invalid_argument("build_dataset: record " + std::to_string(r.id) +
                                                " lacks labels for '" + options.label + "'");
                if (options.label == "dual_volume") label_value = r.labels->dual_volume.get_d();
                else if (options.label == "gorenstein_index")
                    label_value = static_cast<double>(r.labels->gorenstein_index);
                else if (options.label == "codimension")
                    label_value = static_cast<double>(r.labels->codimension);
                else if (options.label == "reflexive") label_value = r.labels->reflexive ? 1.0 : 0.0;
                else throw std::invalid_argument("build_dataset: unknown label '" + options.label + "'");
            }
        }

        std::vector<std::vector<long long>> variants = r.plucker_variants;
        if (variants.empty()) {
            PlueckerCoordinates pc = pluecker(r.poly);
            std::vector<long long> coords;
            for (const BigInt& c : pc.coords) coords.push_back(to_int64(c));
            variants.push_back(std::move(coords));
        }
        for (const auto& coords : variants) {
            input.plucker = coords;
            data.features.push_back(encode(input, options.scheme, pad_to, options.onehot_clip));
            if (options.scheme == Encoding::inverse_problem)
                data.labels.push_back(static_cast<double>(coords.back()));
            else
                data.labels.push_back(label_value);
        }
    }
    data.update_range();
    return data;
}

}  // namespace polyml
