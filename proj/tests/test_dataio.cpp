#include <stdexcept>
#include <map>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "polyml/dataio.hpp"
#include "polyml/pluecker.hpp"

using namespace polyml;

namespace {

Pt pt(long long x, long long y) { return {to_big(x), to_big(y)}; }

const std::vector<Pt> kPentagon = {pt(1, 0), pt(0, -1), pt(-1, -1), pt(-1, 0), pt(0, 1)};
const std::vector<Pt> kDualPentagon = {pt(1, 0), pt(1, -1), pt(0, -1), pt(-1, 0), pt(-1, 2)};

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("label: reference pentagon invariants") {
    PolytopeRecord p = label(hull(kPentagon), 1);
    REQUIRE(p.labels.has_value());
    CHECK(p.labels->volume == 5);
    CHECK(p.labels->dual_volume == 7);
    CHECK(p.labels->gorenstein_index == 1);
    CHECK(p.labels->codimension == 5);
    CHECK(p.labels->reflexive);

    PolytopeRecord d = label(hull(kDualPentagon), 2);
    CHECK(d.labels->volume == 7);
    CHECK(d.labels->dual_volume == 5);
    CHECK(d.labels->gorenstein_index == 1);
    CHECK(d.labels->codimension == 3);
    CHECK(d.labels->reflexive);
}

TEST_CASE("generate_fano_polygons") {
    PolygonGenConfig cfg;
    cfg.count = 30;
    cfg.max_coord = 4;
    cfg.seed = 10;
    auto polys = generate_fano_polygons(cfg);
    REQUIRE(polys.size() == 30);
    for (const auto& p : polys) {
        CHECK(is_fano(p));
        CHECK(vertices_generate_lattice(p));
        CHECK(gorenstein_index(p) <= cfg.max_gorenstein);
    }
    // pairwise inequivalent within the batch
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            CHECK_FALSE(is_unimodular_equivalent(polys[i], polys[j]).has_value());

    SUBCASE("deterministic under the seed") {
        auto again = generate_fano_polygons(cfg);
        REQUIRE(again.size() == polys.size());
        for (std::size_t i = 0; i < polys.size(); ++i) CHECK(again[i] == polys[i]);
    }
    SUBCASE("fixed vertex count") {
        PolygonGenConfig pent = cfg;
        pent.count = 10;
        pent.fixed_vertex_count = 5;
        pent.min_points = 5;
        for (const auto& p : generate_fano_polygons(pent)) CHECK(p.vertex_count() == 5);
    }
    SUBCASE("gorenstein cap 1 yields reflexive polygons only") {
        PolygonGenConfig refl = cfg;
        refl.count = 12;
        refl.max_gorenstein = 1;
        auto out = generate_fano_polygons(refl);
        for (const auto& p : out) CHECK(is_reflexive(p));
        CHECK(out.size() <= 16);
    }
    SUBCASE("starvation raises diagnostics") {
        PolygonGenConfig bad = cfg;
        bad.count = 17;  // only 16 reflexive classes exist
        bad.max_gorenstein = 1;
        bad.attempts_per_accept = 300;
        CHECK_THROWS_AS(generate_fano_polygons(bad), std::runtime_error);
    }
}

TEST_CASE("generate_canonical_fano_3d") {
    Polytope3dGenConfig cfg;
    cfg.count = 12;
    cfg.max_coord = 2;
    cfg.seed = 4;
    auto polys = generate_canonical_fano_3d(cfg);
    REQUIRE(polys.size() == 12);
    std::size_t reflexive_count = 0;
    for (const auto& p : polys) {
        CHECK(is_canonical_fano(p));
        CHECK(vertices_generate_lattice(p));
        auto interior = lattice_points(p, true);
        REQUIRE(interior.size() == 1);
        if (is_reflexive(p)) ++reflexive_count;
    }
    // generator diversity: both classes appear in a modest sample
    CHECK(reflexive_count > 0);
    CHECK(reflexive_count < polys.size());
}

TEST_CASE("augment_records") {
    std::vector<PolytopeRecord> records;
    records.push_back(label(hull(kPentagon), 0));
    records.push_back(label(hull(kDualPentagon), 1));
    augment_records(records, 3, 2024);
    for (const auto& r : records) {
        CHECK(!r.plucker_variants.empty());
        CHECK(r.plucker_variants.size() <= 3);
        std::set<std::vector<long long>> distinct(r.plucker_variants.begin(),
                                                  r.plucker_variants.end());
        CHECK(distinct.size() == r.plucker_variants.size());
        // canonical vector first
        PlueckerCoordinates pc = pluecker(r.poly);
        for (std::size_t i = 0; i < pc.coords.size(); ++i)
            CHECK(to_int64(pc.coords[i]) == r.plucker_variants[0][i]);
    }
    SUBCASE("variants = 1 keeps one row per record") {
        std::vector<PolytopeRecord> one;
        one.push_back(label(hull(kPentagon), 7));
        augment_records(one, 1, 5);
        CHECK(one[0].plucker_variants.size() == 1);
    }
}

TEST_CASE("jsonl round trip") {
    std::vector<PolytopeRecord> records;
    records.push_back(label(hull(kPentagon), 0));
    records.push_back(label(hull(kDualPentagon), 1));
    augment_records(records, 3, 99);
    std::string path = temp_path("polyml_records.jsonl");
    write_polytopes_jsonl(path, records, "seed=99 source=unit-test");
    auto loaded = read_polytopes_jsonl(path);
    std::remove(path.c_str());

    REQUIRE(loaded.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(loaded[i].id == records[i].id);
        CHECK(loaded[i].poly == records[i].poly);
        REQUIRE(loaded[i].labels.has_value());
        CHECK(*loaded[i].labels == *records[i].labels);
        CHECK(loaded[i].plucker_variants == records[i].plucker_variants);
    }
}

TEST_CASE("jsonl: rationals survive exactly") {
    // Gorenstein index 3, dual volume 25/3
    PolytopeRecord r = label(hull({pt(2, 1), pt(1, 2), pt(-1, -1)}), 5);
    CHECK(r.labels->gorenstein_index == 3);
    CHECK(!rat_is_integer(r.labels->dual_volume));
    std::string path = temp_path("polyml_rational.jsonl");
    write_polytopes_jsonl(path, {r});
    auto loaded = read_polytopes_jsonl(path);
    std::remove(path.c_str());
    CHECK(loaded[0].labels->dual_volume == r.labels->dual_volume);
}

TEST_CASE("jsonl: malformed input names the line") {
    std::string path = temp_path("polyml_bad.jsonl");
    {
        std::ofstream out(path);
        out << R"({"id": 1, "vertices": [[1,0],[0,-1],[-1,-1],[-1,0],[0,1]]})" << '\n';
        out << R"({"id": 2, "vertices": [[1,0],[0,1,9],[-1,-1]]})" << '\n';
    }
    try {
        read_polytopes_jsonl(path);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("feature csv round trip") {
    std::vector<PolytopeRecord> records;
    records.push_back(label(hull(kPentagon), 0));
    records.push_back(label(hull(kDualPentagon), 1));
    DatasetBuildOptions opts;
    opts.scheme = Encoding::plucker;
    opts.label = "dual_volume";
    Dataset data = build_dataset(records, opts);
    std::string path = temp_path("polyml_features.csv");
    write_feature_csv(path, data, "encoding=plucker label=dual_volume");
    Dataset loaded = read_feature_csv(path);
    std::remove(path.c_str());

    REQUIRE(loaded.size() == data.size());
    CHECK(loaded.feature_length() == data.feature_length());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(loaded.labels[i] == data.labels[i]);
        CHECK(loaded.features[i].values == data.features[i].values);
    }
}

TEST_CASE("build_dataset") {
    std::vector<PolytopeRecord> records;
    records.push_back(label(hull(kPentagon), 0));
    records.push_back(label(hull(kDualPentagon), 1));
    augment_records(records, 3, 31);

    SUBCASE("one row per variant, labels copied") {
        DatasetBuildOptions opts;
        opts.label = "volume";
        Dataset data = build_dataset(records, opts);
        std::size_t expected = records[0].plucker_variants.size() +
                               records[1].plucker_variants.size();
        CHECK(data.size() == expected);
        for (std::size_t i = 0; i < records[0].plucker_variants.size(); ++i)
            CHECK(data.labels[i] == 5.0);
    }
    SUBCASE("inverse problem withholds the final coordinate") {
        DatasetBuildOptions opts;
        opts.scheme = Encoding::inverse_problem;
        Dataset data = build_dataset(records, opts);
        CHECK(data.label_name == "withheld_coordinate");
        // row 0 is the canonical pentagon vector: last coordinate 1, volume 5
        CHECK(data.labels[0] == 1.0);
        CHECK(data.features[0].values.back() == 5.0);
    }
    SUBCASE("relabeling a stored record reproduces its labels") {
        for (const auto& r : records) {
            RecordLabels fresh = compute_labels(r.poly);
            CHECK(fresh == *r.labels);
        }
    }
}

TEST_CASE("label_all: parallel labeling matches sequential") {
    PolygonGenConfig cfg;
    cfg.count = 16;
    cfg.max_coord = 4;
    cfg.seed = 77;
    auto polys = generate_fano_polygons(cfg);
    std::vector<PolytopeRecord> records;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        PolytopeRecord r;
        r.id = static_cast<long long>(i);
        r.poly = polys[i];
        records.push_back(std::move(r));
    }
    auto seq = label_all(records, 1);
    auto par = label_all(records, 3);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].id == par[i].id);
        CHECK(*seq[i].labels == *par[i].labels);
    }
}

TEST_CASE("enumerate_reflexive_2d finds the sixteen classes") {
    auto classes = enumerate_reflexive_2d(3);
    CHECK(classes.size() == 16);
    for (const auto& p : classes) {
        CHECK(is_reflexive(p));
        CHECK(gorenstein_index(p) == 1);
    }
    // vertex-count census of the sixteen: 3 through 6 vertices only
    std::map<std::size_t, int> by_n;
    for (const auto& p : classes) by_n[p.vertex_count()]++;
    CHECK(by_n.size() == 4);
}
