// Dataset construction: rejection-sampling generators for Fano polygons and
// canonical Fano 3-polytopes, invariant labeling, Pluecker augmentation, the
// reflexive polygon census, and the JSONL / CSV file formats.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyml/mlkit.hpp"
#include "polyml/polytope.hpp"

namespace polyml {

/// Raised for malformed input files; carries the offending line.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RecordLabels {
    long long volume = 0;
    Rat dual_volume;
    long long gorenstein_index = 0;
    long long codimension = 0;
    bool reflexive = false;
    bool operator==(const RecordLabels&) const = default;
};

struct PolytopeRecord {
    long long id = 0;
    LatticePolytope poly;
    std::optional<RecordLabels> labels;
    std::vector<std::vector<long long>> plucker_variants;
};

struct PolygonGenConfig {
    std::size_t count = 0;
    long long max_coord = 5;
    long long max_gorenstein = 30;
    std::uint64_t seed = 0;
    std::size_t min_points = 3;
    std::size_t max_points = 8;
    std::size_t fixed_vertex_count = 0;  // 0 = any
    std::size_t attempts_per_accept = 40000;
};

struct Polytope3dGenConfig {
    std::size_t count = 0;
    long long max_coord = 3;
    long long max_gorenstein = 30;
    std::uint64_t seed = 0;
    std::size_t min_points = 4;
    std::size_t max_points = 8;
    std::size_t fixed_vertex_count = 0;
    std::size_t attempts_per_accept = 60000;
};

/// Distinct (up to GL(2,Z)) Fano polygons whose vertices generate Z^2, with
/// Gorenstein index <= max_gorenstein. Deterministic; throws on acceptance
/// starvation with rejection diagnostics.
std::vector<LatticePolytope> generate_fano_polygons(const PolygonGenConfig& config);

/// Distinct canonical Fano 3-polytopes whose vertices generate Z^3.
std::vector<LatticePolytope> generate_canonical_fano_3d(const Polytope3dGenConfig& config);

/// All five invariants of a Fano polytope with lattice-generating vertices.
RecordLabels compute_labels(const LatticePolytope& p);

PolytopeRecord label(const LatticePolytope& p, long long id);

/// Labels every record (ids preserved, output order fixed by position);
/// records are processed on `threads` workers when threads > 1.
std::vector<PolytopeRecord> label_all(const std::vector<PolytopeRecord>& records,
                                      unsigned threads = 1);

/// Fills each record with up to max_variants distinct Pluecker vectors (the
/// canonical identity-order vector first).
void augment_records(std::vector<PolytopeRecord>& records, std::size_t max_variants,
                     std::uint64_t seed);

/// Exhaustive census of reflexive polygons with vertices in [-box, box]^2,
/// deduplicated by unimodular equivalence.
std::vector<LatticePolytope> enumerate_reflexive_2d(long long box = 3);

// ---- files ----

void write_polytopes_jsonl(const std::string& path, const std::vector<PolytopeRecord>& records,
                           const std::string& config_comment = "");
std::vector<PolytopeRecord> read_polytopes_jsonl(const std::string& path);

void write_feature_csv(const std::string& path, const Dataset& data,
                       const std::string& config_comment = "");
Dataset read_feature_csv(const std::string& path);

// ---- dataset assembly ----

struct DatasetBuildOptions {
    Encoding scheme = Encoding::plucker;
    std::string label = "volume";  // volume | dual_volume | gorenstein_index |
                                   // codimension | reflexive; ignored for the
                                   // inverse-problem scheme
    std::size_t pad_to = 0;        // 0 = widest natural length in the batch
    long long onehot_clip = 20;
};

/// One row per stored Pluecker variant (or the canonical vector when a record
/// carries none). For the inverse-problem scheme the label of a row is its
/// withheld final coordinate.
Dataset build_dataset(const std::vector<PolytopeRecord>& records,
                      const DatasetBuildOptions& options);

/// Natural (unpadded) coordinate-block length of a record under a scheme.
std::size_t natural_length(const PolytopeRecord& record, Encoding scheme);

}  // namespace polyml
