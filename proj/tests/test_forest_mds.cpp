#include <stdexcept>
#include <cmath>
#include <set>

#include "doctest.h"
#include "polyml/forest.hpp"
#include "polyml/mds.hpp"
#include "polyml/rng.hpp"

using namespace polyml;

namespace {

Dataset binary_dataset(std::size_t n, std::size_t dim, std::uint64_t seed, bool separable) {
    Rng rng(seed);
    Dataset d;
    d.label_name = "class";
    while (d.features.size() < n) {
        FeatureVector f;
        for (std::size_t j = 0; j < dim; ++j) f.values.push_back(rng.next_double(-1, 1));
        double score = f.values[0] + 0.5 * f.values[1];
        if (separable && std::abs(score) < 0.2) continue;  // keep a margin
        double y = separable ? (score > 0 ? 1.0 : 0.0) : static_cast<double>(rng.next_below(2));
        d.labels.push_back(y);
        d.features.push_back(std::move(f));
    }
    d.update_range();
    return d;
}

}  // namespace

TEST_CASE("random forest: separable set trains to perfect accuracy") {
    Dataset d = binary_dataset(300, 3, 51, true);
    RandomForestModel model = train_random_forest(d, 30, 51);
    CHECK(forest_accuracy(model, d) == doctest::Approx(1.0));
}

TEST_CASE("random forest: label noise stays near chance") {
    Dataset train = binary_dataset(400, 4, 52, false);
    Dataset test = binary_dataset(400, 4, 53, false);
    RandomForestModel model = train_random_forest(train, 30, 52);
    double acc = forest_accuracy(model, test);
    CHECK(acc > 0.4);
    CHECK(acc < 0.6);
}

TEST_CASE("random forest: determinism and error paths") {
    Dataset d = binary_dataset(120, 3, 54, true);
    RandomForestModel a = train_random_forest(d, 12, 99);
    RandomForestModel b = train_random_forest(d, 12, 99);
    REQUIRE(a.trees.size() == b.trees.size());
    for (std::size_t t = 0; t < a.trees.size(); ++t) {
        CHECK(a.trees[t].inbag == b.trees[t].inbag);
        REQUIRE(a.trees[t].nodes.size() == b.trees[t].nodes.size());
        for (std::size_t k = 0; k < a.trees[t].nodes.size(); ++k) {
            CHECK(a.trees[t].nodes[k].feature == b.trees[t].nodes[k].feature);
            CHECK(a.trees[t].nodes[k].threshold == b.trees[t].nodes[k].threshold);
        }
    }

    Dataset single;
    single.features.push_back({{1.0}, Encoding::plucker});
    single.features.push_back({{2.0}, Encoding::plucker});
    single.labels = {1.0, 1.0};
    CHECK_THROWS_WITH_AS(train_random_forest(single, 5, 0),
                         "train_random_forest: degenerate labels", std::invalid_argument);
}

TEST_CASE("random forest: out-of-bag sets are disjoint from the bootstrap") {
    Dataset d = binary_dataset(100, 3, 55, true);
    RandomForestModel model = train_random_forest(d, 10, 7);
    for (const DecisionTree& t : model.trees) {
        std::set<std::size_t> inbag(t.inbag.begin(), t.inbag.end());
        CHECK(inbag.size() < d.size());  // bootstrap almost surely misses indices
        for (std::size_t i = 0; i < d.size(); ++i) {
            bool oob = inbag.count(i) == 0;
            CHECK(oob == (inbag.find(i) == inbag.end()));
        }
    }
}

TEST_CASE("mds: two points embed at their input distance") {
    std::vector<std::vector<double>> features = {{0, 0, 0}, {3, 4, 0}};  // distance 5
    Embedding e = mds_embed(features, 1, 300, 1e-12, 17);
    REQUIRE(e.points.size() == 2);
    double d = std::abs(e.points[0][0] - e.points[1][0]);
    CHECK(d == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(e.stress < 1e-6);
}

TEST_CASE("mds: collinear points embed isometrically in 2d") {
    // the superfluous component collapses only at rate ~1/k under plain
    // majorization, so an exact-zero stress needs a generous budget
    std::vector<std::vector<double>> features = {{0, 0}, {1, 1}, {2, 2}};
    Embedding e = mds_embed(features, 2, 4000, 0.0, 3);
    CHECK(e.stress < 1e-3);
    CHECK(e.stress_history.back() <= e.stress_history.front());
}

TEST_CASE("mds: stress is non-increasing at every iteration") {
    Rng rng(77);
    std::vector<std::vector<double>> features(40, std::vector<double>(6));
    for (auto& f : features)
        for (double& v : f) v = rng.next_double(-5, 5);
    Embedding e = mds_embed(features, 2, 200, 1e-12, 8);
    for (std::size_t i = 1; i < e.stress_history.size(); ++i)
        CHECK(e.stress_history[i] <= e.stress_history[i - 1] * (1 + 1e-12) + 1e-12);
}

TEST_CASE("mds: centered output, translation invariance, duplicate inputs") {
    Rng rng(78);
    std::vector<std::vector<double>> features(25, std::vector<double>(4));
    for (auto& f : features)
        for (double& v : f) v = rng.next_double(-3, 3);

    Embedding e = mds_embed(features, 2, 150, 1e-10, 5);
    for (std::size_t c = 0; c < 2; ++c) {
        double mean = 0;
        for (const auto& p : e.points) mean += p[c];
        CHECK(std::abs(mean / static_cast<double>(e.points.size())) < 1e-9);
    }

    std::vector<std::vector<double>> shifted = features;
    for (auto& f : shifted)
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += 11.5;
    Embedding e2 = mds_embed(shifted, 2, 150, 1e-10, 5);
    REQUIRE(e2.points.size() == e.points.size());
    for (std::size_t i = 0; i < e.points.size(); ++i)
        for (std::size_t c = 0; c < 2; ++c)
            CHECK(e2.points[i][c] == doctest::Approx(e.points[i][c]).epsilon(1e-9));

    std::vector<std::vector<double>> dup(6, std::vector<double>(3, 2.0));
    Embedding ed = mds_embed(dup, 1, 100, 1e-9, 1);
    CHECK(ed.stress == 0.0);
    for (const auto& p : ed.points) CHECK(p[0] == 0.0);
}
