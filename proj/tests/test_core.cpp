#include <doctest.h>

#include <set>

#include "hclust/dissimilarity.hpp"
#include "hclust/errors.hpp"
#include "hclust/hierarchy.hpp"
#include "hclust/ultrametric.hpp"
#include "helpers.hpp"

using namespace hclust;
using hclust::testing::make_u4;
using hclust::testing::tree;

TEST_CASE("build_dissimilarity validates") {
    CHECK_NOTHROW(DissimilarityMatrix::build({"a", "b"}, {{0, 1}, {1, 0}}));
    CHECK_THROWS_AS(DissimilarityMatrix::build({"a", "b"}, {{0, 1}, {2, 0}}),
                    AsymmetryError);
    CHECK_THROWS_AS(DissimilarityMatrix::build({"a", "b"}, {{0, -1}, {-1, 0}}),
                    NegativeEntryError);
    CHECK_THROWS_AS(DissimilarityMatrix::build({"a", "b"}, {{1, 1}, {1, 0}}),
                    NonzeroDiagonalError);
    CHECK_THROWS_AS(DissimilarityMatrix::build({"a", "b"}, {{0, 0}, {0, 0}}),
                    ZeroOffDiagonalError);
    CHECK_NOTHROW(DissimilarityMatrix::build({"a", "b"}, {{0, 0}, {0, 0}}, false));
    CHECK_THROWS_AS(DissimilarityMatrix::build({"a", "a"}, {{0, 1}, {1, 0}}),
                    DuplicateLabelError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(DissimilarityMatrix::build({"a", "b"}, {{0, inf}, {inf, 0}}),
                    NonFiniteEntryError);
}

TEST_CASE("U4 is a valid ultrametric fixture") {
    const auto d = make_u4();
    CHECK(is_ultrametric(d).ok);
    CHECK(d.at(0, 1) == 1.0);
    CHECK(d.at(2, 3) == 2.0);
    CHECK(d.at(0, 3) == 4.0);
}

TEST_CASE("restrict_dissimilarity") {
    const auto d = make_u4();
    const auto sub = d.restrict_to({"1", "2"});
    CHECK(sub.size() == 2);
    CHECK(sub.at(0, 1) == 1.0);

    CHECK(is_ultrametric(d.restrict_to({"1", "3", "4"})).ok);

    const auto full = d.restrict_to({"4", "3", "2", "1"});
    CHECK(full.labels() == d.labels()); // label order preserved
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(full.at(i, j) == d.at(i, j));

    CHECK_THROWS_AS(d.restrict_to({"1", "zz"}), UnknownLabelError);
    CHECK_THROWS_AS(d.restrict_to({}), EmptySubsetError);
}

TEST_CASE("restriction composes") {
    const auto d = testing::random_matrix(8, 11);
    const auto once = d.restrict_to({"1", "2", "4", "6", "7"});
    const auto twice = once.restrict_to({"2", "6", "7"});
    const auto direct = d.restrict_to({"2", "6", "7"});
    CHECK(twice.labels() == direct.labels());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(twice.at(i, j) == direct.at(i, j));
}

TEST_CASE("aggregate") {
    const auto d = make_u4();
    auto agg = d.aggregate({"1", "2"}, {"3", "4"});
    CHECK(agg.sum == 16.0);
    CHECK(agg.mean == 4.0);

    agg = d.aggregate({"1", "3"}, {"2", "4"});
    CHECK(agg.sum == 11.0);
    CHECK(agg.mean == 2.75);

    const auto unit = unit_dissimilarity(numbered_labels(6));
    CHECK(unit.aggregate({"1", "4"}, {"2", "3", "6"}).mean == 1.0);

    CHECK_THROWS_AS(d.aggregate({"1", "2"}, {"2", "3"}), OverlapError);
    CHECK_THROWS_AS(d.aggregate({}, {"1"}), EmptySubsetError);
}

TEST_CASE("aggregate mean bounded by block extrema") {
    const auto d = testing::random_matrix(10, 3);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::size_t> perm(10);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const std::size_t ka = 1 + rng() % 5, kb = 1 + rng() % 4;
        std::vector<std::size_t> a(perm.begin(), perm.begin() + ka);
        std::vector<std::size_t> b(perm.begin() + ka, perm.begin() + ka + kb);
        const auto agg = d.aggregate_indices(a, b);
        double lo = 1e300, hi = -1e300;
        for (auto x : a)
            for (auto y : b) {
                lo = std::min(lo, d.at(x, y));
                hi = std::max(hi, d.at(x, y));
            }
        CHECK(agg.mean >= lo);
        CHECK(agg.mean <= hi);
        CHECK(agg.sum == doctest::Approx(agg.mean * ka * kb).epsilon(1e-12));
    }
}

TEST_CASE("mrca") {
    const auto t = tree("((1,2),(3,4));");
    const int cherry = t.mrca("1", "2");
    CHECK(t.leaves_below(cherry).size() == 2);
    CHECK(t.mrca("1", "4") == t.root());

    const auto cat = tree("(((1,2),3),4);");
    const int v = cat.mrca("2", "3");
    CHECK(cat.leaves_below(v).size() == 3);

    CHECK_THROWS_AS(t.mrca("1", "1"), SameLeafError);
    CHECK_THROWS_AS(t.mrca("1", "zz"), UnknownLeafError);
}

TEST_CASE("hierarchy counts and enumeration") {
    CHECK(count_hierarchies(2) == 1);
    CHECK(count_hierarchies(3) == 3);
    CHECK(count_hierarchies(4) == 15);
    CHECK(count_hierarchies(5) == 105);

    for (int n = 2; n <= 7; ++n) {
        std::uint64_t count = 0;
        std::set<std::string> seen;
        for_each_hierarchy(numbered_labels(n), [&](const Hierarchy& t) {
            ++count;
            CHECK(t.n_internal() == n - 1);
            // canonical key: sorted list of sorted internal leaf sets
            std::vector<std::vector<int>> sets;
            for (int s : t.internal_vertices())
                sets.push_back(t.leaves_below(s));
            std::sort(sets.begin(), sets.end());
            std::string key;
            for (const auto& set : sets) {
                for (int leaf : set)
                    key += std::to_string(leaf) + ",";
                key += ";";
            }
            seen.insert(key);
        });
        CHECK(count == count_hierarchies(n));
        CHECK(seen.size() == count); // pairwise distinct as leaf-labeled trees
    }

    CHECK_THROWS_AS(for_each_hierarchy(numbered_labels(11), [](const Hierarchy&) {}),
                    TooManyLeavesError);
}

TEST_CASE("restrict_hierarchy shapes") {
    const auto t = tree("((1,3),(2,4));");
    const auto r = restrict_hierarchy(t, {"1", "2"});
    CHECK(r.leaf_labels() == std::vector<std::string>{"1", "2"});
    int muted = 0, unmuted_internal = 0;
    for (int v = 0; v < r.n_nodes(); ++v) {
        if (r.is_muted(v))
            ++muted;
        else if (!r.is_leaf(v))
            ++unmuted_internal;
    }
    CHECK(muted == 2); // both cherries survive as degree-2 vertices
    CHECK(unmuted_internal == 1);
    CHECK(r.orig_is_muted(t.mrca("1", "3")));
    CHECK(r.orig_is_muted(t.mrca("2", "4")));
    CHECK_FALSE(r.orig_is_muted(t.root()));

    const auto cherry = restrict_hierarchy(tree("((1,2),(3,4));"), {"1", "2"});
    for (int v = 0; v < cherry.n_nodes(); ++v)
        CHECK_FALSE(cherry.is_muted(v));
    CHECK(cherry.n_leaves() == 2);

    // restricting to all leaves gives back the same leaf-labeled tree
    // (node ids and label order may differ, so compare clusterings)
    const auto full = restrict_hierarchy(t, {"1", "2", "3", "4"});
    auto clusters = [](const Hierarchy& x) {
        std::set<std::vector<std::string>> sets;
        for (int s : x.internal_vertices()) {
            std::vector<std::string> labels;
            for (int leaf : x.leaves_below(s))
                labels.push_back(x.label(leaf));
            std::sort(labels.begin(), labels.end());
            sets.insert(std::move(labels));
        }
        return sets;
    };
    CHECK(clusters(full.suppress_muted()) == clusters(t));

    const auto single = restrict_hierarchy(t, {"3"});
    CHECK(single.n_nodes() == 1);
    CHECK(single.leaf_labels() == std::vector<std::string>{"3"});
}

TEST_CASE("extended hierarchy non-muted count is n'-1") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 6);
        const auto t = random_hierarchy(numbered_labels(n), rng);
        std::vector<std::string> subset;
        for (int i = 0; i < n; ++i)
            if (rng() % 2 == 0)
                subset.push_back(t.label(i));
        if (subset.size() < 2)
            continue;
        const auto r = restrict_hierarchy(t, subset);
        int non_muted = 0;
        for (int v = 0; v < r.n_nodes(); ++v)
            if (!r.is_leaf(v) && !r.is_muted(v))
                ++non_muted;
        CHECK(non_muted == static_cast<int>(subset.size()) - 1);
        CHECK(r.suppress_muted().n_leaves() == static_cast<int>(subset.size()));
    }
}
