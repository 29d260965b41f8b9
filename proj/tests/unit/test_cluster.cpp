#include "oracles.hpp"

#include "volcp/cluster.hpp"
#include "volcp/error.hpp"
#include "volcp/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace volcp;

namespace {

DissimilarityMatrix make(std::vector<double> v) {
    const auto m = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(v.size()))));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back("L" + std::to_string(i));
    return DissimilarityMatrix(labels, std::move(v));
}

// Random symmetric matrix; integer entries produce plenty of ties.
std::vector<double> random_matrix(Rng& rng, std::size_t m, bool integer) {
    std::vector<double> d(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double v = integer ? std::floor(rng.uniform() * 6.0) : rng.uniform() * 10.0;
            d[i * m + j] = d[j * m + i] = v;
        }
    }
    return d;
}

}  // namespace

TEST_SUITE("cluster") {

TEST_CASE("two points") {
    const auto dg = average_linkage(make({0, 3, 3, 0}));
    REQUIRE(dg.merges.size() == 1);
    CHECK(dg.merges[0].left == 0);
    CHECK(dg.merges[0].right == 1);
    CHECK(dg.merges[0].height == 3.0);
    CHECK(dg.merges[0].size == 2);
}

TEST_CASE("three points") {
    const auto dg = average_linkage(make({0, 1, 4, 1, 0, 3, 4, 3, 0}));
    REQUIRE(dg.merges.size() == 2);
    CHECK(dg.merges[0].left == 0);
    CHECK(dg.merges[0].right == 1);
    CHECK(dg.merges[0].height == 1.0);
    CHECK(dg.merges[1].left == 3);
    CHECK(dg.merges[1].right == 2);
    CHECK(dg.merges[1].height == 3.5);
    CHECK(dg.merges[1].size == 3);
    CHECK(leaf_order(dg) == std::vector<std::size_t>{0, 1, 2});
    CHECK(cut(dg, 2) == std::vector<std::size_t>{0, 0, 1});
    CHECK(cut(dg, 1) == std::vector<std::size_t>{0, 0, 0});
    CHECK(cut(dg, 3) == std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS_AS(cut(dg, 0), InputError);
    CHECK_THROWS_AS(cut(dg, 4), InputError);
}

TEST_CASE("matches brute force") {
    Rng rng(5, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t m = 2 + rep % 6;
        const bool integer = rep % 2 == 0;
        const auto v = random_matrix(rng, m, integer);
        const auto dg = average_linkage(make(v));
        const auto want = oracle::brute_average_linkage(v, m);
        REQUIRE(dg.merges.size() == want.size());
        for (std::size_t k = 0; k < want.size(); ++k) {
            CHECK(dg.merges[k].left == want[k].left);
            CHECK(dg.merges[k].right == want[k].right);
            CHECK(dg.merges[k].size == want[k].size);
            if (integer) {
                CHECK(dg.merges[k].height == want[k].height);
            } else {
                CHECK(std::abs(dg.merges[k].height - want[k].height) <= 1e-12 * std::max(1.0, want[k].height));
            }
        }
    }
}

TEST_CASE("heights are monotone") {
    Rng rng(6, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const auto dg = average_linkage(make(random_matrix(rng, 40, false)));
        for (std::size_t k = 1; k < dg.merges.size(); ++k) CHECK(dg.merges[k].height >= dg.merges[k - 1].height);
        auto order = leaf_order(dg);
        std::sort(order.begin(), order.end());
        std::vector<std::size_t> all(40);
        std::iota(all.begin(), all.end(), 0);
        CHECK(order == all);
    }
}

TEST_CASE("relabelling permutes the partition") {
    Rng rng(7, 0);
    const std::size_t m = 12;
    const auto v = random_matrix(rng, m, false);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::swap(perm[2], perm[7]);
    const auto base = make(v);
    const auto moved = base.reordered(perm);
    for (std::size_t k = 1; k <= m; ++k) {
        const auto a = cut(average_linkage(base), k);
        const auto b = cut(average_linkage(moved), k);
        // Same co-membership for every pair of original leaves.
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) CHECK((b[i] == b[j]) == (a[perm[i]] == a[perm[j]]));
        }
    }
}

TEST_CASE("input validation and json") {
    CHECK_THROWS_AS(average_linkage(make({0})), InputError);
    CHECK_THROWS_AS(average_linkage(make({0, 1, 2, 0})), InputError);
    CHECK_THROWS_AS(average_linkage(make({0, -1, -1, 0})), InputError);
    CHECK_THROWS_AS(average_linkage(make({0, NAN, NAN, 0})), InputError);

    const auto dg = average_linkage(make({0, 1, 4, 1, 0, 3, 4, 3, 0}));
    const auto back = dendrogram_from_json(nlohmann::json::parse(to_json(dg).dump()));
    CHECK(back.m == 3);
    REQUIRE(back.merges.size() == 2);
    CHECK(back.merges[1].height == 3.5);
    CHECK(back.merges[1].left == 3);
}

}  // TEST_SUITE
