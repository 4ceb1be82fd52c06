#include <autoglosh/mstgraph.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace autoglosh;
using autoglosh::testing::make_1d;

namespace {

std::vector<double> sorted_weights(const MstEdges& mst) {
    std::vector<double> w;
    for (const auto& e : mst.edges) {
        w.push_back(e.weight);
    }
    std::sort(w.begin(), w.end());
    return w;
}

} // namespace

TEST(MutualReachability, MaxOfCoresAndDistance) {
    const auto dist = pairwise_distances(make_1d({0, 1, 3}));
    const auto core = core_distance_table(dist, 3);
    EXPECT_DOUBLE_EQ(mutual_reachability(dist, core, 2, 0, 1), 1.0);
    EXPECT_DOUBLE_EQ(mutual_reachability(dist, core, 3, 0, 1), 3.0);
    EXPECT_DOUBLE_EQ(mutual_reachability(dist, core, 2, 1, 2), 2.0);
}

TEST(MstComplete, HandComputedChain) {
    const auto dist = pairwise_distances(make_1d({0, 1, 2, 10}));
    const auto core = core_distance_table(dist, 2);
    const auto mst = mst_complete(dist, core, 2);
    ASSERT_EQ(mst.edges.size(), 3u);
    EXPECT_EQ(sorted_weights(mst), (std::vector<double>{1, 1, 8}));
    EXPECT_EQ(mst.edges.back().u, 2u);
    EXPECT_EQ(mst.edges.back().v, 3u);
    EXPECT_DOUBLE_EQ(mst.total_weight(), 10.0);
}

TEST(MstComplete, EdgesSortedAndOrientated) {
    std::mt19937_64 rng(2);
    const auto data = autoglosh::testing::random_blobs(rng, 60, 2);
    const auto dist = pairwise_distances(data);
    const auto core = core_distance_table(dist, 8);
    const auto mst = mst_complete(dist, core, 5);
    EXPECT_TRUE(std::is_sorted(mst.edges.begin(), mst.edges.end(), edge_less));
    for (const auto& e : mst.edges) {
        EXPECT_LT(e.u, e.v);
    }
}

TEST(CoreSg, MinPtsAboveMmaxRejected) {
    const auto dist = pairwise_distances(make_1d({0, 1, 2, 10}));
    const auto core = core_distance_table(dist, 3);
    const auto graph = build_core_sg(dist, core, 3);
    EXPECT_THROW(mst_from_core_sg(graph, core, 4), std::out_of_range);
}

TEST(CoreSg, MatchesCompleteGraphForEveryMinPts) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::size_t> size(20, 90);
    std::uniform_int_distribution<std::size_t> dims(1, 4);
    for (int trial = 0; trial < 15; ++trial) {
        const auto data = autoglosh::testing::random_blobs(rng, size(rng), dims(rng));
        const auto dist = pairwise_distances(data);
        const int m_max = 15;
        const auto core = core_distance_table(dist, m_max);
        const auto graph = build_core_sg(dist, core, m_max);
        for (int m = 2; m <= m_max; ++m) {
            const auto sparse = mst_from_core_sg(graph, core, m);
            const auto dense = mst_complete(dist, core, m);
            ASSERT_EQ(sparse.edges.size(), data.size() - 1);
            const auto ws = sorted_weights(sparse);
            const auto wd = sorted_weights(dense);
            for (std::size_t k = 0; k < ws.size(); ++k) {
                EXPECT_NEAR(ws[k], wd[k], 1e-9);
            }
            EXPECT_EQ(sparse.edges, dense.edges);
        }
    }
}

TEST(CoreSg, DuplicatePointsAndTies) {
    // Lattice with repeated points: many equal weights.
    const auto data = make_1d({0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 6, 7, 8, 8});
    const auto dist = pairwise_distances(data);
    const auto core = core_distance_table(dist, 6);
    const auto graph = build_core_sg(dist, core, 6);
    for (int m = 2; m <= 6; ++m) {
        EXPECT_EQ(mst_from_core_sg(graph, core, m).edges, mst_complete(dist, core, m).edges);
    }
}

TEST(CoreSg, EdgeWeightsDominateEndpointCores) {
    std::mt19937_64 rng(8);
    const auto data = autoglosh::testing::random_blobs(rng, 80, 3);
    const auto dist = pairwise_distances(data);
    const auto core = core_distance_table(dist, 10);
    const auto graph = build_core_sg(dist, core, 10);
    for (int m = 2; m <= 10; ++m) {
        for (const auto& e : mst_from_core_sg(graph, core, m).edges) {
            EXPECT_GE(e.weight, core(e.u, m));
            EXPECT_GE(e.weight, core(e.v, m));
        }
    }
}

TEST(CoreSg, SparserThanCompleteGraph) {
    std::mt19937_64 rng(4);
    const auto data = autoglosh::testing::random_blobs(rng, 200, 2);
    const auto dist = pairwise_distances(data);
    const auto core = core_distance_table(dist, 10);
    const auto graph = build_core_sg(dist, core, 10);
    EXPECT_LE(graph.edges.size(), 200u * 10u + 199u);
    EXPECT_LT(graph.edges.size(), 200u * 199u / 2u);
}

TEST(MstCsv, HeaderAndRows) {
    const auto dist = pairwise_distances(make_1d({0, 1, 2, 10}));
    const auto core = core_distance_table(dist, 2);
    std::ostringstream out;
    write_mst_csv(out, mst_complete(dist, core, 2));
    const std::string text = out.str();
    EXPECT_EQ(text.substr(0, 6), "u,v,w\n");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}
