#include <autoglosh/minpts_selection.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace autoglosh;
using autoglosh::testing::direct_pearson_dissimilarity;
using autoglosh::testing::shoelace_distance;

namespace {

std::vector<double> random_sequence(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> z(0.3, 2.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = z(rng);
    }
    return v;
}

} // namespace

TEST(Pearson, PerfectlyCorrelatedIsZero) {
    const std::vector<double> a{1, 2, 3, 4};
    const std::vector<double> b{2, 4, 6, 8};
    EXPECT_NEAR(pearson_dissimilarity(a, b), 0.0, 1e-15);
}

TEST(Pearson, AnticorrelationAlsoZero) {
    const std::vector<double> a{1, 2, 3, 4};
    const std::vector<double> b{4, 3, 2, 1};
    EXPECT_NEAR(pearson_dissimilarity(a, b), 0.0, 1e-15);
}

TEST(Pearson, ConstantSequences) {
    const std::vector<double> flat{0.5, 0.5, 0.5};
    const std::vector<double> flat2{0.1, 0.1, 0.1};
    const std::vector<double> ramp{0.1, 0.2, 0.3};
    EXPECT_EQ(pearson_dissimilarity(flat, flat2), 0.0);
    EXPECT_EQ(pearson_dissimilarity(flat, ramp), 1.0);
    EXPECT_EQ(pearson_dissimilarity(ramp, flat), 1.0);
}

TEST(Pearson, LengthMismatchRejected) {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{1, 2};
    EXPECT_THROW(pearson_dissimilarity(a, b), std::invalid_argument);
}

TEST(Pearson, MatchesDirectFormula) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_sequence(rng, 5 + trial % 40);
        const auto b = random_sequence(rng, a.size());
        EXPECT_NEAR(pearson_dissimilarity(a, b), direct_pearson_dissimilarity(a, b), 1e-12);
    }
}

TEST(Pearson, SymmetricAndAffineInvariant) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coef(0.2, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_sequence(rng, 30);
        const auto b = random_sequence(rng, 30);
        const double base = pearson_dissimilarity(a, b);
        EXPECT_NEAR(base, pearson_dissimilarity(b, a), 1e-12);
        const double s = coef(rng);
        const double t = coef(rng) - 2.5;
        auto moved = a;
        for (auto& x : moved) {
            x = s * x + t;
        }
        EXPECT_NEAR(base, pearson_dissimilarity(moved, b), 1e-12);
    }
}

TEST(OrdProfile, DeltasOfSortedColumns) {
    GloshProfileMatrix profiles(4, 5);
    profiles.set_column(2, {0.0, 0.1, 0.2, 0.3});
    profiles.set_column(3, {0.3, 0.2, 0.1, 0.0}); // same sorted sequence
    profiles.set_column(4, {0.0, 0.0, 0.0, 0.9});
    profiles.set_column(5, {0.0, 0.0, 0.0, 0.9});
    const auto ord = ord_profile(profiles);
    ASSERT_EQ(ord.deltas.size(), 3u);
    EXPECT_NEAR(ord.deltas[0], 0.0, 1e-15);
    EXPECT_GT(ord.deltas[1], 0.0);
    EXPECT_NEAR(ord.deltas[2], 0.0, 1e-15);
    const std::vector<double> s3{0.0, 0.1, 0.2, 0.3};
    const std::vector<double> s4{0.0, 0.0, 0.0, 0.9};
    EXPECT_NEAR(ord.deltas[1], direct_pearson_dissimilarity(s3, s4), 1e-12);
}

TEST(OrdProfile, NeedsFourColumns) {
    GloshProfileMatrix profiles(4, 3);
    EXPECT_THROW(ord_profile(profiles), std::invalid_argument);
}

TEST(Elbow, HandDerivedFixture) {
    const std::vector<double> deltas{0.9, 0.4, 0.1, 0.05, 0.0};
    const auto sel = find_elbow(deltas);
    EXPECT_EQ(sel.peak_index, 0u);
    EXPECT_EQ(sel.elbow_index, 2u);
    EXPECT_EQ(sel.m_star, 5);
    EXPECT_FALSE(sel.degenerate);
    ASSERT_EQ(sel.orth_distances.size(), 5u);
    const double ab = std::sqrt(16.81);
    EXPECT_NEAR(sel.orth_distances[1], 1.1 / ab, 1e-9);
    EXPECT_NEAR(sel.orth_distances[2], 1.4 / ab, 1e-9);
    EXPECT_NEAR(sel.orth_distances[3], 0.7 / ab, 1e-9);
}

TEST(Elbow, PeakAfterStartIgnoresRisingPrefix) {
    const std::vector<double> deltas{0.1, 0.2, 0.9, 0.3, 0.2, 0.19, 0.18};
    const auto sel = find_elbow(deltas);
    EXPECT_EQ(sel.peak_index, 2u);
    EXPECT_EQ(sel.elbow_index, 3u);
    EXPECT_EQ(sel.m_star, 6);
}

TEST(Elbow, PeakAtEndIsDegenerate) {
    const std::vector<double> deltas{0.1, 0.2, 0.3};
    const auto sel = find_elbow(deltas);
    EXPECT_TRUE(sel.degenerate);
    EXPECT_EQ(sel.elbow_index, 2u);
    EXPECT_EQ(sel.m_star, 5);
}

TEST(Elbow, FlatProfileIsDegenerate) {
    const std::vector<double> deltas{0.0, 0.0, 0.0, 0.0};
    const auto sel = find_elbow(deltas);
    EXPECT_TRUE(sel.degenerate);
    EXPECT_EQ(sel.elbow_index, 0u);
    EXPECT_EQ(sel.m_star, 3);
}

TEST(Elbow, TieGoesToSmallestIndex) {
    // Indices 1 and 3 sit at the same distance from the chord.
    const std::vector<double> deltas{1.0, 0.5, 0.5, 0.5, 0.0};
    const auto sel = find_elbow(deltas);
    EXPECT_EQ(sel.orth_distances[1], sel.orth_distances[3]);
    EXPECT_EQ(sel.elbow_index, 1u);
}

TEST(Elbow, MatchesShoelaceArgmax) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> deltas(4 + trial % 30);
        for (auto& x : deltas) {
            x = u(rng);
        }
        const auto sel = find_elbow(deltas);
        const auto peak = static_cast<std::size_t>(std::max_element(deltas.begin(), deltas.end()) - deltas.begin());
        ASSERT_EQ(sel.peak_index, peak);
        if (sel.degenerate) {
            continue;
        }
        const std::size_t last = deltas.size() - 1;
        double best = -1.0;
        for (std::size_t j = peak; j <= last; ++j) {
            best = std::max(best, shoelace_distance(double(peak), deltas[peak], double(last), deltas[last],
                                                    double(j), deltas[j]));
        }
        const std::size_t e = sel.elbow_index;
        EXPECT_NEAR(shoelace_distance(double(peak), deltas[peak], double(last), deltas[last], double(e), deltas[e]),
                    best, 1e-12);
        EXPECT_EQ(sel.m_star, static_cast<int>(e) + 3);
    }
}

TEST(OrthogonalDistance, AgreesWithShoelace) {
    EXPECT_NEAR(orthogonal_distance(0, 0, 4, 0, 2, 3), 3.0, 1e-15);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int k = 0; k < 200; ++k) {
        const double ax = u(rng), ay = u(rng), bx = u(rng), by = u(rng), x = u(rng), y = u(rng);
        EXPECT_NEAR(orthogonal_distance(ax, ay, bx, by, x, y), shoelace_distance(ax, ay, bx, by, x, y), 1e-9);
    }
}

TEST(OrdCsv, PairLabels) {
    OrdProfile ord{5, {0.5, 0.25, 0.0}};
    std::ostringstream out;
    write_ord_csv(out, ord);
    EXPECT_NE(out.str().find("minpts_pair,delta"), std::string::npos);
    EXPECT_NE(out.str().find("2-3,"), std::string::npos);
    EXPECT_NE(out.str().find("4-5,"), std::string::npos);
}
