#include <autoglosh/eval.hpp>

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace autoglosh;

namespace {

GroundTruth truth_of(std::vector<int> bits) {
    std::vector<Label> labels;
    for (int b : bits) {
        labels.push_back(b ? Label::outlier : Label::inlier);
    }
    return GroundTruth(std::move(labels));
}

} // namespace

TEST(PrecisionAtN, PerfectRanking) {
    const std::vector<double> scores{0.1, 0.9, 0.2, 0.8};
    EXPECT_DOUBLE_EQ(precision_at_n(scores, truth_of({0, 1, 0, 1})), 1.0);
}

TEST(PrecisionAtN, ExplicitN) {
    const std::vector<double> scores{0.1, 0.9, 0.2, 0.8};
    EXPECT_DOUBLE_EQ(precision_at_n(scores, truth_of({0, 1, 0, 0}), 2), 0.5);
    EXPECT_THROW(precision_at_n(scores, truth_of({0, 1, 0, 0}), 5), std::out_of_range);
    EXPECT_THROW(precision_at_n(scores, truth_of({0, 1, 0, 0}), 0), std::out_of_range);
}

TEST(PrecisionAtN, TieStraddlingCutIsExpectation) {
    // Top-1 is a three-way tie holding one outlier.
    const std::vector<double> scores{0.5, 0.5, 0.5, 0.1};
    EXPECT_NEAR(precision_at_n(scores, truth_of({1, 0, 0, 0})), 1.0 / 3.0, 1e-15);
}

TEST(PrecisionAtN, MatchesPermutationOracle) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> level(0, 3);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 6);
        std::vector<double> scores(n);
        std::vector<Label> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = 0.25 * level(rng);
            labels[i] = coin(rng) ? Label::outlier : Label::inlier;
        }
        labels[0] = Label::outlier;
        const GroundTruth truth(labels);
        for (std::size_t k = 1; k <= n; ++k) {
            EXPECT_NEAR(precision_at_n(scores, truth, k),
                        autoglosh::testing::precision_at_n_by_permutations(scores, labels, k), 1e-12);
        }
    }
}

TEST(PrecisionAtN, InvariantUnderMonotoneTransform) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution coin(0.1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> scores(200);
        std::vector<Label> labels(200);
        for (std::size_t i = 0; i < 200; ++i) {
            scores[i] = std::round(u(rng) * 40.0) / 40.0;
            labels[i] = coin(rng) ? Label::outlier : Label::inlier;
        }
        labels[0] = Label::outlier;
        const GroundTruth truth(labels);
        auto transformed = scores;
        for (auto& s : transformed) {
            s = std::exp(3.0 * s) + 7.0;
        }
        EXPECT_NEAR(precision_at_n(scores, truth), precision_at_n(transformed, truth), 1e-12);
    }
}

TEST(ThresholdMetrics, ConfusionAndRatios) {
    const auto truth = truth_of({1, 1, 0, 0, 0});
    const std::vector<Label> predicted{Label::outlier, Label::inlier, Label::outlier, Label::inlier, Label::inlier};
    const auto m = threshold_metrics(predicted, truth);
    EXPECT_EQ(m.confusion.tp, 1u);
    EXPECT_EQ(m.confusion.fn, 1u);
    EXPECT_EQ(m.confusion.fp, 1u);
    EXPECT_EQ(m.confusion.tn, 2u);
    EXPECT_DOUBLE_EQ(m.precision, 0.5);
    EXPECT_DOUBLE_EQ(m.recall, 0.5);
    EXPECT_DOUBLE_EQ(m.specificity, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(m.f_measure, 0.5);
    EXPECT_DOUBLE_EQ(m.g_mean, std::sqrt(0.5 * 2.0 / 3.0));
}

TEST(ThresholdMetrics, EmptyDenominatorsAreZero) {
    const auto truth = truth_of({0, 0, 0});
    const std::vector<Label> predicted(3, Label::inlier);
    const auto m = threshold_metrics(predicted, truth);
    EXPECT_EQ(m.precision, 0.0);
    EXPECT_EQ(m.recall, 0.0);
    EXPECT_EQ(m.f_measure, 0.0);
    EXPECT_EQ(m.specificity, 1.0);
}

TEST(ThresholdMetrics, LengthMismatchNamesBothCounts) {
    try {
        threshold_metrics(std::vector<Label>(2, Label::inlier), truth_of({0, 1, 0}));
        FAIL();
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find('2'), std::string::npos);
        EXPECT_NE(msg.find('3'), std::string::npos);
    }
}
