#include "oracles.hpp"

#include <gabor_walnut/amalgam.hpp>
#include <gabor_walnut/diagnostics.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace gw;

namespace {

const Grid small(8, 4);

Signal chi() { return build_window(window::Characteristic{1.0}, small); }

std::vector<double> sups_of(const AmalgamProfile& p) {
    std::vector<double> out;
    for (const auto& e : p.entries) out.push_back(e.sup);
    return out;
}

} // namespace

TEST(AmalgamNorm, ChiUnitBlocks) {
    EXPECT_DOUBLE_EQ(amalgam_norm(chi(), 2, Weight::constant()), 2.0);
}

TEST(AmalgamNorm, ZeroSignal) {
    EXPECT_EQ(amalgam_norm(Signal(small), 2, Weight::polynomial(2.0)), 0.0);
}

TEST(AmalgamNorm, PolynomialWeight) {
    EXPECT_DOUBLE_EQ(amalgam_norm(chi(), 2, Weight::polynomial(1.0)), 3.0);
}

TEST(AmalgamNorm, BlockMustDivideLength) {
    EXPECT_THROW(amalgam_norm(chi(), 3, Weight::constant()), DivisibilityError);
    EXPECT_THROW(amalgam_profile(chi(), 3, Weight::constant()), DivisibilityError);
    EXPECT_THROW(embedding_check(chi(), 5, Weight::constant()), DivisibilityError);
}

TEST(AmalgamNorm, MatchesBruteForceSum) {
    std::mt19937_64 rng(11);
    const Grid grid(60, 4);
    const Weight w = Weight::subexponential(0.7, 0.5);
    for (int trial = 0; trial < 10; ++trial) {
        const Signal f = random_signal(grid, rng);
        for (index_t block : {1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60})
            EXPECT_NEAR(amalgam_norm(f, block, w), oracle::amalgam(f, block, w), 1e-12 * oracle::amalgam(f, block, w));
    }
}

TEST(AmalgamProfile, DeltaSpike) {
    const auto p = amalgam_profile(delta(small, 0), 2, Weight::constant());
    EXPECT_EQ(sups_of(p), (std::vector<double>{1, 0, 0, 0}));
    EXPECT_EQ(p.norm(), 1.0);
}

TEST(AmalgamProfile, OneBlockCoversSupport) {
    const auto p = amalgam_profile(chi(), 4, Weight::constant());
    EXPECT_EQ(sups_of(p), (std::vector<double>{1, 0}));
    EXPECT_EQ(p.norm(), 1.0);
}

TEST(AmalgamProfile, OrderAndCumulativeSums) {
    std::mt19937_64 rng(12);
    const Signal f = random_signal(Grid(40, 4), rng);
    const auto p = amalgam_profile(f, 4, Weight::polynomial(1.5));
    ASSERT_EQ(p.entries.size(), 10u);
    EXPECT_EQ(p.block_len, 4);
    const std::vector<index_t> order{0, 1, -1, 2, -2, 3, -3, 4, -4, 5};
    double prev = 0.0;
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        const auto& e = p.entries[i];
        EXPECT_EQ(e.n, order[i]);
        EXPECT_DOUBLE_EQ(e.weighted_sup, e.sup * e.weight);
        EXPECT_GE(e.cumsum, prev);
        prev = e.cumsum;
    }
    EXPECT_EQ(p.norm(), p.entries.back().cumsum);
    EXPECT_EQ(p.partial_sum(5), p.norm());
    EXPECT_EQ(p.partial_sum(0), p.entries[0].weighted_sup);
}

TEST(AmalgamProfile, CounterexampleTracksHarmonicSums) {
    const Grid grid(64 * 8, 8);
    const Signal h = build_counterexample(CoefficientRule::harmonic(), grid);
    const auto p = amalgam_profile(h, grid.s(), Weight::constant());
    for (index_t N = 1; N <= 32; ++N) {
        double expected = 1.0;
        for (index_t k = 1; k <= N; ++k) expected += (k == 32 ? 1.0 : 2.0) / (static_cast<double>(k) + 1.0);
        EXPECT_NEAR(p.partial_sum(N), expected, 0.05 * expected) << "N=" << N;
    }
}

TEST(Embedding, ChiExample) {
    const auto e = embedding_check(chi(), 2, Weight::constant());
    EXPECT_DOUBLE_EQ(e.amalgam, 2.0);
    EXPECT_DOUBLE_EQ(e.l2, 1.0);
    EXPECT_DOUBLE_EQ(e.linf, 1.0);
}

TEST(Embedding, DeltaExample) {
    const auto e = embedding_check(delta(small, 0), 2, Weight::constant());
    EXPECT_DOUBLE_EQ(e.amalgam, 1.0);
    EXPECT_DOUBLE_EQ(e.linf, 1.0);
    EXPECT_DOUBLE_EQ(e.l2, 0.5);
}

TEST(Embedding, ZeroSignal) {
    const auto e = embedding_check(Signal(small), 2, Weight::constant());
    EXPECT_EQ(e.amalgam, 0.0);
    EXPECT_EQ(e.l2, 0.0);
    EXPECT_EQ(e.linf, 0.0);
}

TEST(Embedding, ChainHoldsOnRandomSignals) {
    std::mt19937_64 rng(13);
    const Grid grid(48, 6);
    for (int trial = 0; trial < 30; ++trial) {
        const Signal f = random_signal(grid, rng);
        for (index_t block : {1, 2, 3, 6, 12, 48}) {
            const auto e = embedding_check(f, block, Weight::polynomial(1.0));
            EXPECT_GE(e.amalgam, e.linf);
            EXPECT_LE(e.l2, e.l2_bound * e.amalgam * (1.0 + 1e-14));
        }
    }
}

TEST(AmalgamProperties, Scaling) {
    std::mt19937_64 rng(14);
    const Grid grid(32, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const Signal f = random_signal(grid, rng);
        const cplx c(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
        const Weight w = Weight::polynomial(2.0);
        EXPECT_NEAR(amalgam_norm(c * f, 4, w), std::abs(c) * amalgam_norm(f, 4, w), 1e-12 * amalgam_norm(f, 4, w) * std::abs(c));
    }
}

TEST(AmalgamProperties, Triangle) {
    std::mt19937_64 rng(15);
    const Grid grid(32, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const Signal f = random_signal(grid, rng), g = random_signal(grid, rng);
        const Weight w = Weight::subexponential(1.0, 0.5);
        EXPECT_LE(amalgam_norm(f + g, 2, w), (amalgam_norm(f, 2, w) + amalgam_norm(g, 2, w)) * (1.0 + 1e-14));
    }
}

TEST(AmalgamProperties, WeightMonotonicity) {
    std::mt19937_64 rng(16);
    const Grid grid(32, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const Signal f = random_signal(grid, rng);
        EXPECT_LE(amalgam_norm(f, 4, Weight::constant()), amalgam_norm(f, 4, Weight::polynomial(0.5)));
        EXPECT_LE(amalgam_norm(f, 4, Weight::polynomial(0.5)), amalgam_norm(f, 4, Weight::polynomial(2.0)));
    }
}

TEST(AmalgamProperties, BlockRefinementEquivalence) {
    std::mt19937_64 rng(17);
    const Grid grid(64, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const Signal f = random_signal(grid, rng);
        const double n2 = amalgam_norm(f, 2, Weight::constant());
        const double n4 = amalgam_norm(f, 4, Weight::constant());
        EXPECT_LE(n2 / n4, 2.0);
        EXPECT_LE(n4 / n2, 2.0);
        EXPECT_LE(n4, n2 * (1.0 + 1e-14)); // coarser blocks merge sups
    }
}
