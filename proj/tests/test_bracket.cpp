#include "oracles.hpp"

#include <gabor_walnut/bracket.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace gw;

namespace {

const Grid small(8, 4);

Signal chi() { return build_window(window::Characteristic{1.0}, small); }

void expect_values(const PeriodicVector& v, const std::vector<cplx>& expected, double tol = 0.0) {
    ASSERT_EQ(v.values.size(), expected.size());
    EXPECT_EQ(v.period, static_cast<index_t>(expected.size()));
    for (std::size_t x = 0; x < expected.size(); ++x) EXPECT_LE(std::abs(v.values[x] - expected[x]), tol) << "x=" << x;
}

std::vector<index_t> divisors(index_t L) {
    std::vector<index_t> d;
    for (index_t p = 1; p <= L; ++p)
        if (L % p == 0) d.push_back(p);
    return d;
}

} // namespace

TEST(Periodize, Examples) {
    expect_values(periodize(delta(small, 0), 2), {1, 0});
    expect_values(periodize(Signal(small, std::vector<cplx>(8, 1.0)), 2), {4, 4});
    expect_values(periodize(chi(), 2), {2, 2});
}

TEST(Periodize, Errors) {
    EXPECT_THROW(periodize(chi(), 3), DivisibilityError);
    EXPECT_THROW(periodize(chi(), 0), DomainError);
}

TEST(Periodize, MatchesBruteFold) {
    std::mt19937_64 rng(21);
    const Grid grid(36, 3);
    const Signal u = random_signal(grid, rng);
    for (index_t p : divisors(36)) expect_values(periodize(u, p), oracle::fold(u.samples(), p), 1e-13);
}

TEST(BracketProduct, Examples) {
    expect_values(bracket_product(chi(), chi(), 2), {2, 2});
    expect_values(bracket_product(chi(), translate(chi(), 4), 2), {0, 0});
    expect_values(bracket_product(delta(small, 0), delta(small, 0), 4), {1, 0, 0, 0});
}

TEST(BracketProduct, Errors) {
    EXPECT_THROW(bracket_product(chi(), Signal(Grid(8, 2)), 2), GridMismatchError);
    EXPECT_THROW(bracket_product(chi(), chi(), 5), DivisibilityError);
}

TEST(BracketProduct, SelfBracketIsFoldOfModulusSquared) {
    std::mt19937_64 rng(22);
    const Grid grid(48, 4);
    Signal f = random_signal(grid, rng);
    for (index_t j = 5; j < 48; j += 12) f[j] = 0.0; // the residue class 5 mod 12 vanishes
    for (index_t p : divisors(48)) {
        const auto v = bracket_product(f, f, p);
        std::vector<cplx> sq(48);
        for (index_t j = 0; j < 48; ++j) sq[static_cast<std::size_t>(j)] = std::norm(f[j]);
        const auto ref = oracle::fold(sq, p);
        for (index_t x = 0; x < p; ++x) {
            EXPECT_EQ(v[x].imag(), 0.0);
            EXPECT_GE(v[x].real(), 0.0);
            EXPECT_NEAR(v[x].real(), ref[static_cast<std::size_t>(x)].real(), 1e-12);
        }
    }
    EXPECT_EQ(bracket_product(f, f, 12)[5], cplx{}); // exact zero where the support vanishes
}

TEST(BracketProduct, ConjugateSymmetry) {
    std::mt19937_64 rng(23);
    const Grid grid(32, 4);
    for (int trial = 0; trial < 10; ++trial) {
        const Signal f = random_signal(grid, rng), h = random_signal(grid, rng);
        for (index_t p : divisors(32)) {
            const auto fh = bracket_product(f, h, p), hf = bracket_product(h, f, p);
            for (index_t x = 0; x < p; ++x) EXPECT_EQ(fh[x], std::conj(hf[x]));
        }
    }
}

TEST(BracketFourier, ChiExample) {
    const auto c = bracket_fourier_coeffs(chi(), chi(), 2);
    EXPECT_NEAR(std::abs(c[0] - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c[1]), 0.0, 1e-15);
    // both sides from inner products: (s/p) <chi, M_{nL/p} chi>
    EXPECT_NEAR(std::abs(c[0] - 2.0 * inner_product(chi(), modulate(chi(), 0))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c[1] - 2.0 * inner_product(chi(), modulate(chi(), 4))), 0.0, 1e-15);
}

TEST(BracketFourier, DeltaAtFullPeriod) {
    const auto c = bracket_fourier_coeffs(delta(small, 0), delta(small, 0), 8);
    for (index_t n = 0; n < 8; ++n) {
        const cplx via_inner = (4.0 / 8.0) * inner_product(delta(small, 0), modulate(delta(small, 0), n));
        EXPECT_NEAR(std::abs(c[static_cast<std::size_t>(n)] - 1.0 / 8.0), 0.0, 1e-16);
        EXPECT_NEAR(std::abs(c[static_cast<std::size_t>(n)] - via_inner), 0.0, 1e-16);
    }
}

TEST(BracketFourier, DisjointSupportsGiveZero) {
    const auto c = bracket_fourier_coeffs(chi(), translate(chi(), 4), 2);
    for (const auto& v : c) EXPECT_EQ(v, cplx{});
}

TEST(BracketFourier, InnerProductCorrespondence) {
    std::mt19937_64 rng(24);
    for (const Grid grid : {Grid(48, 4), Grid(64, 8), Grid(60, 5)}) {
        for (int trial = 0; trial < 3; ++trial) {
            const Signal f = random_signal(grid, rng), h = random_signal(grid, rng);
            for (index_t p : divisors(grid.L())) {
                const auto c = bracket_fourier_coeffs(f, h, p);
                double num = 0.0, den = 0.0;
                for (index_t n = 0; n < p; ++n) {
                    const auto hm = oracle::atom(h, 0, n * grid.L() / p);
                    const cplx ref = (static_cast<double>(grid.s()) / static_cast<double>(p)) *
                                     oracle::inner(f.samples(), hm, grid.s());
                    num = std::max(num, std::abs(c[static_cast<std::size_t>(n)] - ref));
                    den = std::max(den, std::abs(ref));
                }
                EXPECT_LE(num, 1e-12 * den) << "L=" << grid.L() << " p=" << p;
            }
        }
    }
}

TEST(BracketFourier, TransformPairAndNaiveDft) {
    std::mt19937_64 rng(25);
    const Grid grid(30, 3);
    const Signal u = random_signal(grid, rng);
    for (index_t p : divisors(30)) {
        const auto v = periodize(u, p);
        const auto c = fourier_coeffs(v);
        const auto ref = oracle::dft(v.values);
        EXPECT_LE(oracle::max_abs_diff(c, ref), 1e-13);
        expect_values(fourier_synthesis(c), v.values, 1e-12);
    }
}

TEST(CorrelationG, Examples) {
    const GaborLattice lat(small, 2, 2);
    expect_values(correlation_G(chi(), lat, 0), {2, 2});
    expect_values(correlation_G(chi(), lat, 1), {0, 0});
    const GaborLattice wide(Grid(24, 4), 3, 4);
    for (index_t r : {1, -1, 2}) expect_values(correlation_G(delta(wide.grid(), 0), wide, r), {0, 0, 0});
    expect_values(correlation_G(delta(wide.grid(), 0), wide, 0), {1, 0, 0});
}

TEST(CorrelationG, RangeIsChecked) {
    const GaborLattice lat(Grid(24, 4), 3, 4);
    const Signal g = delta(lat.grid(), 0);
    EXPECT_THROW(correlation_G(g, lat, 3), LatticeError);
    EXPECT_THROW(correlation_G(g, lat, -2), LatticeError);
    EXPECT_NO_THROW(correlation_G(g, lat, 2));
    EXPECT_THROW(correlation_G(Signal(Grid(24, 3)), lat, 0), GridMismatchError);
}

TEST(CorrelationG, MatchesBruteBracketAndTilesPeriodically) {
    std::mt19937_64 rng(26);
    const GaborLattice lat(Grid(48, 4), 6, 4);
    const Signal g = random_signal(lat.grid(), rng);
    for (index_t r : {0, 1, -1, 2}) {
        const auto G = correlation_G(g, lat, r);
        expect_values(G, oracle::bracket(g, g, r * lat.M(), lat.a()), 1e-12);
        const Signal t = G.tile(lat.grid());
        for (index_t j = 0; j < lat.L(); ++j) EXPECT_EQ(t[j], t[wrap(j + lat.a(), lat.L())]);
    }
}
