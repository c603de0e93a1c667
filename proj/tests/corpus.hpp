// Frame instances shared by the unit tests and the acceptance binary.

#pragma once

#include <gabor_walnut/gabor_walnut.hpp>

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace corpus {

struct Instance {
    std::string name;
    gw::GaborLattice lat;
    gw::Signal g;
    gw::Weight weight;
};

inline gw::Signal gaussian(const gw::Grid& grid) {
    return gw::build_window(gw::window::Gaussian{1.0, static_cast<double>(grid.units()) / 2.0}, grid);
}

inline gw::Signal chi(const gw::Grid& grid) { return gw::build_window(gw::window::Characteristic{1.0}, grid); }

inline gw::Signal hat(const gw::Grid& grid) { return gw::build_window(gw::window::Hat{0.5}, grid); }

inline gw::Signal random_window(const gw::Grid& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return gw::random_signal(grid, rng);
}

/// The chi instance: G(chi_[0,1], 1/2, 1) on Grid{8,4}, where S = 2I.
inline Instance chi_instance() {
    const gw::Grid grid(8, 4);
    return {"chi", gw::GaborLattice(grid, 2, 2), chi(grid), gw::Weight::constant()};
}

inline Instance gaussian_instance(gw::index_t L, gw::index_t s, gw::index_t a, gw::index_t b, gw::Weight w) {
    const gw::Grid grid(L, s);
    return {"gaussian L=" + std::to_string(L) + " a=" + std::to_string(a) + " b=" + std::to_string(b),
            gw::GaborLattice(grid, a, b), gaussian(grid), std::move(w)};
}

/// Every member is a frame (checked by the tests through the dense spectrum).
inline std::vector<Instance> frames() {
    std::vector<Instance> out;
    out.push_back(chi_instance());
    out.push_back(gaussian_instance(64, 8, 4, 4, gw::Weight::polynomial(1.0)));
    out.push_back(gaussian_instance(256, 16, 8, 8, gw::Weight::polynomial(2.0)));
    out.push_back(gaussian_instance(48, 4, 4, 4, gw::Weight::subexponential(0.5, 0.5)));
    out.push_back(gaussian_instance(64, 8, 8, 4, gw::Weight::polynomial(1.0)));
    {
        const gw::Grid grid(64, 8);
        out.push_back({"hat L=64 a=4 b=4", gw::GaborLattice(grid, 4, 4), hat(grid), gw::Weight::polynomial(1.0)});
    }
    {
        const gw::Grid grid(48, 4);
        out.push_back({"random L=48 a=4 b=4", gw::GaborLattice(grid, 4, 4), random_window(grid, 42),
                       gw::Weight::polynomial(0.5)});
    }
    return out;
}

/// All pairs (a, b) of divisors of L.
inline std::vector<std::pair<gw::index_t, gw::index_t>> divisor_pairs(gw::index_t L) {
    std::vector<gw::index_t> d;
    for (gw::index_t k = 1; k <= L; ++k)
        if (L % k == 0) d.push_back(k);
    std::vector<std::pair<gw::index_t, gw::index_t>> out;
    for (auto a : d)
        for (auto b : d) out.emplace_back(a, b);
    return out;
}

/// The four window families of the Walnut oracle comparison.
inline std::vector<std::pair<std::string, gw::Signal>> windows(const gw::Grid& grid) {
    return {{"chi", chi(grid)}, {"gaussian", gaussian(grid)}, {"hat", hat(grid)}, {"random", random_window(grid, 7)}};
}

} // namespace corpus
