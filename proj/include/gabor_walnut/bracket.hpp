/*
 * bracket.hpp: periodization and bracket products.
 *
 *   [f, h]_p(x) = sum_k (f * conj(h))(x + k p),   x = 0..p-1
 *
 * Fourier-series coefficients use the forward kernel exp(-2 pi i x n / p)
 * with a 1/p factor, so coefficient n of [f, h]_p equals
 * (s/p) <f, M_{n L/p} h>.
 */

#pragma once

#include "core.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace gw {

/// One period of a p-periodic function on the grid.
struct PeriodicVector {
    index_t period = 0;
    std::vector<cplx> values;

    const cplx& operator[](index_t x) const { return values[static_cast<std::size_t>(wrap(x, period))]; }
    cplx& operator[](index_t x) { return values[static_cast<std::size_t>(wrap(x, period))]; }

    double sup_norm() const {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }

    /// Repeats the period across a grid.
    Signal tile(const Grid& grid) const {
        if (grid.L() % period != 0) throw DivisibilityError("period does not divide L");
        Signal out(grid);
        for (index_t j = 0; j < grid.L(); ++j) out[j] = (*this)[j];
        return out;
    }
};

namespace detail {
inline void require_period(const Grid& grid, index_t p) {
    if (p < 1) throw DomainError("period must be positive");
    if (grid.L() % p != 0)
        throw DivisibilityError("period " + std::to_string(p) + " does not divide L=" + std::to_string(grid.L()));
}
} // namespace detail

inline PeriodicVector periodize(const Signal& u, index_t p) {
    detail::require_period(u.grid(), p);
    PeriodicVector out{p, std::vector<cplx>(static_cast<std::size_t>(p))};
    for (index_t x = 0; x < p; ++x) {
        cplx acc = 0.0;
        for (index_t j = x; j < u.size(); j += p) acc += u[j];
        out.values[static_cast<std::size_t>(x)] = acc;
    }
    return out;
}

/// [f, h]_p.  No 1/s factor inside the fold.
inline PeriodicVector bracket_product(const Signal& f, const Signal& h, index_t p) {
    require_same_grid(f.grid(), h.grid());
    detail::require_period(f.grid(), p);
    PeriodicVector out{p, std::vector<cplx>(static_cast<std::size_t>(p))};
    for (index_t x = 0; x < p; ++x) {
        cplx acc = 0.0;
        for (index_t j = x; j < f.size(); j += p) acc += f[j] * std::conj(h[j]);
        out.values[static_cast<std::size_t>(x)] = acc;
    }
    return out;
}

/// c_n = (1/p) sum_x v(x) exp(-2 pi i x n / p).
inline std::vector<cplx> fourier_coeffs(const PeriodicVector& v) {
    const index_t p = v.period;
    std::vector<cplx> c(static_cast<std::size_t>(p));
    const auto roots = root_table(p);
    for (index_t n = 0; n < p; ++n) {
        cplx acc = 0.0;
        for (index_t x = 0; x < p; ++x) acc += v.values[static_cast<std::size_t>(x)] * std::conj(roots[static_cast<std::size_t>((x * n) % p)]);
        c[static_cast<std::size_t>(n)] = acc / static_cast<double>(p);
    }
    return c;
}

/// Inverse of fourier_coeffs: v(x) = sum_n c_n exp(2 pi i x n / p).
inline PeriodicVector fourier_synthesis(const std::vector<cplx>& c) {
    const auto p = static_cast<index_t>(c.size());
    PeriodicVector v{p, std::vector<cplx>(c.size())};
    const auto roots = root_table(p);
    for (index_t x = 0; x < p; ++x) {
        cplx acc = 0.0;
        for (index_t n = 0; n < p; ++n) acc += c[static_cast<std::size_t>(n)] * roots[static_cast<std::size_t>((x * n) % p)];
        v.values[static_cast<std::size_t>(x)] = acc;
    }
    return v;
}

inline std::vector<cplx> bracket_fourier_coeffs(const Signal& f, const Signal& h, index_t p) {
    return fourier_coeffs(bracket_product(f, h, p));
}

/// G_r = [g, T_{r M} g]_a for signed r in (-b/2, b/2].
inline PeriodicVector correlation_G(const Signal& g, const GaborLattice& lat, index_t r) {
    require_same_grid(g.grid(), lat.grid());
    if (signed_index(r, lat.b()) != r)
        throw LatticeError("correlation index r=" + std::to_string(r) + " outside (-b/2, b/2] for b=" +
                           std::to_string(lat.b()));
    const index_t L = lat.L();
    const index_t shift = r * lat.M();
    PeriodicVector out{lat.a(), std::vector<cplx>(static_cast<std::size_t>(lat.a()))};
    for (index_t x = 0; x < lat.a(); ++x) {
        cplx acc = 0.0;
        for (index_t j = x; j < L; j += lat.a()) acc += g[j] * std::conj(g[wrap(j - shift, L)]);
        out.values[static_cast<std::size_t>(x)] = acc;
    }
    return out;
}

} // namespace gw
