/*
 * frame_op.hpp: Gabor analysis/synthesis and the frame operator.
 *
 * Two routes to S f = sum_{m,n} <f, g_{m,n}> g_{m,n}:
 *
 *   direct  - the double sum over the lattice, O(L * mods * N); the oracle.
 *   Walnut  - S f(j) = (M/s) sum_r G_r(j) f(j - r M), with
 *             G_r = [g, T_{r M} g]_a stored over one a-period; O(L * b).
 *
 * Collapsing the modulation sum in the direct form leaves only translations
 * by multiples of M, which is where the factor M/s (discrete 1/beta) comes from.
 */

#pragma once

#include "amalgam.hpp"
#include "bracket.hpp"
#include "core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace gw {

/// Analysis coefficients <f, g_{m,n}>, stored mods x N (m-major).
class Coeffs {
public:
    explicit Coeffs(GaborLattice lat)
        : lat_(lat), values_(static_cast<std::size_t>(lat.modulations() * lat.time_shifts())) {}

    const GaborLattice& lattice() const noexcept { return lat_; }
    index_t rows() const noexcept { return lat_.modulations(); }
    index_t cols() const noexcept { return lat_.time_shifts(); }

    cplx& operator()(index_t m, index_t n) { return values_[static_cast<std::size_t>(m * cols() + n)]; }
    const cplx& operator()(index_t m, index_t n) const {
        return values_[static_cast<std::size_t>(m * cols() + n)];
    }

    const std::vector<cplx>& values() const noexcept { return values_; }

private:
    GaborLattice lat_;
    std::vector<cplx> values_;
};

// The direct route accumulates in extended precision so that the
// modulation-sum cancellation off the M-strided diagonals is resolved well
// below double rounding.
namespace detail {
using wide = std::complex<long double>;

inline std::vector<wide> wide_root_table(index_t n) {
    std::vector<wide> t(static_cast<std::size_t>(n));
    for (index_t k = 0; k < n; ++k) {
        index_t r = k;
        if ((4 * r) % n == 0) {
            const index_t q = (4 * r) / n;
            t[static_cast<std::size_t>(k)] = q == 0 ? wide(1, 0) : q == 1 ? wide(0, 1) : q == 2 ? wide(-1, 0) : wide(0, -1);
            continue;
        }
        if (2 * r > n) r -= n;
        const long double th = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) /
                               static_cast<long double>(n);
        t[static_cast<std::size_t>(k)] = wide(std::cos(th), std::sin(th));
    }
    return t;
}
} // namespace detail

namespace detail {

inline wide widen(cplx v) { return wide(v.real(), v.imag()); }
inline cplx narrow(wide v) { return cplx(static_cast<double>(v.real()), static_cast<double>(v.imag())); }

/// Analysis coefficients in extended precision, m-major.
inline std::vector<wide> analysis_wide(const Signal& g, const GaborLattice& lat, const Signal& f) {
    require_same_grid(g.grid(), lat.grid());
    require_same_grid(f.grid(), lat.grid());
    const index_t L = lat.L();
    const index_t N = lat.time_shifts();
    const auto roots = wide_root_table(L);
    const long double inv_s = 1.0L / static_cast<long double>(lat.grid().s());
    std::vector<wide> c(static_cast<std::size_t>(lat.modulations() * N));
    std::vector<wide> u(static_cast<std::size_t>(L));
    for (index_t n = 0; n < N; ++n) {
        for (index_t j = 0; j < L; ++j)
            u[static_cast<std::size_t>(j)] = widen(f[j]) * std::conj(widen(g[wrap(j - n * lat.a(), L)]));
        for (index_t m = 0; m < lat.modulations(); ++m) {
            const index_t step = m * lat.b();
            wide acc = 0.0L;
            index_t phase = 0;
            for (index_t j = 0; j < L; ++j) {
                acc += u[static_cast<std::size_t>(j)] * std::conj(roots[static_cast<std::size_t>(phase)]);
                phase += step;
                if (phase >= L) phase -= L;
            }
            c[static_cast<std::size_t>(m * N + n)] = acc * inv_s;
        }
    }
    return c;
}

inline Signal synthesis_wide(const Signal& g, const GaborLattice& lat, const std::vector<wide>& c) {
    const index_t L = lat.L();
    const index_t N = lat.time_shifts();
    const auto roots = wide_root_table(L);
    std::vector<wide> acc_out(static_cast<std::size_t>(L));
    for (index_t n = 0; n < N; ++n) {
        for (index_t j = 0; j < L; ++j) {
            const cplx gv = g[wrap(j - n * lat.a(), L)];
            if (gv == cplx{}) continue;
            wide acc = 0.0L;
            const index_t step = wrap(lat.b() * j, L);
            index_t phase = 0;
            for (index_t m = 0; m < lat.modulations(); ++m) {
                acc += c[static_cast<std::size_t>(m * N + n)] * roots[static_cast<std::size_t>(phase)];
                phase += step;
                if (phase >= L) phase -= L;
            }
            acc_out[static_cast<std::size_t>(j)] += acc * widen(gv);
        }
    }
    Signal out(lat.grid());
    for (index_t j = 0; j < L; ++j) out[j] = narrow(acc_out[static_cast<std::size_t>(j)]);
    return out;
}

} // namespace detail

inline Coeffs analysis(const Signal& g, const GaborLattice& lat, const Signal& f) {
    const auto w = detail::analysis_wide(g, lat, f);
    Coeffs c(lat);
    for (index_t m = 0; m < c.rows(); ++m)
        for (index_t n = 0; n < c.cols(); ++n) c(m, n) = detail::narrow(w[static_cast<std::size_t>(m * c.cols() + n)]);
    return c;
}

inline Signal synthesis(const Signal& g, const GaborLattice& lat, const Coeffs& c) {
    require_same_grid(g.grid(), lat.grid());
    if (!(c.lattice() == lat))
        throw DimensionError("coefficient array is " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()) +
                             " on a different lattice");
    std::vector<detail::wide> w(c.values().size());
    std::transform(c.values().begin(), c.values().end(), w.begin(), detail::widen);
    return detail::synthesis_wide(g, lat, w);
}

/// The oracle: synthesis(g, analysis(g, f)), rounded to double once at the end.
inline Signal frame_operator_direct(const Signal& g, const GaborLattice& lat, const Signal& f) {
    return detail::synthesis_wide(g, lat, detail::analysis_wide(g, lat, f));
}

struct WalnutEntry {
    index_t r;        // signed, in (-b/2, b/2]
    PeriodicVector G; // period a
};

/// Multipliers G_r of the Walnut form, kept in application order
/// (increasing |r|, positive first).
class WalnutCoeffs {
public:
    /// Missing r are filled with zero multipliers.
    WalnutCoeffs(GaborLattice lat, std::vector<WalnutEntry> entries, double factor)
        : lat_(lat), factor_(factor) {
        std::vector<bool> seen(static_cast<std::size_t>(lat.b()), false);
        std::vector<PeriodicVector> by_slot(static_cast<std::size_t>(lat.b()),
                                            PeriodicVector{lat.a(), std::vector<cplx>(static_cast<std::size_t>(lat.a()))});
        for (auto& e : entries) {
            if (signed_index(e.r, lat.b()) != e.r)
                throw LatticeError("Walnut index r=" + std::to_string(e.r) + " outside (-b/2, b/2]");
            if (e.G.period != lat.a() || static_cast<index_t>(e.G.values.size()) != lat.a())
                throw DimensionError("Walnut multiplier must have period a=" + std::to_string(lat.a()));
            const auto slot = static_cast<std::size_t>(wrap(e.r, lat.b()));
            if (seen[slot]) throw LatticeError("duplicate Walnut index r=" + std::to_string(e.r));
            seen[slot] = true;
            by_slot[slot] = std::move(e.G);
        }
        for (index_t r : signed_order(lat.b()))
            entries_.push_back({r, std::move(by_slot[static_cast<std::size_t>(wrap(r, lat.b()))])});
    }

    const GaborLattice& lattice() const noexcept { return lat_; }
    double factor() const noexcept { return factor_; }
    const std::vector<WalnutEntry>& entries() const noexcept { return entries_; }

    const PeriodicVector& at(index_t r) const {
        for (const auto& e : entries_)
            if (e.r == r) return e.G;
        throw LatticeError("no Walnut entry r=" + std::to_string(r));
    }

private:
    GaborLattice lat_;
    double factor_;
    std::vector<WalnutEntry> entries_;
};

inline WalnutCoeffs walnut_coefficients(const Signal& g, const GaborLattice& lat) {
    std::vector<WalnutEntry> entries;
    for (index_t r : signed_order(lat.b())) entries.push_back({r, correlation_G(g, lat, r)});
    return WalnutCoeffs(lat, std::move(entries), lat.walnut_factor());
}

inline Signal frame_operator_walnut(const WalnutCoeffs& W, const Signal& f) {
    const auto& lat = W.lattice();
    require_same_grid(f.grid(), lat.grid());
    const index_t L = lat.L();
    const index_t a = lat.a();
    const index_t M = lat.M();
    const auto& entries = W.entries();
    Signal out(lat.grid());
    for (index_t j = 0; j < L; ++j) {
        const auto x = static_cast<std::size_t>(j % a);
        cplx acc = 0.0;
        for (const auto& e : entries) acc += e.G.values[x] * f[wrap(j - e.r * M, L)];
        out[j] = W.factor() * acc;
    }
    return out;
}

/// sum_r ||G_r||_inf nu(r).
inline double walnut_weighted_sum(const WalnutCoeffs& W, const Weight& w) {
    double total = 0.0;
    for (const auto& e : W.entries()) total += e.G.sup_norm() * w(e.r);
    return total;
}

/// Block-alignment constant C_tile for the amalgam bound with blocks of length a:
///
///   ||S f||_W <= factor * C_tile * (sum_r ||G_r|| nu(r)) * ||f||_W.
///
/// A translate by r M samples moves block k onto blocks k - floor(rM/a) and,
/// when a does not divide rM, also k - ceil(rM/a); submultiplicativity of a
/// weight nondecreasing in |n| then bounds each term by nu of that offset.
inline double alignment_constant(const WalnutCoeffs& W, const Weight& w) {
    const auto& lat = W.lattice();
    const index_t a = lat.a();
    const index_t P = lat.time_shifts();
    double numer = 0.0;
    for (const auto& e : W.entries()) {
        const index_t shift = e.r * lat.M();
        index_t lo = shift / a;
        if (shift % a != 0 && shift < 0) --lo;
        double c = w(signed_index(lo, P));
        if (shift % a != 0) c += w(signed_index(lo + 1, P));
        numer += e.G.sup_norm() * c;
    }
    const double denom = walnut_weighted_sum(W, w);
    return denom > 0.0 ? numer / denom : 1.0;
}

} // namespace gw
