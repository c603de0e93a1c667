/*
 * diagnostics.hpp: desk-scale checks of the invertibility results.
 *
 * Everything here works on the cyclic model where all series are finite, so
 * identities are checked to rounding error and norm estimates are exact sums.
 *
 *   dense_matrix / extract_walnut_from_matrix
 *       operator -> matrix -> multipliers of the M-strided diagonals
 *   dual_summability_report
 *       nu-weighted sum of ||G~_r||, cross-checked against S^{-1}
 *   mixed_bracket / convo_identity_residual / estimate_convest
 *       m_k = (M/s) [g~, T_{ka} g]_M and its convolution identity
 *   conjecture_probe
 *       both bracket sums of g~, side by side, no verdict
 *   build_counterexample / counterexample_report
 *       h = sum_k a_k chi_[k,k+1) e^{2 pi i x}, orthogonal to the adjoint lattice
 *   forbound_check
 *       amalgam boundedness of S with the block-alignment slack
 */

#pragma once

#include "amalgam.hpp"
#include "bracket.hpp"
#include "core.hpp"
#include "frame_op.hpp"
#include "invert.hpp"
#include "parallel.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace gw {

// ── Operator matrices ───────────────────────────────────────────────────────

/// Column j is op(delta_j).
template <class Op>
Matrix dense_matrix(Op&& op, const Grid& grid) {
    const index_t L = grid.L();
    if (L > max_dense_size) throw SizeError("dense matrices limited to L <= " + std::to_string(max_dense_size));
    Matrix out(L, L);
    parallel_for(static_cast<std::size_t>(L), [&](std::size_t col) {
        const auto j = static_cast<index_t>(col);
        const Signal c = op(delta(grid, j));
        require_same_grid(c.grid(), grid);
        for (index_t i = 0; i < L; ++i) out(i, j) = c[i];
    });
    return out;
}

struct WalnutExtraction {
    WalnutCoeffs coeffs;
    /// Mass off the M-strided diagonals plus any failure of a-periodicity along them.
    double off_structure_mass;
};

/// Reads G_r(x) = Mmat(j, j - rM) / factor for j = x, and measures everything
/// that does not fit the multiplier-times-translation form.
inline WalnutExtraction extract_walnut_from_matrix(const Matrix& Mmat, const GaborLattice& lat) {
    const index_t L = lat.L();
    if (Mmat.rows() != L || Mmat.cols() != L)
        throw DimensionError("matrix is " + std::to_string(Mmat.rows()) + "x" + std::to_string(Mmat.cols()) +
                             ", lattice needs " + std::to_string(L) + "x" + std::to_string(L));
    const index_t M = lat.M();
    const index_t a = lat.a();
    const double factor = lat.walnut_factor();

    double mass = 0.0;
    for (index_t i = 0; i < L; ++i)
        for (index_t k = 0; k < L; ++k)
            if (wrap(i - k, M) != 0) mass += std::abs(Mmat(i, k));

    std::vector<WalnutEntry> entries;
    for (index_t r : signed_order(lat.b())) {
        PeriodicVector G{a, std::vector<cplx>(static_cast<std::size_t>(a))};
        for (index_t x = 0; x < a; ++x) G.values[static_cast<std::size_t>(x)] = Mmat(x, wrap(x - r * M, L)) / factor;
        double dev = 0.0;
        for (index_t j = a; j < L; ++j)
            dev = std::max(dev, std::abs(Mmat(j, wrap(j - r * M, L)) / factor - G[j]));
        mass += dev;
        entries.push_back({r, std::move(G)});
    }
    return {WalnutCoeffs(lat, std::move(entries), factor), mass};
}

/// Largest |G_r(x) - H_r(x)| over all r and x.
inline double max_walnut_deviation(const WalnutCoeffs& X, const WalnutCoeffs& Y) {
    double dev = 0.0;
    for (const auto& e : X.entries()) {
        const auto& other = Y.at(e.r);
        for (index_t x = 0; x < e.G.period; ++x) dev = std::max(dev, std::abs(e.G[x] - other[x]));
    }
    return dev;
}

// ── Summability ─────────────────────────────────────────────────────────────

struct SummabilityEntry {
    index_t r;
    double sup;     // ||G_r||_inf
    double weight;  // nu(r)
    double product; // sup * weight
    double cumsum;
};

struct SummabilityReport {
    std::string lattice;
    std::string weight;
    std::vector<SummabilityEntry> per_r; // increasing |r|, positive first
    double weighted_sum = 0.0;
    /// max |G~ from brackets - G~ from the dense inverse|; NaN when not computed.
    double oracle_deviation = std::numeric_limits<double>::quiet_NaN();

    /// Share of the weighted sum carried by |r| > radius.
    double tail_fraction(index_t radius) const {
        if (weighted_sum == 0.0) return 0.0;
        double tail = 0.0;
        for (const auto& e : per_r)
            if (std::abs(e.r) > radius) tail += e.product;
        return tail / weighted_sum;
    }
};

inline std::string describe(const GaborLattice& lat) {
    return "L=" + std::to_string(lat.L()) + ",s=" + std::to_string(lat.grid().s()) + ",a=" + std::to_string(lat.a()) +
           ",b=" + std::to_string(lat.b());
}

inline SummabilityReport summability_report(const WalnutCoeffs& W, const Weight& w) {
    SummabilityReport rep;
    rep.lattice = describe(W.lattice());
    rep.weight = w.describe();
    double cum = 0.0;
    for (const auto& e : W.entries()) {
        const double sup = e.G.sup_norm();
        const double nu = w(e.r);
        cum += sup * nu;
        rep.per_r.push_back({e.r, sup, nu, sup * nu, cum});
    }
    rep.weighted_sum = cum;
    return rep;
}

/// Multipliers of S^{-1} read off the inverse of the dense frame matrix.
inline WalnutCoeffs inverse_walnut_from_dense(const Signal& g, const GaborLattice& lat) {
    const DenseSpectrum spec(frame_matrix(g, lat));
    if (spec.bounds.not_a_frame) throw NotAFrameError("lower frame bound vanishes");
    return extract_walnut_from_matrix(spec.function([](double l) { return cplx(1.0 / l); }), lat).coeffs;
}

/// G~_r = [g~, T_{rM} g~]_a with g~ computed by CG, weighted by nu and
/// cross-checked against the multipliers of the dense inverse (L <= 1024).
inline SummabilityReport dual_summability_report(const Signal& g, const GaborLattice& lat, const Weight& w,
                                                 double tol = 1e-12) {
    const Signal gd = dual_window(g, lat, SolveMethod::cg, tol);
    const WalnutCoeffs dual = walnut_coefficients(gd, lat);
    SummabilityReport rep = summability_report(dual, w);
    if (lat.L() <= max_dense_size) rep.oracle_deviation = max_walnut_deviation(dual, inverse_walnut_from_dense(g, lat));
    return rep;
}

// ── Mixed brackets and the convolution identity ─────────────────────────────

/// m_k = (M/s) [gd, T_{k a} g]_M.
inline PeriodicVector mixed_bracket(const Signal& g, const Signal& gd, const GaborLattice& lat, index_t k) {
    require_same_grid(g.grid(), lat.grid());
    require_same_grid(gd.grid(), lat.grid());
    PeriodicVector m = bracket_product(gd, translate(g, k * lat.a()), lat.M());
    for (auto& v : m.values) v *= lat.walnut_factor();
    return m;
}

struct IdentityResidual {
    double max_abs_error = 0.0;
    index_t worst_k = 0;
    index_t worst_x = 0;
};

namespace detail {
/// [u, T_{n a} v]_M for n = 0..N-1.
inline std::vector<PeriodicVector> strided_brackets(const Signal& u, const Signal& v, const GaborLattice& lat) {
    std::vector<PeriodicVector> out;
    out.reserve(static_cast<std::size_t>(lat.time_shifts()));
    for (index_t n = 0; n < lat.time_shifts(); ++n) out.push_back(bracket_product(u, translate(v, n * lat.a()), lat.M()));
    return out;
}
} // namespace detail

/// Max over signed k and x in [0, M) of
///   | [gd, T_{ka} g]_M(x) - (M/s) sum_n conj([g, T_{na} g]_M(x - ka)) [gd, T_{(k+n)a} gd]_M(x) |.
/// Ties resolve to the smallest k, then the smallest x.
inline IdentityResidual convo_identity_residual(const Signal& g, const Signal& gd, const GaborLattice& lat) {
    require_same_grid(g.grid(), lat.grid());
    require_same_grid(gd.grid(), lat.grid());
    const index_t N = lat.time_shifts();
    const index_t M = lat.M();
    const double factor = lat.walnut_factor();
    const auto gg = detail::strided_brackets(g, g, lat);
    const auto dd = detail::strided_brackets(gd, gd, lat);
    const auto dg = detail::strided_brackets(gd, g, lat);

    std::vector<index_t> ks;
    for (index_t k = -((N - 1) / 2); k <= N / 2; ++k) ks.push_back(k);
    std::vector<IdentityResidual> per_k(ks.size());
    parallel_for(ks.size(), [&](std::size_t i) {
        const index_t k = ks[i];
        IdentityResidual best{0.0, k, 0};
        for (index_t x = 0; x < M; ++x) {
            cplx rhs = 0.0;
            for (index_t n = 0; n < N; ++n)
                rhs += std::conj(gg[static_cast<std::size_t>(n)][x - k * lat.a()]) *
                       dd[static_cast<std::size_t>(wrap(k + n, N))][x];
            const double err = std::abs(dg[static_cast<std::size_t>(wrap(k, N))][x] - factor * rhs);
            if (err > best.max_abs_error) best = {err, k, x};
        }
        per_k[i] = best;
    });
    IdentityResidual out{0.0, ks.front(), 0};
    for (const auto& r : per_k)
        if (r.max_abs_error > out.max_abs_error) out = r;
    return out;
}

struct ConvestEstimate {
    double lhs;
    double rhs;
};

/// lhs = sum_k ||[gd, T_{ka} g]_M|| nu(k);
/// rhs = (M/s) (sum_n ||[g, T_{na} g]_M|| nu(n)) (sum_n ||[gd, T_{na} gd]_M|| nu(n)).
inline ConvestEstimate estimate_convest(const Signal& g, const Signal& gd, const GaborLattice& lat, const Weight& w) {
    require_same_grid(g.grid(), lat.grid());
    require_same_grid(gd.grid(), lat.grid());
    const index_t N = lat.time_shifts();
    double lhs = 0.0, sg = 0.0, sd = 0.0;
    for (index_t k : signed_order(N)) {
        const index_t shift = k * lat.a();
        const double nu = w(k);
        lhs += bracket_product(gd, translate(g, shift), lat.M()).sup_norm() * nu;
        sg += bracket_product(g, translate(g, shift), lat.M()).sup_norm() * nu;
        sd += bracket_product(gd, translate(gd, shift), lat.M()).sup_norm() * nu;
    }
    return {lhs, lat.walnut_factor() * sg * sd};
}

struct ConjectureProbe {
    double sum_alpha_blocks;   // sum_r ||[gd, T_{rM} gd]_a|| nu(r)
    double sum_invbeta_blocks; // sum_n ||[gd, T_{na} gd]_M|| nu(n)
};

inline ConjectureProbe conjecture_probe(const Signal& gd, const GaborLattice& lat, const Weight& w) {
    require_same_grid(gd.grid(), lat.grid());
    ConjectureProbe out{walnut_weighted_sum(walnut_coefficients(gd, lat), w), 0.0};
    for (index_t n : signed_order(lat.time_shifts()))
        out.sum_invbeta_blocks += bracket_product(gd, translate(gd, n * lat.a()), lat.M()).sup_norm() * w(n);
    return out;
}

// ── Non-canonical dual counterexample ───────────────────────────────────────

/// Coefficient sequence a_k over signed unit indices k.
struct CoefficientRule {
    std::function<double(index_t)> a;

    static CoefficientRule harmonic() {
        return {[](index_t k) { return 1.0 / (static_cast<double>(std::abs(k)) + 1.0); }};
    }
    static CoefficientRule custom(std::function<double(index_t)> a) { return {std::move(a)}; }
};

/// h(j) = a_{k(j)} exp(2 pi i j / s), k(j) the signed index of unit floor(j/s).
inline Signal build_counterexample(const CoefficientRule& rule, const Grid& grid) {
    if (grid.units() < 4) throw DomainError("counterexample needs at least 4 unit intervals");
    if (grid.s() < 4) throw DomainError("counterexample needs s >= 4 to resolve the unit modulation");
    Signal h(grid);
    const index_t K = grid.units();
    for (index_t j = 0; j < grid.L(); ++j)
        h[j] = rule.a(signed_index(j / grid.s(), K)) * unit_root(j, grid.s());
    return h;
}

/// Lattice of G(chi_[0,1], 1/2, 1) on a grid: a = s/2, b = K.
inline GaborLattice remark_lattice(const Grid& grid) {
    if (grid.s() % 2 != 0) throw LatticeError("alpha = 1/2 needs an even number of samples per unit");
    return GaborLattice(grid, grid.s() / 2, grid.units());
}

struct CounterexampleReport {
    double max_inner = 0.0;
    index_t worst_m = 0;
    index_t worst_n = 0;
    AmalgamProfile profile;
};

/// max |<h, M_{2m} T_n g>| over the adjoint lattice (m, n integers in frequency
/// and time units) and the amalgam profile of h on blocks of length s/2.
inline CounterexampleReport counterexample_report(const Signal& h, const Signal& g, const GaborLattice& lat,
                                                  const Weight& w) {
    require_same_grid(h.grid(), lat.grid());
    require_same_grid(g.grid(), lat.grid());
    const Grid& grid = lat.grid();
    if (!(lat == remark_lattice(grid)))
        throw LatticeError("counterexample requires a = s/2 and b = L/s (alpha = 1/2, beta = 1), got a=" +
                           std::to_string(lat.a()) + ", b=" + std::to_string(lat.b()));
    const index_t K = grid.units();
    const index_t freq_bins = 2 * K; // two frequency units
    CounterexampleReport rep;
    for (index_t m = 0; m < grid.L() / freq_bins; ++m) {
        for (index_t n = 0; n < K; ++n) {
            const double v = std::abs(inner_product(h, tf_shift(g, n * grid.s(), m * freq_bins)));
            if (v > rep.max_inner) rep = {v, m, n, {}};
        }
    }
    rep.profile = amalgam_profile(h, grid.s() / 2, w);
    return rep;
}

// ── Amalgam boundedness ─────────────────────────────────────────────────────

struct ForboundResult {
    double max_ratio = 0.0;
    /// C_tile - 1; the ratio may not exceed 1 + eps_align.
    double eps_align = 0.0;
};

/// amalgam(S f) / (factor * sum_r ||G_r|| nu(r) * amalgam(f)), blocks of length a.
inline double forbound_ratio(const WalnutCoeffs& W, const Signal& f, const Weight& w) {
    const index_t a = W.lattice().a();
    const double nf = amalgam_norm(f, a, w);
    if (nf == 0.0) throw DomainError("forbound ratio undefined for f = 0");
    const double denom = std::abs(W.factor()) * walnut_weighted_sum(W, w) * nf;
    const double num = amalgam_norm(frame_operator_walnut(W, f), a, w);
    return denom > 0.0 ? num / denom : 0.0;
}

inline ForboundResult forbound_check(const Signal& g, const GaborLattice& lat, const Weight& w, index_t trials,
                                     std::uint64_t seed = 1) {
    const WalnutCoeffs W = walnut_coefficients(g, lat);
    ForboundResult out;
    out.eps_align = alignment_constant(W, w) - 1.0;
    std::mt19937_64 rng(seed);
    for (index_t t = 0; t < trials; ++t)
        out.max_ratio = std::max(out.max_ratio, forbound_ratio(W, random_signal(lat.grid(), rng), w));
    return out;
}

} // namespace gw
