/*
 * invert.hpp: frame bounds, canonical dual and tight windows.
 *
 * Iterative paths only touch S through the Walnut fast apply.  Dense paths
 * assemble the L x L matrix and go through an Hermitian eigendecomposition;
 * they are the oracles for the iterative ones and are limited to L <= 1024.
 *
 * S^{-1/2} is also available through the Cauchy integral
 *
 *   S^{-1/2} f = (1 / 2 pi i) \oint lambda^{-1/2} (lambda I - S)^{-1} f d lambda
 *
 * over a circle in the right half-plane enclosing [A, B], discretised with
 * the trapezoid rule.
 */

#pragma once

#include "core.hpp"
#include "frame_op.hpp"
#include "parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace gw {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr index_t max_dense_size = 1024;

inline Vector to_vector(const Signal& f) {
    Vector v(f.size());
    for (index_t j = 0; j < f.size(); ++j) v(j) = f[j];
    return v;
}

inline Signal to_signal(const Vector& v, const Grid& grid) {
    Signal f(grid);
    if (v.size() != grid.L()) throw DimensionError("vector length does not match grid");
    for (index_t j = 0; j < grid.L(); ++j) f[j] = v(j);
    return f;
}

/// Dense S assembled entrywise from the Walnut multipliers:
/// S(j, j - rM) = factor * G_r(j mod a).
inline Matrix frame_matrix(const WalnutCoeffs& W) {
    const auto& lat = W.lattice();
    const index_t L = lat.L();
    if (L > max_dense_size) throw SizeError("dense frame matrix limited to L <= " + std::to_string(max_dense_size));
    Matrix S = Matrix::Zero(L, L);
    for (const auto& e : W.entries())
        for (index_t j = 0; j < L; ++j) S(j, wrap(j - e.r * lat.M(), L)) += W.factor() * e.G[j];
    return S;
}

inline Matrix frame_matrix(const Signal& g, const GaborLattice& lat) {
    return frame_matrix(walnut_coefficients(g, lat));
}

// ── Frame bounds ────────────────────────────────────────────────────────────

enum class BoundsMethod { power_iteration, dense };

inline const char* to_string(BoundsMethod m) {
    return m == BoundsMethod::dense ? "dense" : "power_iteration";
}

struct FrameBounds {
    double A = 0.0;
    double B = 0.0;
    BoundsMethod method = BoundsMethod::dense;
    /// Set when A < 1e-12 B: the system is not a frame on this grid.
    bool not_a_frame = false;
    index_t iterations = 0;
};

struct PowerOptions {
    double tol = 1e-10;
    index_t max_iter = 2000; // cap on the Krylov dimension
    std::uint64_t seed = 0x6a09e667f3bcc909ULL;
};

namespace detail {

inline double dot_re(const Signal& x, const Signal& y) {
    double acc = 0.0;
    for (index_t j = 0; j < x.size(); ++j) acc += (x[j] * std::conj(y[j])).real();
    return acc;
}

/// Extreme eigenvalues of an Hermitian map by power iteration with
/// Rayleigh-Ritz extraction over the span of the iterates (Lanczos, full
/// reorthogonalisation).  A Ritz pair (theta, y) with residual rho satisfies
/// |theta - lambda| <= rho for some eigenvalue lambda, so iteration stops once
/// both extreme residuals fall below tol * |theta_max|.
struct ExtremeEigen {
    double lo = 0.0;
    double hi = 0.0;
    index_t iterations = 0;
};

template <class Apply>
ExtremeEigen extreme_eigenvalues(Apply&& op, const Grid& grid, const PowerOptions& opt) {
    const index_t L = grid.L();
    const index_t cap = std::min(L, opt.max_iter);
    std::mt19937_64 rng(opt.seed);
    std::vector<Vector> basis;
    Vector q = to_vector(random_signal(grid, rng));
    q /= q.norm();
    std::vector<double> alpha, beta;
    ExtremeEigen out;
    for (index_t m = 1; m <= cap; ++m) {
        basis.push_back(q);
        Vector w = to_vector(op(to_signal(q, grid)));
        const double al = q.dot(w).real(); // dot conjugates its first argument
        alpha.push_back(al);
        // two passes of classical Gram-Schmidt keep the basis orthonormal
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : basis) w -= u * u.dot(w);
        const double be = w.norm();

        Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd e = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1)) : Eigen::VectorXd();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
        if (es.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigensolver failed");
        out.lo = es.eigenvalues()(0);
        out.hi = es.eigenvalues()(m - 1);
        out.iterations = m;
        const double res_lo = be * std::abs(es.eigenvectors()(m - 1, 0));
        const double res_hi = be * std::abs(es.eigenvectors()(m - 1, m - 1));
        const double scale = std::max(std::abs(out.lo), std::abs(out.hi));
        if (scale == 0.0) return out;
        const bool invariant = be <= 1e-14 * scale;
        if (invariant || m == L || std::max(res_lo, res_hi) <= opt.tol * scale) return out;
        beta.push_back(be);
        q = w / be;
    }
    throw ConvergenceError("eigenvalue iteration did not converge in " + std::to_string(cap) + " steps");
}

inline void flag_frame(FrameBounds& fb) {
    fb.A = std::clamp(fb.A, 0.0, std::max(fb.B, 0.0));
    fb.not_a_frame = !(fb.A >= 1e-12 * fb.B) || fb.B <= 0.0;
}

} // namespace detail

/// Row-sum (Gershgorin) upper bound for the spectrum of S.
inline double gershgorin_bound(const WalnutCoeffs& W) {
    const index_t a = W.lattice().a();
    double mu = 0.0;
    for (index_t x = 0; x < a; ++x) {
        double row = 0.0;
        for (const auto& e : W.entries()) row += std::abs(e.G[x]);
        mu = std::max(mu, row);
    }
    return std::abs(W.factor()) * mu;
}

inline FrameBounds frame_bounds_dense(const Matrix& S) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
    FrameBounds fb;
    fb.method = BoundsMethod::dense;
    fb.A = es.eigenvalues().minCoeff();
    fb.B = es.eigenvalues().maxCoeff();
    detail::flag_frame(fb);
    return fb;
}

inline FrameBounds frame_bounds(const WalnutCoeffs& W, BoundsMethod method, const PowerOptions& opt = {}) {
    if (method == BoundsMethod::dense) return frame_bounds_dense(frame_matrix(W));

    FrameBounds fb;
    fb.method = BoundsMethod::power_iteration;
    const auto ext = detail::extreme_eigenvalues([&](const Signal& f) { return frame_operator_walnut(W, f); },
                                                 W.lattice().grid(), opt);
    fb.A = ext.lo;
    fb.B = ext.hi;
    fb.iterations = ext.iterations;
    detail::flag_frame(fb);
    return fb;
}

inline FrameBounds frame_bounds(const Signal& g, const GaborLattice& lat, BoundsMethod method,
                                const PowerOptions& opt = {}) {
    return frame_bounds(walnut_coefficients(g, lat), method, opt);
}

// ── Linear solves ───────────────────────────────────────────────────────────

enum class SolveMethod { cg, richardson, dense };

inline const char* to_string(SolveMethod m) {
    switch (m) {
    case SolveMethod::cg: return "cg";
    case SolveMethod::richardson: return "richardson";
    default: return "dense";
    }
}

struct SolveReport {
    SolveMethod method = SolveMethod::cg;
    index_t iterations = 0;
    std::vector<double> residuals; // ||f - S x|| / ||f|| per iteration
};

inline constexpr index_t default_max_iter = 100000;

/// Conjugate gradients for S x = f through the Walnut apply.
inline Signal solve_cg(const WalnutCoeffs& W, const Signal& f, double tol, SolveReport* report = nullptr,
                       index_t max_iter = default_max_iter) {
    if (report) *report = SolveReport{SolveMethod::cg, 0, {}};
    Signal x(f.grid());
    const double fnorm = l2_samples(f);
    if (fnorm == 0.0) return x;
    Signal r = f;
    Signal p = r;
    double rr = detail::dot_re(r, r);
    for (index_t it = 1; it <= max_iter; ++it) {
        const Signal Sp = frame_operator_walnut(W, p);
        const double pSp = detail::dot_re(p, Sp);
        if (!(pSp > 0.0)) throw NotAFrameError("frame operator is not positive definite on the search direction");
        const double alpha = rr / pSp;
        for (index_t j = 0; j < x.size(); ++j) {
            x[j] += alpha * p[j];
            r[j] -= alpha * Sp[j];
        }
        const double rr_next = detail::dot_re(r, r);
        const double rel = std::sqrt(rr_next) / fnorm;
        if (report) {
            report->iterations = it;
            report->residuals.push_back(rel);
        }
        if (rel <= tol) return x;
        const double beta = rr_next / rr;
        rr = rr_next;
        for (index_t j = 0; j < p.size(); ++j) p[j] = r[j] + beta * p[j];
    }
    throw ConvergenceError("conjugate gradients did not reach tol " + std::to_string(tol));
}

/// Frame algorithm x_{k+1} = x_k + 2/(A+B) (f - S x_k).
inline Signal solve_richardson(const WalnutCoeffs& W, const FrameBounds& fb, const Signal& f, double tol,
                               SolveReport* report = nullptr, index_t max_iter = default_max_iter) {
    if (report) *report = SolveReport{SolveMethod::richardson, 0, {}};
    if (fb.not_a_frame) throw NotAFrameError("lower frame bound vanishes");
    Signal x(f.grid());
    const double fnorm = l2_samples(f);
    if (fnorm == 0.0) return x;
    const double relax = 2.0 / (fb.A + fb.B);
    Signal r = f;
    for (index_t it = 1; it <= max_iter; ++it) {
        for (index_t j = 0; j < x.size(); ++j) x[j] += relax * r[j];
        r = f - frame_operator_walnut(W, x);
        const double rel = l2_samples(r) / fnorm;
        if (report) {
            report->iterations = it;
            report->residuals.push_back(rel);
        }
        if (rel <= tol) return x;
    }
    throw ConvergenceError("Richardson iteration did not reach tol " + std::to_string(tol));
}

/// Hermitian eigendecomposition of S with a frame check.
struct DenseSpectrum {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
    FrameBounds bounds;

    explicit DenseSpectrum(const Matrix& S) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(S);
        if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
        eigenvalues = es.eigenvalues();
        eigenvectors = es.eigenvectors();
        bounds.method = BoundsMethod::dense;
        bounds.A = eigenvalues.minCoeff();
        bounds.B = eigenvalues.maxCoeff();
        detail::flag_frame(bounds);
    }

    /// V diag(phi(lambda)) V^*.
    template <class Fn>
    Matrix function(Fn&& phi) const {
        Eigen::VectorXcd d(eigenvalues.size());
        for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) d(i) = phi(eigenvalues(i));
        return eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
    }
};

inline Signal apply_inverse(const WalnutCoeffs& W, const Signal& f, SolveMethod method, double tol = 1e-10,
                            SolveReport* report = nullptr) {
    require_same_grid(f.grid(), W.lattice().grid());
    if (method == SolveMethod::dense) {
        const DenseSpectrum spec(frame_matrix(W));
        if (spec.bounds.not_a_frame) throw NotAFrameError("lower frame bound vanishes");
        const Vector x = spec.function([](double l) { return cplx(1.0 / l); }) * to_vector(f);
        Signal out = to_signal(x, f.grid());
        if (report) {
            *report = SolveReport{SolveMethod::dense, 1, {relative_error(frame_operator_walnut(W, out), f)}};
        }
        return out;
    }
    const FrameBounds fb = frame_bounds(W, BoundsMethod::power_iteration);
    if (fb.not_a_frame) throw NotAFrameError("lower frame bound vanishes (A=" + std::to_string(fb.A) + ")");
    if (method == SolveMethod::cg) return solve_cg(W, f, tol, report);
    return solve_richardson(W, fb, f, tol, report);
}

inline Signal apply_inverse(const Signal& g, const GaborLattice& lat, const Signal& f, SolveMethod method,
                            double tol = 1e-10, SolveReport* report = nullptr) {
    return apply_inverse(walnut_coefficients(g, lat), f, method, tol, report);
}

/// Canonical dual window S^{-1} g.
inline Signal dual_window(const Signal& g, const GaborLattice& lat, SolveMethod method, double tol = 1e-10,
                          SolveReport* report = nullptr) {
    return apply_inverse(g, lat, g, method, tol, report);
}

// ── Inverse square root ─────────────────────────────────────────────────────

enum class SqrtMethod { contour, dense };

inline const char* to_string(SqrtMethod m) { return m == SqrtMethod::dense ? "dense" : "contour"; }

struct ContourOptions {
    double margin = 0.1;     // extra radius, in units of A
    index_t min_nodes = 16;
    index_t max_nodes = 4096;
};

struct ContourReport {
    double center = 0.0;
    double radius = 0.0;
    index_t nodes = 0;
    index_t inner_iterations = 0;
};

/// Solves (lambda I - S) x = f for complex lambda by conjugate gradients on
/// the normal equations; (lambda I - S) is normal but not Hermitian.
inline Signal solve_resolvent(const WalnutCoeffs& W, cplx lambda, const Signal& f, double tol,
                              index_t* iterations = nullptr, index_t max_iter = default_max_iter) {
    auto apply = [&](const Signal& v, cplx shift) {
        Signal out = frame_operator_walnut(W, v);
        for (index_t j = 0; j < out.size(); ++j) out[j] = shift * v[j] - out[j];
        return out;
    };
    Signal x(f.grid());
    const double fnorm = l2_samples(f);
    if (fnorm == 0.0) return x;
    Signal r = f;
    Signal s = apply(r, std::conj(lambda));
    Signal p = s;
    double gamma = detail::dot_re(s, s);
    for (index_t it = 1; it <= max_iter; ++it) {
        const Signal q = apply(p, lambda);
        const double alpha = gamma / detail::dot_re(q, q);
        for (index_t j = 0; j < x.size(); ++j) {
            x[j] += alpha * p[j];
            r[j] -= alpha * q[j];
        }
        if (l2_samples(r) <= tol * fnorm) {
            if (iterations) *iterations += it;
            return x;
        }
        s = apply(r, std::conj(lambda));
        const double gamma_next = detail::dot_re(s, s);
        const double beta = gamma_next / gamma;
        gamma = gamma_next;
        for (index_t j = 0; j < p.size(); ++j) p[j] = s[j] + beta * p[j];
    }
    throw ConvergenceError("resolvent solve did not converge");
}

/// S^{-1/2} f by trapezoidal quadrature on the circle centred at (A+B)/2 with
/// radius (B-A)/2 + margin*A.  Node count doubles from min_nodes (nested nodes
/// are reused) until successive sums differ by less than tol.
inline Signal inverse_sqrt_contour(const WalnutCoeffs& W, const FrameBounds& fb, const Signal& f, double tol,
                                   const ContourOptions& opt = {}, ContourReport* report = nullptr) {
    if (fb.not_a_frame) throw NotAFrameError("lower frame bound vanishes");
    const double center = 0.5 * (fb.A + fb.B);
    const double radius = 0.5 * (fb.B - fb.A) + opt.margin * fb.A;
    if (!(center - radius > 0.0)) throw BranchError("contour crosses the branch cut of lambda^{-1/2}");
    if (report) *report = ContourReport{center, radius, 0, 0};

    const double inner_tol = std::max(1e-2 * tol, 1e-14);
    std::vector<index_t> inner(1, 0);

    // Adds sum_{j in nodes} lambda_j^{-1/2} rho e^{i theta_j} (lambda_j - S)^{-1} f.
    auto node_sum = [&](index_t n, index_t first, index_t stride) {
        std::vector<index_t> ids;
        for (index_t j = first; j < n; j += stride) ids.push_back(j);
        std::vector<Signal> parts(ids.size(), Signal(f.grid()));
        std::vector<index_t> its(ids.size(), 0);
        parallel_for(ids.size(), [&](std::size_t i) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(ids[i]) / static_cast<double>(n);
            const cplx e = std::polar(1.0, theta);
            const cplx lambda = center + radius * e;
            if (!(lambda.real() > 0.0)) throw BranchError("quadrature node left the right half-plane");
            const cplx w = radius * e / std::sqrt(lambda);
            parts[i] = w * solve_resolvent(W, lambda, f, inner_tol, &its[i]);
        });
        Signal acc(f.grid());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            acc += parts[i];
            inner[0] += its[i];
        }
        return acc;
    };

    index_t n = std::max<index_t>(opt.min_nodes, 2);
    Signal sum = node_sum(n, 0, 1);
    Signal est = (1.0 / static_cast<double>(n)) * sum;
    while (true) {
        if (2 * n > opt.max_nodes)
            throw ConvergenceError("contour quadrature did not converge within " + std::to_string(opt.max_nodes) +
                                   " nodes");
        sum += node_sum(2 * n, 1, 2);
        n *= 2;
        Signal next = (1.0 / static_cast<double>(n)) * sum;
        const double change = relative_error(next, est);
        est = std::move(next);
        if (change < tol) break;
    }
    if (report) {
        report->nodes = n;
        report->inner_iterations = inner[0];
    }
    return est;
}

inline Signal inverse_sqrt_apply(const WalnutCoeffs& W, const Signal& f, SqrtMethod method, double tol = 1e-10,
                                 ContourReport* report = nullptr) {
    require_same_grid(f.grid(), W.lattice().grid());
    if (method == SqrtMethod::dense) {
        const DenseSpectrum spec(frame_matrix(W));
        if (spec.bounds.not_a_frame) throw NotAFrameError("lower frame bound vanishes");
        return to_signal(spec.function([](double l) { return cplx(1.0 / std::sqrt(l)); }) * to_vector(f), f.grid());
    }
    const FrameBounds fb = frame_bounds(W, BoundsMethod::power_iteration);
    return inverse_sqrt_contour(W, fb, f, tol, {}, report);
}

/// Canonical tight window S^{-1/2} g.
inline Signal tight_window(const Signal& g, const GaborLattice& lat, SqrtMethod method, double tol = 1e-10,
                           ContourReport* report = nullptr) {
    return inverse_sqrt_apply(walnut_coefficients(g, lat), g, method, tol, report);
}

// ── Reconstruction ──────────────────────────────────────────────────────────

/// Worst relative residual of both reconstruction formulas over random inputs.
inline double verify_reconstruction(const Signal& g, const Signal& gd, const GaborLattice& lat, index_t trials,
                                    std::uint64_t seed = 1) {
    require_same_grid(g.grid(), gd.grid());
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (index_t t = 0; t < trials; ++t) {
        const Signal f = random_signal(lat.grid(), rng);
        worst = std::max(worst, relative_error(synthesis(g, lat, analysis(gd, lat, f)), f));
        worst = std::max(worst, relative_error(synthesis(gd, lat, analysis(g, lat, f)), f));
    }
    return worst;
}

} // namespace gw
