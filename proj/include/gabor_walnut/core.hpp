/*
 * core.hpp: finite cyclic signal model for discrete Gabor analysis.
 *
 * A signal lives on Z_L with s samples per unit length, so the grid covers
 * K = L/s unit intervals.  Continuum parameters map onto integer counts:
 *
 *   time step      alpha = a / s          (a samples)
 *   frequency step beta  = b * s / L      (b DFT bins)
 *   1/beta stride  M     = L / b          (samples)
 *
 * Time-frequency shifts act as (M_m T_n f)(j) = exp(2 pi i m j / L) f(j - n),
 * and inner products carry the 1/s Riemann factor so that discrete values
 * reproduce continuum integrals on piecewise-constant test functions.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gw {

using cplx = std::complex<double>;
using index_t = std::ptrdiff_t;

// ── Errors ──────────────────────────────────────────────────────────────────

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define GW_DEFINE_ERROR(Name)                                                  \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    };

GW_DEFINE_ERROR(DivisibilityError)
GW_DEFINE_ERROR(DomainError)
GW_DEFINE_ERROR(GridMismatchError)
GW_DEFINE_ERROR(ParseError)
GW_DEFINE_ERROR(LatticeError)
GW_DEFINE_ERROR(DimensionError)
GW_DEFINE_ERROR(SizeError)
GW_DEFINE_ERROR(ConvergenceError)
GW_DEFINE_ERROR(NotAFrameError)
GW_DEFINE_ERROR(BranchError)

#undef GW_DEFINE_ERROR

// ── Index helpers ───────────────────────────────────────────────────────────

/// Representative of i in [0, n).
constexpr index_t wrap(index_t i, index_t n) noexcept {
    const index_t r = i % n;
    return r < 0 ? r + n : r;
}

/// Signed representative of i in (-n/2, n/2].
constexpr index_t signed_index(index_t i, index_t n) noexcept {
    const index_t r = wrap(i, n);
    return 2 * r <= n ? r : r - n;
}

/// All signed indices of a cyclic range of length n, ordered by increasing |k|
/// with the positive representative first: 0, 1, -1, 2, -2, ...
inline std::vector<index_t> signed_order(index_t n) {
    std::vector<index_t> out;
    out.reserve(static_cast<std::size_t>(n));
    out.push_back(0);
    for (index_t k = 1; static_cast<index_t>(out.size()) < n; ++k) {
        out.push_back(k);
        if (static_cast<index_t>(out.size()) < n) out.push_back(-k);
    }
    return out;
}

/// exp(2 pi i k / n), exact at multiples of a quarter turn.
inline cplx unit_root(index_t k, index_t n) {
    index_t r = wrap(k, n);
    if ((4 * r) % n == 0) {
        switch ((4 * r) / n) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    if (2 * r > n) r -= n;
    const double t = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(t), std::sin(t)};
}

/// Table of exp(2 pi i k / n) for k = 0..n-1.
inline std::vector<cplx> root_table(index_t n) {
    std::vector<cplx> t(static_cast<std::size_t>(n));
    for (index_t k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = unit_root(k, n);
    return t;
}

// ── Grid and signals ────────────────────────────────────────────────────────

class Grid {
public:
    Grid(index_t length, index_t samples_per_unit) : L_(length), s_(samples_per_unit) {
        if (L_ < 2) throw DomainError("grid length L=" + std::to_string(L_) + " must be >= 2");
        if (s_ < 1) throw DomainError("samples per unit s=" + std::to_string(s_) + " must be >= 1");
        if (L_ % s_ != 0)
            throw DivisibilityError("s=" + std::to_string(s_) + " does not divide L=" + std::to_string(L_));
    }

    index_t L() const noexcept { return L_; }
    index_t s() const noexcept { return s_; }
    /// Number of unit intervals covered.
    index_t units() const noexcept { return L_ / s_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    index_t L_;
    index_t s_;
};

inline Grid build_grid(index_t L, index_t s) { return Grid(L, s); }

class Signal {
public:
    explicit Signal(Grid grid) : grid_(grid), samples_(static_cast<std::size_t>(grid.L())) {}
    Signal(Grid grid, std::vector<cplx> samples) : grid_(grid), samples_(std::move(samples)) {
        if (static_cast<index_t>(samples_.size()) != grid_.L())
            throw DimensionError("signal has " + std::to_string(samples_.size()) +
                                 " samples, grid expects " + std::to_string(grid_.L()));
    }

    const Grid& grid() const noexcept { return grid_; }
    index_t size() const noexcept { return grid_.L(); }

    cplx& operator[](index_t j) { return samples_[static_cast<std::size_t>(j)]; }
    const cplx& operator[](index_t j) const { return samples_[static_cast<std::size_t>(j)]; }

    const std::vector<cplx>& samples() const noexcept { return samples_; }
    std::vector<cplx>& samples() noexcept { return samples_; }

    Signal& operator+=(const Signal& o);
    Signal& operator-=(const Signal& o);
    Signal& operator*=(cplx c) {
        for (auto& v : samples_) v *= c;
        return *this;
    }

private:
    Grid grid_;
    std::vector<cplx> samples_;
};

inline void require_same_grid(const Grid& x, const Grid& y) {
    if (!(x == y))
        throw GridMismatchError("grid {" + std::to_string(x.L()) + "," + std::to_string(x.s()) +
                                "} vs {" + std::to_string(y.L()) + "," + std::to_string(y.s()) + "}");
}

inline Signal& Signal::operator+=(const Signal& o) {
    require_same_grid(grid_, o.grid_);
    for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += o.samples_[j];
    return *this;
}

inline Signal& Signal::operator-=(const Signal& o) {
    require_same_grid(grid_, o.grid_);
    for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] -= o.samples_[j];
    return *this;
}

inline Signal operator+(Signal x, const Signal& y) { return x += y; }
inline Signal operator-(Signal x, const Signal& y) { return x -= y; }
inline Signal operator*(cplx c, Signal x) { return x *= c; }
inline Signal operator*(Signal x, cplx c) { return x *= c; }

inline Signal delta(const Grid& grid, index_t j) {
    Signal d(grid);
    d[wrap(j, grid.L())] = 1.0;
    return d;
}

/// Plain Euclidean norm of the sample vector (no 1/s factor).
inline double l2_samples(const Signal& f) {
    double acc = 0.0;
    for (const auto& v : f.samples()) acc += std::norm(v);
    return std::sqrt(acc);
}

inline double sup_norm(const Signal& f) {
    double m = 0.0;
    for (const auto& v : f.samples()) m = std::max(m, std::abs(v));
    return m;
}

/// ||x - y|| / ||y|| on raw samples; absolute when y vanishes.
inline double relative_error(const Signal& x, const Signal& y) {
    require_same_grid(x.grid(), y.grid());
    const double ref = l2_samples(y);
    const double diff = l2_samples(x - y);
    return ref > 0.0 ? diff / ref : diff;
}

/// Samples with independent standard normal real and imaginary parts.
inline Signal random_signal(const Grid& grid, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Signal f(grid);
    for (index_t j = 0; j < grid.L(); ++j) {
        const double re = nd(rng);
        f[j] = cplx(re, nd(rng));
    }
    return f;
}

// ── Windows ─────────────────────────────────────────────────────────────────

namespace window {
/// chi on [0, length) units.
struct Characteristic {
    double length = 1.0;
};
/// exp(-pi ((x - center) / width)^2).
struct Gaussian {
    double width = 1.0;
    double center = 0.0;
};
/// Triangle of unit support centred at `center`.
struct Hat {
    double center = 0.5;
};
/// Samples read from a text file, one "re im" pair per line.
struct File {
    std::string path;
};
} // namespace window

using WindowSpec = std::variant<window::Characteristic, window::Gaussian, window::Hat, window::File>;

Signal read_signal(std::istream& in, const Grid& grid);

inline Signal read_signal_file(const std::string& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open window file '" + path + "'");
    return read_signal(in, grid);
}

inline Signal read_signal(std::istream& in, const Grid& grid) {
    std::vector<cplx> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        double re = 0.0, im = 0.0;
        std::string extra;
        if (!(ls >> re >> im) || (ls >> extra))
            throw ParseError("line " + std::to_string(lineno) + ": expected \"re im\", got '" + line + "'");
        samples.emplace_back(re, im);
    }
    if (static_cast<index_t>(samples.size()) != grid.L())
        throw ParseError("window file has " + std::to_string(samples.size()) + " samples, expected " +
                         std::to_string(grid.L()));
    return Signal(grid, std::move(samples));
}

inline Signal build_window(const WindowSpec& spec, const Grid& grid) {
    const index_t L = grid.L();
    const double s = static_cast<double>(grid.s());
    const double K = static_cast<double>(grid.units());
    Signal g(grid);

    if (const auto* c = std::get_if<window::Characteristic>(&spec)) {
        if (!(c->length > 0.0)) throw DomainError("characteristic window length must be positive");
        const double n = c->length * s;
        const auto count = static_cast<index_t>(std::llround(n));
        if (std::abs(n - static_cast<double>(count)) > 1e-9)
            throw DomainError("characteristic length does not land on a sample boundary");
        if (count > L)
            throw DomainError("support " + std::to_string(count) + " samples exceeds grid length " +
                              std::to_string(L));
        for (index_t j = 0; j < count; ++j) g[j] = 1.0;
    } else if (const auto* ga = std::get_if<window::Gaussian>(&spec)) {
        if (!(ga->width > 0.0)) throw DomainError("gaussian width must be positive");
        for (index_t j = 0; j < L; ++j) {
            const double u = (static_cast<double>(j) / s - ga->center) / ga->width;
            g[j] = std::exp(-std::numbers::pi * u * u);
        }
    } else if (const auto* h = std::get_if<window::Hat>(&spec)) {
        if (h->center - 0.5 < 0.0 || h->center + 0.5 > K)
            throw DomainError("hat support exceeds grid extent");
        for (index_t j = 0; j < L; ++j) {
            const double x = static_cast<double>(j) / s;
            g[j] = std::max(0.0, 1.0 - 2.0 * std::abs(x - h->center));
        }
    } else {
        g = read_signal_file(std::get<window::File>(spec).path, grid);
    }
    return g;
}

// ── Time-frequency shifts and inner products ────────────────────────────────

/// (M_m T_n f)(j) = exp(2 pi i m j / L) f(j - n); translation first.
inline Signal tf_shift(const Signal& f, index_t n, index_t m) {
    const index_t L = f.size();
    Signal out(f.grid());
    const index_t mm = wrap(m, L);
    for (index_t j = 0; j < L; ++j) {
        const cplx v = f[wrap(j - n, L)];
        out[j] = mm == 0 ? v : unit_root(mm * j, L) * v;
    }
    return out;
}

inline Signal translate(const Signal& f, index_t n) { return tf_shift(f, n, 0); }
inline Signal modulate(const Signal& f, index_t m) { return tf_shift(f, 0, m); }

/// (1/s) sum_j f(j) conj(h(j)).
inline cplx inner_product(const Signal& f, const Signal& h) {
    require_same_grid(f.grid(), h.grid());
    cplx acc = 0.0;
    for (index_t j = 0; j < f.size(); ++j) acc += f[j] * std::conj(h[j]);
    return acc / static_cast<double>(f.grid().s());
}

// ── Lattice ─────────────────────────────────────────────────────────────────

class GaborLattice {
public:
    GaborLattice(Grid grid, index_t a, index_t b) : grid_(grid), a_(a), b_(b) {
        if (a_ < 1 || b_ < 1) throw DomainError("lattice steps must be positive");
        if (grid_.L() % a_ != 0)
            throw DivisibilityError("a=" + std::to_string(a_) + " does not divide L=" + std::to_string(grid_.L()));
        if (grid_.L() % b_ != 0)
            throw DivisibilityError("b=" + std::to_string(b_) + " does not divide L=" + std::to_string(grid_.L()));
    }

    const Grid& grid() const noexcept { return grid_; }
    index_t a() const noexcept { return a_; }
    index_t b() const noexcept { return b_; }
    index_t L() const noexcept { return grid_.L(); }

    /// Translation stride 1/beta in samples.
    index_t M() const noexcept { return grid_.L() / b_; }
    index_t time_shifts() const noexcept { return grid_.L() / a_; }
    index_t modulations() const noexcept { return grid_.L() / b_; }

    double alpha() const noexcept { return static_cast<double>(a_) / static_cast<double>(grid_.s()); }
    double beta() const noexcept {
        return static_cast<double>(b_) * static_cast<double>(grid_.s()) / static_cast<double>(grid_.L());
    }
    double redundancy() const noexcept {
        return static_cast<double>(grid_.L()) / static_cast<double>(a_ * b_);
    }
    /// Discrete counterpart of beta^{-1}: M / s.
    double walnut_factor() const noexcept {
        return static_cast<double>(M()) / static_cast<double>(grid_.s());
    }

    /// g_{m,n} = M_{m b} T_{n a} g.
    Signal atom(const Signal& g, index_t m, index_t n) const { return tf_shift(g, n * a_, m * b_); }

    friend bool operator==(const GaborLattice&, const GaborLattice&) = default;

private:
    Grid grid_;
    index_t a_;
    index_t b_;
};

// ── Weights ─────────────────────────────────────────────────────────────────

class Weight {
public:
    enum class Kind { constant, polynomial, subexponential, custom };

    static Weight constant() { return Weight(Kind::constant, 0.0, 0.0, {}, "constant"); }
    static Weight polynomial(double t) {
        if (t < 0.0) throw DomainError("polynomial weight exponent must be >= 0");
        return Weight(Kind::polynomial, t, 0.0, {}, "polynomial");
    }
    static Weight subexponential(double c, double gamma) {
        if (!(c > 0.0) || !(gamma > 0.0 && gamma < 1.0))
            throw DomainError("subexponential weight needs c > 0 and 0 < gamma < 1");
        return Weight(Kind::subexponential, c, gamma, {}, "subexponential");
    }
    /// Arbitrary rule; admissibility is not assumed.
    static Weight custom(std::string name, std::function<double(index_t)> rule) {
        return Weight(Kind::custom, 0.0, 0.0, std::move(rule), std::move(name));
    }

    double operator()(index_t n) const {
        const double an = std::abs(static_cast<double>(n));
        switch (kind_) {
        case Kind::constant: return 1.0;
        case Kind::polynomial: return std::pow(1.0 + an, p1_);
        case Kind::subexponential: return std::exp(p1_ * std::pow(an, p2_));
        case Kind::custom: return rule_(n);
        }
        return 1.0;
    }

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    /// Exponent t (polynomial) or c (subexponential).
    double first_param() const noexcept { return p1_; }
    /// gamma (subexponential).
    double second_param() const noexcept { return p2_; }

    std::string describe() const {
        std::ostringstream os;
        switch (kind_) {
        case Kind::constant: os << "constant"; break;
        case Kind::polynomial: os << "polynomial(t=" << p1_ << ")"; break;
        case Kind::subexponential: os << "subexponential(c=" << p1_ << ",gamma=" << p2_ << ")"; break;
        case Kind::custom: os << "custom(" << name_ << ")"; break;
        }
        return os.str();
    }

private:
    Weight(Kind k, double p1, double p2, std::function<double(index_t)> rule, std::string name)
        : kind_(k), p1_(p1), p2_(p2), rule_(std::move(rule)), name_(std::move(name)) {}

    Kind kind_;
    double p1_;
    double p2_;
    std::function<double(index_t)> rule_;
    std::string name_;
};

struct GrsSample {
    index_t n;
    index_t k;
    double ratio; // k^{-1} ln nu(k n)
};

struct AdmissibilityReport {
    bool is_even = true;
    bool submultiplicative_ok = true;
    bool lower_bound_ok = true; // nu >= 1 on the checked range
    std::vector<GrsSample> grs_ratios;
};

/// Evenness and submultiplicativity are checked exhaustively for |k|, |n| <= n_check.
/// The growth condition is a limit, so only the trend k^{-1} ln nu(k n),
/// k = 1..k_grs, n = 1..3, is reported.
inline AdmissibilityReport check_admissible(const Weight& w, index_t n_check, index_t k_grs) {
    if (n_check < 1) throw DomainError("N_check must be >= 1");
    if (k_grs < 2) throw DomainError("K_grs must be >= 2");
    constexpr double rounding = 1e-12;
    AdmissibilityReport rep;
    for (index_t n = -n_check; n <= n_check; ++n) {
        const double v = w(n);
        if (v < 1.0) rep.lower_bound_ok = false;
        if (v != w(-n)) rep.is_even = false;
        for (index_t k = -n_check; k <= n_check; ++k)
            if (w(k + n) > w(k) * v * (1.0 + rounding)) rep.submultiplicative_ok = false;
    }
    for (index_t n = 1; n <= 3; ++n)
        for (index_t k = 1; k <= k_grs; ++k)
            rep.grs_ratios.push_back({n, k, std::log(w(k * n)) / static_cast<double>(k)});
    return rep;
}

} // namespace gw
