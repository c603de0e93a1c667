// gabor-walnut: build a Gabor system from a config file, run one analysis,
// write CSV/JSON reports and SVG plots into --out.
//
// Exit codes: 0 ok, 2 config/validation, 3 not a frame, 4 contract
// violation, 5 convergence failure.

#include "run_config.hpp"
#include "svg_plot.hpp"

#include <gabor_walnut/gabor_walnut.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using gw::index_t;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_not_frame = 3;
constexpr int exit_contract = 4;
constexpr int exit_convergence = 5;

constexpr std::uint64_t default_seed = 20240601;

struct ContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Args {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

class Context {
public:
    Context(const Args& args, cli::RunConfig cfg) : cfg_(std::move(cfg)), out_(args.out) {
        fs::create_directories(out_);
        seed_ = args.seed ? *args.seed : static_cast<std::uint64_t>(cfg_.integer("options.seed", default_seed));
        tol_override_ = args.tol;
    }

    const cli::RunConfig& cfg() const { return cfg_; }
    std::uint64_t seed() const { return seed_; }
    double tol(double fallback) const {
        const double t = tol_override_ ? *tol_override_ : cfg_.real("options.tol", fallback);
        if (!(t > 0.0)) throw gw::DomainError("tolerance must be positive");
        return t;
    }
    index_t trials(index_t fallback) const {
        const index_t t = cfg_.integer("options.trials", fallback);
        if (t < 1) throw gw::DomainError("options.trials must be >= 1");
        return t;
    }

    std::ofstream open(const std::string& name) const {
        std::ofstream os(out_ / name);
        if (!os) throw gw::ParseError("cannot write " + (out_ / name).string());
        return os;
    }
    void write_json(const std::string& name, const json& j) const { open(name) << j.dump(2) << '\n'; }
    fs::path path(const std::string& name) const { return out_ / name; }

private:
    cli::RunConfig cfg_;
    fs::path out_;
    std::uint64_t seed_ = default_seed;
    std::optional<double> tol_override_;
};

json lattice_json(const gw::GaborLattice& lat) {
    return {{"L", lat.L()},         {"s", lat.grid().s()},          {"a", lat.a()},
            {"b", lat.b()},         {"M", lat.M()},                 {"alpha", lat.alpha()},
            {"beta", lat.beta()},   {"redundancy", lat.redundancy()}, {"factor", lat.walnut_factor()}};
}

json bounds_json(const gw::FrameBounds& fb) {
    return {{"A", fb.A},
            {"B", fb.B},
            {"method", gw::to_string(fb.method)},
            {"not_a_frame", fb.not_a_frame},
            {"iterations", fb.iterations}};
}

gw::BoundsMethod bounds_method(const Context& ctx) {
    const std::string m = ctx.cfg().text("options.bounds", "power_iteration");
    if (m == "power_iteration") return gw::BoundsMethod::power_iteration;
    if (m == "dense") return gw::BoundsMethod::dense;
    throw gw::ParseError("config: unknown options.bounds '" + m + "'");
}

gw::SolveMethod solve_method(const Context& ctx) {
    const std::string m = ctx.cfg().text("options.solver", "cg");
    if (m == "cg") return gw::SolveMethod::cg;
    if (m == "richardson") return gw::SolveMethod::richardson;
    if (m == "dense") return gw::SolveMethod::dense;
    throw gw::ParseError("config: unknown options.solver '" + m + "'");
}

gw::SqrtMethod sqrt_method(const Context& ctx) {
    const std::string m = ctx.cfg().text("options.sqrt", "contour");
    if (m == "contour") return gw::SqrtMethod::contour;
    if (m == "dense") return gw::SqrtMethod::dense;
    throw gw::ParseError("config: unknown options.sqrt '" + m + "'");
}

/// Sup norms of the multipliers against r, sorted by r.
plot::Series walnut_series(const gw::WalnutCoeffs& W, const std::string& label) {
    std::vector<std::pair<index_t, double>> pts;
    for (const auto& e : W.entries()) pts.emplace_back(e.r, e.G.sup_norm());
    std::sort(pts.begin(), pts.end());
    plot::Series s{label, {}, {}};
    for (const auto& [r, v] : pts) {
        s.x.push_back(static_cast<double>(r));
        s.y.push_back(v);
    }
    return s;
}

void write_walnut_norms(std::ostream& os, const gw::WalnutCoeffs& W) {
    os.precision(17);
    os << "r,sup\n";
    for (const auto& e : W.entries()) os << e.r << ',' << e.G.sup_norm() << '\n';
}

/// Summability report of the multipliers of a window, with the dense-inverse
/// cross-check when the grid is small enough.
gw::SummabilityReport window_summability(const gw::Signal& window, const gw::Signal& g, const gw::GaborLattice& lat,
                                         const gw::Weight& w, bool against_inverse) {
    const gw::WalnutCoeffs W = gw::walnut_coefficients(window, lat);
    gw::SummabilityReport rep = gw::summability_report(W, w);
    if (against_inverse && lat.L() <= gw::max_dense_size)
        rep.oracle_deviation = gw::max_walnut_deviation(W, gw::inverse_walnut_from_dense(g, lat));
    return rep;
}

plot::Series cumsum_series(const gw::SummabilityReport& rep, const std::string& label) {
    plot::Series s{label, {}, {}};
    for (const auto& e : rep.per_r) {
        s.x.push_back(static_cast<double>(s.x.size()));
        s.y.push_back(e.cumsum);
    }
    return s;
}

// ── analyze ─────────────────────────────────────────────────────────────────

int cmd_analyze(const Context& ctx) {
    const auto in = ctx.cfg().instance();
    const gw::Weight& w = ctx.cfg().weight();
    const gw::WalnutCoeffs W = gw::walnut_coefficients(in.g, in.lat);
    const gw::FrameBounds fb = gw::frame_bounds(W, bounds_method(ctx));

    {
        auto os = ctx.open("bounds.csv");
        gw::io::write_csv(os, fb);
    }
    {
        auto os = ctx.open("walnut.csv");
        gw::io::write_csv(os, W);
    }
    {
        auto os = ctx.open("walnut_norms.csv");
        write_walnut_norms(os, W);
    }
    const gw::AmalgamProfile prof = gw::amalgam_profile(in.g, in.lat.a(), w);
    {
        auto os = ctx.open("amalgam.csv");
        gw::io::write_csv(os, prof);
    }

    const auto emb = gw::embedding_check(in.g, in.lat.a(), w);
    const double weighted = gw::walnut_weighted_sum(W, w);
    const double gnorm = emb.amalgam;
    const auto adm = gw::check_admissible(w, 64, 16);
    json grs = json::array();
    for (const auto& s : adm.grs_ratios) grs.push_back({{"n", s.n}, {"k", s.k}, {"ratio", s.ratio}});

    ctx.write_json("analyze.json",
                   {{"lattice", lattice_json(in.lat)},
                    {"window", in.window_desc},
                    {"weight", w.describe()},
                    {"bounds", bounds_json(fb)},
                    {"gershgorin", gw::gershgorin_bound(W)},
                    {"amalgam", {{"norm", emb.amalgam}, {"l2", emb.l2}, {"linf", emb.linf}, {"l2_bound", emb.l2_bound}}},
                    {"walnut_weighted_sum", weighted},
                    {"walnut_ratio", gnorm > 0.0 ? json(weighted / (gnorm * gnorm)) : json(nullptr)},
                    {"admissibility",
                     {{"is_even", adm.is_even},
                      {"submultiplicative_ok", adm.submultiplicative_ok},
                      {"lower_bound_ok", adm.lower_bound_ok},
                      {"grs_ratios", grs}}}});

    plot::write_svg(ctx.path("walnut_decay.svg"),
                    {"Walnut multipliers", "r", "sup |G_r|", true, {walnut_series(W, "sup |G_r|")}});
    std::cout << "A=" << fb.A << " B=" << fb.B << (fb.not_a_frame ? " (not a frame)" : "") << '\n';
    return exit_ok;
}

// ── dual / tight ────────────────────────────────────────────────────────────

int cmd_dual(const Context& ctx) {
    const auto in = ctx.cfg().instance();
    const gw::Weight& w = ctx.cfg().weight();
    const double tol = ctx.tol(1e-10);
    const gw::SolveMethod method = solve_method(ctx);
    gw::SolveReport solve;
    const gw::Signal gd = gw::dual_window(in.g, in.lat, method, tol, &solve);

    {
        auto os = ctx.open("dual.txt");
        gw::io::write_signal(os, gd);
    }
    {
        auto os = ctx.open("solver.csv");
        gw::io::write_csv(os, solve);
    }
    const index_t trials = ctx.trials(8);
    const double residual = gw::verify_reconstruction(in.g, gd, in.lat, trials, ctx.seed());
    const auto rep = window_summability(gd, in.g, in.lat, w, true);
    {
        auto os = ctx.open("dual_summability.csv");
        gw::io::write_csv(os, rep);
    }
    ctx.write_json("dual_summability.json", gw::io::to_json(rep));

    json j{{"lattice", lattice_json(in.lat)},
           {"window", in.window_desc},
           {"method", gw::to_string(method)},
           {"tol", tol},
           {"iterations", solve.iterations},
           {"seed", ctx.seed()},
           {"trials", trials},
           {"reconstruction_residual", residual},
           {"amalgam_norm", gw::amalgam_norm(gd, in.lat.a(), w)},
           {"weighted_sum", rep.weighted_sum},
           {"tail_fraction", rep.tail_fraction(in.lat.b() / 4)}};
    if (!std::isnan(rep.oracle_deviation)) j["oracle_deviation"] = rep.oracle_deviation;
    ctx.write_json("dual.json", j);

    plot::write_svg(ctx.path("dual_summability.svg"),
                    {"Weighted multiplier sums of the dual", "entry (increasing |r|)", "cumulative sum", false,
                     {cumsum_series(rep, "sum |G~_r| nu(r)")}});
    std::cout << "reconstruction residual " << residual << '\n';
    return exit_ok;
}

int cmd_tight(const Context& ctx) {
    const auto in = ctx.cfg().instance();
    const gw::Weight& w = ctx.cfg().weight();
    const double tol = ctx.tol(1e-10);
    const gw::SqrtMethod method = sqrt_method(ctx);
    gw::ContourReport contour;
    const gw::Signal gt = gw::tight_window(in.g, in.lat, method, tol, &contour);

    {
        auto os = ctx.open("tight.txt");
        gw::io::write_signal(os, gt);
    }
    const gw::FrameBounds fb = gw::frame_bounds(gt, in.lat, gw::BoundsMethod::power_iteration);
    {
        auto os = ctx.open("tight_bounds.csv");
        gw::io::write_csv(os, fb);
    }
    const index_t trials = ctx.trials(8);
    const double residual = gw::verify_reconstruction(gt, gt, in.lat, trials, ctx.seed());
    const auto rep = window_summability(gt, in.g, in.lat, w, false);
    {
        auto os = ctx.open("tight_summability.csv");
        gw::io::write_csv(os, rep);
    }
    ctx.write_json("tight_summability.json", gw::io::to_json(rep));

    json j{{"lattice", lattice_json(in.lat)},
           {"window", in.window_desc},
           {"method", gw::to_string(method)},
           {"tol", tol},
           {"seed", ctx.seed()},
           {"trials", trials},
           {"reconstruction_residual", residual},
           {"bounds", bounds_json(fb)},
           {"amalgam_norm", gw::amalgam_norm(gt, in.lat.a(), w)},
           {"weighted_sum", rep.weighted_sum}};
    if (method == gw::SqrtMethod::contour)
        j["contour"] = {{"center", contour.center},
                        {"radius", contour.radius},
                        {"nodes", contour.nodes},
                        {"inner_iterations", contour.inner_iterations}};
    ctx.write_json("tight.json", j);

    plot::write_svg(ctx.path("tight_summability.svg"),
                    {"Weighted multiplier sums of the tight window", "entry (increasing |r|)", "cumulative sum", false,
                     {cumsum_series(rep, "sum |G+_r| nu(r)")}});
    std::cout << "tight bounds A=" << fb.A << " B=" << fb.B << '\n';
    return exit_ok;
}

// ── verify ──────────────────────────────────────────────────────────────────

int cmd_verify(const Context& ctx) {
    const auto in = ctx.cfg().instance();
    const gw::Weight& w = ctx.cfg().weight();
    const double tol = ctx.tol(1e-8);
    const std::string dual_kind = ctx.cfg().text("options.dual", "canonical");
    gw::Signal gd(in.grid);
    if (dual_kind == "canonical")
        gd = gw::dual_window(in.g, in.lat, gw::SolveMethod::cg, 1e-13);
    else if (dual_kind == "window")
        gd = in.g;
    else
        throw gw::ParseError("config: unknown options.dual '" + dual_kind + "'");

    const auto res = gw::convo_identity_residual(in.g, gd, in.lat);
    const auto est = gw::estimate_convest(in.g, gd, in.lat, w);
    const index_t trials = ctx.trials(100);
    const auto fb = gw::forbound_check(in.g, in.lat, w, trials, ctx.seed());
    // one relative rounding unit of slack per amalgam evaluation
    const double forbound_limit = (1.0 + fb.eps_align) * (1.0 + 1e-12);

    {
        auto os = ctx.open("identity.csv");
        gw::io::write_csv(os, res);
    }
    {
        auto os = ctx.open("convest.csv");
        gw::io::write_csv(os, est);
    }
    {
        auto os = ctx.open("forbound.csv");
        os.precision(17);
        os << "# seed=" << ctx.seed() << " trials=" << trials << '\n';
        os << "max_ratio,eps_align\n" << fb.max_ratio << ',' << fb.eps_align << '\n';
    }
    const bool identity_ok = res.max_abs_error < tol;
    const bool convest_ok = est.lhs <= est.rhs;
    const bool forbound_ok = fb.max_ratio <= forbound_limit;
    ctx.write_json("verify.json", {{"lattice", lattice_json(in.lat)},
                                   {"window", in.window_desc},
                                   {"dual", dual_kind},
                                   {"weight", w.describe()},
                                   {"tol", tol},
                                   {"seed", ctx.seed()},
                                   {"identity", {{"max_abs_error", res.max_abs_error},
                                                 {"worst_k", res.worst_k},
                                                 {"worst_x", res.worst_x},
                                                 {"ok", identity_ok}}},
                                   {"convest", {{"lhs", est.lhs}, {"rhs", est.rhs}, {"ok", convest_ok}}},
                                   {"forbound", {{"max_ratio", fb.max_ratio},
                                                 {"eps_align", fb.eps_align},
                                                 {"trials", trials},
                                                 {"ok", forbound_ok}}}});
    std::cout << "identity residual " << res.max_abs_error << ", convest " << est.lhs << " <= " << est.rhs
              << ", forbound " << fb.max_ratio << " <= " << forbound_limit << '\n';
    if (!identity_ok)
        throw ContractViolation("identity residual " + std::to_string(res.max_abs_error) + " at k=" +
                                std::to_string(res.worst_k) + ", x=" + std::to_string(res.worst_x));
    if (!convest_ok) throw ContractViolation("norm estimate violated");
    if (!forbound_ok) throw ContractViolation("amalgam bound exceeded");
    return exit_ok;
}

// ── counterexample / conjecture ─────────────────────────────────────────────

/// sum over signed k in (-K/2, K/2] of 2 a_k: two half-unit blocks per unit.
double harmonic_reference(index_t K) {
    double total = 0.0;
    for (index_t k = -((K - 1) / 2); k <= K / 2; ++k) total += 2.0 / (static_cast<double>(std::abs(k)) + 1.0);
    return total;
}

gw::CoefficientRule coefficient_rule(const Context& ctx) {
    const std::string rule = ctx.cfg().text("counterexample.rule", "harmonic");
    if (rule == "harmonic") return gw::CoefficientRule::harmonic();
    if (rule == "zero") return gw::CoefficientRule::custom([](index_t) { return 0.0; });
    throw gw::ParseError("config: unknown counterexample.rule '" + rule + "'");
}

int cmd_counterexample(const Context& ctx) {
    const auto& cfg = ctx.cfg();
    const index_t s = cfg.integer("counterexample.s", 8);
    const index_t K = cfg.integer("counterexample.units", 64);
    const auto rule = coefficient_rule(ctx);
    const gw::Weight& w = cfg.weight();

    auto run = [&](index_t units) {
        const gw::Grid grid = gw::build_grid(units * s, s);
        const gw::Signal h = gw::build_counterexample(rule, grid);
        const gw::Signal g = gw::build_window(gw::window::Characteristic{1.0}, grid);
        return gw::counterexample_report(h, g, gw::remark_lattice(grid), w);
    };

    const auto rep = run(K);
    {
        auto os = ctx.open("profile.csv");
        gw::io::write_csv(os, rep.profile);
    }
    const double reference = harmonic_reference(K);
    ctx.write_json("counterexample.json", {{"units", K},
                                           {"s", s},
                                           {"rule", cfg.text("counterexample.rule", "harmonic")},
                                           {"weight", w.describe()},
                                           {"max_inner", rep.max_inner},
                                           {"worst_m", rep.worst_m},
                                           {"worst_n", rep.worst_n},
                                           {"block_len", rep.profile.block_len},
                                           {"profile_terms", rep.profile.entries.size()},
                                           {"profile_total", rep.profile.norm()},
                                           {"harmonic_reference", reference}});

    // Partial sums of the profile against the same blocks filled with a_k.
    plot::Series got{"amalgam partial sums", {}, {}}, ref{"sum of a_k over the same blocks", {}, {}};
    const index_t P = rep.profile.entries.size() == 0 ? 1 : static_cast<index_t>(rep.profile.entries.size());
    double acc = 0.0;
    for (const auto& e : rep.profile.entries) {
        const index_t unit = gw::signed_index(gw::wrap(e.n, P) / 2, K);
        acc += rule.a(unit) * w(e.n);
        got.x.push_back(static_cast<double>(got.x.size()));
        got.y.push_back(e.cumsum);
        ref.x.push_back(static_cast<double>(ref.x.size()));
        ref.y.push_back(acc);
    }
    plot::write_svg(ctx.path("growth.svg"),
                    {"Counterexample amalgam growth", "blocks included", "cumulative sum", false, {got, ref}});

    const auto sweep = cfg.integer_list("counterexample.units_sweep", {});
    if (!sweep.empty()) {
        auto os = ctx.open("sweep.csv");
        os.precision(17);
        os << "K,max_inner,total,reference\n";
        plot::Series totals{"profile total", {}, {}}, refs{"harmonic reference", {}, {}};
        for (index_t units : sweep) {
            const auto r = run(units);
            os << units << ',' << r.max_inner << ',' << r.profile.norm() << ',' << harmonic_reference(units) << '\n';
            totals.x.push_back(static_cast<double>(units));
            totals.y.push_back(r.profile.norm());
            refs.x.push_back(static_cast<double>(units));
            refs.y.push_back(harmonic_reference(units));
        }
        plot::write_svg(ctx.path("sweep.svg"), {"Profile totals against K", "K", "total", false, {totals, refs}});
    }
    std::cout << "max inner product " << rep.max_inner << ", profile total " << rep.profile.norm() << '\n';
    return exit_ok;
}

int cmd_conjecture(const Context& ctx) {
    const auto in = ctx.cfg().instance();
    const gw::Weight& w = ctx.cfg().weight();
    const gw::Signal gd = gw::dual_window(in.g, in.lat, gw::SolveMethod::cg, ctx.tol(1e-12));
    const auto probe = gw::conjecture_probe(gd, in.lat, w);

    plot::Series alpha{"a-period brackets", {}, {}}, invbeta{"M-period brackets", {}, {}};
    {
        auto os = ctx.open("bracket_alpha.csv");
        os.precision(17);
        os << "r,sup,weight,cumsum\n";
        double cum = 0.0;
        for (index_t r : gw::signed_order(in.lat.b())) {
            const double sup = gw::correlation_G(gd, in.lat, r).sup_norm();
            cum += sup * w(r);
            os << r << ',' << sup << ',' << w(r) << ',' << cum << '\n';
            alpha.x.push_back(static_cast<double>(std::abs(r)));
            alpha.y.push_back(cum);
        }
    }
    {
        auto os = ctx.open("bracket_invbeta.csv");
        os.precision(17);
        os << "n,sup,weight,cumsum\n";
        double cum = 0.0;
        for (index_t n : gw::signed_order(in.lat.time_shifts())) {
            const double sup =
                gw::bracket_product(gd, gw::translate(gd, n * in.lat.a()), in.lat.M()).sup_norm();
            cum += sup * w(n);
            os << n << ',' << sup << ',' << w(n) << ',' << cum << '\n';
            invbeta.x.push_back(static_cast<double>(std::abs(n)));
            invbeta.y.push_back(cum);
        }
    }
    ctx.write_json("conjecture.json",
                   {{"lattice", lattice_json(in.lat)},
                    {"window", in.window_desc},
                    {"weight", w.describe()},
                    {"sum_alpha_blocks", probe.sum_alpha_blocks},
                    {"sum_invbeta_blocks", probe.sum_invbeta_blocks},
                    {"ratio", probe.sum_invbeta_blocks > 0.0 ? json(probe.sum_alpha_blocks / probe.sum_invbeta_blocks)
                                                             : json(nullptr)}});
    plot::write_svg(ctx.path("bracket_sums.svg"),
                    {"Bracket sums of the dual window", "|index|", "cumulative weighted sum", false, {alpha, invbeta}});
    std::cout << "sums " << probe.sum_alpha_blocks << " and " << probe.sum_invbeta_blocks << '\n';
    return exit_ok;
}

// ── bench ───────────────────────────────────────────────────────────────────

index_t exact_sqrt(index_t v, const std::string& what) {
    const auto r = static_cast<index_t>(std::llround(std::sqrt(static_cast<double>(v))));
    if (r * r != v) throw gw::DomainError(what + "=" + std::to_string(v) + " is not a perfect square");
    return r;
}

template <class Fn>
double seconds(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_bench(const Context& ctx) {
    const auto& cfg = ctx.cfg();
    const auto sizes = cfg.integer_list("bench.sizes", {256, 1024, 4096});
    const index_t redundancy = cfg.integer("bench.redundancy", 4);
    const index_t reps = cfg.integer("bench.reps", 3);
    if (reps < 3) throw gw::DomainError("bench.reps must be >= 3");
    if (redundancy < 1) throw gw::DomainError("bench.redundancy must be >= 1");
    const double gate = 1e-10;

    auto os = ctx.open("bench.csv");
    os.precision(9);
    os << "# seed=" << ctx.seed() << " reps=" << reps << " redundancy=" << redundancy << '\n';
    os << "L,a,b,t_direct,t_walnut,speedup\n";
    plot::Series direct{"direct", {}, {}}, walnut{"Walnut", {}, {}};
    std::mt19937_64 rng(ctx.seed());
    for (index_t L : sizes) {
        if (L % redundancy != 0) throw gw::DivisibilityError("redundancy does not divide L=" + std::to_string(L));
        const index_t s = exact_sqrt(L, "L");
        const index_t ab = exact_sqrt(L / redundancy, "L/redundancy");
        const gw::Grid grid = gw::build_grid(L, s);
        const gw::GaborLattice lat(grid, ab, ab);
        const gw::Signal g =
            gw::build_window(gw::window::Gaussian{1.0, static_cast<double>(grid.units()) / 2.0}, grid);
        const gw::WalnutCoeffs W = gw::walnut_coefficients(g, lat);

        std::vector<double> td, tw;
        for (index_t rep = 0; rep < reps; ++rep) {
            const gw::Signal f = gw::random_signal(grid, rng);
            gw::Signal x(grid), y(grid);
            td.push_back(seconds([&] { x = gw::frame_operator_direct(g, lat, f); }));
            tw.push_back(seconds([&] { y = gw::frame_operator_walnut(W, f); }));
            const double err = gw::relative_error(y, x);
            if (!(err <= gate))
                throw ContractViolation("Walnut and direct differ by " + std::to_string(err) + " at L=" +
                                        std::to_string(L));
        }
        const double d = median(td), w = median(tw);
        const double speedup = w > 0.0 ? d / w : std::numeric_limits<double>::infinity();
        os << L << ',' << ab << ',' << ab << ',' << d << ',' << w << ',' << speedup << '\n';
        direct.x.push_back(static_cast<double>(L));
        direct.y.push_back(d);
        walnut.x.push_back(static_cast<double>(L));
        walnut.y.push_back(w);
        std::cout << "L=" << L << " direct " << d << " s, Walnut " << w << " s, speedup " << speedup << '\n';
    }
    plot::write_svg(ctx.path("bench.svg"), {"Frame operator application", "L", "median seconds", true, {direct, walnut}});
    return exit_ok;
}

int report(const char* kind, const std::string& what, int code) {
    std::cerr << kind << ": " << what << '\n';
    return code;
}

/// Library errors already carry their kind as a message prefix.
int report(const gw::Error& e, int code) {
    std::cerr << e.what() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Gabor frames in Walnut form: frame bounds, dual and tight windows, identity checks"};
    app.require_subcommand(1, 1);
    Args args;

    using Handler = int (*)(const Context&);
    const std::vector<std::tuple<std::string, std::string, Handler>> commands{
        {"analyze", "frame bounds, Walnut multipliers and amalgam norms of the window", cmd_analyze},
        {"dual", "canonical dual window and its summability report", cmd_dual},
        {"tight", "canonical tight window and its summability report", cmd_tight},
        {"verify", "mixed-bracket identity, norm estimate and amalgam bound", cmd_verify},
        {"counterexample", "non-canonical dual outside the amalgam space", cmd_counterexample},
        {"conjecture", "both bracket sums of the canonical dual", cmd_conjecture},
        {"bench", "Walnut against direct application over a sweep of L", cmd_bench},
    };
    Handler chosen = nullptr;
    for (const auto& [name, help, handler] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", args.config, "configuration file")->required();
        sub->add_option("--out", args.out, "output directory")->capture_default_str();
        sub->add_option("--seed", args.seed, "seed for random trials (overrides options.seed)");
        sub->add_option("--tol", args.tol, "tolerance (overrides options.tol)");
        sub->callback([&chosen, h = handler] { chosen = h; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (!fs::exists(args.config)) throw gw::ParseError("config file '" + args.config + "' not found");
        const Context ctx(args, cli::RunConfig::load(args.config));
        return chosen(ctx);
    } catch (const gw::NotAFrameError& e) {
        return report(e, exit_not_frame);
    } catch (const gw::ConvergenceError& e) {
        return report(e, exit_convergence);
    } catch (const gw::BranchError& e) {
        return report(e, exit_contract);
    } catch (const gw::Error& e) {
        return report(e, exit_config);
    } catch (const ContractViolation& e) {
        return report("ContractViolation", e.what(), exit_contract);
    } catch (const fs::filesystem_error& e) {
        return report("IOError", e.what(), exit_config);
    } catch (const std::exception& e) {
        return report("InternalError", e.what(), exit_contract);
    }
}
