// CSV / JSON serialization of signals and reports.  CSV files are
// comma-separated with a header row; metadata goes on leading "# " lines.

#pragma once

#include "amalgam.hpp"
#include "bracket.hpp"
#include "diagnostics.hpp"
#include "frame_op.hpp"
#include "invert.hpp"

#include <json.hpp>

#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

namespace gw::io {

namespace detail {
struct Precise {
    explicit Precise(std::ostream& os) : os_(os), old_(os.precision()) {
        os_ << std::setprecision(std::numeric_limits<double>::max_digits10);
    }
    ~Precise() { os_.precision(old_); }
    std::ostream& os_;
    std::streamsize old_;
};
} // namespace detail

/// Window file format: one "re im" pair per line.
inline void write_signal(std::ostream& os, const Signal& f) {
    detail::Precise p(os);
    for (const auto& v : f.samples()) os << v.real() << ' ' << v.imag() << '\n';
}

inline void write_csv(std::ostream& os, const AmalgamProfile& prof) {
    detail::Precise p(os);
    os << "n,sup,weight,weighted_sup,cumsum\n";
    for (const auto& e : prof.entries)
        os << e.n << ',' << e.sup << ',' << e.weight << ',' << e.weighted_sup << ',' << e.cumsum << '\n';
}

inline void write_csv(std::ostream& os, const PeriodicVector& v) {
    detail::Precise p(os);
    os << "index,re,im\n";
    for (index_t x = 0; x < v.period; ++x) os << x << ',' << v[x].real() << ',' << v[x].imag() << '\n';
}

inline void write_csv(std::ostream& os, const WalnutCoeffs& W) {
    detail::Precise p(os);
    const auto& lat = W.lattice();
    os << "# factor=" << W.factor() << " a=" << lat.a() << " b=" << lat.b() << " M=" << lat.M() << " L=" << lat.L()
       << '\n';
    os << "r,x,re,im\n";
    for (const auto& e : W.entries())
        for (index_t x = 0; x < e.G.period; ++x) os << e.r << ',' << x << ',' << e.G[x].real() << ',' << e.G[x].imag() << '\n';
}

inline void write_csv(std::ostream& os, const FrameBounds& fb) {
    detail::Precise p(os);
    os << "A,B,method,not_a_frame,iterations\n";
    os << fb.A << ',' << fb.B << ',' << to_string(fb.method) << ',' << (fb.not_a_frame ? 1 : 0) << ',' << fb.iterations
       << '\n';
}

inline void write_csv(std::ostream& os, const SolveReport& rep) {
    detail::Precise p(os);
    os << "# method=" << to_string(rep.method) << " iterations=" << rep.iterations << '\n';
    os << "iteration,residual\n";
    for (std::size_t i = 0; i < rep.residuals.size(); ++i) os << i + 1 << ',' << rep.residuals[i] << '\n';
}

inline void write_csv(std::ostream& os, const SummabilityReport& rep) {
    detail::Precise p(os);
    os << "# lattice=" << rep.lattice << " weight=" << rep.weight << '\n';
    os << "r,sup,weight,product,cumsum\n";
    for (const auto& e : rep.per_r)
        os << e.r << ',' << e.sup << ',' << e.weight << ',' << e.product << ',' << e.cumsum << '\n';
}

inline void write_csv(std::ostream& os, const IdentityResidual& res) {
    detail::Precise p(os);
    os << "max_abs_error,worst_k,worst_x\n" << res.max_abs_error << ',' << res.worst_k << ',' << res.worst_x << '\n';
}

inline void write_csv(std::ostream& os, const ConvestEstimate& est) {
    detail::Precise p(os);
    os << "lhs,rhs\n" << est.lhs << ',' << est.rhs << '\n';
}

inline nlohmann::json to_json(const SummabilityReport& rep) {
    nlohmann::json per_r = nlohmann::json::array();
    for (const auto& e : rep.per_r)
        per_r.push_back({{"r", e.r}, {"sup", e.sup}, {"weight", e.weight}, {"product", e.product}, {"cumsum", e.cumsum}});
    nlohmann::json j{{"lattice", rep.lattice}, {"weight", rep.weight}, {"per_r", per_r}, {"weighted_sum", rep.weighted_sum}};
    if (!std::isnan(rep.oracle_deviation)) j["oracle_deviation"] = rep.oracle_deviation;
    return j;
}

} // namespace gw::io
