/*
 * amalgam.hpp: weighted Wiener amalgam norms W(L^inf, l^1_nu).
 *
 *   ||f|| = sum_n  sup_{x in block n} |f(x)| * nu(n)
 *
 * Blocks are half-open, aligned at sample 0 and never wrap.  Block indices
 * are reported as signed representatives in (-P/2, P/2] where P = L/block_len.
 */

#pragma once

#include "core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace gw {

struct AmalgamEntry {
    index_t n;           // signed block index
    double sup;          // max |f| over the block
    double weight;       // nu(n)
    double weighted_sup; // sup * nu(n)
    double cumsum;       // running total in profile order
};

/// Per-block sups in order of increasing |n| (positive first) with running
/// weighted sums; the last cumulative sum is the amalgam norm.
struct AmalgamProfile {
    index_t block_len = 0;
    std::vector<AmalgamEntry> entries;

    double norm() const { return entries.empty() ? 0.0 : entries.back().cumsum; }

    /// Cumulative weighted sum over blocks with |n| <= radius.
    double partial_sum(index_t radius) const {
        double total = 0.0;
        for (const auto& e : entries) {
            if (std::abs(e.n) > radius) break;
            total = e.cumsum;
        }
        return total;
    }
};

namespace detail {
inline void require_block(const Grid& grid, index_t block_len) {
    if (block_len < 1) throw DomainError("block length must be positive");
    if (grid.L() % block_len != 0)
        throw DivisibilityError("block length " + std::to_string(block_len) + " does not divide L=" +
                                std::to_string(grid.L()));
}
} // namespace detail

/// sup |f| on each block, indexed by unsigned block position 0..P-1.
inline std::vector<double> block_sups(const Signal& f, index_t block_len) {
    detail::require_block(f.grid(), block_len);
    const index_t P = f.size() / block_len;
    std::vector<double> sups(static_cast<std::size_t>(P), 0.0);
    for (index_t j = 0; j < f.size(); ++j) {
        auto& s = sups[static_cast<std::size_t>(j / block_len)];
        s = std::max(s, std::abs(f[j]));
    }
    return sups;
}

inline AmalgamProfile amalgam_profile(const Signal& f, index_t block_len, const Weight& w) {
    const auto sups = block_sups(f, block_len);
    const auto P = static_cast<index_t>(sups.size());
    AmalgamProfile prof;
    prof.block_len = block_len;
    prof.entries.reserve(sups.size());
    double cum = 0.0;
    for (index_t n : signed_order(P)) {
        const double sup = sups[static_cast<std::size_t>(wrap(n, P))];
        const double nu = w(n);
        cum += sup * nu;
        prof.entries.push_back({n, sup, nu, sup * nu, cum});
    }
    return prof;
}

inline double amalgam_norm(const Signal& f, index_t block_len, const Weight& w) {
    return amalgam_profile(f, block_len, w).norm();
}

struct EmbeddingNorms {
    double amalgam;
    double l2;   // sqrt((1/s) sum |f|^2)
    double linf;
    /// sqrt(block_len / s): l2 <= l2_bound * amalgam whenever nu >= 1.
    double l2_bound;
};

inline EmbeddingNorms embedding_check(const Signal& f, index_t block_len, const Weight& w) {
    EmbeddingNorms out{};
    out.amalgam = amalgam_norm(f, block_len, w);
    double acc = 0.0;
    for (const auto& v : f.samples()) acc += std::norm(v);
    const double s = static_cast<double>(f.grid().s());
    out.l2 = std::sqrt(acc / s);
    out.linf = sup_norm(f);
    out.l2_bound = std::sqrt(static_cast<double>(block_len) / s);
    return out;
}

} // namespace gw
