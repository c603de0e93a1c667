#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace gw {

namespace detail {
inline std::atomic<std::size_t>& thread_cap() {
    static std::atomic<std::size_t> cap{[] {
        if (const char* env = std::getenv("GW_THREADS")) {
            try {
                const long v = std::stol(env);
                if (v >= 1) return static_cast<std::size_t>(v);
            } catch (...) {
            }
        }
        return std::size_t{1};
    }()};
    return cap;
}
} // namespace detail

/// Upper bound on worker threads; initialised from GW_THREADS (default 1).
inline std::size_t max_threads() { return detail::thread_cap().load(); }
inline void set_max_threads(std::size_t n) { detail::thread_cap().store(std::max<std::size_t>(1, n)); }

/// Runs body(i) for i in [0, n).  Each index is visited exactly once; callers
/// write results into per-index slots and reduce in index order afterwards.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t workers = std::min(max_threads(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace gw
