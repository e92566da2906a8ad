#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace pfopt {

/// Thread count resolution: explicit argument, else PFOPT_THREADS, else
/// hardware concurrency.
inline unsigned resolve_threads(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PFOPT_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs fn(i) for i in [0, n) over a shared atomic counter. Work items must
/// write only to their own output slots; results are then independent of
/// the thread count and schedule.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
    const unsigned nt = std::min<std::size_t>(resolve_threads(threads), n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace pfopt
