#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crtlab {

unsigned resolve_workers(unsigned requested) noexcept;

// Evaluates fn(r) for r in [0, reps) on up to `workers` threads. Results are
// stored by replicate index, so the output does not depend on the thread count.
template <class R, class F>
std::vector<R> run_replicates(std::size_t reps, unsigned workers, F&& fn) {
    std::vector<R> out(reps);
    const unsigned w = std::max(1u, std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(reps ? reps : 1)));
    if (w == 1) {
        for (std::size_t r = 0; r < reps; ++r) out[r] = fn(r);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::size_t error_at = reps;
    std::mutex mu;
    auto body = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= reps) return;
            try {
                out[r] = fn(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (r < error_at) {
                    error_at = r;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned i = 0; i < w; ++i) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace crtlab
