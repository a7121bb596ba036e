#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace sector_heat {

/// Runs body(begin, end) over [0, n) split into at most `jobs` contiguous chunks.
/// Each index is handled by exactly one chunk, so results do not depend on jobs.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
    const std::size_t chunks = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
    if (chunks <= 1) {
        if (n) body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t b = n * c / chunks, e = n * (c + 1) / chunks;
        pool.emplace_back([&, b, e, c] {
            try {
                body(b, e);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// SECTOR_HEAT_JOBS, or 1.
inline int default_jobs() {
    if (const char* env = std::getenv("SECTOR_HEAT_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

}  // namespace sector_heat
