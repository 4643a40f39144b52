#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace zfr {

// Worker count: hardware concurrency capped by the ZFR_THREADS environment
// variable (a positive integer; anything else is ignored).
inline unsigned thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ZFR_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

// Runs fn(begin, end) over contiguous index chunks.  Each chunk produces an
// independent partial result; the caller merges them in chunk order, so the
// reduction is deterministic regardless of scheduling.
template <typename Fn>
void parallel_chunks(std::size_t n, Fn&& fn) {
    const unsigned workers = std::min<std::size_t>(thread_count(), n ? n : 1);
    if (workers <= 1 || n < 2048) {
        fn(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = std::min<std::size_t>(w * chunk, n);
        const std::size_t hi = std::min<std::size_t>(lo + chunk, n);
        if (lo >= hi) break;
        pool.emplace_back([=, &fn] { fn(lo, hi, w); });
    }
    for (auto& t : pool) t.join();
}

} // namespace zfr
