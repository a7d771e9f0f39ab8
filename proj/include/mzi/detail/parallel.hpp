#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mzi::detail {

// Worker-pool size: MZI_THREADS environment variable when set to a positive
// integer, otherwise the hardware concurrency.
inline unsigned worker_count() {
    if (const char* e = std::getenv("MZI_THREADS")) {
        int v = std::atoi(e);
        if (v >= 1) return unsigned(v);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1u;
}

// Index-parallel loop. fn(i) must confine its effects to slot i of some
// preallocated output and must not throw (wrap and store failures instead),
// so results are deterministic regardless of the pool size.
template <class Fn>
void parallel_for(size_t n, Fn&& fn) {
    const unsigned workers = worker_count();
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto body = [&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const unsigned spawn = unsigned(std::min<size_t>(workers, n)) - 1;
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

} // namespace mzi::detail
