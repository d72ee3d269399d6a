#include "codiag/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace codiag {

namespace {
std::atomic<int> g_workers{0};
}

int worker_count() {
    int n = g_workers.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_worker_count(int n) { g_workers.store(n); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    const std::size_t workers = static_cast<std::size_t>(worker_count());
    if (n == 0) return;
    if (workers <= 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&f, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace codiag
