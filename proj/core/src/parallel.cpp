#include "chlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace chlab {

namespace {
std::atomic<int> g_threads{0};

int resolve_default() {
    if (const char* env = std::getenv("CHLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}
}  // namespace

int thread_count() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n <= 0) {
        n = resolve_default();
        g_threads.store(n, std::memory_order_relaxed);
    }
    return n;
}

void set_thread_count(int n) { g_threads.store(n > 0 ? n : 0, std::memory_order_relaxed); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int nt = thread_count();
    if (nt <= 1 || n < 4096) {
        fn(0, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(nt), n);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace chlab
