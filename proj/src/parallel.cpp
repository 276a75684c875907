#include "hal/parallel.hpp"

#include <algorithm>

namespace hal {

int& thread_count() {
    static int n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

void parallel_for_chunks(size_t n, const std::function<void(size_t, size_t)>& fn) {
    int workers = thread_count();
    if (workers <= 1 || n < 1024) {
        fn(0, n);
        return;
    }
    size_t chunk = (n + size_t(workers) - 1) / size_t(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        size_t b = size_t(w) * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace hal
