#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace hal {

/// Global worker count for node-parallel loops (set by the CLI --threads).
int& thread_count();

/// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
/// worker. Chunking is fixed by n and the worker count, so per-chunk partial
/// results combined in chunk order stay deterministic.
void parallel_for_chunks(size_t n, const std::function<void(size_t, size_t)>& fn);

/// Deterministic parallel reduction: combine(acc, chunk_result) applied in
/// chunk order.
template <typename T, typename ChunkFn, typename CombineFn>
T parallel_reduce(size_t n, T init, ChunkFn chunk_fn, CombineFn combine) {
    int workers = thread_count();
    if (workers <= 1 || n < 1024) {
        T r = chunk_fn(size_t(0), n);
        return combine(init, r);
    }
    size_t chunk = (n + size_t(workers) - 1) / size_t(workers);
    std::vector<T> partial(size_t(workers), init);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        size_t b = size_t(w) * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, b, e, w] { partial[size_t(w)] = chunk_fn(b, e); });
    }
    for (auto& t : pool) t.join();
    T acc = init;
    for (const T& p : partial) acc = combine(acc, p);
    return acc;
}

}  // namespace hal
