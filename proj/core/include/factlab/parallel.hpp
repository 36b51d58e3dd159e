#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace factlab {

// Worker-pool size: FACTLAB_THREADS caps it when set, otherwise the
// hardware concurrency (at least 1).
unsigned default_thread_count();
unsigned resolve_thread_count(unsigned requested);

// Splits [begin, end) into fixed chunks of chunk_size and evaluates
// fn(chunk_index, chunk_begin, chunk_end) on a pool, collecting one R per
// chunk.  The chunk grid depends only on (begin, end, chunk_size), so the
// result vector is identical for every thread count; callers merge it in
// ascending index order.
template <class R, class Fn>
std::vector<R> run_chunked(std::uint64_t begin, std::uint64_t end,
                           std::uint64_t chunk_size, unsigned threads, Fn&& fn) {
    if (chunk_size == 0) chunk_size = 1;
    const std::uint64_t span = end > begin ? end - begin : 0;
    const std::uint64_t n_chunks = (span + chunk_size - 1) / chunk_size;
    std::vector<R> results(n_chunks);
    if (n_chunks == 0) return results;

    threads = resolve_thread_count(threads);
    if (threads > n_chunks) threads = static_cast<unsigned>(n_chunks);

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_chunks) break;
            const std::uint64_t b = begin + i * chunk_size;
            const std::uint64_t e = std::min(end, b + chunk_size);
            results[i] = fn(i, b, e);
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

}  // namespace factlab
