#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace freehaag {

/// Deterministic chunked map-reduce: terms are grouped into fixed chunks
/// (layout depends only on the term count), chunk sums are computed
/// possibly in parallel, and chunks are combined in index order. With
/// exact scalar types the result is independent of the thread count by
/// associativity; with floats it is independent because the grouping and
/// combination order are fixed.
template <class T, class Term>
T chunked_sum(size_t count, Term term, T init, int threads) {
    if (count == 0) return init;
    if (threads < 1) threads = 1;
    constexpr size_t kChunk = 64;
    const size_t num_chunks = (count + kChunk - 1) / kChunk;
    std::vector<T> chunk_sums(num_chunks, init);

    auto run_chunk = [&](size_t c) {
        const size_t lo = c * kChunk;
        const size_t hi = std::min(count, lo + kChunk);
        T acc = init;
        for (size_t i = lo; i < hi; ++i) acc += term(i);
        chunk_sums[c] = std::move(acc);
    };

    if (threads == 1 || num_chunks == 1) {
        for (size_t c = 0; c < num_chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (size_t c = static_cast<size_t>(t); c < num_chunks; c += static_cast<size_t>(threads))
                    run_chunk(c);
            });
        }
        for (auto& th : pool) th.join();
    }

    T total = init;
    for (auto& s : chunk_sums) total += s;
    return total;
}

} // namespace freehaag
