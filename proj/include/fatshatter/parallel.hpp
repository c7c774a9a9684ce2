#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace fatshatter {

// Splits [0, count) into one contiguous block per thread and combines the
// per-block results in block order. Results are independent of scheduling as
// long as `body` depends only on its index range.
template <class T, class Body>
T block_reduce(std::size_t count, unsigned threads, T init, Body body) {
    if (threads <= 1 || count < 2) {
        return body(std::size_t{0}, count, init);
    }
    const std::size_t nblocks = std::min<std::size_t>(threads, count);
    std::vector<T> partial(nblocks, init);
    std::vector<std::thread> pool;
    pool.reserve(nblocks);
    const std::size_t chunk = (count + nblocks - 1) / nblocks;
    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::size_t lo = b * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([&, b, lo, hi] { partial[b] = body(lo, hi, init); });
    }
    for (auto& t : pool) t.join();
    T total = init;
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace fatshatter
