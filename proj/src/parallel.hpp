#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qcone::detail {

// f(i) for i in [0, count) on a few worker threads. f must not throw and must
// only touch slot i of any shared output.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads == 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    pool.reserve(used);
    for (unsigned t = 0; t < used; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) f(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace qcone::detail
