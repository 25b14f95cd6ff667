#ifndef AGGSTAT_PARALLEL_HPP
#define AGGSTAT_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace aggstat {

/// Run body(i) for i in [begin, end) on up to `jobs` threads (0 = hardware
/// concurrency). Each index is claimed exactly once; results must go to
/// per-index slots so the outcome is independent of scheduling.
inline void parallel_for(int begin, int end, const std::function<void(int)>& body, int jobs = 0)
{
    const int count = end - begin;
    if (count <= 0)
        return;
    int threads = jobs > 0 ? jobs : int(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = begin; i < end; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{begin};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < end; i = next.fetch_add(1))
                body(i);
        });
    for (auto& th : pool)
        th.join();
}

} // namespace aggstat

#endif
