#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tilecraft {

// Runs fn(i) for i in [0, task_count) on up to `workers` threads. Tasks are
// claimed through a shared counter; the first exception is rethrown in the
// caller after all threads join. Callers are responsible for writing results
// into per-index slots so output stays independent of scheduling.
template <typename Fn>
void run_indexed(std::size_t task_count, unsigned workers, Fn&& fn) {
    if (task_count == 0) return;
    if (workers <= 1 || task_count == 1) {
        for (std::size_t i = 0; i < task_count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= task_count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };

    std::size_t thread_count = std::min<std::size_t>(workers, task_count);
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (error) std::rethrow_exception(error);
}

}  // namespace tilecraft
