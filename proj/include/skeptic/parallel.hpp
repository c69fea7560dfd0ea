#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace skeptic {

// Applies fn to every item with at most max_parallel worker threads and
// returns the results in item order, so callers can commit them
// deterministically. The first exception wins and is rethrown after all
// workers joined.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, Fn fn, int max_parallel)
    -> std::vector<decltype(fn(items.front()))> {
    using Out = decltype(fn(items.front()));
    std::vector<std::optional<Out>> slots(items.size());
    if (items.empty()) return {};
    if (max_parallel <= 1 || items.size() == 1) {
        for (std::size_t i = 0; i < items.size(); ++i) slots[i] = fn(items[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        const std::size_t workers =
            std::min<std::size_t>(static_cast<std::size_t>(max_parallel), items.size());
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= items.size()) return;
                    try {
                        slots[i] = fn(items[i]);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }
    std::vector<Out> out;
    out.reserve(items.size());
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

}  // namespace skeptic
