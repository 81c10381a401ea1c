#pragma once

#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace lame {

// Apply fn to indices 0..count-1 preserving result order. With jobs > 1 the
// items run on a small thread pool; the lowest-index failure is rethrown so
// error reporting is independent of scheduling.
template <typename R, typename Fn>
std::vector<R> indexed_map(int count, int jobs, Fn&& fn) {
    std::vector<std::optional<R>> slots(count);
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) slots[i] = fn(i);
    } else {
        std::vector<std::exception_ptr> errors(count);
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    slots[i] = fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        const int width = std::min(jobs, count);
        pool.reserve(width);
        for (int t = 0; t < width; ++t) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
        for (int i = 0; i < count; ++i)
            if (errors[i]) std::rethrow_exception(errors[i]);
    }
    std::vector<R> out;
    out.reserve(count);
    for (std::optional<R>& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace lame
