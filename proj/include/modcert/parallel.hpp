#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace modcert {

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). If any call throws, the exception from the lowest index is
/// rethrown after all workers finish, so failures are deterministic.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::exception_ptr> errors(n);
    auto run = [&](std::size_t i) {
        try {
            fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) run(i);
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace modcert
