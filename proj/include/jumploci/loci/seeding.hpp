#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string_view>
#include <thread>
#include <vector>

namespace jumploci::loci {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Per-task stream seed; depends only on (master, name, index), never on scheduling.
inline std::uint64_t task_seed(std::uint64_t master, std::string_view name, std::uint64_t index) {
    return splitmix64(splitmix64(master ^ fnv1a(name)) + index);
}

// Worker cap from JUMPLOCI_THREADS (>= 1), else the hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("JUMPLOCI_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// out[i] = fn(i) for i in [0, n); results are indexed, so the schedule cannot change them.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn) {
    std::vector<T> out(n);
    const unsigned w = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errs(w);
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < w; ++k)
        pool.emplace_back([&, k] {
            try {
                for (std::size_t i = k; i < n; i += w) out[i] = fn(i);
            } catch (...) {
                errs[k] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace jumploci::loci
