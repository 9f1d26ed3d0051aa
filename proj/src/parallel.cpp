#include "tamexp/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tamexp {

unsigned thread_count() {
    if (const char* env = std::getenv("TAMEXP_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(std::min(v, 1024L));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_for(std::uint64_t begin, std::uint64_t end,
                  const std::function<void(std::uint64_t, std::uint64_t)>& body, std::uint64_t min_chunk) {
    if (end <= begin) return;
    std::uint64_t len = end - begin;
    std::uint64_t workers = std::min<std::uint64_t>(thread_count(), (len + min_chunk - 1) / std::max<std::uint64_t>(min_chunk, 1));
    if (workers <= 1) {
        body(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex mu;
    std::uint64_t step = (len + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        std::uint64_t lo = begin + w * step, hi = std::min(end, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace tamexp
