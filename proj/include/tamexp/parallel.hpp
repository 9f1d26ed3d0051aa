#pragma once

#include <cstdint>
#include <functional>

namespace tamexp {

// TAMEXP_THREADS if set and positive, else the hardware concurrency
unsigned thread_count();

// calls body(lo, hi) on disjoint chunks covering [begin, end)
void parallel_for(std::uint64_t begin, std::uint64_t end,
                  const std::function<void(std::uint64_t, std::uint64_t)>& body,
                  std::uint64_t min_chunk = 4096);

}  // namespace tamexp
