#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace carsym {

// --threads, then CAR_SYM_THREADS, then hardware concurrency.
int default_thread_count();

// Runs f(block_index, begin, end) over [0, count) split into fixed-size
// blocks. The block layout is independent of the thread count, so reductions
// that combine per-block results in block order are reproducible.
void parallel_blocks(std::uint64_t count, std::uint64_t block_size, int threads,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& f);

inline constexpr std::uint64_t default_block_size = 1 << 14;

}  // namespace carsym
