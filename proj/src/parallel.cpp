#include "carsym/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace carsym {

int default_thread_count() {
  if (const char* env = std::getenv("CAR_SYM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min(n, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp<int>(static_cast<int>(hw), 1, 64);
}

void parallel_blocks(std::uint64_t count, std::uint64_t block_size, int threads,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& f) {
  if (count == 0) return;
  std::uint64_t blocks = (count + block_size - 1) / block_size;
  threads = std::max(1, std::min<std::uint64_t>(threads, blocks));
  if (threads == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      f(b, b * block_size, std::min(count, (b + 1) * block_size));
    }
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      f(b, b * block_size, std::min(count, (b + 1) * block_size));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace carsym
