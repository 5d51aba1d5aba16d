#include "mixbound/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace mixbound {

namespace {

constexpr std::size_t kSerialThreshold = 1024;

}  // namespace

std::size_t thread_budget() {
  std::size_t budget = 0;
  if (const char* env = std::getenv("MIXBOUND_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed > 0) budget = static_cast<std::size_t>(parsed);
  }
  if (budget == 0) budget = std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
  return budget;
}

std::size_t parallel_block_count(std::size_t total) {
  const std::size_t budget = thread_budget();
  if (budget <= 1 || total < kSerialThreshold) return 1;
  return std::min(budget, total);
}

void parallel_blocks(std::size_t total,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const std::size_t blocks = parallel_block_count(total);
  if (blocks <= 1) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(blocks);
  const std::size_t chunk = (total + blocks - 1) / blocks;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = b * chunk;
    const std::size_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&fn, b, begin, end] { fn(b, begin, end); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace mixbound
