#pragma once

// Deterministic sharded Monte Carlo: shard i uses seed (seed + i); results
// are merged in shard order so the outcome does not depend on thread count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace cxone::detail {

template <class Report, class ShardFn>
Report run_sharded(std::uint64_t total, std::uint64_t shard_size, std::uint64_t seed, ShardFn&& fn) {
  const std::uint64_t shards = total == 0 ? 0 : (total + shard_size - 1) / shard_size;
  std::vector<Report> results(shards);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t s = next++; s < shards; s = next++) {
      const std::uint64_t count = std::min(shard_size, total - s * shard_size);
      results[s] = fn(seed + s, count);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto nthreads = static_cast<unsigned>(std::min<std::uint64_t>(hw, shards));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report merged{};
  for (const auto& r : results) merged += r;
  return merged;
}

}  // namespace cxone::detail
