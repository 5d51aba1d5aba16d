#pragma once

#include <cstddef>
#include <functional>

namespace mixbound {

/// Worker count: MIXBOUND_THREADS when set and positive, hardware
/// concurrency when unset or 0.
std::size_t thread_budget();

/// Runs fn(begin, end) over contiguous blocks of [0, total), one block per
/// worker. Callers combine per-block results by block index, keeping
/// reductions deterministic. Serial when the budget is 1 or total is small.
void parallel_blocks(std::size_t total,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Number of blocks parallel_blocks will use for `total` items.
std::size_t parallel_block_count(std::size_t total);

}  // namespace mixbound
