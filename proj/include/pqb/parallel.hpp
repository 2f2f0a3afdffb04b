#pragma once

#include <cstddef>
#include <functional>

namespace pqb {

/// Worker cap: PQAPPROX_THREADS when set to a positive integer, otherwise
/// min(hardware_concurrency, 8).
unsigned thread_budget();

/// Runs fn(0..count-1) across workers. Callers make cells independent and
/// write results into per-index slots, so output never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace pqb
