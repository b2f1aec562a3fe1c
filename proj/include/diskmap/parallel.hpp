#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace diskmap {

/// Worker count: DISKMAP_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
std::size_t worker_count();

/// Calls body(i) for i in [0, n). Each index is handled by exactly one worker;
/// callers write results by index, so output never depends on scheduling.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise sum in a fixed order.
double pairwise_sum(std::span<const double> v);

}  // namespace diskmap
