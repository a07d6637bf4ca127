#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace montest {

// MONTEST_WORKERS if set to a positive integer, else the hardware
// concurrency (at least 1).
std::size_t default_workers();

// Calls body(i) for every i in [0, count) on up to `workers` threads.
// Indices are handed out dynamically; body must only write state owned by
// index i. The first exception thrown by any body is rethrown.
void parallel_for(std::uint64_t count, std::size_t workers, const std::function<void(std::uint64_t)>& body);

}  // namespace montest
