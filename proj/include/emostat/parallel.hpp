#pragma once

#include <cstddef>
#include <functional>

namespace emostat {

// Worker count used by permutation loops. Results are bit-identical for
// any setting because every loop index derives its own RNG sub-seed.
unsigned max_threads();
void set_max_threads(unsigned n);

// Runs fn(0), ..., fn(n-1), possibly concurrently. Blocks until done;
// rethrows the first exception observed.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace emostat
