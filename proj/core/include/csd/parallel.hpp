#pragma once

#include <cstddef>
#include <functional>

namespace csd {

/// Number of worker threads to use when the caller passes jobs <= 0.
int default_jobs();

/// Runs fn(i) for i in [begin, end) on up to `jobs` threads with dynamic
/// index scheduling. fn must be safe to call concurrently for distinct i.
/// Falls back to a plain loop for small ranges or jobs == 1.
void parallel_for(int begin, int end, int jobs, const std::function<void(int)>& fn);

/// Sum with a fixed pairwise reduction tree. The result depends only on the
/// order of `data`, never on thread scheduling, so parallel producers that
/// fill a partial-sum array by index reduce reproducibly.
double pairwise_sum(const double* data, std::size_t n);

}  // namespace csd
