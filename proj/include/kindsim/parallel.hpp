#pragma once

#include <cstddef>
#include <functional>

namespace kindsim {

// Number of worker threads to use: first nonzero of requested and
// hardware_concurrency, floored at 1.
unsigned resolve_threads(unsigned requested);

// Runs body(i) for i in [0, count), work-stealing from a shared counter.
// Callers must make body(i) independent of execution order; the experiment
// drivers do this by deriving one RNG stream per index and folding results
// by index afterward, which is what keeps outputs identical across thread
// counts. The first exception thrown by any body is rethrown after joining.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace kindsim
