#ifndef ANYONPROP_PARALLEL_HPP
#define ANYONPROP_PARALLEL_HPP

#include <functional>

namespace anyonprop {

// Worker thread count: hardware concurrency, capped by the ANYONPROP_THREADS
// environment variable when set.  A set-but-invalid value is a UsageError.
int worker_count();

// Run f(i) for i in [0, n) across worker_count() threads in static contiguous
// blocks.  f must only write to per-index locations; the first exception
// thrown by any worker is re-thrown on the caller.
void parallel_for(long n, const std::function<void(long)>& f);

} // namespace anyonprop

#endif
