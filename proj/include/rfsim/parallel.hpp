#ifndef RFSIM_PARALLEL_HPP
#define RFSIM_PARALLEL_HPP

#include <functional>

namespace rfsim {

/// Run fn(i) for i in [0, n) on `workers` threads. Each index runs exactly
/// once; callers write to disjoint slots, so results do not depend on the
/// schedule or the worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace rfsim

#endif  // RFSIM_PARALLEL_HPP
