#pragma once

#include <cstddef>
#include <functional>

namespace flucto {

/// Apply fn(i) for i in [0, n).  Grids large enough to benefit are split
/// across threads; FLUCTO_THREADS caps the worker count (1 disables
/// threading).  fn must be safe to call concurrently for distinct i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::size_t parallel_thread_cap();

}  // namespace flucto
