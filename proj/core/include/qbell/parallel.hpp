#pragma once

#include <cstddef>
#include <functional>

namespace qbell {

/// Number of workers to use when the caller passes 0.
unsigned default_threads();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Work is split into contiguous chunks; results must be stored by index.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, unsigned threads,
                  std::function<void(std::size_t)> const& body);

}  // namespace qbell
