#ifndef CORRTHERM_PARALLEL_HPP
#define CORRTHERM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace corrtherm {

/// Process-wide worker cap (set once by the CLI --threads flag; 0 = hardware).
void set_max_threads(int n);
int max_threads();

/// Runs body(i) for i in [0, count) across up to max_threads() workers.
/// Iterations write disjoint state, so the result is identical for any worker
/// count (used for embarrassingly parallel per-cell work only).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace corrtherm

#endif
