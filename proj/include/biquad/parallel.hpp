#pragma once

#include <cstddef>
#include <functional>

namespace biquad {

/// Worker cap: BIQUAD_THREADS when set (>=1), otherwise hardware concurrency.
std::size_t thread_budget();

/// Runs fn(i) for i in [0, count). Work items must be independent; each one
/// writes only to its own output slot, so results do not depend on the
/// schedule. Falls back to a serial loop for small counts or budget 1.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace biquad
