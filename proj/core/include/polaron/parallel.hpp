#pragma once

#include <span>

#include "polaron/types.hpp"

// Threading knobs and reductions whose result does not depend on the thread
// count. Reductions split the input into fixed 4096-element blocks, sum each
// block sequentially, then add the block sums in block order; the thread
// count only changes who computes a block, never the summation order.

namespace polaron::parallel {

inline constexpr std::size_t kReductionBlock = 4096;

/// Caps worker threads used by matvec and reductions. 0 keeps the runtime
/// default. No-op without OpenMP.
void set_threads(int n);
int max_threads();

/// <a|b> = sum conj(a_i) b_i.
Complex dot(std::span<const Complex> a, std::span<const Complex> b);

/// <a|a>.
double norm_squared(std::span<const Complex> a);

}  // namespace polaron::parallel
