#pragma once

#include <cstddef>

#include "gramineq/verify.hpp"

namespace gramineq {

enum class BoundFamily { B, P, F, FF };

const char* family_name(BoundFamily f);

struct OptimizeResult {
  Variant best_variant = Variant::B1;
  BoundParams best_params;
  double best_value = 0.0;
  BoundFamily family = BoundFamily::B;
  std::size_t evaluations = 0;
};

/// Minimizes the family's bounds over their free exponents: a log-spaced
/// grid per exponent ((1,2] for constrained corollary exponents, (1,64]
/// plus the {1, infinity} endpoints otherwise; 2 is always on the grid),
/// then golden-section refinement per coordinate. Ties break toward p=2,
/// then t=2, then catalog order.
OptimizeResult optimize_exponents(const InstanceContext& ctx, BoundFamily family,
                                  std::size_t grid_steps, std::size_t refine_iters);
OptimizeResult optimize_exponents(const Instance& inst, BoundFamily family,
                                  std::size_t grid_steps, std::size_t refine_iters);

}  // namespace gramineq
