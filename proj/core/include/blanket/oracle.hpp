#pragma once

#include <span>
#include <vector>

#include "blanket/constraints.hpp"
#include "blanket/geometry.hpp"
#include "blanket/integral.hpp"
#include "blanket/pricing.hpp"
#include "blanket/solution.hpp"

namespace blanket {

class OracleSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Every rectangle of a W x H frame, ascending in Rect order.
std::vector<Rect> enumerate_rectangles(int width, int height);

/// Exact optimum by depth-first search over disjoint rectangle subsets.
/// Refuses frames with more than 10^4 rectangles.
BlanketSolution exact_solve(const BinaryImage& image, int k);

/// Minimum weight-sum rectangle by direct enumeration, restricted to
/// rectangles that satisfy the pair constraints, are not prohibited and avoid
/// FixedWeights overrides at or above kBlockedWeight. Refuses frames with more
/// than 10^6 rectangles. nullopt when no rectangle qualifies.
std::optional<PricedRect> exact_min_rect(const WeightMatrix& weights,
                                         std::span<const BranchConstraint> constraints = {},
                                         std::span<const Rect> prohibited = {});

}  // namespace blanket
