#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blanket/constraints.hpp"
#include "blanket/geometry.hpp"
#include "blanket/integral.hpp"
#include "blanket/rect_set.hpp"

namespace blanket {

struct PricedRect {
  Rect rect;
  double value = 0.0;         // z(r), weight sum over the rectangle
  double reduced_cost = 0.0;  // value - mu
};

struct PricingOptions {
  int capacity = 10;
  // Rectangle sets with at most this many members are enumerated directly.
  std::int64_t naive_threshold = 256;
  double mu = 0.0;
};

struct PricingStats {
  std::int64_t sets_expanded = 0;
  std::int64_t rects_evaluated = 0;
  std::int64_t naive_switches = 0;
};

/// Best-first geometric branch-and-bound for the minimum weight-sum
/// rectangle. The first result is the global minimum over rectangles that
/// satisfy every pair constraint and are not prohibited; the others are the
/// next-best distinct rectangles met during the search, ascending by value,
/// ties broken on (top, left, bottom, right). Empty when nothing is feasible.
std::vector<PricedRect> solve_pricing(const WeightMatrix& weights,
                                      std::span<const BranchConstraint> constraints,
                                      const PricingOptions& options = {},
                                      std::span<const Rect> prohibited = {},
                                      PricingStats* stats = nullptr);

}  // namespace blanket
