#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "blanket/geometry.hpp"

namespace blanket {

/// Pixels e and f must not lie in one rectangle (left RULE2 branch).
struct PairDiffer {
  Pixel e;
  Pixel f;
};

/// Pixels e and f must lie in the same rectangle (right RULE2 branch).
struct PairSame {
  Pixel e;
  Pixel f;
};

/// A rectangle excluded from pricing (RULE1 zero branch).
struct Prohibited {
  Rect rect;
};

/// Pixel weight overrides applied before pricing (RULE1 one branch blocks the
/// fixed rectangle's pixels with kBlockedWeight).
struct FixedWeights {
  std::vector<std::pair<Pixel, double>> overrides;
};

using BranchConstraint = std::variant<PairDiffer, PairSame, Prohibited, FixedWeights>;

/// Finite stand-in for an infinite pixel weight.
inline constexpr double kBlockedWeight = 1e9;

/// Whether a single rectangle satisfies a pair constraint. Prohibited and
/// FixedWeights constraints are always reported as satisfied here.
bool satisfies(const Rect& r, const BranchConstraint& c);

}  // namespace blanket
