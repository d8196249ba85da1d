#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "blanket/constraints.hpp"
#include "blanket/geometry.hpp"
#include "blanket/integral.hpp"

namespace blanket {

struct Interval {
  int lo = 1;
  int hi = 1;

  int span() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// All rectangles whose top, left, bottom and right coordinates fall in the
/// four closed intervals (and which are valid, top <= bottom, left <= right).
struct RectSet {
  Interval top;
  Interval left;
  Interval bottom;
  Interval right;

  static RectSet root(int width, int height) {
    return {{1, height}, {1, width}, {1, height}, {1, width}};
  }
  static RectSet single(const Rect& r) {
    return {{r.top, r.top}, {r.left, r.left}, {r.bottom, r.bottom}, {r.right, r.right}};
  }

  /// Smallest rectangle containing every member.
  Rect union_rect() const { return Rect{left.lo, right.hi, top.lo, bottom.hi}; }
  /// Pixels shared by every member; nullopt when that region is empty.
  std::optional<Rect> intersection_rect() const {
    Rect r{left.hi, right.lo, top.hi, bottom.lo};
    if (!r.valid()) return std::nullopt;
    return r;
  }

  bool singleton_box() const {
    return top.span() == 0 && left.span() == 0 && bottom.span() == 0 && right.span() == 0;
  }
  /// Number of valid member rectangles.
  std::int64_t member_count() const;
  bool empty() const { return member_count() == 0; }
  /// Same members with each interval clipped to its partner's range.
  RectSet tightened() const;
  std::vector<Rect> members() const;

  friend bool operator==(const RectSet&, const RectSet&) = default;
};

/// l(R) = l-(r_union) + l+(r_inter): a lower bound on the weight sum of every
/// member, exact for a single rectangle.
double lower_bound(const RectSet& rs, const IntegralTables& tables);

/// Splits the widest interval at its midpoint (ties in T, L, B, R order).
/// Throws std::invalid_argument when every interval holds a single value.
std::pair<RectSet, RectSet> bisect(const RectSet& rs);

enum class Admissibility { AllSatisfy, NoneSatisfy, Mixed };

/// Classifies a set against a pair constraint using only r_union and r_inter.
/// Prohibited and FixedWeights constraints are reported as AllSatisfy.
Admissibility admissible(const RectSet& rs, const BranchConstraint& c);

}  // namespace blanket
