#include "blanket/rect_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace blanket {

namespace {

// Pairs (a, b) with a in A, b in B and a <= b.
std::int64_t ordered_pairs(const Interval& a, const Interval& b) {
  std::int64_t count = 0;
  for (int v = a.lo; v <= a.hi; ++v) {
    const int lo = std::max(v, b.lo);
    if (lo <= b.hi) count += b.hi - lo + 1;
  }
  return count;
}

bool contains(const std::optional<Rect>& r, Pixel p) { return r && r->contains(p); }

}  // namespace

bool satisfies(const Rect& r, const BranchConstraint& c) {
  if (const auto* d = std::get_if<PairDiffer>(&c)) {
    return !(r.contains(d->e) && r.contains(d->f));
  }
  if (const auto* s = std::get_if<PairSame>(&c)) {
    return r.contains(s->e) == r.contains(s->f);
  }
  return true;
}

std::int64_t RectSet::member_count() const {
  if (top.lo > top.hi || left.lo > left.hi || bottom.lo > bottom.hi || right.lo > right.hi) {
    return 0;
  }
  return ordered_pairs(top, bottom) * ordered_pairs(left, right);
}

RectSet RectSet::tightened() const {
  RectSet t = *this;
  t.top.hi = std::min(t.top.hi, t.bottom.hi);
  t.bottom.lo = std::max(t.bottom.lo, t.top.lo);
  t.left.hi = std::min(t.left.hi, t.right.hi);
  t.right.lo = std::max(t.right.lo, t.left.lo);
  return t;
}

std::vector<Rect> RectSet::members() const {
  std::vector<Rect> out;
  for (int t = top.lo; t <= top.hi; ++t) {
    for (int l = left.lo; l <= left.hi; ++l) {
      for (int b = std::max(bottom.lo, t); b <= bottom.hi; ++b) {
        for (int r = std::max(right.lo, l); r <= right.hi; ++r) {
          out.push_back(Rect{l, r, t, b});
        }
      }
    }
  }
  return out;
}

double lower_bound(const RectSet& rs, const IntegralTables& tables) {
  double bound = tables.negative(rs.union_rect());
  if (const auto inter = rs.intersection_rect()) bound += tables.positive(*inter);
  return bound;
}

std::pair<RectSet, RectSet> bisect(const RectSet& rs) {
  Interval RectSet::*fields[] = {&RectSet::top, &RectSet::left, &RectSet::bottom, &RectSet::right};
  Interval RectSet::*widest = nullptr;
  int best = 0;
  for (auto field : fields) {
    if ((rs.*field).span() > best) {
      best = (rs.*field).span();
      widest = field;
    }
  }
  if (widest == nullptr) throw std::invalid_argument("cannot bisect a single-rectangle set");
  const Interval iv = rs.*widest;
  const int mid = iv.lo + (iv.hi - iv.lo) / 2;
  RectSet a = rs;
  RectSet b = rs;
  (a.*widest).hi = mid;
  (b.*widest).lo = mid + 1;
  return {a, b};
}

Admissibility admissible(const RectSet& rs, const BranchConstraint& c) {
  const Rect uni = rs.union_rect();
  const auto inter = rs.intersection_rect();
  if (const auto* d = std::get_if<PairDiffer>(&c)) {
    if (contains(inter, d->e) && contains(inter, d->f)) return Admissibility::NoneSatisfy;
    if (!uni.contains(d->e) || !uni.contains(d->f)) return Admissibility::AllSatisfy;
    return Admissibility::Mixed;
  }
  if (const auto* s = std::get_if<PairSame>(&c)) {
    const bool ue = uni.contains(s->e);
    const bool uf = uni.contains(s->f);
    const bool ie = contains(inter, s->e);
    const bool iff = contains(inter, s->f);
    // Every member holds one pixel and can never reach the other.
    if ((ie && !uf) || (iff && !ue)) return Admissibility::NoneSatisfy;
    if ((ie && iff) || (!ue && !uf)) return Admissibility::AllSatisfy;
    return Admissibility::Mixed;
  }
  return Admissibility::AllSatisfy;
}

}  // namespace blanket
