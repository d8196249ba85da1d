#include "blanket/pricing.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <unordered_set>

namespace blanket {

namespace {

constexpr double kTieSlack = 1e-9;

struct ByValue {
  bool operator()(const PricedRect& a, const PricedRect& b) const {
    if (a.value != b.value) return a.value < b.value;
    return a.rect < b.rect;
  }
};

// Weight sums with blocked pixels kept apart from the real-valued tables so
// a kBlockedWeight sentinel never swamps the prefix sums.
class PricingTables {
 public:
  explicit PricingTables(const WeightMatrix& w)
      : blocked_image_(w.width(), w.height()), real_(w.width(), w.height()) {
    bool any = false;
    for (int y = 1; y <= w.height(); ++y) {
      for (int x = 1; x <= w.width(); ++x) {
        if (w.at(x, y) >= kBlockedWeight) {
          blocked_image_.set(x, y, true);
          any = true;
        } else {
          real_.at(x, y) = w.at(x, y);
        }
      }
    }
    tables_ = IntegralTables(real_);
    if (any) blocked_.emplace(blocked_image_);
  }

  double value(const Rect& r) const {
    double v = tables_.sum(r);
    if (blocked_) {
      if (const auto n = blocked_->ones(r); n > 0) v += kBlockedWeight * static_cast<double>(n);
    }
    return v;
  }

  double bound(const RectSet& rs) const {
    double b = tables_.negative(rs.union_rect());
    if (const auto inter = rs.intersection_rect()) {
      b += tables_.positive(*inter);
      if (blocked_) {
        if (const auto n = blocked_->ones(*inter); n > 0) b += kBlockedWeight * static_cast<double>(n);
      }
    }
    return b;
  }

 private:
  BinaryImage blocked_image_;
  WeightMatrix real_;
  IntegralTables tables_;
  std::optional<ImageIntegral> blocked_;
};

struct OpenSet {
  double bound;
  std::uint64_t seq;
  RectSet set;
};

struct OpenOrder {
  bool operator()(const OpenSet& a, const OpenSet& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

}  // namespace

std::vector<PricedRect> solve_pricing(const WeightMatrix& weights,
                                      std::span<const BranchConstraint> constraints,
                                      const PricingOptions& options,
                                      std::span<const Rect> prohibited, PricingStats* stats) {
  if (options.capacity < 1) throw std::invalid_argument("pricing capacity must be at least 1");
  PricingStats local;
  PricingStats& st = stats ? *stats : local;

  WeightMatrix w = weights;
  std::vector<BranchConstraint> pairs;
  for (const auto& c : constraints) {
    if (const auto* fw = std::get_if<FixedWeights>(&c)) {
      for (const auto& [p, value] : fw->overrides) {
        if (p.x < 1 || p.y < 1 || p.x > w.width() || p.y > w.height()) {
          throw BoundsError("weight override outside matrix at " + to_string(p));
        }
        w.at(p) = value;
      }
    } else if (const auto* pr = std::get_if<Prohibited>(&c)) {
      (void)pr;
    } else {
      pairs.push_back(c);
    }
  }
  std::unordered_set<Rect, RectHash> banned(prohibited.begin(), prohibited.end());
  for (const auto& c : constraints) {
    if (const auto* pr = std::get_if<Prohibited>(&c)) banned.insert(pr->rect);
  }

  const PricingTables tables(w);
  const auto capacity = static_cast<std::size_t>(options.capacity);
  std::set<PricedRect, ByValue> best;

  const auto feasible = [&](const Rect& r) {
    for (const auto& c : pairs) {
      if (!satisfies(r, c)) return false;
    }
    return true;
  };
  const auto offer = [&](const Rect& r) {
    ++st.rects_evaluated;
    if (banned.contains(r)) return;
    PricedRect pr{r, tables.value(r), 0.0};
    pr.reduced_cost = pr.value - options.mu;
    if (best.size() >= capacity && !ByValue{}(pr, *best.rbegin())) return;
    if (!best.insert(pr).second) return;
    if (best.size() > capacity) best.erase(std::prev(best.end()));
  };
  const auto incumbent = [&] {
    return best.empty() ? std::numeric_limits<double>::infinity() : best.begin()->value;
  };

  const Rect frame{1, w.width(), 1, w.height()};
  if (feasible(frame)) offer(frame);

  std::priority_queue<OpenSet, std::vector<OpenSet>, OpenOrder> open;
  std::uint64_t seq = 0;
  const RectSet root = RectSet::root(w.width(), w.height());
  open.push({tables.bound(root), seq++, root});

  while (!open.empty()) {
    OpenSet node = open.top();
    open.pop();
    if (node.bound > incumbent() + kTieSlack) break;
    ++st.sets_expanded;

    bool all_satisfy = true;
    bool dead = false;
    for (const auto& c : pairs) {
      const auto a = admissible(node.set, c);
      if (a == Admissibility::NoneSatisfy) {
        dead = true;
        break;
      }
      if (a == Admissibility::Mixed) all_satisfy = false;
    }
    if (dead) continue;

    const std::int64_t count = node.set.member_count();
    if (node.set.singleton_box() || count <= options.naive_threshold) {
      if (!node.set.singleton_box()) ++st.naive_switches;
      for (const Rect& r : node.set.members()) {
        if (all_satisfy || feasible(r)) offer(r);
      }
      continue;
    }

    auto [a, b] = bisect(node.set);
    for (RectSet child : {a.tightened(), b.tightened()}) {
      if (child.empty()) continue;
      const double lb = tables.bound(child);
      if (lb > incumbent() + kTieSlack) continue;
      open.push({lb, seq++, child});
    }
  }

  return {best.begin(), best.end()};
}

}  // namespace blanket
