#include "blanket/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>

namespace blanket {

namespace {

std::int64_t rect_count(int w, int h) {
  return std::int64_t{w} * (w + 1) / 2 * (std::int64_t{h} * (h + 1) / 2);
}

using Mask = std::vector<std::uint64_t>;

Mask mask_of(const Rect& r, int w, std::size_t words) {
  Mask m(words, 0);
  for (int y = r.top; y <= r.bottom; ++y) {
    for (int x = r.left; x <= r.right; ++x) {
      const auto i = static_cast<std::size_t>((y - 1) * w + (x - 1));
      m[i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  return m;
}

bool disjoint(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<Rect> enumerate_rectangles(int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("frame must be at least 1x1");
  std::vector<Rect> out;
  out.reserve(static_cast<std::size_t>(rect_count(width, height)));
  for (int t = 1; t <= height; ++t) {
    for (int l = 1; l <= width; ++l) {
      for (int b = t; b <= height; ++b) {
        for (int r = l; r <= width; ++r) out.push_back(Rect{l, r, t, b});
      }
    }
  }
  return out;
}

BlanketSolution exact_solve(const BinaryImage& image, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const int w = image.width();
  const int h = image.height();
  if (rect_count(w, h) > 10000) {
    throw OracleSizeError("image too large for the exact oracle");
  }
  const ImageIntegral integral(image);

  struct Cand {
    Rect rect;
    std::int64_t cost;
    std::int64_t ones;
    Mask mask;
  };
  const std::size_t words = (image.pixel_count() + 63) / 64;
  std::vector<Cand> cands;
  for (const Rect& r : enumerate_rectangles(w, h)) {
    const std::int64_t c = rect_cost(integral, r);
    if (c < 0) cands.push_back({r, c, integral.ones(r), mask_of(r, w, words)});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cand& a, const Cand& b) { return a.cost < b.cost; });

  std::int64_t best = 0;
  std::vector<std::size_t> best_pick;
  std::vector<std::size_t> pick;
  Mask used(words, 0);

  // cost >= -ones for any rectangle, so disjoint additions can gain at most
  // the ones not yet covered.
  std::function<void(std::size_t, std::int64_t, std::int64_t)> dfs =
      [&](std::size_t start, std::int64_t sum, std::int64_t uncovered) {
        if (sum < best) {
          best = sum;
          best_pick = pick;
        }
        const auto left = static_cast<std::int64_t>(k) - static_cast<std::int64_t>(pick.size());
        if (left <= 0 || sum - uncovered >= best) return;
        for (std::size_t i = start; i < cands.size(); ++i) {
          const Cand& c = cands[i];
          if (sum + left * c.cost >= best) break;
          if (!disjoint(used, c.mask)) continue;
          for (std::size_t j = 0; j < words; ++j) used[j] |= c.mask[j];
          pick.push_back(i);
          dfs(i + 1, sum + c.cost, uncovered - c.ones);
          pick.pop_back();
          for (std::size_t j = 0; j < words; ++j) used[j] &= ~c.mask[j];
        }
      };
  dfs(0, 0, image.area());

  BlanketSolution sol;
  for (std::size_t i : best_pick) sol.blanket.push_back(cands[i].rect);
  std::sort(sol.blanket.begin(), sol.blanket.end());
  sol.objective = image.area() + best;
  sol.lower_bound = static_cast<double>(sol.objective);
  sol.status = SolveStatus::Optimal;
  return sol;
}

std::optional<PricedRect> exact_min_rect(const WeightMatrix& weights,
                                         std::span<const BranchConstraint> constraints,
                                         std::span<const Rect> prohibited) {
  const int w = weights.width();
  const int h = weights.height();
  if (w < 1 || h < 1) throw std::invalid_argument("empty weight matrix");
  if (rect_count(w, h) > 1000000) throw OracleSizeError("weight matrix too large for enumeration");

  WeightMatrix real = weights;
  std::vector<std::uint8_t> blocked(real.values().size(), 0);
  std::vector<BranchConstraint> pairs;
  std::vector<Rect> banned(prohibited.begin(), prohibited.end());
  for (const auto& c : constraints) {
    if (const auto* fw = std::get_if<FixedWeights>(&c)) {
      for (const auto& [p, v] : fw->overrides) real.at(p) = v;
    } else if (const auto* pr = std::get_if<Prohibited>(&c)) {
      banned.push_back(pr->rect);
    } else {
      pairs.push_back(c);
    }
  }
  for (std::size_t i = 0; i < blocked.size(); ++i) {
    if (real.values()[i] >= kBlockedWeight) {
      blocked[i] = 1;
      real.values()[i] = 0.0;
    }
  }
  const IntegralTables tables(real);

  std::optional<PricedRect> best;
  for (const Rect& r : enumerate_rectangles(w, h)) {
    if (std::find(banned.begin(), banned.end(), r) != banned.end()) continue;
    bool ok = true;
    for (const auto& c : pairs) ok = ok && satisfies(r, c);
    for (int y = r.top; ok && y <= r.bottom; ++y) {
      for (int x = r.left; ok && x <= r.right; ++x) ok = !blocked[real.index(x, y)];
    }
    if (!ok) continue;
    const double v = tables.sum(r);
    if (!best || v < best->value) best = PricedRect{r, v, v};
  }
  return best;
}

}  // namespace blanket
