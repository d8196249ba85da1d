#include "blanket/heuristics.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace blanket {

double benefit(const Rect& r, const ImageIntegral& integral, double tau) {
  return static_cast<double>(integral.ones(r)) - tau * static_cast<double>(r.area());
}

double benefit(const Rect& r, const BinaryImage& image, double tau) {
  return benefit(r, ImageIntegral(image), tau);
}

BlanketSolution fast_solve(const BinaryImage& image, int k, const FastConfig& config) {
  if (k < 1) throw std::invalid_argument("FAST needs k >= 1");
  if (!(config.tau >= 0.0 && config.tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
  const int w = image.width();
  const int h = image.height();
  BinaryImage work = image;
  BlanketSolution sol;

  const auto blocked = [&](const Rect& r) {
    return std::any_of(sol.blanket.begin(), sol.blanket.end(),
                       [&](const Rect& b) { return b.intersects(r); });
  };

  for (int step = 0; step < k && work.area() > 0; ++step) {
    const ImageIntegral integral(work);
    int sw = std::max(1, w / 2);
    int sh = std::max(1, h / 2);
    std::optional<Rect> seed;
    for (;;) {
      for (int t = 1; !seed && t + sh - 1 <= h; ++t) {
        for (int l = 1; !seed && l + sw - 1 <= w; ++l) {
          const Rect r{l, l + sw - 1, t, t + sh - 1};
          if (integral.zeros(r) == 0) seed = r;
        }
      }
      if (seed || (sw == 1 && sh == 1)) break;
      sw = std::max(1, sw / 2);
      sh = std::max(1, sh / 2);
    }
    if (!seed) break;

    Rect r = *seed;
    double f = benefit(r, integral, config.tau);
    std::vector<double> trace{f};
    for (;;) {
      std::optional<Rect> next;
      double next_f = f;
      const Rect grown[4] = {{r.left, r.right, r.top - 1, r.bottom},
                             {r.left - 1, r.right, r.top, r.bottom},
                             {r.left, r.right, r.top, r.bottom + 1},
                             {r.left, r.right + 1, r.top, r.bottom}};
      const Rect strip[4] = {{r.left, r.right, r.top - 1, r.top - 1},
                             {r.left - 1, r.left - 1, r.top, r.bottom},
                             {r.left, r.right, r.bottom + 1, r.bottom + 1},
                             {r.right + 1, r.right + 1, r.top, r.bottom}};
      for (int e = 0; e < 4; ++e) {
        if (!work.in_bounds(grown[e]) || blocked(strip[e])) continue;
        const double g = benefit(grown[e], integral, config.tau);
        if (g > next_f) {
          next_f = g;
          next = grown[e];
        }
      }
      if (!next) break;
      r = *next;
      f = next_f;
      trace.push_back(f);
    }
    sol.blanket.push_back(r);
    for (int y = r.top; y <= r.bottom; ++y) {
      for (int x = r.left; x <= r.right; ++x) work.set(x, y, false);
    }
    if (config.growth_trace) config.growth_trace->push_back(std::move(trace));
  }

  std::sort(sol.blanket.begin(), sol.blanket.end());
  sol.objective = blanket_objective(image, sol.blanket);
  sol.status = SolveStatus::Feasible;
  return sol;
}

}  // namespace blanket
