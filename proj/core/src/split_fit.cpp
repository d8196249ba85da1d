#include "blanket/heuristics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace blanket {

namespace {

struct Proposal {
  std::size_t parent;  // slot in the working list
  Rect a;
  Rect b;
};

std::vector<std::pair<Rect, Rect>> splits(const Rect& r, int rho) {
  std::vector<std::pair<Rect, Rect>> out;
  const auto cut_points = [&](int lo, int len) {
    std::vector<int> cuts;
    for (int i = 1; i < rho; ++i) {
      const int c = lo - 1 + static_cast<int>(std::lround(static_cast<double>(len) * i / rho));
      if (c >= lo && c < lo + len - 1 && (cuts.empty() || cuts.back() != c)) cuts.push_back(c);
    }
    return cuts;
  };
  for (int c : cut_points(r.left, r.width())) {
    out.push_back({Rect{r.left, c, r.top, r.bottom}, Rect{c + 1, r.right, r.top, r.bottom}});
  }
  for (int c : cut_points(r.top, r.height())) {
    out.push_back({Rect{r.left, r.right, r.top, c}, Rect{r.left, r.right, c + 1, r.bottom}});
  }
  return out;
}

Rect shrink(Rect r, const ImageIntegral& integral) {
  std::int64_t cost = rect_cost(integral, r);
  bool improved = true;
  while (improved) {
    improved = false;
    for (int edge = 0; edge < 4; ++edge) {
      for (;;) {
        Rect s = r;
        switch (edge) {
          case 0: ++s.top; break;
          case 1: ++s.left; break;
          case 2: --s.bottom; break;
          default: --s.right; break;
        }
        if (!s.valid()) break;
        const std::int64_t c = rect_cost(integral, s);
        if (c >= cost) break;
        r = s;
        cost = c;
        improved = true;
      }
    }
  }
  return r;
}

}  // namespace

double fitness(const Rect& r, const ImageIntegral& integral) {
  const std::int64_t zeros = integral.zeros(r);
  return zeros == 0 ? kPerfectFit : 1.0 / static_cast<double>(zeros);
}

double fitness(const Rect& r, const BinaryImage& image) { return fitness(r, ImageIntegral(image)); }

BlanketSolution sf_solve(const BinaryImage& image, int k, const SfConfig& config) {
  if (k < 1) throw std::invalid_argument("split-and-fit needs k >= 1");
  if (config.rho < 2) throw std::invalid_argument("rho must be at least 2");
  const ImageIntegral integral(image);

  std::vector<Rect> slots{image.frame()};
  std::vector<bool> alive{true};
  // Keyed by (min fitness of the two halves, insertion order).
  std::map<std::pair<double, std::uint64_t>, Proposal> queue;
  std::uint64_t seq = 0;
  const auto propose = [&](std::size_t slot) {
    for (auto& [a, b] : splits(slots[slot], config.rho)) {
      const double key = std::min(fitness(a, integral), fitness(b, integral));
      queue.emplace(std::pair{key, seq++}, Proposal{slot, a, b});
    }
  };
  propose(0);

  int count = 1;
  while (count < k && !queue.empty()) {
    const Proposal p = queue.begin()->second;
    queue.erase(queue.begin());
    std::erase_if(queue, [&](const auto& kv) { return kv.second.parent == p.parent; });
    alive[p.parent] = false;
    slots.push_back(p.a);
    alive.push_back(true);
    slots.push_back(p.b);
    alive.push_back(true);
    propose(slots.size() - 2);
    propose(slots.size() - 1);
    ++count;
  }

  BlanketSolution sol;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!alive[i]) continue;
    const Rect r = shrink(slots[i], integral);
    if (rect_cost(integral, r) < 0) sol.blanket.push_back(r);
  }
  std::sort(sol.blanket.begin(), sol.blanket.end());
  sol.objective = blanket_objective(image, integral, sol.blanket);
  sol.lower_bound = 0.0;
  sol.status = SolveStatus::Feasible;
  return sol;
}

}  // namespace blanket
