#include "blanket/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

namespace blanket {

namespace {

enum class Move { Grow, Shrink, Split, Delete, Create };

struct Proposal {
  Move move = Move::Create;
  std::size_t index = 0;
  Rect a;  // replacement (grow, shrink, split, create)
  Rect b;  // second half of a split
  double delta = 0.0;
  std::int64_t cost_delta = 0;
  std::int64_t overlap_delta = 0;
  int count_delta = 0;
};

class Annealer {
 public:
  Annealer(const BinaryImage& image, int k, const CsaConfig& config)
      : image_(image), integral_(image), k_(k), config_(config), rng_(config.seed) {}

  BlanketSolution run() {
    state_.best_objective = image_.area();
    double temperature = config_.initial_temperature;
    if (temperature <= 0.0) temperature = calibrate();

    int unchanged = 0;
    for (int level = 0; level < config_.max_temperatures; ++level) {
      const Blanket before = state_.rects;
      const double l1 = state_.lambda1;
      const double l2 = state_.lambda2;
      for (int m = 0; m < config_.moves_per_temperature; ++m) step(temperature);
      const bool same = before == state_.rects && l1 == state_.lambda1 && l2 == state_.lambda2;
      unchanged = same ? unchanged + 1 : 0;
      if (unchanged >= config_.convergence_window) break;
      temperature *= config_.beta;
    }

    BlanketSolution sol;
    sol.blanket = state_.best_feasible;
    std::sort(sol.blanket.begin(), sol.blanket.end());
    sol.objective = state_.best_objective;
    sol.status = SolveStatus::Feasible;
    return sol;
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  std::int64_t overlap_with_others(const Rect& r, std::size_t skip) const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < state_.rects.size(); ++j) {
      if (j != skip) s += overlap_area(r, state_.rects[j]);
    }
    return s;
  }

  double excess(std::size_t n) const {
    return std::max<double>(0.0, static_cast<double>(n) - static_cast<double>(k_));
  }

  std::pair<int, int> sample_span(int len) {
    if (len == 1) return {1, 1};
    int a = uniform(1, len);
    int b = uniform(1, len - 1);
    if (b >= a) ++b;
    return {std::min(a, b), std::max(a, b)};
  }

  std::optional<Proposal> propose() {
    const std::size_t n = state_.rects.size();
    Proposal p;
    p.move = n == 0 ? Move::Create : static_cast<Move>(uniform(0, 4));
    const std::size_t none = n;
    if (p.move != Move::Create) p.index = static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1));
    const Rect old = p.move == Move::Create ? Rect{} : state_.rects[p.index];
    const auto with_cost = [&](const Rect& r) { return rect_cost(integral_, r); };

    switch (p.move) {
      case Move::Grow:
      case Move::Shrink: {
        Rect r = old;
        const int d = p.move == Move::Grow ? 1 : -1;
        switch (uniform(0, 3)) {
          case 0: r.top -= d; break;
          case 1: r.left -= d; break;
          case 2: r.bottom += d; break;
          default: r.right += d; break;
        }
        if (!image_.in_bounds(r)) return std::nullopt;
        p.a = r;
        p.cost_delta = with_cost(r) - with_cost(old);
        p.overlap_delta = 2 * (overlap_with_others(r, p.index) - overlap_with_others(old, p.index));
        break;
      }
      case Move::Split: {
        const bool vertical = uniform(0, 1) == 0;
        const int len = vertical ? old.width() : old.height();
        if (len < 2) return std::nullopt;
        const int c = (vertical ? old.left : old.top) + uniform(0, len - 2);
        p.a = old;
        p.b = old;
        if (vertical) {
          p.a.right = c;
          p.b.left = c + 1;
        } else {
          p.a.bottom = c;
          p.b.top = c + 1;
        }
        p.cost_delta = with_cost(p.a) + with_cost(p.b) - with_cost(old);
        p.overlap_delta = 2 * (overlap_with_others(p.a, p.index) + overlap_with_others(p.b, p.index) -
                               overlap_with_others(old, p.index));
        p.count_delta = 1;
        break;
      }
      case Move::Delete:
        p.cost_delta = -with_cost(old);
        p.overlap_delta = -2 * overlap_with_others(old, p.index);
        p.count_delta = -1;
        break;
      case Move::Create: {
        const auto [l, r] = sample_span(image_.width());
        const auto [t, b] = sample_span(image_.height());
        p.a = Rect{l, r, t, b};
        p.cost_delta = with_cost(p.a);
        p.overlap_delta = 2 * overlap_with_others(p.a, none);
        p.count_delta = 1;
        break;
      }
    }
    const double h1_delta = excess(n + p.count_delta) - excess(n);
    p.delta = static_cast<double>(p.cost_delta) + state_.lambda1 * h1_delta +
              state_.lambda2 * static_cast<double>(p.overlap_delta);
    return p;
  }

  void apply(const Proposal& p) {
    auto& rs = state_.rects;
    switch (p.move) {
      case Move::Grow:
      case Move::Shrink: rs[p.index] = p.a; break;
      case Move::Split:
        rs[p.index] = p.a;
        rs.push_back(p.b);
        break;
      case Move::Delete: rs.erase(rs.begin() + static_cast<std::ptrdiff_t>(p.index)); break;
      case Move::Create: rs.push_back(p.a); break;
    }
    sum_cost_ += p.cost_delta;
    overlap_ += p.overlap_delta;
    state_.energy += p.delta;
  }

  double calibrate() {
    double total = 0.0;
    int count = 0;
    for (int i = 0; i < config_.probe_moves; ++i) {
      if (const auto p = propose()) {
        total += std::abs(p->delta);
        ++count;
      }
    }
    const double t = count > 0 ? total / count : 0.0;
    return t > 0.0 ? t : 1.0;
  }

  void step(double temperature) {
    if (unit() < config_.lambda_move_probability) {
      const double h1 = excess(state_.rects.size());
      const double h2 = static_cast<double>(overlap_);
      if (uniform(0, 1) == 0) {
        if (h1 > 0.0) {
          state_.lambda1 += config_.lambda_step;
          state_.energy += config_.lambda_step * h1;
        }
      } else if (h2 > 0.0) {
        state_.lambda2 += config_.lambda_step;
        state_.energy += config_.lambda_step * h2;
      }
      check();
      return;
    }
    const auto p = propose();
    if (!p) return;
    if (p->delta > 0.0 && unit() >= std::exp(-p->delta / temperature)) return;
    apply(*p);
    check();
    if (overlap_ == 0 && static_cast<int>(state_.rects.size()) <= k_) {
      const std::int64_t z = image_.area() + sum_cost_;
      if (z < state_.best_objective) {
        state_.best_objective = z;
        state_.best_feasible = state_.rects;
      }
    }
  }

  void check() const {
    if (!config_.verify_energy) return;
    const double fresh = csa_energy(state_, integral_, k_);
    if (std::abs(fresh - state_.energy) > 1e-9 * std::max(1.0, std::abs(fresh))) {
      throw std::logic_error("annealing energy drifted from its recomputed value");
    }
  }

  const BinaryImage& image_;
  ImageIntegral integral_;
  int k_;
  CsaConfig config_;
  std::mt19937_64 rng_;
  CsaState state_;
  std::int64_t sum_cost_ = 0;
  std::int64_t overlap_ = 0;
};

}  // namespace

std::int64_t overlap_penalty(const Blanket& rects) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) s += 2 * overlap_area(rects[i], rects[j]);
  }
  return s;
}

double csa_energy(const CsaState& state, const ImageIntegral& integral, int k) {
  double e = 0.0;
  for (const Rect& r : state.rects) e += static_cast<double>(rect_cost(integral, r));
  const double excess = std::max(0.0, static_cast<double>(state.rects.size()) - k);
  return e + state.lambda1 * excess + state.lambda2 * static_cast<double>(overlap_penalty(state.rects));
}

double csa_energy(const CsaState& state, const BinaryImage& image, int k) {
  return csa_energy(state, ImageIntegral(image), k);
}

BlanketSolution csa_solve(const BinaryImage& image, int k, const CsaConfig& config) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (!(config.beta > 0.0 && config.beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (config.moves_per_temperature < 1 || config.max_temperatures < 1) {
    throw std::invalid_argument("annealing schedule must be non-empty");
  }
  return Annealer(image, k, config).run();
}

}  // namespace blanket
