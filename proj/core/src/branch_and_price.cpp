#include "blanket/branch_and_price.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "blanket/integral.hpp"
#include "blanket/pricing.hpp"

namespace blanket {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kRcTol = 1e-6;
constexpr double kBoundTol = 1e-6;
constexpr int kMaxRoundsPerNode = 200000;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double ceil_tol(double v) { return std::ceil(v - kBoundTol); }

// Duals of every row except the cardinality row: pixel rows, then branch rows.
std::vector<double> row_duals(const LpSolution& lp) {
  std::vector<double> y = lp.pixel_duals;
  y.insert(y.end(), lp.branch_duals.begin(), lp.branch_duals.end());
  return y;
}

double rhs_dot(const MasterLp& m, const std::vector<double>& y) {
  const auto& blocked = m.blocked_pixels();
  const std::size_t pixels = blocked.size();
  double s = 0.0;
  for (std::size_t i = 0; i < pixels; ++i) {
    if (!blocked[i]) s += y[i];
  }
  const auto& rows = m.branch_rows();
  for (std::size_t b = 0; b < rows.size(); ++b) {
    if (rows[b].sense == BranchRow::Sense::AtLeastOne) s += y[pixels + b];
  }
  return s;
}

WeightMatrix pricing_weights(const BinaryImage& image, const MasterLp& m,
                             const std::vector<double>& y) {
  WeightMatrix w = WeightMatrix::from_image(image);
  auto& v = w.values();
  const std::size_t pixels = v.size();
  for (std::size_t i = 0; i < pixels; ++i) v[i] -= y[i];
  const auto& rows = m.branch_rows();
  for (std::size_t b = 0; b < rows.size(); ++b) {
    // Admissible columns contain e exactly when they contain f.
    if (rows[b].sense == BranchRow::Sense::AtLeastOne) w.at(rows[b].e) -= y[pixels + b];
  }
  return w;
}

std::vector<BranchConstraint> pricing_constraints(const Node& node) {
  std::vector<BranchConstraint> cs;
  for (const auto& c : node.constraints) {
    if (std::holds_alternative<PairDiffer>(c) || std::holds_alternative<PairSame>(c)) {
      cs.push_back(c);
    }
  }
  const auto& blocked = node.master.blocked_pixels();
  FixedWeights fw;
  const int w = node.master.width();
  for (std::size_t i = 0; i < blocked.size(); ++i) {
    if (blocked[i]) {
      const int ii = static_cast<int>(i);
      fw.overrides.emplace_back(Pixel{ii % w + 1, ii / w + 1}, kBlockedWeight);
    }
  }
  if (!fw.overrides.empty()) cs.emplace_back(std::move(fw));
  return cs;
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
  }
  return "unknown";
}

std::string to_string(NodeStop s) {
  switch (s) {
    case NodeStop::LpOptimal: return "lp_optimal";
    case NodeStop::LagrangeanSolved: return "lagrangean_solved";
    case NodeStop::Pruned: return "pruned";
    case NodeStop::Infeasible: return "infeasible";
    case NodeStop::TimeLimit: return "time_limit";
  }
  return "unknown";
}

double lagrangean_bound(double cbar, double z_rlpm, int k_local) {
  return static_cast<double>(k_local) * cbar + z_rlpm;
}

bool is_integral(const LpSolution& lp, double tol) {
  if (lp.artificial_total > tol) return false;
  for (double x : lp.primal) {
    if (x > tol && x < 1.0 - tol) return false;
  }
  return true;
}

NodeLpResult solve_node_lp(Node& node, const SolverConfig& config, SearchContext& ctx) {
  if (ctx.image == nullptr) throw std::invalid_argument("search context has no image");
  SolveStats local_stats;
  SolveStats& stats = ctx.stats ? *ctx.stats : local_stats;
  MasterLp& master = node.master;
  const auto constraints = pricing_constraints(node);
  const std::vector<Rect> prohibited(master.prohibited().begin(), master.prohibited().end());
  const int k_local = master.budget();
  const double fixed = static_cast<double>(master.fixed_cost());

  NodeLpResult out;
  std::vector<double> center;
  double best_lb = -std::numeric_limits<double>::infinity();
  bool exact_next = false;

  for (int round = 0; round < kMaxRoundsPerNode; ++round) {
    if (Clock::now() >= ctx.deadline) {
      out.stop = NodeStop::TimeLimit;
      break;
    }
    auto t0 = Clock::now();
    LpSolution lp = master.solve();
    stats.lp_seconds += seconds_since(t0);
    ++stats.iterations;
    ++out.iterations;

    const std::vector<double> y = row_duals(lp);
    if (center.empty()) center = y;
    const double alpha = exact_next ? 0.0 : config.alpha;
    std::vector<double> ys(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) ys[i] = alpha * center[i] + (1.0 - alpha) * y[i];

    t0 = Clock::now();
    PricingOptions popt;
    popt.capacity = config.capacity;
    popt.naive_threshold = config.naive_threshold;
    popt.mu = lp.mu;
    const auto priced =
        solve_pricing(pricing_weights(*ctx.image, master, ys), constraints, popt, prohibited);
    stats.pricing_seconds += seconds_since(t0);

    const double zmin = priced.empty() ? 0.0 : std::min(0.0, priced.front().value);
    const double lb = rhs_dot(master, ys) + static_cast<double>(k_local) * zmin;
    if (lb > best_lb) {
      best_lb = lb;
      center = ys;
    }

    IterationRecord rec;
    rec.node = node.id;
    rec.depth = node.depth;
    rec.iteration = round;
    rec.z_rlpm = lp.objective;
    rec.lagrangean = lb;
    rec.best_bound = best_lb;
    rec.dual_objective = lp.dual_objective;
    rec.max_pixel_dual =
        lp.pixel_duals.empty() ? 0.0 : *std::max_element(lp.pixel_duals.begin(), lp.pixel_duals.end());
    rec.mu = lp.mu;
    rec.alpha = alpha;

    const auto finish = [&](NodeStop stop, double local_bound) {
      out.stop = stop;
      out.bound = fixed + local_bound;
      out.lp = std::move(lp);
      if (ctx.trace) ctx.trace->push_back(rec);
      if (config.on_iteration) config.on_iteration(rec);
    };

    if (config.lagrangean_stop && lp.artificial_total <= kBoundTol) {
      if (ceil_tol(best_lb) >= lp.objective - kBoundTol) {
        finish(NodeStop::LagrangeanSolved, ceil_tol(best_lb));
        return out;
      }
      if (fixed + ceil_tol(best_lb) >= static_cast<double>(ctx.incumbent)) {
        finish(NodeStop::Pruned, ceil_tol(best_lb));
        return out;
      }
    }

    int added = 0;
    for (const auto& pr : priced) {
      if (master.reduced_cost(pr.rect, lp) < -kRcTol && master.add_column(pr.rect)) ++added;
    }
    stats.columns += added;
    rec.columns_added = added;

    if (added == 0) {
      if (alpha == 0.0) {
        if (lp.artificial_total > kBoundTol) {
          finish(NodeStop::Infeasible, std::numeric_limits<double>::infinity());
        } else {
          finish(NodeStop::LpOptimal, ceil_tol(lp.objective));
        }
        return out;
      }
      rec.misprice = true;
      ++stats.misprices;
      exact_next = true;
    } else {
      exact_next = false;
    }

    master.age_columns(lp);
    if (ctx.trace) ctx.trace->push_back(rec);
    if (config.on_iteration) config.on_iteration(rec);
    out.lp = std::move(lp);
  }
  if (out.stop != NodeStop::TimeLimit) {
    throw std::runtime_error("column generation did not converge at node " + std::to_string(node.id));
  }
  out.bound = fixed + (std::isfinite(best_lb) ? ceil_tol(best_lb) : node.bound - fixed);
  out.bound = std::max(out.bound, node.bound);
  return out;
}

ColumnId find_fractional_column(const LpSolution& lp, double tol) {
  ColumnId best = -1;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < lp.primal.size(); ++j) {
    const double x = lp.primal[j];
    if (x <= tol || x >= 1.0 - tol) continue;
    const double gap = std::abs(x - 0.5);
    const ColumnId id = lp.column_ids[j];
    if (gap < best_gap - 1e-12 || (std::abs(gap - best_gap) <= 1e-12 && id < best)) {
      best_gap = gap;
      best = id;
    }
  }
  if (best < 0) throw std::logic_error("LP solution is integral; nothing to branch on");
  return best;
}

std::optional<std::pair<Pixel, Pixel>> find_pixel_pair(const LpSolution& lp, const MasterLp& master,
                                                       double tol) {
  struct Positive {
    Rect rect;
    bool fractional;
  };
  std::vector<Positive> pos;
  bool any_fractional = false;
  for (std::size_t j = 0; j < lp.primal.size(); ++j) {
    const double x = lp.primal[j];
    if (x <= tol) continue;
    const Column* c = master.find(lp.column_ids[j]);
    if (c == nullptr) continue;
    const bool frac = x < 1.0 - tol;
    any_fractional = any_fractional || frac;
    pos.push_back({c->rect, frac});
  }
  if (!any_fractional) throw std::logic_error("LP solution is integral; nothing to branch on");

  const int w = master.width();
  const int h = master.height();
  for (int fx = 1; fx <= w; ++fx) {
    for (int fy = 1; fy <= h; ++fy) {
      const Pixel f{fx, fy};
      std::vector<const Positive*> cover;
      bool frac = false;
      for (const auto& p : pos) {
        if (p.rect.contains(f)) {
          cover.push_back(&p);
          frac = frac || p.fractional;
        }
      }
      if (cover.size() < 2 || !frac) continue;
      for (const Positive* a : cover) {
        if (!a->fractional) continue;
        for (const Positive* b : cover) {
          if (a == b) continue;
          for (int ex = 1; ex <= w; ++ex) {
            for (int ey = 1; ey <= h; ++ey) {
              const Pixel e{ex, ey};
              if (a->rect.contains(e) != b->rect.contains(e)) return std::pair{e, f};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

BranchTarget find_branch_target(const LpSolution& lp, const MasterLp& master, BranchRule rule,
                                double tol) {
  if (rule == BranchRule::PixelPair) {
    if (auto pair = find_pixel_pair(lp, master, tol)) return *pair;
  }
  return find_fractional_column(lp, tol);
}

BlanketSolution solve(const BinaryImage& image, const SolverConfig& config) {
  if (config.k < 0) throw std::invalid_argument("k must be non-negative");
  if (!(config.alpha >= 0.0 && config.alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1)");
  }
  if (config.capacity < 1) throw std::invalid_argument("capacity must be at least 1");
  if (image.width() < 1 || image.height() < 1) throw std::invalid_argument("empty image");

  const auto t0 = Clock::now();
  BlanketSolution sol;
  SearchContext ctx;
  ctx.image = &image;
  ctx.incumbent = 0;
  ctx.stats = &sol.stats;
  ctx.trace = config.record_trace ? &sol.trace : nullptr;
  if (std::isfinite(config.time_limit)) {
    ctx.deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(std::max(0.0, config.time_limit)));
  }
  const ImageIntegral integral(image);

  std::vector<std::unique_ptr<Node>> open;
  std::int64_t next_id = 0;
  open.push_back(std::make_unique<Node>(Node{next_id++, -1, 0, {}, {}, {}, config.k,
                                             -std::numeric_limits<double>::infinity(),
                                             MasterLp(image, config.k, config.initial_lifespan)}));
  bool timed_out = false;

  while (!open.empty()) {
    auto it = std::min_element(open.begin(), open.end(), [](const auto& a, const auto& b) {
      if (a->bound != b->bound) return a->bound < b->bound;
      if (a->depth != b->depth) return a->depth > b->depth;
      return a->id < b->id;
    });
    std::unique_ptr<Node> node = std::move(*it);
    open.erase(it);
    if (node->bound >= static_cast<double>(ctx.incumbent) - kBoundTol) continue;
    if (Clock::now() >= ctx.deadline) {
      open.push_back(std::move(node));
      timed_out = true;
      break;
    }

    ++sol.stats.nodes;
    sol.stats.max_depth = std::max(sol.stats.max_depth, node->depth);
    NodeLpResult res = solve_node_lp(*node, config, ctx);
    const bool integral_lp = res.stop != NodeStop::TimeLimit && res.stop != NodeStop::Infeasible &&
                             is_integral(res.lp, config.integrality_tol);
    sol.nodes.push_back({node->id, node->parent, node->depth, res.stop,
                         res.lp.objective, res.bound, integral_lp});

    if (res.stop == NodeStop::TimeLimit) {
      node->bound = std::max(node->bound, res.bound);
      open.push_back(std::move(node));
      timed_out = true;
      break;
    }
    if (res.stop == NodeStop::Pruned || res.stop == NodeStop::Infeasible) continue;

    if (integral_lp) {
      Blanket b = node->master.fixed_rects();
      for (std::size_t j = 0; j < res.lp.primal.size(); ++j) {
        if (res.lp.primal[j] > 0.5) b.push_back(node->master.find(res.lp.column_ids[j])->rect);
      }
      const std::int64_t value = blanket_objective(image, integral, b) - image.area();
      if (value < ctx.incumbent) {
        ctx.incumbent = value;
        std::sort(b.begin(), b.end());
        sol.blanket = std::move(b);
      }
      continue;
    }
    if (node->id == 0) sol.stats.root_fractional = true;
    node->bound = std::max(node->bound, res.bound);
    if (node->bound >= static_cast<double>(ctx.incumbent) - kBoundTol) continue;

    const BranchTarget target =
        find_branch_target(res.lp, node->master, config.rule, config.integrality_tol);
    auto child = [&](const Node& parent) {
      auto c = std::make_unique<Node>(parent);
      c->id = next_id++;
      c->parent = parent.id;
      c->depth = parent.depth + 1;
      return c;
    };
    if (const auto* pair = std::get_if<std::pair<Pixel, Pixel>>(&target)) {
      auto differ = child(*node);
      const PairDiffer d{pair->first, pair->second};
      differ->master.apply_branch(d);
      differ->constraints.emplace_back(d);
      auto same = child(*node);
      const PairSame s{pair->first, pair->second};
      same->master.apply_branch(s);
      same->constraints.emplace_back(s);
      open.push_back(std::move(differ));
      open.push_back(std::move(same));
    } else {
      const ColumnId j = std::get<ColumnId>(target);
      auto one = child(*node);
      one->fixed.push_back(one->master.fix_column(j));
      one->local_budget = one->master.budget();
      auto zero = child(*node);
      zero->prohibited.push_back(zero->master.prohibit_column(j));
      open.push_back(std::move(one));
      open.push_back(std::move(zero));
    }
  }

  sol.objective = image.area() + ctx.incumbent;
  if (timed_out) {
    double bound = static_cast<double>(ctx.incumbent);
    for (const auto& n : open) bound = std::min(bound, n->bound);
    sol.lower_bound = std::max(0.0, static_cast<double>(image.area()) + bound);
    sol.status = SolveStatus::TimeLimit;
  } else {
    sol.lower_bound = static_cast<double>(sol.objective);
    sol.status = SolveStatus::Optimal;
  }
  sol.stats.wall_seconds = seconds_since(t0);
  return sol;
}

}  // namespace blanket
