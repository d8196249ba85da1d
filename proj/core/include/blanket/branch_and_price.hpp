#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "blanket/constraints.hpp"
#include "blanket/geometry.hpp"
#include "blanket/master_lp.hpp"
#include "blanket/solution.hpp"

namespace blanket {

enum class BranchRule {
  Variable,   // RULE1: x_j = 0 / x_j = 1
  PixelPair,  // RULE2: pixels e, f in different / the same rectangle
};

struct SolverConfig {
  int k = 3;
  BranchRule rule = BranchRule::PixelPair;
  double alpha = 0.8;  // dual smoothing weight
  int capacity = 10;   // columns priced per round
  std::int64_t naive_threshold = 256;
  int initial_lifespan = 50;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds, whole run
  double integrality_tol = 1e-6;
  bool lagrangean_stop = true;
  bool record_trace = false;
  std::function<void(const IterationRecord&)> on_iteration;
};

/// Branch-and-bound node: the accumulated branching decisions plus the
/// restricted master those decisions produced.
struct Node {
  std::int64_t id = 0;
  std::int64_t parent = -1;
  int depth = 0;
  std::vector<BranchConstraint> constraints;  // PairDiffer / PairSame
  std::vector<Rect> prohibited;
  std::vector<Rect> fixed;
  int local_budget = 0;
  double bound = -std::numeric_limits<double>::infinity();  // sum c scale
  MasterLp master;
};

struct NodeLpResult {
  LpSolution lp;
  double bound = 0.0;  // integer-rounded lower bound on the node, sum c scale
  NodeStop stop = NodeStop::LpOptimal;
  int iterations = 0;
};

/// Shared run state threaded through node solves.
struct SearchContext {
  const BinaryImage* image = nullptr;
  std::int64_t incumbent = 0;  // best integer sum c found so far
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
  SolveStats* stats = nullptr;
  std::vector<IterationRecord>* trace = nullptr;
};

/// K * cbar + z_RLPM.
double lagrangean_bound(double cbar, double z_rlpm, int k_local);

/// Column generation at one node with dual smoothing, misprice fallback and
/// Lagrangean early stopping.
NodeLpResult solve_node_lp(Node& node, const SolverConfig& config, SearchContext& ctx);

/// RULE1 target: the fractional column closest to 0.5 (ties: lowest id).
/// Throws std::logic_error when the solution is integral.
ColumnId find_fractional_column(const LpSolution& lp, double tol = 1e-6);

/// RULE2 target (e, f): f covered by two positive columns, at least one of
/// them fractional, and e covered by exactly one of those two. Pixels are
/// scanned lexicographically on (x, y). nullopt when no such pair exists.
/// Throws std::logic_error when the solution is integral.
std::optional<std::pair<Pixel, Pixel>> find_pixel_pair(const LpSolution& lp,
                                                       const MasterLp& master,
                                                       double tol = 1e-6);

using BranchTarget = std::variant<ColumnId, std::pair<Pixel, Pixel>>;

/// Dispatches on the rule; RULE2 falls back to a column when no pair exists.
BranchTarget find_branch_target(const LpSolution& lp, const MasterLp& master, BranchRule rule,
                                double tol = 1e-6);

bool is_integral(const LpSolution& lp, double tol = 1e-6);

/// Exact solve by branch-and-price.
BlanketSolution solve(const BinaryImage& image, const SolverConfig& config);

}  // namespace blanket
