#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blanket/geometry.hpp"

namespace blanket {

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit };

std::string to_string(SolveStatus s);

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t columns = 0;
  std::int64_t iterations = 0;
  std::int64_t misprices = 0;
  int max_depth = 0;
  bool root_fractional = false;
  double lp_seconds = 0.0;
  double pricing_seconds = 0.0;
  double wall_seconds = 0.0;
};

/// One column-generation round at one branch-and-bound node.
struct IterationRecord {
  std::int64_t node = 0;
  int depth = 0;
  int iteration = 0;
  double z_rlpm = 0.0;            // restricted master optimum (sum c scale)
  double lagrangean = 0.0;        // bound from this round's duals
  double best_bound = 0.0;        // best Lagrangean bound so far at this node
  double dual_objective = 0.0;
  double max_pixel_dual = 0.0;    // should stay <= 0
  double mu = 0.0;                // should stay <= 0
  double alpha = 0.0;             // smoothing weight used for pricing
  int columns_added = 0;
  bool misprice = false;
};

enum class NodeStop { LpOptimal, LagrangeanSolved, Pruned, Infeasible, TimeLimit };

std::string to_string(NodeStop s);

struct NodeRecord {
  std::int64_t id = 0;
  std::int64_t parent = -1;
  int depth = 0;
  NodeStop stop = NodeStop::LpOptimal;
  double z_final = 0.0;    // last restricted master optimum
  double bound = 0.0;      // node lower bound, sum c scale, fixed part included
  bool integral = false;
};

struct BlanketSolution {
  Blanket blanket;
  std::int64_t objective = 0;   // mismatch |I| + sum c
  double lower_bound = 0.0;     // mismatch scale
  SolveStatus status = SolveStatus::Feasible;
  SolveStats stats;
  std::vector<IterationRecord> trace;
  std::vector<NodeRecord> nodes;
};

}  // namespace blanket
