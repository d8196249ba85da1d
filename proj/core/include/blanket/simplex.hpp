#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blanket::lp {

struct SparseColumn {
  std::vector<int> rows;
  std::vector<double> values;
};

// min c'x  s.t.  A x = b,  x >= 0.
struct Problem {
  int rows = 0;
  std::vector<double> rhs;
  std::vector<SparseColumn> columns;
  std::vector<double> cost;
};

struct Options {
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-9;
  double feasibility_tol = 1e-7;
  int refactor_every = 64;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 40;
  int max_iterations = 500000;
};

enum class Status { Optimal, Unbounded, IterationLimit, Singular, InfeasibleStart };

std::string to_string(Status s);

struct Result {
  Status status = Status::Singular;
  std::vector<double> x;      // one value per column
  std::vector<double> duals;  // one value per row, y' = c_B' B^-1
  std::vector<int> basis;     // column index basic in each row position
  double objective = 0.0;
  double dual_objective = 0.0;
  int iterations = 0;
  int bland_pivots = 0;
};

/// Primal revised simplex from a caller-supplied basis (one column index per
/// row). The starting basis must be nonsingular and primal feasible; otherwise
/// Singular or InfeasibleStart is returned without pivoting.
Result solve(const Problem& problem, std::span<const int> basis, const Options& options = {});

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blanket::lp
