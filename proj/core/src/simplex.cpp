#include "blanket/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace blanket::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration-limit";
    case Status::Singular: return "singular-basis";
    case Status::InfeasibleStart: return "infeasible-start";
  }
  return "unknown";
}

namespace {

class RevisedSimplex {
 public:
  RevisedSimplex(const Problem& p, std::span<const int> basis, const Options& o)
      : p_(p), o_(o), m_(p.rows), basis_(basis.begin(), basis.end()),
        is_basic_(p.columns.size(), -1) {}

  Result run() {
    Result res;
    if (static_cast<int>(basis_.size()) != m_) {
      res.status = Status::Singular;
      return res;
    }
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[i];
      if (j < 0 || j >= static_cast<int>(p_.columns.size()) || is_basic_[j] >= 0) {
        res.status = Status::Singular;
        return res;
      }
      is_basic_[j] = i;
    }
    if (!refactor()) {
      res.status = Status::Singular;
      return res;
    }
    for (int i = 0; i < m_; ++i) {
      if (xb_[i] < -o_.feasibility_tol) {
        res.status = Status::InfeasibleStart;
        return res;
      }
    }

    int degenerate_streak = 0;
    int since_refactor = 0;
    bool verified = false;
    Eigen::VectorXd u(m_);
    while (true) {
      if (res.iterations >= o_.max_iterations) {
        res.status = Status::IterationLimit;
        break;
      }
      compute_duals();
      const bool bland = degenerate_streak > o_.bland_after;
      const int entering = choose_entering(bland);
      if (entering < 0) {
        // Confirm optimality on a fresh factorization before declaring it.
        if (since_refactor > 0 && !verified) {
          if (!refactor()) {
            res.status = Status::Singular;
            return res;
          }
          since_refactor = 0;
          verified = true;
          continue;
        }
        res.status = Status::Optimal;
        break;
      }
      verified = false;
      column_times_inverse(entering, u);

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (u[i] <= o_.pivot_tol) continue;
        const double ratio = std::max(xb_[i], 0.0) / u[i];
        if (leave < 0 || ratio < best_ratio - 1e-12) {
          leave = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          // Ties: Bland picks the lowest variable index, otherwise the
          // larger pivot element for stability.
          const bool take = bland ? basis_[i] < basis_[leave] : u[i] > u[leave];
          if (take) {
            leave = i;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave < 0) {
        res.status = Status::Unbounded;
        break;
      }

      const double theta = best_ratio;
      xb_ -= theta * u;
      xb_[leave] = theta;
      for (int i = 0; i < m_; ++i) {
        if (xb_[i] < 0.0 && xb_[i] > -o_.feasibility_tol) xb_[i] = 0.0;
      }
      Eigen::RowVectorXd pivot_row = binv_.row(leave) / u[leave];
      binv_.noalias() -= u * pivot_row;
      binv_.row(leave) = pivot_row;

      is_basic_[basis_[leave]] = -1;
      basis_[leave] = entering;
      is_basic_[entering] = leave;

      ++res.iterations;
      if (bland) ++res.bland_pivots;
      degenerate_streak = theta <= 1e-12 ? degenerate_streak + 1 : 0;
      if (++since_refactor >= o_.refactor_every) {
        if (!refactor()) {
          res.status = Status::Singular;
          return res;
        }
        since_refactor = 0;
      }
    }

    compute_duals();
    res.x.assign(p_.columns.size(), 0.0);
    res.objective = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double v = std::max(xb_[i], 0.0);
      res.x[basis_[i]] = v;
      res.objective += p_.cost[basis_[i]] * v;
    }
    res.duals.assign(y_.data(), y_.data() + m_);
    res.dual_objective = 0.0;
    for (int i = 0; i < m_; ++i) res.dual_objective += y_[i] * p_.rhs[i];
    res.basis = basis_;
    return res;
  }

 private:
  bool refactor() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
      const auto& col = p_.columns[basis_[i]];
      for (std::size_t k = 0; k < col.rows.size(); ++k) b(col.rows[k], i) = col.values[k];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    const auto& lu_mat = lu.matrixLU();
    double max_diag = 0.0;
    double min_diag = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      const double d = std::abs(lu_mat(i, i));
      max_diag = std::max(max_diag, d);
      min_diag = std::min(min_diag, d);
    }
    if (m_ > 0 && (min_diag < 1e-11 * std::max(1.0, max_diag))) return false;
    binv_ = lu.inverse();
    Eigen::Map<const Eigen::VectorXd> rhs(p_.rhs.data(), m_);
    xb_ = binv_ * rhs;
    return true;
  }

  void compute_duals() {
    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = p_.cost[basis_[i]];
    y_ = binv_.transpose() * cb;
  }

  double reduced_cost(int j) const {
    const auto& col = p_.columns[j];
    double d = p_.cost[j];
    for (std::size_t k = 0; k < col.rows.size(); ++k) d -= y_[col.rows[k]] * col.values[k];
    return d;
  }

  int choose_entering(bool bland) const {
    int best = -1;
    double best_d = -o_.optimality_tol;
    const int n = static_cast<int>(p_.columns.size());
    for (int j = 0; j < n; ++j) {
      if (is_basic_[j] >= 0) continue;
      const double d = reduced_cost(j);
      if (d < best_d) {
        best = j;
        if (bland) return j;
        best_d = d;
      }
    }
    return best;
  }

  void column_times_inverse(int j, Eigen::VectorXd& out) const {
    out.setZero();
    const auto& col = p_.columns[j];
    for (std::size_t k = 0; k < col.rows.size(); ++k) out += binv_.col(col.rows[k]) * col.values[k];
  }

  const Problem& p_;
  const Options& o_;
  int m_;
  std::vector<int> basis_;
  std::vector<int> is_basic_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd y_;
};

}  // namespace

Result solve(const Problem& problem, std::span<const int> basis, const Options& options) {
  if (static_cast<int>(problem.rhs.size()) != problem.rows ||
      problem.cost.size() != problem.columns.size()) {
    throw SolverError("malformed LP: dimension mismatch");
  }
  return RevisedSimplex(problem, basis, options).run();
}

}  // namespace blanket::lp
