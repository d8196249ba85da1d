#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "blanket/constraints.hpp"
#include "blanket/geometry.hpp"
#include "blanket/simplex.hpp"

namespace blanket {

using ColumnId = std::int64_t;

struct Column {
  ColumnId id = 0;
  Rect rect;
  std::int64_t cost = 0;  // c(r)
  int age = 0;            // consecutive solves spent nonbasic at zero
  int lifespan = 0;       // age at which the column is discarded
};

/// Identifies an LP variable across master modifications.
struct VarKey {
  enum class Kind : std::uint8_t { Column, Slack, Surplus, Artificial };
  Kind kind = Kind::Slack;
  std::int64_t id = 0;  // column id or row key

  friend bool operator==(const VarKey&, const VarKey&) = default;
};

/// Opaque warm-start state: the basic variables of a previous solve.
struct BasisToken {
  std::vector<VarKey> basic;
  int row_count = 0;
};

struct BranchRow {
  enum class Sense : std::uint8_t { AtMostZero, AtLeastOne };
  Sense sense = Sense::AtMostZero;
  Pixel e;
  Pixel f;
};

struct LpSolution {
  double objective = 0.0;       // z_RLPM, sum c x (+ big-M artificial cost)
  double dual_objective = 0.0;  // b'y
  std::vector<ColumnId> column_ids;
  std::vector<double> primal;        // aligned with column_ids
  std::vector<double> pixel_duals;   // pi, row-major, <= 0
  double mu = 0.0;                   // cardinality dual, <= 0
  std::vector<double> branch_duals;  // aligned with MasterLp::branch_rows()
  double artificial_total = 0.0;
  BasisToken basis;
  int iterations = 0;
  bool warm_started = false;

  double value_of(ColumnId id) const;
};

/// Restricted LP master: min sum c_j x_j s.t. sum x_j <= K, per-pixel packing
/// rows sum_{j covers p} x_j <= 1, branching rows, x >= 0.
class MasterLp {
 public:
  static constexpr double kArtificialCost = 1e6;

  MasterLp(const BinaryImage& image, int budget, int initial_lifespan = 50);

  int width() const { return width_; }
  int height() const { return height_; }
  /// Effective cardinality right-hand side (K minus fixed columns).
  int budget() const { return budget_; }
  int row_count() const { return 1 + width_ * height_ + static_cast<int>(branch_rows_.size()); }

  const std::vector<Column>& columns() const { return columns_; }
  const Column* find(ColumnId id) const;
  bool contains(const Rect& r) const { return present_.contains(r); }

  /// Adds a column for `r`; nullopt when `r` is already present (duplicate),
  /// prohibited, overlaps a fixed rectangle or violates a branching row.
  /// Throws BoundsError outside the image.
  std::optional<ColumnId> add_column(const Rect& r);
  std::vector<std::optional<ColumnId>> add_columns(std::span<const Rect> rects);

  /// Solves from the master's own last basis when it is still usable.
  LpSolution solve();
  /// Solves from an explicit warm-start basis (falls back to a cold start
  /// when the token no longer describes a feasible basis).
  LpSolution solve(const BasisToken& warm);
  LpSolution solve_cold();

  /// RULE2 branching: PairDiffer or PairSame. Removes violating columns and
  /// installs the corresponding row.
  void apply_branch(const BranchConstraint& constraint);
  /// RULE1 one-branch by substitution: the column's rectangle becomes fixed,
  /// the budget drops by one and every overlapping column is removed.
  Rect fix_column(ColumnId id);
  /// RULE1 zero-branch: removes the column and prohibits its rectangle.
  Rect prohibit_column(ColumnId id);

  /// Advances column ages from a solve result; discards expired columns.
  /// Returns the number of columns removed.
  int age_columns(const LpSolution& solution);

  /// c(r) minus the duals of every row the column for `r` would occupy.
  double reduced_cost(const Rect& r, const LpSolution& solution) const;

  const std::vector<BranchRow>& branch_rows() const { return branch_rows_; }
  const std::vector<Rect>& fixed_rects() const { return fixed_; }
  std::int64_t fixed_cost() const { return fixed_cost_; }
  const std::vector<std::uint8_t>& blocked_pixels() const { return blocked_; }
  const std::unordered_set<Rect, RectHash>& prohibited() const { return prohibited_; }
  std::int64_t cost_of(const Rect& r) const { return rect_cost(integral_, r); }

 private:
  struct Built;
  Built build() const;
  LpSolution finish(const Built& built, const lp::Result& result, bool warm);
  std::vector<int> cold_basis(const Built& built) const;
  std::optional<std::vector<int>> map_token(const Built& built, const BasisToken& token) const;
  LpSolution solve_from(const std::optional<BasisToken>& warm);
  void remove_if(const std::function<bool(const Column&)>& pred);
  lp::SparseColumn column_rows(const Rect& r) const;

  int width_;
  int height_;
  int budget_;
  int initial_lifespan_;
  ImageIntegral integral_;
  std::vector<Column> columns_;
  std::unordered_set<Rect, RectHash> present_;
  std::unordered_map<Rect, int, RectHash> retired_lifespan_;
  std::unordered_set<Rect, RectHash> prohibited_;
  std::vector<BranchRow> branch_rows_;
  std::vector<double> pixel_rhs_;
  std::vector<std::uint8_t> blocked_;
  std::vector<Rect> fixed_;
  std::int64_t fixed_cost_ = 0;
  ColumnId next_id_ = 1;
  std::optional<BasisToken> last_basis_;
};

}  // namespace blanket
