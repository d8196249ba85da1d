#include "blanket/master_lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace blanket {

double LpSolution::value_of(ColumnId id) const {
  for (std::size_t i = 0; i < column_ids.size(); ++i) {
    if (column_ids[i] == id) return primal[i];
  }
  return 0.0;
}

struct MasterLp::Built {
  lp::Problem problem;
  std::vector<VarKey> keys;
  std::vector<int> row_start_var;  // per row: slack var, or surplus var for >= rows
  std::size_t structural = 0;
};

MasterLp::MasterLp(const BinaryImage& image, int budget, int initial_lifespan)
    : width_(image.width()),
      height_(image.height()),
      budget_(budget),
      initial_lifespan_(initial_lifespan),
      integral_(image),
      pixel_rhs_(image.pixel_count(), 1.0),
      blocked_(image.pixel_count(), 0) {
  if (budget < 0) throw std::invalid_argument("cardinality budget must be nonnegative");
  if (initial_lifespan < 1) throw std::invalid_argument("column lifespan must be positive");
}

const Column* MasterLp::find(ColumnId id) const {
  for (const auto& c : columns_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::optional<ColumnId> MasterLp::add_column(const Rect& r) {
  if (!r.valid() || r.left < 1 || r.top < 1 || r.right > width_ || r.bottom > height_) {
    throw BoundsError("column rectangle " + to_string(r) + " outside image");
  }
  if (present_.contains(r) || prohibited_.contains(r)) return std::nullopt;
  for (const Rect& f : fixed_) {
    if (f.intersects(r)) return std::nullopt;
  }
  for (const BranchRow& b : branch_rows_) {
    const bool both = r.contains(b.e) && r.contains(b.f);
    const bool one = r.contains(b.e) != r.contains(b.f);
    if (b.sense == BranchRow::Sense::AtMostZero ? both : one) return std::nullopt;
  }
  Column col;
  col.id = next_id_++;
  col.rect = r;
  col.cost = rect_cost(integral_, r);
  if (auto it = retired_lifespan_.find(r); it != retired_lifespan_.end()) {
    col.lifespan = 2 * it->second;
  } else {
    col.lifespan = initial_lifespan_;
  }
  columns_.push_back(col);
  present_.insert(r);
  return col.id;
}

std::vector<std::optional<ColumnId>> MasterLp::add_columns(std::span<const Rect> rects) {
  std::vector<std::optional<ColumnId>> ids;
  ids.reserve(rects.size());
  for (const auto& r : rects) ids.push_back(add_column(r));
  return ids;
}

lp::SparseColumn MasterLp::column_rows(const Rect& r) const {
  lp::SparseColumn col;
  col.rows.reserve(static_cast<std::size_t>(r.area()) + 1);
  col.rows.push_back(0);
  for (int y = r.top; y <= r.bottom; ++y) {
    for (int x = r.left; x <= r.right; ++x) {
      col.rows.push_back(1 + (y - 1) * width_ + (x - 1));
    }
  }
  const int base = 1 + width_ * height_;
  for (std::size_t b = 0; b < branch_rows_.size(); ++b) {
    if (r.contains(branch_rows_[b].e) && r.contains(branch_rows_[b].f)) {
      col.rows.push_back(base + static_cast<int>(b));
    }
  }
  col.values.assign(col.rows.size(), 1.0);
  return col;
}

MasterLp::Built MasterLp::build() const {
  Built b;
  const int m = row_count();
  const int pixels = width_ * height_;
  auto& p = b.problem;
  p.rows = m;
  p.rhs.resize(static_cast<std::size_t>(m));
  p.rhs[0] = budget_;
  for (int i = 0; i < pixels; ++i) p.rhs[1 + i] = pixel_rhs_[i];
  for (std::size_t r = 0; r < branch_rows_.size(); ++r) {
    p.rhs[1 + pixels + r] = branch_rows_[r].sense == BranchRow::Sense::AtLeastOne ? 1.0 : 0.0;
  }

  for (const auto& c : columns_) {
    p.columns.push_back(column_rows(c.rect));
    p.cost.push_back(static_cast<double>(c.cost));
    b.keys.push_back({VarKey::Kind::Column, c.id});
  }
  b.structural = columns_.size();
  b.row_start_var.resize(static_cast<std::size_t>(m));
  for (int row = 0; row < m; ++row) {
    const bool at_least = row > pixels &&
                          branch_rows_[row - 1 - pixels].sense == BranchRow::Sense::AtLeastOne;
    b.row_start_var[row] = static_cast<int>(p.columns.size());
    if (at_least) {
      p.columns.push_back({{row}, {-1.0}});
      p.cost.push_back(0.0);
      b.keys.push_back({VarKey::Kind::Surplus, row});
      p.columns.push_back({{row}, {1.0}});
      p.cost.push_back(kArtificialCost);
      b.keys.push_back({VarKey::Kind::Artificial, row});
    } else {
      p.columns.push_back({{row}, {1.0}});
      p.cost.push_back(0.0);
      b.keys.push_back({VarKey::Kind::Slack, row});
    }
  }
  return b;
}

std::vector<int> MasterLp::cold_basis(const Built& built) const {
  std::vector<int> basis(static_cast<std::size_t>(built.problem.rows));
  for (int row = 0; row < built.problem.rows; ++row) {
    const int v = built.row_start_var[row];
    // >= rows start from their artificial (the variable after the surplus).
    basis[row] = built.keys[v].kind == VarKey::Kind::Surplus ? v + 1 : v;
  }
  return basis;
}

std::optional<std::vector<int>> MasterLp::map_token(const Built& built,
                                                    const BasisToken& token) const {
  std::vector<int> basis;
  basis.reserve(static_cast<std::size_t>(built.problem.rows));
  std::unordered_map<ColumnId, int> column_index;
  for (std::size_t j = 0; j < built.structural; ++j) column_index[built.keys[j].id] = static_cast<int>(j);
  for (const auto& key : token.basic) {
    if (key.kind == VarKey::Kind::Column) {
      auto it = column_index.find(key.id);
      if (it == column_index.end()) return std::nullopt;
      basis.push_back(it->second);
    } else {
      if (key.id < 0 || key.id >= built.problem.rows) return std::nullopt;
      const int v = built.row_start_var[key.id];
      int idx = -1;
      for (int off = 0; off < 2 && v + off < static_cast<int>(built.keys.size()); ++off) {
        if (built.keys[v + off] == key) idx = v + off;
      }
      if (idx < 0) return std::nullopt;
      basis.push_back(idx);
    }
  }
  // Rows added since the token was taken enter with their own slack/artificial.
  for (int row = token.row_count; row < built.problem.rows; ++row) {
    const int v = built.row_start_var[row];
    basis.push_back(built.keys[v].kind == VarKey::Kind::Surplus ? v + 1 : v);
  }
  if (static_cast<int>(basis.size()) != built.problem.rows) return std::nullopt;
  return basis;
}

LpSolution MasterLp::finish(const Built& built, const lp::Result& result, bool warm) {
  LpSolution sol;
  sol.objective = result.objective;
  sol.dual_objective = result.dual_objective;
  sol.iterations = result.iterations;
  sol.warm_started = warm;
  sol.column_ids.reserve(built.structural);
  sol.primal.reserve(built.structural);
  for (std::size_t j = 0; j < built.structural; ++j) {
    sol.column_ids.push_back(built.keys[j].id);
    sol.primal.push_back(result.x[j]);
  }
  const int pixels = width_ * height_;
  sol.mu = result.duals[0];
  sol.pixel_duals.assign(result.duals.begin() + 1, result.duals.begin() + 1 + pixels);
  sol.branch_duals.assign(result.duals.begin() + 1 + pixels, result.duals.end());
  for (std::size_t j = built.structural; j < built.keys.size(); ++j) {
    if (built.keys[j].kind == VarKey::Kind::Artificial) sol.artificial_total += result.x[j];
  }
  sol.basis.row_count = built.problem.rows;
  for (int j : result.basis) sol.basis.basic.push_back(built.keys[j]);
  last_basis_ = sol.basis;
  return sol;
}

LpSolution MasterLp::solve_from(const std::optional<BasisToken>& warm) {
  const Built built = build();
  if (warm) {
    if (auto basis = map_token(built, *warm)) {
      const auto result = lp::solve(built.problem, *basis);
      if (result.status == lp::Status::Optimal) return finish(built, result, true);
      if (result.status != lp::Status::InfeasibleStart && result.status != lp::Status::Singular) {
        throw lp::SolverError("master LP failed from warm start: " + lp::to_string(result.status));
      }
    }
  }
  const auto basis = cold_basis(built);
  const auto result = lp::solve(built.problem, basis);
  if (result.status != lp::Status::Optimal) {
    std::ostringstream os;
    os << "master LP failed: " << lp::to_string(result.status) << " after " << result.iterations
       << " pivots (" << built.problem.rows << " rows, " << built.problem.columns.size()
       << " variables)";
    throw lp::SolverError(os.str());
  }
  return finish(built, result, false);
}

LpSolution MasterLp::solve() { return solve_from(last_basis_); }

LpSolution MasterLp::solve(const BasisToken& warm) { return solve_from(warm); }

LpSolution MasterLp::solve_cold() { return solve_from(std::nullopt); }

void MasterLp::remove_if(const std::function<bool(const Column&)>& pred) {
  std::vector<Column> kept;
  kept.reserve(columns_.size());
  for (auto& c : columns_) {
    if (pred(c)) {
      present_.erase(c.rect);
    } else {
      kept.push_back(c);
    }
  }
  columns_ = std::move(kept);
}

void MasterLp::apply_branch(const BranchConstraint& constraint) {
  const auto check = [&](Pixel e, Pixel f) {
    const auto in = [&](Pixel p) { return 1 <= p.x && p.x <= width_ && 1 <= p.y && p.y <= height_; };
    if (!in(e) || !in(f)) throw BoundsError("branching pixel outside image");
    if (e == f) throw std::invalid_argument("branching pixels must differ");
  };
  if (const auto* d = std::get_if<PairDiffer>(&constraint)) {
    check(d->e, d->f);
    remove_if([&](const Column& c) { return !satisfies(c.rect, constraint); });
    branch_rows_.push_back({BranchRow::Sense::AtMostZero, d->e, d->f});
  } else if (const auto* s = std::get_if<PairSame>(&constraint)) {
    check(s->e, s->f);
    remove_if([&](const Column& c) { return !satisfies(c.rect, constraint); });
    branch_rows_.push_back({BranchRow::Sense::AtLeastOne, s->e, s->f});
  } else {
    throw std::invalid_argument("apply_branch expects a PairDiffer or PairSame constraint");
  }
}

Rect MasterLp::fix_column(ColumnId id) {
  const Column* col = find(id);
  if (col == nullptr) throw std::out_of_range("unknown column id " + std::to_string(id));
  if (budget_ < 1) throw std::logic_error("cannot fix a column with an exhausted budget");
  const Rect r = col->rect;
  fixed_.push_back(r);
  fixed_cost_ += col->cost;
  --budget_;
  for (int y = r.top; y <= r.bottom; ++y) {
    for (int x = r.left; x <= r.right; ++x) {
      const auto i = static_cast<std::size_t>((y - 1) * width_ + (x - 1));
      pixel_rhs_[i] = 0.0;
      blocked_[i] = 1;
    }
  }
  remove_if([&](const Column& c) { return c.rect.intersects(r); });
  return r;
}

Rect MasterLp::prohibit_column(ColumnId id) {
  const Column* col = find(id);
  if (col == nullptr) throw std::out_of_range("unknown column id " + std::to_string(id));
  const Rect r = col->rect;
  prohibited_.insert(r);
  remove_if([&](const Column& c) { return c.id == id; });
  return r;
}

int MasterLp::age_columns(const LpSolution& solution) {
  std::unordered_set<ColumnId> basic;
  for (const auto& key : solution.basis.basic) {
    if (key.kind == VarKey::Kind::Column) basic.insert(key.id);
  }
  int removed = 0;
  for (auto& c : columns_) {
    if (basic.contains(c.id) || solution.value_of(c.id) > 1e-9) {
      c.age = 0;
    } else {
      ++c.age;
    }
  }
  remove_if([&](const Column& c) {
    if (c.age > c.lifespan && !basic.contains(c.id)) {
      retired_lifespan_[c.rect] = c.lifespan;
      ++removed;
      return true;
    }
    return false;
  });
  return removed;
}

double MasterLp::reduced_cost(const Rect& r, const LpSolution& solution) const {
  double d = static_cast<double>(rect_cost(integral_, r)) - solution.mu;
  for (int y = r.top; y <= r.bottom; ++y) {
    for (int x = r.left; x <= r.right; ++x) {
      d -= solution.pixel_duals[static_cast<std::size_t>((y - 1) * width_ + (x - 1))];
    }
  }
  for (std::size_t b = 0; b < branch_rows_.size() && b < solution.branch_duals.size(); ++b) {
    if (r.contains(branch_rows_[b].e) && r.contains(branch_rows_[b].f)) {
      d -= solution.branch_duals[b];
    }
  }
  return d;
}

}  // namespace blanket
