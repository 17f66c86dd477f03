#include "pdcgm/master.hpp"

#include <algorithm>
#include <cmath>

namespace pdcgm {

namespace {

SparseRow normalized(const SparseRow& row) {
  SparseRow out;
  for (const SparseEntry& e : row)
    if (e.value != 0.0) out.push_back(e);
  std::sort(out.begin(), out.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return out;
}

bool same_entries(const SparseRow& a, const SparseRow& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].index != b[i].index || std::abs(a[i].value - b[i].value) > 1e-12)
      return false;
  return true;
}

}  // namespace

RestrictedMaster::RestrictedMaster(Sense sense, std::vector<LinkingRow> linking_rows,
                                   int num_convexity_rows)
    : sense_(sense),
      linking_rows_(std::move(linking_rows)),
      num_convexity_(num_convexity_rows) {}

void RestrictedMaster::enable_artificial() { artificial_ = true; }

void RestrictedMaster::add_free_variable(FreeVariable v) {
  v.entries = normalized(v.entries);
  free_vars_.push_back(std::move(v));
}

int RestrictedMaster::add_columns(const std::vector<Column>& cols) {
  int added = 0;
  for (const Column& c : cols) {
    Column col = c;
    col.entries = normalized(col.entries);
    for (const SparseEntry& e : col.entries)
      if (e.index < 0 || e.index >= num_linking_rows())
        throw DimensionMismatch("column entry outside linking-row universe");
    if (col.convexity_row &&
        (*col.convexity_row < 0 || *col.convexity_row >= num_convexity_))
      throw DimensionMismatch("column convexity row out of range");
    bool dup = false;
    for (const Column& old : columns_) {
      if (old.convexity_row == col.convexity_row &&
          std::abs(old.cost - col.cost) <= 1e-12 &&
          same_entries(old.entries, col.entries)) {
        dup = true;
        break;
      }
    }
    if (dup) {
      ++duplicates_skipped_;
      continue;
    }
    columns_.push_back(std::move(col));
    ++added;
  }
  return added;
}

void RestrictedMaster::set_row_active(int linking_row, bool active) {
  linking_rows_[linking_row].active = active;
}

double RestrictedMaster::min_sense_cost(const Column& col) const {
  return sense_ == Sense::Max ? -col.cost : col.cost;
}

LinearProgram RestrictedMaster::compile() const {
  if (columns_.empty() && !artificial_)
    throw EmptyMaster("restricted master has no columns and no artificial");
  std::vector<bool> covered(num_convexity_, artificial_);
  for (const Column& c : columns_)
    if (c.convexity_row) covered[*c.convexity_row] = true;
  for (int k = 0; k < num_convexity_; ++k)
    if (!covered[k])
      throw EmptyMaster("convexity row without column or artificial");

  // Compiled row index per active universe row.
  std::vector<int> compiled_row(linking_rows_.size(), -1);
  int n_active = 0;
  for (std::size_t i = 0; i < linking_rows_.size(); ++i)
    if (linking_rows_[i].active) compiled_row[i] = n_active++;

  const int n_cols = static_cast<int>(columns_.size());
  const int n_free = static_cast<int>(free_vars_.size());
  const int n_vars = n_cols + n_free + (artificial_ ? 1 : 0);
  const int n_rows = n_active + num_convexity_;

  LinearProgram lp;
  lp.objective.assign(n_vars, 0.0);
  lp.var_kinds.assign(n_vars, VarKind::NonNegative);
  lp.rows.assign(n_rows, {});
  lp.row_kinds.assign(n_rows, RowKind::Equal);
  lp.rhs.assign(n_rows, 0.0);

  for (std::size_t i = 0; i < linking_rows_.size(); ++i) {
    if (compiled_row[i] < 0) continue;
    const LinkingRow& row = linking_rows_[i];
    const int r = compiled_row[i];
    const double sign = row.kind == LinkKind::GreaterEqual ? -1.0 : 1.0;
    lp.row_kinds[r] = row.kind == LinkKind::Equal ? RowKind::Equal : RowKind::LessEqual;
    lp.rhs[r] = sign * row.rhs;
  }
  for (int k = 0; k < num_convexity_; ++k) {
    lp.row_kinds[n_active + k] = RowKind::Equal;
    lp.rhs[n_active + k] = 1.0;
  }

  auto put_entries = [&](int var, const SparseRow& entries) {
    for (const SparseEntry& e : entries) {
      if (compiled_row[e.index] < 0) continue;
      const double sign =
          linking_rows_[e.index].kind == LinkKind::GreaterEqual ? -1.0 : 1.0;
      lp.rows[compiled_row[e.index]].push_back({var, sign * e.value});
    }
  };

  for (int j = 0; j < n_cols; ++j) {
    lp.objective[j] = min_sense_cost(columns_[j]);
    put_entries(j, columns_[j].entries);
    if (columns_[j].convexity_row)
      lp.rows[n_active + *columns_[j].convexity_row].push_back({j, 1.0});
  }
  for (int f = 0; f < n_free; ++f) {
    const int var = n_cols + f;
    lp.objective[var] = sense_ == Sense::Max ? -free_vars_[f].cost : free_vars_[f].cost;
    lp.var_kinds[var] = VarKind::Free;
    put_entries(var, free_vars_[f].entries);
  }
  if (artificial_) {
    const int var = n_vars - 1;
    lp.objective[var] = kArtificialCost;
    for (int k = 0; k < num_convexity_; ++k)
      lp.rows[n_active + k].push_back({var, 1.0});
  }
  lp.validate();
  return lp;
}

std::pair<double, double> RestrictedMaster::bounds_compiled(
    const PrimalDualPoint& point) const {
  int n_active = 0;
  for (const LinkingRow& row : linking_rows_)
    if (row.active) ++n_active;
  const int n_vars = static_cast<int>(columns_.size() + free_vars_.size()) +
                     (artificial_ ? 1 : 0);
  if (static_cast<int>(point.primal.size()) != n_vars ||
      static_cast<int>(point.duals.size()) != n_active + num_convexity_)
    throw DimensionMismatch("point does not match the compiled master");

  double z_ub = 0.0;
  for (std::size_t j = 0; j < columns_.size(); ++j)
    z_ub += min_sense_cost(columns_[j]) * point.primal[j];
  for (std::size_t f = 0; f < free_vars_.size(); ++f) {
    const double cost =
        sense_ == Sense::Max ? -free_vars_[f].cost : free_vars_[f].cost;
    z_ub += cost * point.primal[columns_.size() + f];
  }
  if (artificial_) z_ub += kArtificialCost * point.primal[n_vars - 1];

  double z_lb = 0.0;
  int r = 0;
  for (const LinkingRow& row : linking_rows_) {
    if (!row.active) continue;
    const double sign = row.kind == LinkKind::GreaterEqual ? -1.0 : 1.0;
    z_lb += sign * row.rhs * point.duals[r];
    ++r;
  }
  for (int k = 0; k < num_convexity_; ++k) z_lb += point.duals[r + k];
  return {z_ub, z_lb};
}

std::pair<double, double> RestrictedMaster::bounds(
    const PrimalDualPoint& point) const {
  auto [ub, lb] = bounds_compiled(point);
  if (sense_ == Sense::Max) return {-lb, -ub};
  return {ub, lb};
}

DualPoint RestrictedMaster::dual_point(const PrimalDualPoint& point) const {
  DualPoint dp;
  dp.linking_duals.assign(linking_rows_.size(), 0.0);
  int r = 0;
  for (std::size_t i = 0; i < linking_rows_.size(); ++i) {
    if (!linking_rows_[i].active) continue;
    const double sign =
        linking_rows_[i].kind == LinkKind::GreaterEqual ? -1.0 : 1.0;
    dp.linking_duals[i] = sign * point.duals[r];
    ++r;
  }
  dp.convexity_duals.assign(point.duals.begin() + r,
                            point.duals.begin() + r + num_convexity_);
  return dp;
}

double RestrictedMaster::reduced_cost(const Column& col,
                                      const DualPoint& duals) const {
  double rc = min_sense_cost(col);
  for (const SparseEntry& e : col.entries)
    rc -= e.value * duals.linking_duals[e.index];
  if (col.convexity_row) rc -= duals.convexity_duals[*col.convexity_row];
  return rc;
}

std::vector<double> RestrictedMaster::column_activity(
    const PrimalDualPoint& point) const {
  std::vector<double> act(linking_rows_.size(), 0.0);
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const SparseEntry& e : columns_[j].entries)
      act[e.index] += e.value * point.primal[j];
  return act;
}

double RestrictedMaster::artificial_value(const PrimalDualPoint& point) const {
  if (!artificial_) return 0.0;
  return point.primal.back();
}

}  // namespace pdcgm
