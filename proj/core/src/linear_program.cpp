#include "pdcgm/linear_program.hpp"

#include <cmath>
#include <unordered_set>

namespace pdcgm {

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  const std::size_t m = rows.size();
  if (row_kinds.size() != m || rhs.size() != m)
    throw InvalidProgram("row field sizes disagree");
  if (var_kinds.size() != n)
    throw InvalidProgram("var_kinds size disagrees with objective");
  for (double c : objective)
    if (!std::isfinite(c)) throw InvalidProgram("non-finite objective entry");
  for (double b : rhs)
    if (!std::isfinite(b)) throw InvalidProgram("non-finite rhs entry");
  std::unordered_set<int> seen;
  for (std::size_t i = 0; i < m; ++i) {
    seen.clear();
    for (const SparseEntry& e : rows[i]) {
      if (e.index < 0 || e.index >= static_cast<int>(n))
        throw InvalidProgram("row entry index out of range");
      if (!std::isfinite(e.value))
        throw InvalidProgram("non-finite row coefficient");
      if (!seen.insert(e.index).second)
        throw InvalidProgram("duplicate entry in sparse row");
    }
  }
}

double LinearProgram::row_activity(int row, const std::vector<double>& x) const {
  double a = 0.0;
  for (const SparseEntry& e : rows[row]) a += e.value * x[e.index];
  return a;
}

double LinearProgram::objective_value(const std::vector<double>& x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < objective.size(); ++j) v += objective[j] * x[j];
  return v;
}

LinearProgram make_dense_lp(const std::vector<double>& objective,
                            const std::vector<std::vector<double>>& rows,
                            const std::vector<RowKind>& row_kinds,
                            const std::vector<double>& rhs,
                            const std::vector<VarKind>& var_kinds) {
  LinearProgram lp;
  lp.objective = objective;
  lp.row_kinds = row_kinds;
  lp.rhs = rhs;
  lp.var_kinds = var_kinds.empty()
                     ? std::vector<VarKind>(objective.size(), VarKind::NonNegative)
                     : var_kinds;
  lp.rows.reserve(rows.size());
  for (const auto& dense : rows) {
    SparseRow row;
    for (int j = 0; j < static_cast<int>(dense.size()); ++j)
      if (dense[j] != 0.0) row.push_back({j, dense[j]});
    lp.rows.push_back(std::move(row));
  }
  lp.validate();
  return lp;
}

}  // namespace pdcgm
