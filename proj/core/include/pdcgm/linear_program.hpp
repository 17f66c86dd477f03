#pragma once

#include <cstddef>
#include <vector>

#include "pdcgm/errors.hpp"

namespace pdcgm {

enum class RowKind { Equal, LessEqual };
enum class VarKind { NonNegative, Free };

/// One coefficient of a sparse row: column index and value.
struct SparseEntry {
  int index = 0;
  double value = 0.0;
};

using SparseRow = std::vector<SparseEntry>;

/// Sparse LP in canonical minimization form:
///
///   min  objective . x
///   s.t. rows[i] . x  =  rhs[i]   (row_kinds[i] == Equal)
///        rows[i] . x  <= rhs[i]   (row_kinds[i] == LessEqual)
///        x[j] >= 0                (var_kinds[j] == NonNegative)
///        x[j] free                (var_kinds[j] == Free)
struct LinearProgram {
  std::vector<double> objective;
  std::vector<SparseRow> rows;
  std::vector<RowKind> row_kinds;
  std::vector<double> rhs;
  std::vector<VarKind> var_kinds;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  /// Throws InvalidProgram on inconsistent dimensions, duplicate sparse
  /// entries within a row, out-of-range indices or non-finite coefficients.
  void validate() const;

  double row_activity(int row, const std::vector<double>& x) const;
  double objective_value(const std::vector<double>& x) const;
};

/// Convenience builder used by tests and instance assembly: dense rows.
LinearProgram make_dense_lp(const std::vector<double>& objective,
                            const std::vector<std::vector<double>>& rows,
                            const std::vector<RowKind>& row_kinds,
                            const std::vector<double>& rhs,
                            const std::vector<VarKind>& var_kinds = {});

}  // namespace pdcgm
