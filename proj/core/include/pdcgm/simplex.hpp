#pragma once

#include <optional>
#include <vector>

#include "pdcgm/linear_program.hpp"

namespace pdcgm {

enum class SimplexStatus { Optimal, Unbounded, Infeasible };

/// Outcome of a simplex solve.
///
/// Optimal:    point, duals and objective are set, ray is empty.
/// Unbounded:  ray holds a direction d (one entry per variable) with
///             A_eq d = 0, A_le d <= 0, d >= 0 on nonnegative variables and
///             objective . d < 0.
/// Infeasible: ray holds a Farkas certificate y (one entry per row) with
///             y.A <= 0 on every nonnegative variable column, y.A = 0 on free
///             columns, y <= 0 on LessEqual rows and y.rhs > 0.
struct SimplexOutcome {
  SimplexStatus status = SimplexStatus::Optimal;
  std::optional<std::vector<double>> point;
  std::optional<std::vector<double>> duals;
  std::optional<std::vector<double>> ray;
  std::optional<double> objective;
};

/// Dense-tableau two-phase primal simplex. Entering rule is Dantzig with
/// lowest-index tie break; after 50 degenerate pivots it switches to Bland's
/// rule. Ratio-test ties are broken by lowest basic variable index.
SimplexOutcome simplex_solve(const LinearProgram& lp);

}  // namespace pdcgm
