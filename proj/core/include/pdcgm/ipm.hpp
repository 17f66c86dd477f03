#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pdcgm/linear_program.hpp"
#include "pdcgm/point.hpp"

namespace pdcgm {

/// Infeasible primal-dual path-following solver (Mehrotra predictor-corrector
/// with dense normal equations). Stops at the first well-centered iterate
/// whose relative duality gap is at most `eps`:
///
///   0 <= primal_obj - dual_obj <= eps * (1e-10 + |primal_obj|)
///
/// with every complementarity product inside [gamma*mu, mu/gamma]. Free
/// variables are split internally into differences of nonnegative pairs.
///
/// `warm`, when present and dimensionally compatible, seeds the iterate; its
/// complementarity products are pushed back into the gamma-neighborhood by a
/// scalar shift. An incompatible warm point falls back to a cold start.
///
/// Throws NumericalFailure on Cholesky breakdown, stalling, or when 200
/// iterations are exceeded.
PrimalDualPoint ipm_solve_to_gap(const LinearProgram& lp, double eps,
                                 double gamma,
                                 const std::optional<PrimalDualPoint>& warm = {});

/// Primal and dual objective values (c.x, rhs.y) of a point for this LP.
/// Throws DimensionMismatch when the point does not fit the program.
std::pair<double, double> primal_dual_objectives(const LinearProgram& lp,
                                                 const PrimalDualPoint& point);

/// All complementarity products visible in a returned point: one per
/// LessEqual row (slack * -dual) followed by one per nonnegative variable
/// (value * reduced cost). Used by centrality checks.
std::vector<double> complementarity_products(const LinearProgram& lp,
                                             const PrimalDualPoint& point);

}  // namespace pdcgm
