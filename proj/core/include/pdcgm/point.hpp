#pragma once

#include <vector>

namespace pdcgm {

/// Primal/dual/slack iterate returned by the interior point solver.
///
/// `slacks` holds one value per LessEqual row (the row slack, in row order)
/// followed by one value per NonNegative variable (its reduced cost, in
/// variable order). Free variables carry no slack.
///
/// `mu` is the barrier average over all complementarity pairs of the solver's
/// internal standard form, so `centered == true` guarantees every visible
/// product lies in [gamma*mu, mu/gamma].
struct PrimalDualPoint {
  std::vector<double> primal;
  std::vector<double> duals;
  std::vector<double> slacks;
  double mu = 0.0;
  double rel_gap = 0.0;
  bool centered = false;
  int iterations = 0;
};

}  // namespace pdcgm
