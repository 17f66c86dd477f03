#include "pdcgm/quad_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace pdcgm {

double QuadProblem::bowl_value(int k, const std::vector<double>& alpha) const {
  const QuadBowl& bowl = bowls[k];
  double v = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    v += 0.5 * bowl.curvature[i] * alpha[i] * alpha[i] - bowl.slope[i] * alpha[i];
  return v;
}

void QuadProblem::validate() const {
  if (bowls.empty()) throw InvalidProgram("quadratic problem has no bowls");
  if (!(box_upper > 0.0)) throw InvalidProgram("box upper bound must be positive");
  const std::size_t d = bowls.front().curvature.size();
  for (const QuadBowl& b : bowls) {
    if (b.curvature.size() != d || b.slope.size() != d)
      throw InvalidProgram("bowl dimensions disagree");
    for (double a : b.curvature)
      if (!(a > 0.0)) throw InvalidProgram("bowl curvature must be positive");
  }
}

RestrictedMaster build_quad_master(const QuadProblem& problem) {
  problem.validate();
  const int k = static_cast<int>(problem.bowls.size());
  std::vector<LinkingRow> rows(k, LinkingRow{LinkKind::GreaterEqual, 0.0, true});
  RestrictedMaster rm(Sense::Min, std::move(rows), 1);
  FreeVariable rho;
  rho.cost = 1.0;
  for (int r = 0; r < k; ++r) rho.entries.push_back({r, 1.0});
  rm.add_free_variable(std::move(rho));
  return rm;
}

std::vector<double> quad_minimizer(const QuadProblem& problem,
                                   const std::vector<double>& beta) {
  const int d = problem.dimension();
  const int k = static_cast<int>(problem.bowls.size());
  std::vector<double> alpha(d, 0.0);
  for (int i = 0; i < d; ++i) {
    double a = 0.0, b = 0.0;
    for (int kk = 0; kk < k; ++kk) {
      a += beta[kk] * problem.bowls[kk].curvature[i];
      b += beta[kk] * problem.bowls[kk].slope[i];
    }
    alpha[i] = std::clamp(b / a, 0.0, problem.box_upper);
  }
  return alpha;
}

OracleResult quad_oracle_price(const DualPoint& duals, const QuadProblem& problem) {
  const int k = static_cast<int>(problem.bowls.size());
  if (static_cast<int>(duals.linking_duals.size()) != k ||
      duals.convexity_duals.size() != 1)
    throw BadWeights("dual point does not match the bowl count");

  std::vector<double> beta(k);
  double sum = 0.0;
  for (int kk = 0; kk < k; ++kk) {
    const double w = duals.linking_duals[kk];
    if (w < -1e-9) throw BadWeights("negative weight");
    beta[kk] = std::max(w, 0.0);
    sum += beta[kk];
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw BadWeights("weights do not sum to one");

  const std::vector<double> alpha = quad_minimizer(problem, beta);
  double sp = 0.0;
  std::vector<double> bowl_values(k);
  for (int kk = 0; kk < k; ++kk) {
    bowl_values[kk] = problem.bowl_value(kk, alpha);
    sp += beta[kk] * bowl_values[kk];
  }

  OracleResult res;
  const double rc = sp - duals.convexity_duals[0];
  if (rc < 0.0) {
    Column col;
    col.cost = 0.0;
    for (int kk = 0; kk < k; ++kk)
      col.entries.push_back({kk, -bowl_values[kk]});
    col.convexity_row = 0;
    col.origin = ColumnOrigin::Point;
    col.oracle_id = 0;
    res.per_subproblem.push_back({0, ColumnOrigin::Point, rc, std::move(col)});
    res.z_sp = rc;
  }
  return res;
}

}  // namespace pdcgm
