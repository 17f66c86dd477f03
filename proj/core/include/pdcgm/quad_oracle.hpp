#pragma once

#include <vector>

#include "pdcgm/master.hpp"
#include "pdcgm/oracle.hpp"

namespace pdcgm {

/// Separable quadratic bowl S_k(alpha) = sum_i (a_ik/2) alpha_i^2 - b_ik alpha_i
/// over the box [0, C]^d. Curvatures must be strictly positive.
struct QuadBowl {
  std::vector<double> curvature;  // a_i > 0
  std::vector<double> slope;      // b_i
};

struct QuadProblem {
  std::vector<QuadBowl> bowls;
  double box_upper = 1.0;  // C

  int dimension() const {
    return bowls.empty() ? 0 : static_cast<int>(bowls.front().curvature.size());
  }
  double bowl_value(int k, const std::vector<double>& alpha) const;
  void validate() const;
};

/// Epigraph master for the inner linearization: min rho subject to
/// rho - sum_p S_k(alpha_p) lambda_p >= 0 for each bowl k and sum lambda = 1.
/// rho is a free variable with coefficient +1 on every linking row; point
/// columns carry cost 0 and entry -S_k(alpha_p) on row k.
RestrictedMaster build_quad_master(const QuadProblem& problem);

/// Prices the epigraph master: weights beta >= 0 summing to 1 are read from
/// the GreaterEqual-row duals, the weighted bowl is minimized coordinatewise
/// by clamp(b_i(beta)/a_i(beta), 0, C). Throws BadWeights when the duals are
/// not a probability vector.
OracleResult quad_oracle_price(const DualPoint& duals, const QuadProblem& problem);

/// Coordinatewise minimizer of the beta-weighted bowl.
std::vector<double> quad_minimizer(const QuadProblem& problem,
                                   const std::vector<double>& beta);

class QuadOracle : public PricingOracle {
 public:
  explicit QuadOracle(QuadProblem problem) : problem_(std::move(problem)) {}
  OracleResult price(const DualPoint& duals) override {
    return quad_oracle_price(duals, problem_);
  }
  std::string name() const override { return "quad"; }
  const QuadProblem& problem() const { return problem_; }

 private:
  QuadProblem problem_;
};

}  // namespace pdcgm
