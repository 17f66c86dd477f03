#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdcgm/driver.hpp"
#include "pdcgm/master.hpp"
#include "pdcgm/oracle.hpp"
#include "pdcgm/rng.hpp"

namespace pdcgm {
namespace tssp {

/// First-stage block: min c.x with A x = b, x >= 0 (A is m x n dense).
struct FirstStage {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
};

/// One scenario of the recourse: probability p, cost q, technology matrix T
/// (mt x n), recourse matrix W (mt x nt) and right-hand side h, all dense.
struct Scenario {
  double probability = 0.0;
  std::vector<double> q;
  std::vector<std::vector<double>> t_mat;
  std::vector<std::vector<double>> w_mat;
  std::vector<double> h;
};

struct StochasticInstance {
  FirstStage first_stage;
  std::vector<Scenario> scenarios;

  int first_vars() const { return static_cast<int>(first_stage.c.size()); }
  int first_rows() const { return static_cast<int>(first_stage.b.size()); }
  int second_vars() const {
    return scenarios.empty() ? 0 : static_cast<int>(scenarios.front().q.size());
  }
  int second_rows() const {
    return scenarios.empty() ? 0 : static_cast<int>(scenarios.front().h.size());
  }
  /// Probabilities positive and summing to 1 within 1e-9, consistent shapes.
  void validate() const;
};

/// Deterministic equivalent LP: variables x then y_1..y_S, equality rows
/// A x = b then T_i x + W_i y_i = h_i.
LinearProgram dep_linear_program(const StochasticInstance& inst);

/// Probability-weighted average of the scenario data (single scenario, p=1).
StochasticInstance expected_value_instance(const StochasticInstance& inst);

enum class ScenarioStatus { Point, Ray };

/// Outcome of one scenario subproblem at first-stage iterate x_bar: either an
/// extreme point of the dual feasible set (recourse optimal, theta = recourse
/// duals, value = (h - T x_bar).theta) or an extreme ray (recourse
/// infeasible, theta = Farkas certificate with W'theta <= 0 and
/// (h - T x_bar).theta > 0).
struct ScenarioDualResult {
  ScenarioStatus status = ScenarioStatus::Point;
  std::vector<double> theta;
  double value = 0.0;
};

/// Solves scenario i's recourse at x_bar through the primal recourse LP.
/// Throws EmptyDualSet when the recourse is unbounded (the dual polyhedron is
/// empty, the instance is invalid).
ScenarioDualResult scenario_price(const StochasticInstance& inst, int scenario,
                                  const std::vector<double>& x_bar);

/// Probability-weighted aggregated column: over all scenarios for point
/// results, over the ray subset only when any scenario came back unbounded.
Column aggregate_column(const StochasticInstance& inst,
                        const std::vector<ScenarioDualResult>& results);

/// Aggregated master over the dual of the deterministic equivalent:
/// max b.eta + sum_i h_i.(p_i theta_i) with n LessEqual linking rows
/// (rhs = first-stage costs), one convexity row, a free eta block and the
/// cost-1e6 artificial column.
RestrictedMaster build_master(const StochasticInstance& inst);

class ScenarioOracle : public PricingOracle {
 public:
  explicit ScenarioOracle(const StochasticInstance& inst) : inst_(inst) {}
  OracleResult price(const DualPoint& duals) override;
  std::string name() const override { return "tssp-scenario"; }

 private:
  const StochasticInstance& inst_;
};

struct Solution {
  double objective = 0.0;  // deterministic-equivalent minimization sense
  std::vector<double> first_stage_x;
  std::vector<IterationRecord> trace;
  int outer_iterations = 0;
  double artificial_mass = 0.0;
};

/// Column generation on the aggregated master, seeded with the artificial
/// column plus one column priced at the expected-value first-stage solution
/// (artificial-only when the expected-value problem or any scenario fails).
Solution solve(const StochasticInstance& inst, const DriverConfig& cfg,
               const DriverHooks& extra_hooks = {});

/// Structured text format with first_stage { ... } and scenario { ... }
/// blocks; see the README grammar. Throws ParseError with a line number.
StochasticInstance parse_instance(std::istream& in);
void print_instance(std::ostream& os, const StochasticInstance& inst);

/// Seeded random instance, feasible and bounded by construction: data is
/// sampled around a common feasible pair so the expected-value problem is
/// solvable, while pricing at other iterates can still hit infeasible
/// recourses (ray columns).
StochasticInstance generate_instance(DetRng& rng, int n, int m, int nt, int mt,
                                     int num_scenarios);

}  // namespace tssp
}  // namespace pdcgm
