#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "pdcgm/master.hpp"
#include "pdcgm/oracle.hpp"

namespace pdcgm {

enum class DriverMode { Pdcgm, Standard };

/// Column generation parameters. `delta` is the outer relative optimality
/// tolerance, `degree` the divisor D controlling how fast the inner tolerance
/// tightens, `eps_max` its ceiling, `gamma` the centrality width handed to
/// the interior point solver. Standard mode fixes the inner tolerance at
/// 1e-8 for every restricted master solve.
struct DriverConfig {
  double delta = 1e-5;
  double degree = 10.0;
  double eps_max = 0.5;
  double gamma = 0.1;
  DriverMode mode = DriverMode::Pdcgm;
  int max_outer = 1000;

  void validate() const;
};

/// One outer iteration of the trace. Bounds and gap live in the compiled
/// minimization space of the master.
struct IterationRecord {
  int outer_index = 0;
  double z_ub_running = 0.0;
  double z_lb_running = 0.0;
  double gap = 0.0;
  double epsilon_used = 0.0;
  double oracle_value = 0.0;
  int columns_added = 0;
  double rmp_time = 0.0;
  double oracle_time = 0.0;
};

/// Recomputes the relative gap of a record the way the driver does,
/// including the infinite-bound convention.
double relative_gap(double ub, double lb);

/// LB = max{LB, z_LB(RMP duals) + z_SP}.
double lower_bound_update(double current_lb, double z_lb_rmp, double z_sp);

struct DriverHooks {
  /// Called after the oracle, before the gap test. May mutate the master's
  /// linking-row activity (active-set management). Returns true when the row
  /// set changed, which forbids termination this iteration and forces a cold
  /// restart of the next restricted master solve.
  std::function<bool(const PrimalDualPoint&)> after_oracle;

  /// When set, the running upper bound only accepts points this predicate
  /// approves (restricted masters with inactive rows yield primal values
  /// that are not valid bounds for the full problem).
  std::function<bool(const PrimalDualPoint&)> accept_upper_bound;

  /// Observer invoked once per outer iteration, after the record is final.
  std::function<void(const IterationRecord&, const PrimalDualPoint&)> on_iteration;
};

struct DriverResult {
  double objective = 0.0;           // user sense
  double objective_compiled = 0.0;  // minimization-space upper bound
  PrimalDualPoint best_point;       // iterate attaining the running UB
  PrimalDualPoint final_point;      // iterate of the terminating iteration
  std::vector<IterationRecord> trace;
  int outer_iterations = 0;
};

/// Runs column generation on `rm` (mutated in place). Throws
/// MaxOuterExceeded, MasterInfeasible (artificial mass at exit) or
/// propagates solver failures.
DriverResult run_column_generation(RestrictedMaster& rm, PricingOracle& oracle,
                                   const DriverConfig& cfg,
                                   const DriverHooks& hooks = {});

/// CSV trace, header `iter,ub,lb,gap,eps,zsp,cols_added,rmp_s,oracle_s`,
/// reals with 12 significant digits.
void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& trace);

}  // namespace pdcgm
