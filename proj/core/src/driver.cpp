#include "pdcgm/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "pdcgm/ipm.hpp"

namespace pdcgm {

namespace {

constexpr double kStandardEps = 1e-8;
constexpr double kInitialEps = 0.5;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Extends the previous iterate over columns appended to the master so the
// next solve can warm start. Row changes invalidate the point entirely.
std::optional<PrimalDualPoint> extend_point(const PrimalDualPoint& point,
                                            const LinearProgram& lp,
                                            int new_cols, int insert_at,
                                            int n_le) {
  if (new_cols == 0) return point;
  PrimalDualPoint p = point;
  const double pad = 1e-4 * (1.0 + p.mu);
  p.primal.insert(p.primal.begin() + insert_at, new_cols, pad);
  // Slack layout: LessEqual rows first, then nonnegative variables in
  // variable order; the new columns sit at insert_at among the variables.
  p.slacks.insert(p.slacks.begin() + n_le + insert_at, new_cols, pad);
  if (static_cast<int>(p.primal.size()) != lp.num_vars()) return std::nullopt;
  return p;
}

void check_point_contract(const PrimalDualPoint& point, double eps) {
  if (!point.centered)
    throw NumericalFailure("restricted master solve returned uncentered point");
  if (point.rel_gap > eps * (1.0 + 1e-9))
    throw NumericalFailure("restricted master solve exceeded its tolerance");
}

}  // namespace

void DriverConfig::validate() const {
  if (!(delta > 0.0)) throw InvalidProgram("delta must be positive");
  if (!(degree > 1.0)) throw InvalidProgram("degree must exceed 1");
  if (!(eps_max > 0.0 && eps_max <= 0.5))
    throw InvalidProgram("eps_max must lie in (0, 0.5]");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw InvalidProgram("gamma must lie in (0, 1)");
  if (max_outer <= 0) throw InvalidProgram("max_outer must be positive");
}

double relative_gap(double ub, double lb) {
  if (!std::isfinite(ub) || !std::isfinite(lb))
    return std::numeric_limits<double>::infinity();
  return (ub - lb) / (1e-10 + std::abs(ub));
}

double lower_bound_update(double current_lb, double z_lb_rmp, double z_sp) {
  return std::max(current_lb, z_lb_rmp + z_sp);
}

DriverResult run_column_generation(RestrictedMaster& rm, PricingOracle& oracle,
                                   const DriverConfig& cfg,
                                   const DriverHooks& hooks) {
  cfg.validate();
  DriverResult result;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double eps = cfg.mode == DriverMode::Pdcgm ? kInitialEps : kStandardEps;

  LinearProgram lp = rm.compile();
  int n_le = 0;
  for (RowKind k : lp.row_kinds)
    if (k == RowKind::LessEqual) ++n_le;
  std::optional<PrimalDualPoint> warm;
  bool have_best = false;

  for (int t = 0; t < cfg.max_outer; ++t) {
    auto t0 = std::chrono::steady_clock::now();
    PrimalDualPoint point = ipm_solve_to_gap(lp, eps, cfg.gamma, warm);
    const double rmp_time = seconds_since(t0);
    check_point_contract(point, eps);

    const auto [z_ub, z_lb] = rm.bounds_compiled(point);
    const bool ub_ok =
        !hooks.accept_upper_bound || hooks.accept_upper_bound(point);
    if (ub_ok && z_ub < ub) {
      ub = z_ub;
      result.best_point = point;
      have_best = true;
    }

    const DualPoint duals = rm.dual_point(point);
    t0 = std::chrono::steady_clock::now();
    OracleResult priced = oracle.price(duals);
    const double oracle_time = seconds_since(t0);

    if (priced.z_sp > 1e-12)
      throw OracleFailure("oracle reported a positive value");
    for (const PricedSubproblem& sub : priced.per_subproblem) {
      const double rc = rm.reduced_cost(sub.column, duals);
      if (std::abs(rc - sub.value) > 1e-8 * (1.0 + std::abs(sub.value)))
        throw OracleFailure("column reduced cost disagrees with oracle value");
    }

    lb = lower_bound_update(lb, z_lb, priced.z_sp);
    const double gap = relative_gap(ub, lb);

    bool rows_changed = false;
    if (hooks.after_oracle) rows_changed = hooks.after_oracle(point);

    std::vector<Column> cols;
    cols.reserve(priced.per_subproblem.size());
    for (const PricedSubproblem& sub : priced.per_subproblem) {
      Column c = sub.column;
      c.iteration_added = t;
      cols.push_back(std::move(c));
    }
    const int n_cols_before = static_cast<int>(rm.columns().size());
    const int added = priced.z_sp < 0.0 ? rm.add_columns(cols) : 0;

    IterationRecord rec;
    rec.outer_index = t;
    rec.z_ub_running = ub;
    rec.z_lb_running = lb;
    rec.gap = gap;
    rec.epsilon_used = eps;
    rec.oracle_value = priced.z_sp;
    rec.columns_added = added;
    rec.rmp_time = rmp_time;
    rec.oracle_time = oracle_time;
    result.trace.push_back(rec);
    if (hooks.on_iteration) hooks.on_iteration(rec, point);

    if (cfg.mode == DriverMode::Pdcgm)
      eps = std::min(cfg.eps_max, gap / cfg.degree);

    if (gap < cfg.delta && !rows_changed) {
      result.final_point = point;
      result.outer_iterations = t + 1;
      if (rm.artificial_value(point) > kArtificialMassTol)
        throw MasterInfeasible("artificial column carries mass at termination");
      if (!have_best) {
        result.best_point = point;
        ub = z_ub;
      }
      result.objective_compiled = ub;
      result.objective = rm.sense() == Sense::Max ? -ub : ub;
      return result;
    }

    if (rows_changed) {
      lp = rm.compile();
      n_le = 0;
      for (RowKind k : lp.row_kinds)
        if (k == RowKind::LessEqual) ++n_le;
      warm.reset();
    } else if (added > 0) {
      lp = rm.compile();
      warm = extend_point(point, lp, added, n_cols_before, n_le);
    } else {
      warm = point;
    }
  }
  throw MaxOuterExceeded("column generation did not converge within max_outer");
}

void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& trace) {
  os << "iter,ub,lb,gap,eps,zsp,cols_added,rmp_s,oracle_s\n";
  char buf[64];
  const auto real = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  for (const IterationRecord& r : trace) {
    os << r.outer_index << ',' << real(r.z_ub_running) << ','
       << real(r.z_lb_running) << ',' << real(r.gap) << ','
       << real(r.epsilon_used) << ',' << real(r.oracle_value) << ','
       << r.columns_added << ',' << real(r.rmp_time) << ','
       << real(r.oracle_time) << '\n';
  }
}

}  // namespace pdcgm
