#include "pdcgm/ipm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace pdcgm {

namespace {

constexpr int kMaxIters = 200;
constexpr double kFeasTol = 1e-8;
constexpr double kStepFraction = 0.99995;
constexpr int kStallWindow = 15;
constexpr double kStallFactor = 0.9;
constexpr int kMaxCenteringPerCandidate = 30;

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Standardized {
  MatrixXd a;           // m x n (dense)
  VectorXd b;
  VectorXd c;
  std::vector<int> var_col;    // first internal column of original var j
  std::vector<int> slack_col;  // internal column of the slack of <= row i (-1 otherwise)
  int n = 0;
  int m = 0;
};

Standardized standardize(const LinearProgram& lp) {
  Standardized sf;
  sf.m = lp.num_rows();
  const int n_orig = lp.num_vars();
  sf.var_col.resize(n_orig);
  int n = 0;
  for (int j = 0; j < n_orig; ++j) {
    sf.var_col[j] = n;
    n += lp.var_kinds[j] == VarKind::Free ? 2 : 1;
  }
  sf.slack_col.assign(sf.m, -1);
  for (int i = 0; i < sf.m; ++i)
    if (lp.row_kinds[i] == RowKind::LessEqual) sf.slack_col[i] = n++;
  sf.n = n;

  sf.a = MatrixXd::Zero(sf.m, n);
  sf.b.resize(sf.m);
  sf.c = VectorXd::Zero(n);
  for (int j = 0; j < n_orig; ++j) {
    sf.c[sf.var_col[j]] = lp.objective[j];
    if (lp.var_kinds[j] == VarKind::Free)
      sf.c[sf.var_col[j] + 1] = -lp.objective[j];
  }
  for (int i = 0; i < sf.m; ++i) {
    sf.b[i] = lp.rhs[i];
    for (const SparseEntry& e : lp.rows[i]) {
      const int col = sf.var_col[e.index];
      sf.a(i, col) += e.value;
      if (lp.var_kinds[e.index] == VarKind::Free) sf.a(i, col + 1) -= e.value;
    }
    if (sf.slack_col[i] >= 0) sf.a(i, sf.slack_col[i]) = 1.0;
  }
  return sf;
}

bool in_band(const VectorXd& x, const VectorXd& s, double gamma, double mu) {
  const double lo = gamma * mu;
  const double hi = mu / gamma;
  for (int j = 0; j < x.size(); ++j) {
    const double p = x[j] * s[j];
    if (p < lo || p > hi) return false;
  }
  return true;
}

double max_step(const VectorXd& v, const VectorXd& dv) {
  double alpha = std::numeric_limits<double>::infinity();
  for (int j = 0; j < v.size(); ++j)
    if (dv[j] < 0.0) alpha = std::min(alpha, -v[j] / dv[j]);
  return alpha;
}

// Factorization of the normal matrix A D A' with escalating regularization.
class NormalSolver {
 public:
  NormalSolver(const MatrixXd& a) : a_(a) {}

  void factor(const VectorXd& d) {
    MatrixXd m = a_ * d.asDiagonal() * a_.transpose();
    const double scale = 1.0 + m.trace() / std::max(1, static_cast<int>(m.rows()));
    double reg = 1e-12 * scale;
    for (int attempt = 0; attempt < 6; ++attempt) {
      MatrixXd mr = m;
      mr.diagonal().array() += reg;
      llt_.compute(mr);
      if (llt_.info() == Eigen::Success) return;
      reg *= 100.0;
    }
    throw NumericalFailure("Cholesky factorization of the normal matrix failed");
  }

  VectorXd solve(const VectorXd& rhs) const { return llt_.solve(rhs); }

 private:
  const MatrixXd& a_;
  Eigen::LLT<MatrixXd> llt_;
};

struct Iterate {
  VectorXd x, y, s;
};

// Mehrotra's starting point: least-squares primal/dual shifted to positivity.
Iterate cold_start(const Standardized& sf) {
  const int n = sf.n;
  NormalSolver ns(sf.a);
  ns.factor(VectorXd::Ones(n));
  VectorXd x = sf.a.transpose() * ns.solve(sf.b);
  VectorXd y = ns.solve(sf.a * sf.c);
  VectorXd s = sf.c - sf.a.transpose() * y;

  const double dx = std::max(-1.5 * x.minCoeff(), 0.0);
  const double ds = std::max(-1.5 * s.minCoeff(), 0.0);
  x.array() += dx;
  s.array() += ds;
  const double xs = x.dot(s);
  if (xs <= 0.0) {
    x = VectorXd::Ones(n);
    s = VectorXd::Ones(n);
  } else {
    const double dxh = 0.5 * xs / s.sum();
    const double dsh = 0.5 * xs / x.sum();
    x.array() += dxh;
    s.array() += dsh;
  }
  const double floor = 1e-4 * (1.0 + std::max(x.maxCoeff(), s.maxCoeff()));
  x = x.cwiseMax(floor);
  s = s.cwiseMax(floor);
  return {x, y, s};
}

// Maps a public point onto the internal standard form and restores the
// gamma-band via a scalar shift on x and s.
std::optional<Iterate> warm_start(const Standardized& sf, const LinearProgram& lp,
                                  const PrimalDualPoint& warm, double gamma) {
  const int n_orig = lp.num_vars();
  int n_le = 0, n_nonneg = 0;
  for (RowKind k : lp.row_kinds)
    if (k == RowKind::LessEqual) ++n_le;
  for (VarKind k : lp.var_kinds)
    if (k == VarKind::NonNegative) ++n_nonneg;
  if (static_cast<int>(warm.primal.size()) != n_orig ||
      static_cast<int>(warm.duals.size()) != lp.num_rows() ||
      static_cast<int>(warm.slacks.size()) != n_le + n_nonneg)
    return std::nullopt;

  Iterate it;
  it.x = VectorXd::Zero(sf.n);
  it.s = VectorXd::Zero(sf.n);
  it.y = Eigen::Map<const VectorXd>(warm.duals.data(), lp.num_rows());

  const VectorXd rc_all = sf.c - sf.a.transpose() * it.y;
  int slack_cursor = 0;
  int nonneg_cursor = n_le;
  for (int j = 0; j < n_orig; ++j) {
    const int col = sf.var_col[j];
    const double v = warm.primal[j];
    if (lp.var_kinds[j] == VarKind::Free) {
      const double pad = 1e-2 * (1.0 + std::abs(v));
      it.x[col] = std::max(v, 0.0) + pad;
      it.x[col + 1] = std::max(-v, 0.0) + pad;
      it.s[col] = std::max(rc_all[col], 1e-8);
      it.s[col + 1] = std::max(rc_all[col + 1], 1e-8);
    } else {
      it.x[col] = std::max(v, 1e-10);
      it.s[col] = std::max(warm.slacks[nonneg_cursor++], 1e-10);
    }
  }
  for (int i = 0; i < sf.m; ++i) {
    if (sf.slack_col[i] < 0) continue;
    it.x[sf.slack_col[i]] = std::max(warm.slacks[slack_cursor++], 1e-10);
    it.s[sf.slack_col[i]] = std::max(-it.y[i], 1e-10);
  }

  // Scalar shift until all products sit inside a slightly tightened band.
  const double target = std::min(0.9, 1.5 * gamma);
  double delta = 0.0;
  for (int tries = 0; tries < 64; ++tries) {
    const VectorXd xs = (it.x.array() + delta).matrix();
    const VectorXd ss = (it.s.array() + delta).matrix();
    const double mu = xs.dot(ss) / sf.n;
    if (in_band(xs, ss, target, mu)) {
      it.x = xs;
      it.s = ss;
      return it;
    }
    delta = delta == 0.0 ? 1e-8 * (1.0 + mu) : 2.0 * delta;
  }
  return std::nullopt;
}

PrimalDualPoint finalize(const Standardized& sf, const LinearProgram& lp,
                         const Iterate& it, double rel_gap, int iters) {
  PrimalDualPoint pt;
  pt.primal.resize(lp.num_vars());
  for (int j = 0; j < lp.num_vars(); ++j) {
    const int col = sf.var_col[j];
    pt.primal[j] = lp.var_kinds[j] == VarKind::Free
                       ? it.x[col] - it.x[col + 1]
                       : it.x[col];
  }
  pt.duals.assign(it.y.data(), it.y.data() + sf.m);
  for (int i = 0; i < sf.m; ++i)
    if (sf.slack_col[i] >= 0) pt.slacks.push_back(it.x[sf.slack_col[i]]);
  for (int j = 0; j < lp.num_vars(); ++j)
    if (lp.var_kinds[j] == VarKind::NonNegative)
      pt.slacks.push_back(it.s[sf.var_col[j]]);
  pt.mu = it.x.dot(it.s) / sf.n;
  pt.rel_gap = rel_gap;
  pt.centered = true;
  pt.iterations = iters;
  return pt;
}

}  // namespace

PrimalDualPoint ipm_solve_to_gap(const LinearProgram& lp, double eps,
                                 double gamma,
                                 const std::optional<PrimalDualPoint>& warm) {
  lp.validate();
  if (!(eps > 0.0 && eps <= 1.0))
    throw InvalidProgram("eps must lie in (0, 1]");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw InvalidProgram("gamma must lie in (0, 1)");
  const Standardized sf = standardize(lp);
  if (sf.n == 0) throw InvalidProgram("program has no variables");

  Iterate it;
  if (warm) {
    if (auto seeded = warm_start(sf, lp, *warm, gamma))
      it = *seeded;
    else
      it = cold_start(sf);
  } else {
    it = cold_start(sf);
  }

  NormalSolver ns(sf.a);
  const double bnorm = 1.0 + sf.b.lpNorm<Eigen::Infinity>();
  const double cnorm = 1.0 + sf.c.lpNorm<Eigen::Infinity>();

  std::vector<double> mu_history;
  int centering_streak = 0;

  for (int iter = 0; iter < kMaxIters; ++iter) {
    const VectorXd rp = sf.b - sf.a * it.x;
    const VectorXd rd = sf.c - sf.a.transpose() * it.y - it.s;
    const double mu = it.x.dot(it.s) / sf.n;

    const double pobj = sf.c.dot(it.x);
    const double dobj = sf.b.dot(it.y);
    const double diff = pobj - dobj;
    const bool feasible = rp.lpNorm<Eigen::Infinity>() <= kFeasTol * bnorm &&
                          rd.lpNorm<Eigen::Infinity>() <= kFeasTol * cnorm;
    const bool gap_ok =
        diff >= 0.0 && diff <= eps * (1e-10 + std::abs(pobj));

    if (feasible && gap_ok) {
      if (in_band(it.x, it.s, gamma, mu))
        return finalize(sf, lp, it, diff / (1e-10 + std::abs(pobj)), iter);
      if (centering_streak >= kMaxCenteringPerCandidate)
        throw NumericalFailure("unable to recenter a terminable iterate");
    }

    const bool centering = feasible && gap_ok;
    if (centering)
      ++centering_streak;
    else {
      centering_streak = 0;
      mu_history.push_back(mu);
      const int t = static_cast<int>(mu_history.size()) - 1;
      if (t >= kStallWindow &&
          mu_history[t] > kStallFactor * mu_history[t - kStallWindow])
        throw NumericalFailure("barrier parameter stalled");
    }

    const VectorXd d = it.x.cwiseQuotient(it.s);
    ns.factor(d);

    VectorXd rc;  // complementarity right-hand side
    if (centering) {
      rc = (VectorXd::Constant(sf.n, mu) - it.x.cwiseProduct(it.s));
    } else {
      // Affine scaling (predictor) direction.
      const VectorXd rhs_aff =
          rp + sf.a * (d.cwiseProduct(rd)) + sf.a * it.x;
      const VectorXd dy_aff = ns.solve(rhs_aff);
      const VectorXd ds_aff = rd - sf.a.transpose() * dy_aff;
      const VectorXd dx_aff =
          d.cwiseProduct(sf.a.transpose() * dy_aff - rd) - it.x;
      const double ap = std::min(1.0, max_step(it.x, dx_aff));
      const double ad = std::min(1.0, max_step(it.s, ds_aff));
      const double mu_aff = (it.x + ap * dx_aff).dot(it.s + ad * ds_aff) / sf.n;
      double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
      sigma = std::clamp(sigma, 1e-8, 1.0);
      rc = VectorXd::Constant(sf.n, sigma * mu) - it.x.cwiseProduct(it.s) -
           dx_aff.cwiseProduct(ds_aff);
    }

    const VectorXd rhs = rp + sf.a * (d.cwiseProduct(rd)) -
                         sf.a * rc.cwiseQuotient(it.s);
    const VectorXd dy = ns.solve(rhs);
    const VectorXd ds = rd - sf.a.transpose() * dy;
    const VectorXd dx = d.cwiseProduct(sf.a.transpose() * dy - rd) +
                        rc.cwiseQuotient(it.s);

    const double ap = std::min(1.0, kStepFraction * max_step(it.x, dx));
    const double ad = std::min(1.0, kStepFraction * max_step(it.s, ds));
    it.x += ap * dx;
    it.y += ad * dy;
    it.s += ad * ds;
  }
  throw NumericalFailure("iteration limit reached");
}

std::pair<double, double> primal_dual_objectives(const LinearProgram& lp,
                                                 const PrimalDualPoint& point) {
  int n_le = 0, n_nonneg = 0;
  for (RowKind k : lp.row_kinds)
    if (k == RowKind::LessEqual) ++n_le;
  for (VarKind k : lp.var_kinds)
    if (k == VarKind::NonNegative) ++n_nonneg;
  if (static_cast<int>(point.primal.size()) != lp.num_vars() ||
      static_cast<int>(point.duals.size()) != lp.num_rows() ||
      static_cast<int>(point.slacks.size()) != n_le + n_nonneg)
    throw DimensionMismatch("point does not match program dimensions");
  double pobj = lp.objective_value(point.primal);
  double dobj = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) dobj += lp.rhs[i] * point.duals[i];
  return {pobj, dobj};
}

std::vector<double> complementarity_products(const LinearProgram& lp,
                                             const PrimalDualPoint& point) {
  std::vector<double> products;
  int cursor = 0;
  for (int i = 0; i < lp.num_rows(); ++i)
    if (lp.row_kinds[i] == RowKind::LessEqual)
      products.push_back(point.slacks[cursor++] * (-point.duals[i]));
  for (int j = 0; j < lp.num_vars(); ++j)
    if (lp.var_kinds[j] == VarKind::NonNegative)
      products.push_back(point.primal[j] * point.slacks[cursor++]);
  return products;
}

}  // namespace pdcgm
