#include "pdcgm/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace pdcgm {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-9;
constexpr double kDegenerateStep = 1e-10;
constexpr int kBlandTrigger = 50;
constexpr long kHardPivotCap = 200000;

// Standard-form expansion: every variable becomes one nonnegative column
// (two for free variables), every LessEqual row gains a slack column, and
// rows are scaled so the right-hand side is nonnegative.
struct StandardForm {
  Eigen::MatrixXd a;            // m x ncols
  Eigen::VectorXd b;            // >= 0
  Eigen::VectorXd cost;         // structural + slack costs
  std::vector<double> row_sign; // +1 or -1 vs the original row
  // column map back to the original variables: var_of[j] = original index,
  // sign_of[j] = +1 (plain / positive split) or -1 (negative split);
  // slack columns have var_of = -1.
  std::vector<int> var_of;
  std::vector<double> sign_of;
  int n_orig = 0;
};

StandardForm expand(const LinearProgram& lp) {
  StandardForm sf;
  const int m = lp.num_rows();
  const int n = lp.num_vars();
  sf.n_orig = n;

  std::vector<std::vector<double>> cols;  // dense columns, length m each
  auto orig_col = [&](int j) {
    std::vector<double> col(m, 0.0);
    for (int i = 0; i < m; ++i)
      for (const SparseEntry& e : lp.rows[i])
        if (e.index == j) col[i] += e.value;
    return col;
  };

  for (int j = 0; j < n; ++j) {
    std::vector<double> col = orig_col(j);
    cols.push_back(col);
    sf.var_of.push_back(j);
    sf.sign_of.push_back(1.0);
    sf.cost.conservativeResize(cols.size());
    sf.cost[cols.size() - 1] = lp.objective[j];
    if (lp.var_kinds[j] == VarKind::Free) {
      for (double& v : col) v = -v;
      cols.push_back(col);
      sf.var_of.push_back(j);
      sf.sign_of.push_back(-1.0);
      sf.cost.conservativeResize(cols.size());
      sf.cost[cols.size() - 1] = -lp.objective[j];
    }
  }
  for (int i = 0; i < m; ++i) {
    if (lp.row_kinds[i] != RowKind::LessEqual) continue;
    std::vector<double> col(m, 0.0);
    col[i] = 1.0;
    cols.push_back(col);
    sf.var_of.push_back(-1);
    sf.sign_of.push_back(0.0);
    sf.cost.conservativeResize(cols.size());
    sf.cost[cols.size() - 1] = 0.0;
  }

  const int ncols = static_cast<int>(cols.size());
  sf.a.resize(m, ncols);
  for (int j = 0; j < ncols; ++j)
    for (int i = 0; i < m; ++i) sf.a(i, j) = cols[j][i];
  sf.b.resize(m);
  sf.row_sign.assign(m, 1.0);
  for (int i = 0; i < m; ++i) {
    double b = lp.rhs[i];
    if (b < 0.0) {
      sf.row_sign[i] = -1.0;
      sf.a.row(i) *= -1.0;
      b = -b;
    }
    sf.b[i] = b;
  }
  return sf;
}

// Working tableau over [structural+slack | artificial] columns.
struct Tableau {
  Eigen::MatrixXd t;        // m x (ncols + m_art)
  Eigen::VectorXd xb;       // basic values (= B^-1 b)
  Eigen::VectorXd redcost;  // reduced-cost row
  std::vector<int> basis;   // variable index per row
  int ncols = 0;            // columns eligible to enter
  int nall = 0;
  long degenerate_pivots = 0;
  long pivots = 0;
};

void price(Tableau& tab, const Eigen::VectorXd& cost_all) {
  Eigen::VectorXd cb(tab.basis.size());
  for (std::size_t i = 0; i < tab.basis.size(); ++i)
    cb[static_cast<int>(i)] = cost_all[tab.basis[i]];
  tab.redcost = cost_all - tab.t.transpose() * cb;
}

// Runs primal simplex until optimal or unbounded. `allowed` marks columns
// permitted to enter. Returns the entering column index if unbounded,
// -1 when optimal. Throws CycleDetected if the pivot cap is hit.
int run_simplex(Tableau& tab, const Eigen::VectorXd& cost_all,
                const std::vector<bool>& allowed) {
  const int m = static_cast<int>(tab.basis.size());
  price(tab, cost_all);
  for (;;) {
    if (++tab.pivots > kHardPivotCap)
      throw CycleDetected("simplex pivot cap exceeded");
    const bool bland = tab.degenerate_pivots > kBlandTrigger;

    int enter = -1;
    double best = -kCostTol;
    for (int j = 0; j < tab.ncols; ++j) {
      if (!allowed[j]) continue;
      const double rc = tab.redcost[j];
      if (rc < -kCostTol) {
        if (bland) {
          enter = j;
          break;
        }
        if (rc < best) {
          best = rc;
          enter = j;
        }
      }
    }
    if (enter < 0) return -1;

    int leave_row = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double w = tab.t(i, enter);
      if (w <= kPivotTol) continue;
      const double ratio = tab.xb[i] / w;
      if (ratio < best_ratio - kPivotTol ||
          (ratio < best_ratio + kPivotTol &&
           (leave_row < 0 || tab.basis[i] < tab.basis[leave_row]))) {
        best_ratio = ratio;
        leave_row = i;
      }
    }
    if (leave_row < 0) return enter;  // unbounded

    if (best_ratio <= kDegenerateStep) ++tab.degenerate_pivots;

    // Pivot on (leave_row, enter).
    const double piv = tab.t(leave_row, enter);
    tab.t.row(leave_row) /= piv;
    tab.xb[leave_row] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave_row) continue;
      const double f = tab.t(i, enter);
      if (f == 0.0) continue;
      tab.t.row(i) -= f * tab.t.row(leave_row);
      tab.xb[i] -= f * tab.xb[leave_row];
    }
    const double rf = tab.redcost[enter];
    tab.redcost -= rf * tab.t.row(leave_row).transpose();
    tab.basis[leave_row] = enter;
  }
}

void drop_row(Tableau& tab, StandardForm& sf, int row, int art_col) {
  const auto erase_row = [&](Eigen::MatrixXd& mat) {
    Eigen::MatrixXd out(mat.rows() - 1, mat.cols());
    out.topRows(row) = mat.topRows(row);
    out.bottomRows(mat.rows() - row - 1) = mat.bottomRows(mat.rows() - row - 1);
    mat = out;
  };
  erase_row(tab.t);
  Eigen::VectorXd xb(tab.xb.size() - 1);
  xb.head(row) = tab.xb.head(row);
  xb.tail(tab.xb.size() - row - 1) = tab.xb.tail(tab.xb.size() - row - 1);
  tab.xb = xb;
  tab.basis.erase(tab.basis.begin() + row);
  // The artificial column stays in the matrix but nothing references it.
  (void)sf;
  (void)art_col;
}

}  // namespace

SimplexOutcome simplex_solve(const LinearProgram& lp) {
  lp.validate();
  SimplexOutcome out;
  StandardForm sf = expand(lp);
  int m = static_cast<int>(sf.b.size());
  const int ncols = static_cast<int>(sf.a.cols());

  if (m == 0) {
    // No rows: optimal at zero unless some column improves forever.
    for (int j = 0; j < ncols; ++j) {
      if (sf.cost[j] < -kCostTol) {
        std::vector<double> ray(sf.n_orig, 0.0);
        ray[sf.var_of[j]] = sf.sign_of[j];
        out.status = SimplexStatus::Unbounded;
        out.ray = ray;
        return out;
      }
    }
    out.status = SimplexStatus::Optimal;
    out.point = std::vector<double>(sf.n_orig, 0.0);
    out.duals = std::vector<double>();
    out.objective = 0.0;
    return out;
  }

  // Phase 1 tableau: [A | I], basis = artificials.
  Tableau tab;
  tab.ncols = ncols;
  tab.nall = ncols + m;
  tab.t.resize(m, tab.nall);
  tab.t.leftCols(ncols) = sf.a;
  tab.t.rightCols(m) = Eigen::MatrixXd::Identity(m, m);
  tab.xb = sf.b;
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) tab.basis[i] = ncols + i;

  Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(tab.nall);
  cost1.tail(m).setOnes();
  std::vector<bool> allowed(tab.nall, true);
  for (int j = ncols; j < tab.nall; ++j) allowed[j] = false;

  run_simplex(tab, cost1, allowed);  // cannot be unbounded: cost >= 0

  double phase1 = 0.0;
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] >= ncols) phase1 += tab.xb[i];
  const double feas_tol = 1e-9 * (1.0 + sf.b.lpNorm<Eigen::Infinity>());

  if (phase1 > feas_tol) {
    // Farkas certificate from phase-1 duals: y_i = c1_i - redcost(artificial i).
    price(tab, cost1);
    std::vector<double> farkas(m, 0.0);
    for (int i = 0; i < m; ++i)
      farkas[i] = sf.row_sign[i] * (1.0 - tab.redcost[ncols + i]);
    out.status = SimplexStatus::Infeasible;
    out.ray = farkas;
    return out;
  }

  // Eliminate basic artificials: pivot them out or drop redundant rows.
  for (int i = static_cast<int>(tab.basis.size()) - 1; i >= 0; --i) {
    if (tab.basis[i] < ncols) continue;
    int pivot_col = -1;
    for (int j = 0; j < ncols; ++j) {
      if (std::abs(tab.t(i, j)) > 1e-7) {
        pivot_col = j;
        break;
      }
    }
    if (pivot_col < 0) {
      drop_row(tab, sf, i, tab.basis[i]);
      continue;
    }
    const double piv = tab.t(i, pivot_col);
    tab.t.row(i) /= piv;
    tab.xb[i] /= piv;
    for (int r = 0; r < static_cast<int>(tab.basis.size()); ++r) {
      if (r == i) continue;
      const double f = tab.t(r, pivot_col);
      if (f == 0.0) continue;
      tab.t.row(r) -= f * tab.t.row(i);
      tab.xb[r] -= f * tab.xb[i];
    }
    tab.basis[i] = pivot_col;
  }
  m = static_cast<int>(tab.basis.size());
  for (int i = 0; i < m; ++i) tab.xb[i] = std::max(tab.xb[i], 0.0);

  // Phase 2.
  Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(tab.nall);
  cost2.head(ncols) = sf.cost;
  tab.degenerate_pivots = 0;
  const int unbounded_col = run_simplex(tab, cost2, allowed);

  if (unbounded_col >= 0) {
    std::vector<double> ray(sf.n_orig, 0.0);
    if (sf.var_of[unbounded_col] >= 0)
      ray[sf.var_of[unbounded_col]] += sf.sign_of[unbounded_col];
    for (int i = 0; i < m; ++i) {
      const double di = std::max(0.0, -tab.t(i, unbounded_col));
      const int bj = tab.basis[i];
      if (di > 0.0 && bj < ncols && sf.var_of[bj] >= 0)
        ray[sf.var_of[bj]] += sf.sign_of[bj] * di;
    }
    out.status = SimplexStatus::Unbounded;
    out.ray = ray;
    return out;
  }

  std::vector<double> x(sf.n_orig, 0.0);
  for (int i = 0; i < m; ++i) {
    const int bj = tab.basis[i];
    if (bj < ncols && sf.var_of[bj] >= 0)
      x[sf.var_of[bj]] += sf.sign_of[bj] * tab.xb[i];
  }
  // Duals from the artificial columns of the final tableau. Artificials that
  // belonged to dropped rows keep dual zero via the original row index map.
  price(tab, cost2);
  std::vector<double> duals(lp.num_rows(), 0.0);
  // Identify surviving rows: artificial column ncols+k corresponds to
  // original (sign-normalized) row k; its reduced cost is 0 - y_k.
  for (int k = 0; k < lp.num_rows(); ++k)
    duals[k] = sf.row_sign[k] * (0.0 - tab.redcost[ncols + k]);

  double obj = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) obj += lp.objective[j] * x[j];
  out.status = SimplexStatus::Optimal;
  out.point = std::move(x);
  out.duals = std::move(duals);
  out.objective = obj;
  return out;
}

}  // namespace pdcgm
