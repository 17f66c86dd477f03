#include "pdcgm/instances.hpp"

namespace pdcgm {

namespace {

// Electricity investment planning with three demand scenarios. Four
// technologies with investment costs (10, 7, 16, 6), minimum total capacity
// 12 and budget 120; three operating modes with demands (d, 3, 2) where d is
// 3, 5 or 7 with probabilities 0.3, 0.4, 0.3. Operating costs per technology
// and mode are (4.0, 4.5, 3.2, 5.5) scaled by mode weights 10, 6 and 1.
// Inequalities are carried as explicit slack/surplus columns so every row is
// an equality. Optimal value 381.85333...
tssp::StochasticInstance make_lands() {
  tssp::StochasticInstance inst;
  // x1..x4, surplus of the capacity row, slack of the budget row.
  inst.first_stage.c = {10, 7, 16, 6, 0, 0};
  inst.first_stage.a = {
      {1, 1, 1, 1, -1, 0},
      {10, 7, 16, 6, 0, 1},
  };
  inst.first_stage.b = {12, 120};

  const double base_cost[4] = {4.0, 4.5, 3.2, 5.5};
  const double mode_weight[3] = {10.0, 6.0, 1.0};
  const double demand_fixed[3] = {0.0, 3.0, 2.0};  // mode 1 is stochastic
  const double d1[3] = {3.0, 5.0, 7.0};
  const double prob[3] = {0.3, 0.4, 0.3};

  for (int s = 0; s < 3; ++s) {
    tssp::Scenario sc;
    sc.probability = prob[s];
    // y[i][j] (4 technologies x 3 modes, mode-minor), 4 capacity slacks,
    // 3 demand surpluses.
    sc.q.assign(19, 0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) sc.q[i * 3 + j] = base_cost[i] * mode_weight[j];
    sc.t_mat.assign(7, std::vector<double>(6, 0.0));
    sc.w_mat.assign(7, std::vector<double>(19, 0.0));
    sc.h.assign(7, 0.0);
    for (int i = 0; i < 4; ++i) {
      // sum_j y_ij + slack_i = x_i
      sc.t_mat[i][i] = -1.0;
      for (int j = 0; j < 3; ++j) sc.w_mat[i][i * 3 + j] = 1.0;
      sc.w_mat[i][12 + i] = 1.0;
    }
    for (int j = 0; j < 3; ++j) {
      // sum_i y_ij - surplus_j = d_j
      for (int i = 0; i < 4; ++i) sc.w_mat[4 + j][i * 3 + j] = 1.0;
      sc.w_mat[4 + j][16 + j] = -1.0;
      sc.h[4 + j] = j == 0 ? d1[s] : demand_fixed[j];
    }
    inst.scenarios.push_back(std::move(sc));
  }
  inst.validate();
  return inst;
}

}  // namespace

std::optional<tssp::StochasticInstance> builtin_tssp(const std::string& name) {
  if (name == "lands") return make_lands();
  return std::nullopt;
}

std::vector<std::string> builtin_tssp_names() { return {"lands"}; }

}  // namespace pdcgm
