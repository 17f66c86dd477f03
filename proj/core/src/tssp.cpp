#include "pdcgm/tssp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pdcgm/simplex.hpp"

namespace pdcgm {
namespace tssp {

namespace {

void check_matrix(const std::vector<std::vector<double>>& mat, int rows,
                  int cols, const char* what) {
  if (static_cast<int>(mat.size()) != rows)
    throw InvalidProgram(std::string(what) + ": wrong row count");
  for (const auto& r : mat)
    if (static_cast<int>(r.size()) != cols)
      throw InvalidProgram(std::string(what) + ": ragged row");
}

std::vector<double> mat_vec(const std::vector<std::vector<double>>& mat,
                            const std::vector<double>& x) {
  std::vector<double> out(mat.size(), 0.0);
  for (std::size_t i = 0; i < mat.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += mat[i][j] * x[j];
  return out;
}

}  // namespace

void StochasticInstance::validate() const {
  const int n = first_vars();
  const int m = first_rows();
  if (n == 0) throw InvalidProgram("first stage has no variables");
  check_matrix(first_stage.a, m, n, "first-stage A");
  if (scenarios.empty()) throw InvalidProgram("instance has no scenarios");
  const int nt = second_vars();
  const int mt = second_rows();
  double psum = 0.0;
  for (const Scenario& s : scenarios) {
    if (!(s.probability > 0.0))
      throw InvalidProgram("scenario probabilities must be positive");
    psum += s.probability;
    if (static_cast<int>(s.q.size()) != nt || static_cast<int>(s.h.size()) != mt)
      throw InvalidProgram("scenario vector sizes disagree");
    check_matrix(s.t_mat, mt, n, "T");
    check_matrix(s.w_mat, mt, nt, "W");
  }
  if (std::abs(psum - 1.0) > 1e-9)
    throw InvalidProgram("scenario probabilities must sum to one");
}

LinearProgram dep_linear_program(const StochasticInstance& inst) {
  const int n = inst.first_vars();
  const int m = inst.first_rows();
  const int nt = inst.second_vars();
  const int mt = inst.second_rows();
  const int s_count = static_cast<int>(inst.scenarios.size());

  LinearProgram lp;
  const int nvars = n + s_count * nt;
  lp.objective.assign(nvars, 0.0);
  lp.var_kinds.assign(nvars, VarKind::NonNegative);
  for (int j = 0; j < n; ++j) lp.objective[j] = inst.first_stage.c[j];
  for (int i = 0; i < s_count; ++i)
    for (int j = 0; j < nt; ++j)
      lp.objective[n + i * nt + j] =
          inst.scenarios[i].probability * inst.scenarios[i].q[j];

  for (int r = 0; r < m; ++r) {
    SparseRow row;
    for (int j = 0; j < n; ++j)
      if (inst.first_stage.a[r][j] != 0.0)
        row.push_back({j, inst.first_stage.a[r][j]});
    lp.rows.push_back(std::move(row));
    lp.row_kinds.push_back(RowKind::Equal);
    lp.rhs.push_back(inst.first_stage.b[r]);
  }
  for (int i = 0; i < s_count; ++i) {
    const Scenario& sc = inst.scenarios[i];
    for (int r = 0; r < mt; ++r) {
      SparseRow row;
      for (int j = 0; j < n; ++j)
        if (sc.t_mat[r][j] != 0.0) row.push_back({j, sc.t_mat[r][j]});
      for (int j = 0; j < nt; ++j)
        if (sc.w_mat[r][j] != 0.0) row.push_back({n + i * nt + j, sc.w_mat[r][j]});
      lp.rows.push_back(std::move(row));
      lp.row_kinds.push_back(RowKind::Equal);
      lp.rhs.push_back(sc.h[r]);
    }
  }
  lp.validate();
  return lp;
}

StochasticInstance expected_value_instance(const StochasticInstance& inst) {
  StochasticInstance ev;
  ev.first_stage = inst.first_stage;
  Scenario avg;
  avg.probability = 1.0;
  const int nt = inst.second_vars();
  const int mt = inst.second_rows();
  const int n = inst.first_vars();
  avg.q.assign(nt, 0.0);
  avg.h.assign(mt, 0.0);
  avg.t_mat.assign(mt, std::vector<double>(n, 0.0));
  avg.w_mat.assign(mt, std::vector<double>(nt, 0.0));
  for (const Scenario& s : inst.scenarios) {
    const double p = s.probability;
    for (int j = 0; j < nt; ++j) avg.q[j] += p * s.q[j];
    for (int r = 0; r < mt; ++r) {
      avg.h[r] += p * s.h[r];
      for (int j = 0; j < n; ++j) avg.t_mat[r][j] += p * s.t_mat[r][j];
      for (int j = 0; j < nt; ++j) avg.w_mat[r][j] += p * s.w_mat[r][j];
    }
  }
  ev.scenarios.push_back(std::move(avg));
  return ev;
}

ScenarioDualResult scenario_price(const StochasticInstance& inst, int scenario,
                                  const std::vector<double>& x_bar) {
  const Scenario& sc = inst.scenarios[scenario];
  const int mt = inst.second_rows();
  const std::vector<double> shift = mat_vec(sc.t_mat, x_bar);
  std::vector<double> rhs(mt);
  for (int r = 0; r < mt; ++r) rhs[r] = sc.h[r] - shift[r];

  LinearProgram recourse;
  recourse.objective = sc.q;
  recourse.var_kinds.assign(sc.q.size(), VarKind::NonNegative);
  recourse.rhs = rhs;
  recourse.row_kinds.assign(mt, RowKind::Equal);
  for (int r = 0; r < mt; ++r) {
    SparseRow row;
    for (int j = 0; j < inst.second_vars(); ++j)
      if (sc.w_mat[r][j] != 0.0) row.push_back({j, sc.w_mat[r][j]});
    recourse.rows.push_back(std::move(row));
  }

  const SimplexOutcome out = simplex_solve(recourse);
  ScenarioDualResult res;
  if (out.status == SimplexStatus::Optimal) {
    res.status = ScenarioStatus::Point;
    res.theta = *out.duals;
    res.value = 0.0;
    for (int r = 0; r < mt; ++r) res.value += rhs[r] * res.theta[r];
    return res;
  }
  if (out.status == SimplexStatus::Infeasible) {
    res.status = ScenarioStatus::Ray;
    res.theta = *out.ray;
    double norm = 0.0;
    for (double v : res.theta) norm = std::max(norm, std::abs(v));
    if (norm > 0.0)
      for (double& v : res.theta) v /= norm;
    res.value = 0.0;
    for (int r = 0; r < mt; ++r) res.value += rhs[r] * res.theta[r];
    return res;
  }
  throw EmptyDualSet("recourse unbounded: scenario dual set is empty");
}

Column aggregate_column(const StochasticInstance& inst,
                        const std::vector<ScenarioDualResult>& results) {
  const int n = inst.first_vars();
  bool any_ray = false;
  for (const ScenarioDualResult& r : results)
    if (r.status == ScenarioStatus::Ray) any_ray = true;

  Column col;
  col.origin = any_ray ? ColumnOrigin::Ray : ColumnOrigin::Point;
  if (!any_ray) col.convexity_row = 0;
  std::vector<double> entries(n, 0.0);
  double cost = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const ScenarioDualResult& r = results[i];
    if (any_ray && r.status != ScenarioStatus::Ray) continue;
    const Scenario& sc = inst.scenarios[i];
    const double p = sc.probability;
    for (int row = 0; row < inst.second_rows(); ++row) {
      cost += p * sc.h[row] * r.theta[row];
      for (int j = 0; j < n; ++j)
        entries[j] += p * sc.t_mat[row][j] * r.theta[row];
    }
  }
  col.cost = cost;
  for (int j = 0; j < n; ++j)
    if (entries[j] != 0.0) col.entries.push_back({j, entries[j]});
  return col;
}

RestrictedMaster build_master(const StochasticInstance& inst) {
  const int n = inst.first_vars();
  const int m = inst.first_rows();
  std::vector<LinkingRow> rows;
  rows.reserve(n);
  for (int t = 0; t < n; ++t)
    rows.push_back({LinkKind::LessEqual, inst.first_stage.c[t], true});
  RestrictedMaster rm(Sense::Max, std::move(rows), 1);
  for (int j = 0; j < m; ++j) {
    FreeVariable eta;
    eta.cost = inst.first_stage.b[j];
    for (int t = 0; t < n; ++t)
      if (inst.first_stage.a[j][t] != 0.0)
        eta.entries.push_back({t, inst.first_stage.a[j][t]});
    rm.add_free_variable(std::move(eta));
  }
  rm.enable_artificial();
  return rm;
}

OracleResult ScenarioOracle::price(const DualPoint& duals) {
  const int n = inst_.first_vars();
  if (static_cast<int>(duals.linking_duals.size()) != n ||
      duals.convexity_duals.size() != 1)
    throw OracleFailure("dual point does not match the stochastic master");

  std::vector<double> x_bar(n);
  for (int t = 0; t < n; ++t) x_bar[t] = std::max(0.0, -duals.linking_duals[t]);
  const double v_bar = -duals.convexity_duals[0];

  std::vector<ScenarioDualResult> results;
  results.reserve(inst_.scenarios.size());
  bool any_ray = false;
  for (std::size_t i = 0; i < inst_.scenarios.size(); ++i) {
    results.push_back(scenario_price(inst_, static_cast<int>(i), x_bar));
    if (results.back().status == ScenarioStatus::Ray) any_ray = true;
  }

  double rc_max = 0.0;  // maximization-sense reduced cost
  if (any_ray) {
    for (std::size_t i = 0; i < results.size(); ++i)
      if (results[i].status == ScenarioStatus::Ray)
        rc_max += inst_.scenarios[i].probability * results[i].value;
  } else {
    for (std::size_t i = 0; i < results.size(); ++i)
      rc_max += inst_.scenarios[i].probability * results[i].value;
    rc_max -= v_bar;
  }

  OracleResult res;
  if (rc_max > 0.0) {
    Column col = aggregate_column(inst_, results);
    res.per_subproblem.push_back(
        {0, any_ray ? ColumnOrigin::Ray : ColumnOrigin::Point, -rc_max,
         std::move(col)});
    res.z_sp = -rc_max;
  }
  return res;
}

Solution solve(const StochasticInstance& inst, const DriverConfig& cfg,
               const DriverHooks& extra_hooks) {
  inst.validate();
  RestrictedMaster rm = build_master(inst);

  // Expected-value warm start: one aggregated column priced at the
  // first-stage solution of the averaged problem.
  const StochasticInstance ev = expected_value_instance(inst);
  const SimplexOutcome ev_out = simplex_solve(dep_linear_program(ev));
  if (ev_out.status == SimplexStatus::Optimal) {
    std::vector<double> x_ev(ev_out.point->begin(),
                             ev_out.point->begin() + inst.first_vars());
    std::vector<ScenarioDualResult> results;
    bool all_points = true;
    for (std::size_t i = 0; i < inst.scenarios.size() && all_points; ++i) {
      results.push_back(scenario_price(inst, static_cast<int>(i), x_ev));
      all_points = results.back().status == ScenarioStatus::Point;
    }
    if (all_points) rm.add_columns({aggregate_column(inst, results)});
  }

  ScenarioOracle oracle(inst);
  const DriverResult run = run_column_generation(rm, oracle, cfg, extra_hooks);

  Solution sol;
  sol.objective = run.objective;  // master max value = DEP minimum
  const DualPoint duals = rm.dual_point(run.final_point);
  sol.first_stage_x.resize(inst.first_vars());
  for (int t = 0; t < inst.first_vars(); ++t)
    sol.first_stage_x[t] = -duals.linking_duals[t];
  sol.trace = run.trace;
  sol.outer_iterations = run.outer_iterations;
  sol.artificial_mass = rm.artificial_value(run.final_point);
  return sol;
}

namespace {

// Minimal tokenizer for the structured instance format. Tokens are
// identifiers, numbers and the punctuation { } [ ] = ; with '#' comments.
struct Tokenizer {
  explicit Tokenizer(std::istream& in) : in_(in) {}

  struct Token {
    std::string text;
    int line = 0;
    bool eof = false;
  };

  Token next() {
    for (;;) {
      const int c = in_.peek();
      if (c == EOF) return {"", line_, true};
      if (c == '\n') {
        ++line_;
        in_.get();
        continue;
      }
      if (std::isspace(c)) {
        in_.get();
        continue;
      }
      if (c == '#') {
        std::string dump;
        std::getline(in_, dump);
        ++line_;
        continue;
      }
      break;
    }
    const int c = in_.peek();
    if (std::strchr("{}[]=;", c)) {
      in_.get();
      return {std::string(1, static_cast<char>(c)), line_, false};
    }
    std::string word;
    while (in_.peek() != EOF && !std::isspace(in_.peek()) &&
           !std::strchr("{}[]=;#", in_.peek()))
      word.push_back(static_cast<char>(in_.get()));
    return {word, line_, false};
  }

  std::istream& in_;
  int line_ = 1;
};

class InstanceParser {
 public:
  explicit InstanceParser(std::istream& in) : tok_(in) { advance(); }

  StochasticInstance parse() {
    StochasticInstance inst;
    bool saw_first = false;
    while (!cur_.eof) {
      if (cur_.text == "first_stage") {
        advance();
        parse_first_stage(inst.first_stage);
        saw_first = true;
      } else if (cur_.text == "scenario") {
        advance();
        inst.scenarios.push_back(parse_scenario());
      } else {
        fail("expected 'first_stage' or 'scenario'");
      }
    }
    if (!saw_first) fail("missing first_stage block");
    if (inst.scenarios.empty()) fail("missing scenario blocks");
    inst.validate();
    return inst;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(cur_.line, msg);
  }

  void advance() { cur_ = tok_.next(); }

  void expect(const std::string& text) {
    if (cur_.eof || cur_.text != text) fail("expected '" + text + "'");
    advance();
  }

  double number() {
    if (cur_.eof) fail("expected a number");
    try {
      std::size_t used = 0;
      const double v = std::stod(cur_.text, &used);
      if (used != cur_.text.size()) fail("malformed number '" + cur_.text + "'");
      advance();
      return v;
    } catch (const std::invalid_argument&) {
      fail("malformed number '" + cur_.text + "'");
    } catch (const std::out_of_range&) {
      fail("number out of range '" + cur_.text + "'");
    }
  }

  std::vector<double> vector_literal() {
    expect("[");
    std::vector<double> out;
    while (!cur_.eof && cur_.text != "]") out.push_back(number());
    expect("]");
    return out;
  }

  std::vector<std::vector<double>> matrix_literal() {
    expect("rows");
    expect("[");
    std::vector<std::vector<double>> out;
    while (!cur_.eof && cur_.text != "]") out.push_back(vector_literal());
    expect("]");
    return out;
  }

  void parse_first_stage(FirstStage& fs) {
    expect("{");
    while (!cur_.eof && cur_.text != "}") {
      const std::string field = cur_.text;
      advance();
      expect("=");
      if (field == "c")
        fs.c = vector_literal();
      else if (field == "A")
        fs.a = matrix_literal();
      else if (field == "b")
        fs.b = vector_literal();
      else
        fail("unknown first_stage field '" + field + "'");
      expect(";");
    }
    expect("}");
  }

  Scenario parse_scenario() {
    Scenario sc;
    expect("{");
    while (!cur_.eof && cur_.text != "}") {
      const std::string field = cur_.text;
      advance();
      expect("=");
      if (field == "p")
        sc.probability = number();
      else if (field == "q")
        sc.q = vector_literal();
      else if (field == "T")
        sc.t_mat = matrix_literal();
      else if (field == "W")
        sc.w_mat = matrix_literal();
      else if (field == "h")
        sc.h = vector_literal();
      else
        fail("unknown scenario field '" + field + "'");
      expect(";");
    }
    expect("}");
    return sc;
  }

  Tokenizer tok_;
  Tokenizer::Token cur_;
};

void print_vector(std::ostream& os, const std::vector<double>& v) {
  char buf[64];
  os << "[";
  for (double x : v) {
    std::snprintf(buf, sizeof(buf), " %.17g", x);
    os << buf;
  }
  os << " ]";
}

void print_matrix(std::ostream& os, const std::vector<std::vector<double>>& m,
                  const char* indent) {
  os << "rows [\n";
  for (const auto& row : m) {
    os << indent << "  ";
    print_vector(os, row);
    os << '\n';
  }
  os << indent << "]";
}

}  // namespace

StochasticInstance parse_instance(std::istream& in) {
  InstanceParser parser(in);
  return parser.parse();
}

void print_instance(std::ostream& os, const StochasticInstance& inst) {
  os << "first_stage {\n  c = ";
  print_vector(os, inst.first_stage.c);
  os << ";\n  A = ";
  print_matrix(os, inst.first_stage.a, "  ");
  os << ";\n  b = ";
  print_vector(os, inst.first_stage.b);
  os << ";\n}\n";
  for (const Scenario& sc : inst.scenarios) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", sc.probability);
    os << "scenario {\n  p = " << buf << ";\n  q = ";
    print_vector(os, sc.q);
    os << ";\n  T = ";
    print_matrix(os, sc.t_mat, "  ");
    os << ";\n  W = ";
    print_matrix(os, sc.w_mat, "  ");
    os << ";\n  h = ";
    print_vector(os, sc.h);
    os << ";\n}\n";
  }
}

StochasticInstance generate_instance(DetRng& rng, int n, int m, int nt, int mt,
                                     int num_scenarios) {
  StochasticInstance inst;
  inst.first_stage.c.resize(n);
  for (double& v : inst.first_stage.c) v = rng.grid_real(1, 100, 10.0);
  std::vector<double> x0(n), y0(nt);
  for (double& v : x0) v = rng.grid_real(0, 50, 10.0);
  for (double& v : y0) v = rng.grid_real(0, 50, 10.0);

  inst.first_stage.a.assign(m, std::vector<double>(n, 0.0));
  inst.first_stage.b.assign(m, 0.0);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j)
      inst.first_stage.a[r][j] = rng.grid_real(-30, 30, 10.0);
    for (int j = 0; j < n; ++j)
      inst.first_stage.b[r] += inst.first_stage.a[r][j] * x0[j];
  }

  std::vector<std::int64_t> weights(num_scenarios);
  std::int64_t total = 0;
  for (auto& w : weights) {
    w = rng.int_in(1, 9);
    total += w;
  }
  for (int i = 0; i < num_scenarios; ++i) {
    Scenario sc;
    sc.probability = static_cast<double>(weights[i]) / static_cast<double>(total);
    sc.q.resize(nt);
    for (double& v : sc.q) v = rng.grid_real(1, 100, 10.0);
    sc.t_mat.assign(mt, std::vector<double>(n, 0.0));
    sc.w_mat.assign(mt, std::vector<double>(nt, 0.0));
    sc.h.assign(mt, 0.0);
    for (int r = 0; r < mt; ++r) {
      for (int j = 0; j < n; ++j) sc.t_mat[r][j] = rng.grid_real(-20, 20, 10.0);
      for (int j = 0; j < nt; ++j) sc.w_mat[r][j] = rng.grid_real(-20, 20, 10.0);
      double h = 0.0;
      for (int j = 0; j < n; ++j) h += sc.t_mat[r][j] * x0[j];
      for (int j = 0; j < nt; ++j) h += sc.w_mat[r][j] * y0[j];
      sc.h[r] = h;
    }
    inst.scenarios.push_back(std::move(sc));
  }
  return inst;
}

}  // namespace tssp
}  // namespace pdcgm
