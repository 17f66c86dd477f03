#include "pdcgm/mcnf.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

namespace pdcgm {
namespace mcnf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<int>> out_arcs(const Network& net) {
  std::vector<std::vector<int>> adj(net.num_nodes);
  for (int a = 0; a < net.num_arcs(); ++a) adj[net.arcs[a].tail].push_back(a);
  return adj;
}

}  // namespace

void Network::validate() const {
  if (num_nodes <= 0) throw InvalidProgram("network needs at least one node");
  for (const Arc& a : arcs) {
    if (a.tail < 0 || a.tail >= num_nodes || a.head < 0 || a.head >= num_nodes)
      throw InvalidProgram("arc endpoint out of range");
    if (a.tail == a.head) throw InvalidProgram("self-loops are not allowed");
    if (!(a.cost >= 0.0)) throw InvalidProgram("arc costs must be nonnegative");
    if (!(a.capacity > 0.0)) throw InvalidProgram("arc capacities must be positive");
  }
  std::vector<double> unit(arcs.size(), 0.0);
  for (const Commodity& k : commodities) {
    if (k.source < 0 || k.source >= num_nodes || k.sink < 0 || k.sink >= num_nodes)
      throw InvalidProgram("commodity endpoint out of range");
    if (k.source == k.sink) throw InvalidProgram("commodity source equals sink");
    if (!(k.demand > 0.0)) throw InvalidProgram("commodity demand must be positive");
    const ShortestPaths sp = dijkstra(*this, unit, k.source);
    if (!std::isfinite(sp.dist[k.sink]))
      throw Unreachable("commodity sink unreachable from source");
  }
}

ShortestPaths dijkstra(const Network& net, const std::vector<double>& lengths,
                       int source) {
  const int n = net.num_nodes;
  ShortestPaths sp;
  sp.dist.assign(n, kInf);
  sp.pred_arc.assign(n, -1);
  const auto adj = out_arcs(net);

  using Item = std::pair<double, int>;  // (dist, node); min-heap, ties by node
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  sp.dist[source] = 0.0;
  heap.push({0.0, source});
  std::vector<bool> done(n, false);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = true;
    for (int a : adj[u]) {
      const Arc& arc = net.arcs[a];
      const double nd = d + lengths[a];
      if (nd < sp.dist[arc.head]) {
        sp.dist[arc.head] = nd;
        heap.push({nd, arc.head});
      }
    }
  }
  // Canonical predecessors: lowest-index arc attaining the distance, making
  // tie handling independent of heap pop order.
  for (int a = 0; a < net.num_arcs(); ++a) {
    const Arc& arc = net.arcs[a];
    if (arc.head == source || !std::isfinite(sp.dist[arc.tail])) continue;
    if (sp.pred_arc[arc.head] >= 0) continue;
    if (sp.dist[arc.tail] + lengths[a] == sp.dist[arc.head])
      sp.pred_arc[arc.head] = a;
  }
  return sp;
}

OracleResult shortest_path_price(const Network& net, const DualPoint& duals) {
  const int m = net.num_arcs();
  if (static_cast<int>(duals.linking_duals.size()) != m ||
      static_cast<int>(duals.convexity_duals.size()) != net.num_commodities())
    throw OracleFailure("dual point does not match the network");

  std::vector<double> lengths(m);
  for (int a = 0; a < m; ++a) {
    const double len = net.arcs[a].cost - duals.linking_duals[a];
    if (len < -1e-9) throw NegativeLength("negative modified arc length");
    lengths[a] = std::max(len, 0.0);
  }

  OracleResult res;
  for (int k = 0; k < net.num_commodities(); ++k) {
    const Commodity& com = net.commodities[k];
    const ShortestPaths sp = dijkstra(net, lengths, com.source);
    if (!std::isfinite(sp.dist[com.sink]))
      throw Unreachable("commodity sink unreachable during pricing");
    const double rc = com.demand * sp.dist[com.sink] - duals.convexity_duals[k];
    if (rc >= 0.0) continue;

    Column col;
    col.convexity_row = k;
    col.origin = ColumnOrigin::Point;
    col.oracle_id = k;
    double true_cost = 0.0;
    for (int v = com.sink; v != com.source;) {
      const int a = sp.pred_arc[v];
      col.entries.push_back({a, com.demand});
      true_cost += com.demand * net.arcs[a].cost;
      v = net.arcs[a].tail;
    }
    col.cost = true_cost;
    res.per_subproblem.push_back({k, ColumnOrigin::Point, rc, std::move(col)});
    res.z_sp += rc;
  }
  return res;
}

std::vector<Column> initial_columns(const Network& net) {
  DualPoint zero;
  zero.linking_duals.assign(net.num_arcs(), 0.0);
  zero.convexity_duals.assign(net.num_commodities(),
                              std::numeric_limits<double>::max());
  const OracleResult res = shortest_path_price(net, zero);
  std::vector<Column> cols;
  cols.reserve(res.per_subproblem.size());
  for (const PricedSubproblem& sub : res.per_subproblem)
    cols.push_back(sub.column);
  if (static_cast<int>(cols.size()) != net.num_commodities())
    throw OracleFailure("initial pricing did not cover every commodity");
  return cols;
}

std::pair<std::set<int>, std::set<int>> update_active_set(
    const Network& net, const std::set<int>& active,
    const std::vector<double>& flows) {
  std::set<int> added, removed;
  for (int a = 0; a < net.num_arcs(); ++a) {
    const bool is_active = active.count(a) > 0;
    if (!is_active && flows[a] > net.arcs[a].capacity + kActivationSlack)
      added.insert(a);
    else if (is_active && flows[a] < kDeactivationFraction * net.arcs[a].capacity)
      removed.insert(a);
  }
  return {added, removed};
}

Solution solve(const Network& net, const DriverConfig& cfg,
               const DriverHooks& extra_hooks) {
  net.validate();
  const int m = net.num_arcs();
  std::vector<LinkingRow> rows;
  rows.reserve(m);
  for (const Arc& a : net.arcs)
    rows.push_back({LinkKind::LessEqual, a.capacity, false});
  RestrictedMaster rm(Sense::Min, std::move(rows), net.num_commodities());
  rm.add_columns(initial_columns(net));

  ShortestPathOracle oracle(net);
  std::set<int> active;

  DriverHooks hooks;
  hooks.accept_upper_bound = [&](const PrimalDualPoint& point) {
    const std::vector<double> flows = rm.column_activity(point);
    for (int a = 0; a < m; ++a)
      if (flows[a] > net.arcs[a].capacity + kActivationSlack) return false;
    return true;
  };
  hooks.after_oracle = [&](const PrimalDualPoint& point) {
    const std::vector<double> flows = rm.column_activity(point);
    const auto [added, removed] = update_active_set(net, active, flows);
    for (int a : added) {
      active.insert(a);
      rm.set_row_active(a, true);
    }
    for (int a : removed) {
      active.erase(a);
      rm.set_row_active(a, false);
    }
    return !added.empty() || !removed.empty();
  };
  hooks.on_iteration = extra_hooks.on_iteration;

  const DriverResult run = run_column_generation(rm, oracle, cfg, hooks);

  Solution sol;
  sol.objective = run.objective;
  sol.flows = rm.column_activity(run.best_point);
  sol.trace = run.trace;
  sol.outer_iterations = run.outer_iterations;
  sol.active_fraction = m == 0 ? 0.0 : static_cast<double>(active.size()) / m;
  for (int a = 0; a < m; ++a)
    if (sol.flows[a] > net.arcs[a].capacity * (1.0 + 1e-6))
      throw NumericalFailure("capacity violated at termination");
  return sol;
}

LinearProgram compact_linear_program(const Network& net) {
  const int m = net.num_arcs();
  const int n = net.num_nodes;
  const int big_k = net.num_commodities();
  LinearProgram lp;
  lp.objective.assign(static_cast<std::size_t>(big_k) * m, 0.0);
  lp.var_kinds.assign(static_cast<std::size_t>(big_k) * m, VarKind::NonNegative);
  for (int k = 0; k < big_k; ++k)
    for (int a = 0; a < m; ++a)
      lp.objective[static_cast<std::size_t>(k) * m + a] = net.arcs[a].cost;

  // Capacity rows, then per-commodity flow conservation.
  for (int a = 0; a < m; ++a) {
    SparseRow row;
    for (int k = 0; k < big_k; ++k) row.push_back({k * m + a, 1.0});
    lp.rows.push_back(std::move(row));
    lp.row_kinds.push_back(RowKind::LessEqual);
    lp.rhs.push_back(net.arcs[a].capacity);
  }
  for (int k = 0; k < big_k; ++k) {
    const Commodity& com = net.commodities[k];
    for (int v = 0; v < n; ++v) {
      SparseRow row;
      for (int a = 0; a < m; ++a) {
        double coef = 0.0;
        if (net.arcs[a].tail == v) coef += 1.0;
        if (net.arcs[a].head == v) coef -= 1.0;
        if (coef != 0.0) row.push_back({k * m + a, coef});
      }
      lp.rows.push_back(std::move(row));
      lp.row_kinds.push_back(RowKind::Equal);
      double b = 0.0;
      if (v == com.source) b = com.demand;
      if (v == com.sink) b = -com.demand;
      lp.rhs.push_back(b);
    }
  }
  lp.validate();
  return lp;
}

Network parse_network(std::istream& in) {
  Network net;
  std::string line;
  int line_no = 0;
  int arcs_expected = 0, commodities_expected = 0;
  enum { Header, Arcs, Commodities, Done } state = Header;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line
    if (tag[0] == '#') continue;

    if (state == Header) {
      if (tag != "mcnf") throw ParseError(line_no, "expected 'mcnf <n> <m> <K>'");
      if (!(ls >> net.num_nodes >> arcs_expected >> commodities_expected))
        throw ParseError(line_no, "malformed mcnf header");
      state = arcs_expected > 0 ? Arcs : (commodities_expected > 0 ? Commodities : Done);
      continue;
    }
    if (state == Arcs) {
      if (tag != "arc") throw ParseError(line_no, "expected 'arc' line");
      Arc a;
      if (!(ls >> a.tail >> a.head >> a.cost >> a.capacity))
        throw ParseError(line_no, "malformed arc line");
      a.tail -= 1;
      a.head -= 1;
      if (a.tail == a.head) throw ParseError(line_no, "self-loop arc");
      net.arcs.push_back(a);
      if (static_cast<int>(net.arcs.size()) == arcs_expected)
        state = commodities_expected > 0 ? Commodities : Done;
      continue;
    }
    if (state == Commodities) {
      if (tag != "commodity") throw ParseError(line_no, "expected 'commodity' line");
      Commodity c;
      if (!(ls >> c.source >> c.sink >> c.demand))
        throw ParseError(line_no, "malformed commodity line");
      c.source -= 1;
      c.sink -= 1;
      net.commodities.push_back(c);
      if (static_cast<int>(net.commodities.size()) == commodities_expected)
        state = Done;
      continue;
    }
    throw ParseError(line_no, "unexpected trailing content");
  }
  if (state != Done)
    throw ParseError(line_no, "file ended before all arcs/commodities were read");
  net.validate();
  return net;
}

void print_network(std::ostream& os, const Network& net) {
  char buf[64];
  const auto real = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  os << "mcnf " << net.num_nodes << ' ' << net.num_arcs() << ' '
     << net.num_commodities() << '\n';
  for (const Arc& a : net.arcs)
    os << "arc " << a.tail + 1 << ' ' << a.head + 1 << ' ' << real(a.cost)
       << ' ' << real(a.capacity) << '\n';
  for (const Commodity& c : net.commodities)
    os << "commodity " << c.source + 1 << ' ' << c.sink + 1 << ' '
       << real(c.demand) << '\n';
}

Network generate_network(DetRng& rng, int num_nodes, int num_extra_arcs,
                         int num_commodities) {
  Network net;
  net.num_nodes = num_nodes;
  // Ring backbone: every node reachable, capacities generous, costs high.
  for (int v = 0; v < num_nodes; ++v) {
    Arc a;
    a.tail = v;
    a.head = (v + 1) % num_nodes;
    a.cost = rng.grid_real(50, 100, 10.0);
    a.capacity = rng.grid_real(500, 900, 10.0);
    net.arcs.push_back(a);
  }
  // Cheap chords with tight capacities so some rows bind.
  for (int e = 0; e < num_extra_arcs; ++e) {
    Arc a;
    a.tail = static_cast<int>(rng.int_in(0, num_nodes - 1));
    a.head = static_cast<int>(rng.int_in(0, num_nodes - 1));
    if (a.tail == a.head) a.head = (a.head + 1) % num_nodes;
    a.cost = rng.grid_real(1, 40, 10.0);
    a.capacity = rng.grid_real(10, 60, 10.0);
    net.arcs.push_back(a);
  }
  for (int k = 0; k < num_commodities; ++k) {
    Commodity c;
    c.source = static_cast<int>(rng.int_in(0, num_nodes - 1));
    c.sink = static_cast<int>(rng.int_in(0, num_nodes - 1));
    if (c.source == c.sink) c.sink = (c.sink + 1) % num_nodes;
    c.demand = rng.grid_real(10, 80, 10.0);
    net.commodities.push_back(c);
  }
  return net;
}

}  // namespace mcnf
}  // namespace pdcgm
