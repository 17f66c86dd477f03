#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdcgm/driver.hpp"
#include "pdcgm/master.hpp"
#include "pdcgm/oracle.hpp"
#include "pdcgm/rng.hpp"

namespace pdcgm {
namespace mcnf {

struct Arc {
  int tail = 0;  // 0-based node ids
  int head = 0;
  double cost = 0.0;      // t_ij >= 0
  double capacity = 0.0;  // C_ij > 0
};

struct Commodity {
  int source = 0;
  int sink = 0;
  double demand = 0.0;  // d_k > 0
};

struct Network {
  int num_nodes = 0;
  std::vector<Arc> arcs;
  std::vector<Commodity> commodities;

  int num_arcs() const { return static_cast<int>(arcs.size()); }
  int num_commodities() const { return static_cast<int>(commodities.size()); }
  /// Structural checks plus reachability of every commodity sink.
  void validate() const;
};

/// Shortest-path tree from `source` under nonnegative arc `lengths` (one per
/// arc). Returns distances and, per node, the arc index of its canonical
/// predecessor: the lowest-index arc attaining dist[tail] + length ==
/// dist[head]. Unreachable nodes carry +inf and predecessor -1.
struct ShortestPaths {
  std::vector<double> dist;
  std::vector<int> pred_arc;
};
ShortestPaths dijkstra(const Network& net, const std::vector<double>& lengths,
                       int source);

/// Prices all commodities at the given dual point (capacity-row duals over
/// the full arc universe, zeros on inactive rows). Arc lengths are
/// t_ij - u_ij; throws NegativeLength when a length drops below -1e-9 and
/// Unreachable when a commodity sink cannot be reached.
OracleResult shortest_path_price(const Network& net, const DualPoint& duals);

/// One shortest-path column per commodity computed with zero capacity duals.
std::vector<Column> initial_columns(const Network& net);

/// Active-set update: arcs with flow > capacity + 1e-7 enter, active arcs
/// with flow < 0.9 * capacity leave. The returned sets are disjoint.
std::pair<std::set<int>, std::set<int>> update_active_set(
    const Network& net, const std::set<int>& active,
    const std::vector<double>& flows);

/// Hysteresis fraction of the deactivation test.
constexpr double kDeactivationFraction = 0.9;
constexpr double kActivationSlack = 1e-7;

class ShortestPathOracle : public PricingOracle {
 public:
  explicit ShortestPathOracle(const Network& net) : net_(net) {}
  OracleResult price(const DualPoint& duals) override {
    return shortest_path_price(net_, duals);
  }
  std::string name() const override { return "mcnf-shortest-path"; }

 private:
  const Network& net_;
};

struct Solution {
  double objective = 0.0;
  std::vector<double> flows;  // total flow per arc
  std::vector<IterationRecord> trace;
  int outer_iterations = 0;
  double active_fraction = 0.0;  // |active| / m at exit
};

/// Full column generation run with the capacity active-set strategy.
Solution solve(const Network& net, const DriverConfig& cfg,
               const DriverHooks& extra_hooks = {});

/// Compact arc-flow LP (one flow variable per commodity and arc) used by the
/// equivalence suites.
LinearProgram compact_linear_program(const Network& net);

/// Text format: `mcnf <n> <m> <K>`, then m `arc` lines and K `commodity`
/// lines, 1-based node ids. Throws ParseError with a line number.
Network parse_network(std::istream& in);
void print_network(std::ostream& os, const Network& net);

/// Seeded random instance: a ring backbone guaranteeing reachability plus
/// cheaper random chords whose capacities are sized to bind.
Network generate_network(DetRng& rng, int num_nodes, int num_extra_arcs,
                         int num_commodities);

}  // namespace mcnf
}  // namespace pdcgm
