#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdcgm/linear_program.hpp"

namespace pdcgm {

enum class ColumnOrigin { Point, Ray };

/// A master-problem column. Entries are LP coefficients over the linking-row
/// universe exactly as they appear in the compiled (minimization) restricted
/// master; point columns additionally carry coefficient 1 on one convexity
/// row, ray columns carry none.
struct Column {
  double cost = 0.0;      // user-sense objective coefficient
  SparseRow entries;      // sparse over linking-row universe indices
  std::optional<int> convexity_row;  // subproblem index k for point columns
  ColumnOrigin origin = ColumnOrigin::Point;
  int oracle_id = 0;      // generating subproblem
  int iteration_added = -1;
};

/// Dual query point handed to pricing oracles, in the compiled minimization
/// convention: duals of LessEqual linking rows are <= 0, duals of declared
/// GreaterEqual linking rows are >= 0. Inactive linking rows carry dual 0.
struct DualPoint {
  std::vector<double> linking_duals;    // one per linking-row universe entry
  std::vector<double> convexity_duals;  // one per convexity row
};

/// One priced subproblem that produced a column.
struct PricedSubproblem {
  int subproblem = 0;
  ColumnOrigin status = ColumnOrigin::Point;
  double value = 0.0;  // z_SP^k in minimization convention, <= 0
  Column column;
};

/// Oracle outcome: candidate columns plus the aggregate value
/// z_SP = sum_k min{0, z_SP^k} <= 0. z_SP = 0 comes with no columns.
struct OracleResult {
  std::vector<PricedSubproblem> per_subproblem;
  double z_sp = 0.0;
};

/// Contract satisfied by each application oracle. Implementations must be
/// pure functions of the query point and the instance data; the reduced cost
/// of every returned column, recomputed against the query point, must equal
/// the reported subproblem value within 1e-8.
class PricingOracle {
 public:
  virtual ~PricingOracle() = default;
  virtual OracleResult price(const DualPoint& duals) = 0;
  virtual std::string name() const = 0;
};

}  // namespace pdcgm
