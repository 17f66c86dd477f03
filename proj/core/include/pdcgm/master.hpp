#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pdcgm/linear_program.hpp"
#include "pdcgm/oracle.hpp"
#include "pdcgm/point.hpp"

namespace pdcgm {

enum class Sense { Min, Max };

/// Declared kind of a linking row in the user-level master. GreaterEqual rows
/// are negated into LessEqual form at compile time; duals reported through
/// dual_point() stay in the declared orientation.
enum class LinkKind { Equal, LessEqual, GreaterEqual };

struct LinkingRow {
  LinkKind kind = LinkKind::LessEqual;
  double rhs = 0.0;
  bool active = true;
};

/// A structural free variable of the master (eta block of a stochastic
/// master, the epigraph scalar of the convex master).
struct FreeVariable {
  double cost = 0.0;            // user-sense objective coefficient
  SparseRow entries;            // coefficients over the linking-row universe
};

/// Mutable restricted master problem: column pool, linking and convexity
/// rows, optional free-variable block and optional artificial column. The
/// pool only grows; exact duplicates are rejected on entry.
class RestrictedMaster {
 public:
  RestrictedMaster(Sense sense, std::vector<LinkingRow> linking_rows,
                   int num_convexity_rows);

  /// Adds the artificial column: compiled-minimization cost 1e6, entry 1 on
  /// every convexity row, zero elsewhere.
  void enable_artificial();

  /// Appends columns, silently skipping exact duplicates (same cost, entries
  /// and convexity row to 1e-12). Returns the number actually added.
  int add_columns(const std::vector<Column>& cols);

  void add_free_variable(FreeVariable v);

  void set_row_active(int linking_row, bool active);
  bool row_active(int linking_row) const { return linking_rows_[linking_row].active; }

  /// Compiles into a minimization LinearProgram. Variable order: pool
  /// columns, free variables, artificial. Row order: active linking rows in
  /// universe order, then convexity rows. Throws EmptyMaster when some
  /// convexity row is uncovered and there is no artificial.
  LinearProgram compile() const;

  /// Upper/lower bound pair (z_UB, z_LB) of a point obtained from the
  /// compiled program, expressed in the user sense. z_UB is the primal
  /// objective (artificial contribution included), z_LB = b.u + sum_k v_k.
  std::pair<double, double> bounds(const PrimalDualPoint& point) const;

  /// Same pair in the compiled minimization sense (the driver's working
  /// space).
  std::pair<double, double> bounds_compiled(const PrimalDualPoint& point) const;

  /// Extracts the dual query point in the compiled minimization convention,
  /// expanded over the full linking-row universe with 0 on inactive rows.
  DualPoint dual_point(const PrimalDualPoint& point) const;

  /// Reduced cost of a candidate column in the compiled minimization sense.
  double reduced_cost(const Column& col, const DualPoint& duals) const;

  /// Linking-row activity contributed by the pool columns alone (per
  /// universe row): sum over columns of lambda * entry.
  std::vector<double> column_activity(const PrimalDualPoint& point) const;

  /// Value of the artificial variable in a compiled point (0 when disabled).
  double artificial_value(const PrimalDualPoint& point) const;

  Sense sense() const { return sense_; }
  int num_linking_rows() const { return static_cast<int>(linking_rows_.size()); }
  int num_convexity_rows() const { return num_convexity_; }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<LinkingRow>& linking_rows() const { return linking_rows_; }
  bool has_artificial() const { return artificial_; }
  int duplicates_skipped() const { return duplicates_skipped_; }

 private:
  double min_sense_cost(const Column& col) const;

  Sense sense_;
  std::vector<LinkingRow> linking_rows_;
  int num_convexity_ = 0;
  std::vector<Column> columns_;
  std::vector<FreeVariable> free_vars_;
  bool artificial_ = false;
  int duplicates_skipped_ = 0;
};

constexpr double kArtificialCost = 1e6;       // compiled minimization sense
constexpr double kArtificialMassTol = 1e-7;   // termination validity check

}  // namespace pdcgm
