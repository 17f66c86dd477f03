#pragma once

#include <stdexcept>
#include <string>

namespace pdcgm {

/// Base class for all solver-level failures.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A linear program violates its structural invariants.
struct InvalidProgram : SolverError {
  using SolverError::SolverError;
};

/// Input sizes are inconsistent with each other.
struct DimensionMismatch : SolverError {
  using SolverError::SolverError;
};

/// The interior point solver broke down (Cholesky failure, stalling,
/// iteration limit).
struct NumericalFailure : SolverError {
  using SolverError::SolverError;
};

/// Simplex anti-cycling gave up.
struct CycleDetected : SolverError {
  using SolverError::SolverError;
};

/// A restricted master with no columns and no artificial cannot be compiled.
struct EmptyMaster : SolverError {
  using SolverError::SolverError;
};

/// Artificial column still carries mass at termination.
struct MasterInfeasible : SolverError {
  using SolverError::SolverError;
};

/// Column generation ran out of outer iterations.
struct MaxOuterExceeded : SolverError {
  using SolverError::SolverError;
};

/// A pricing oracle could not evaluate the query point.
struct OracleFailure : SolverError {
  using SolverError::SolverError;
};

/// Quadratic oracle received weights that are not a probability vector.
struct BadWeights : OracleFailure {
  using OracleFailure::OracleFailure;
};

/// A commodity sink cannot be reached from its source.
struct Unreachable : OracleFailure {
  using OracleFailure::OracleFailure;
};

/// Shortest-path pricing saw a negative arc length.
struct NegativeLength : OracleFailure {
  using OracleFailure::OracleFailure;
};

/// The dual feasible set of a recourse subproblem is empty.
struct EmptyDualSet : SolverError {
  using SolverError::SolverError;
};

/// Instance file could not be parsed; message carries the line number.
struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_number(line) {}
  int line_number;
};

}  // namespace pdcgm
