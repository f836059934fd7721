#pragma once

#include <vector>

#include "ian/types.hpp"

namespace ian {

// Sparse linear program
//
//   min c'x   s.t.   A x >= b,   0 <= x <= u,
//
// with finite upper bounds and x = u feasible (the solver starts there, so no
// phase-1 is needed). Rows are stored as (column, coefficient) pairs.
struct InequalityLP {
  Index num_vars = 0;
  std::vector<std::vector<std::pair<Index, Scalar>>> rows;
  Vector rhs;    // b
  Vector upper;  // u, elementwise > 0
  Vector cost;   // c
};

struct SimplexOptions {
  Scalar dual_tol = 1e-9;    // reduced-cost tolerance at optimality
  Scalar primal_tol = 1e-9;  // feasibility tolerance (relative)
  long max_iterations = -1;  // -1: 200 * (rows + vars) + 10000
  long stall_limit = 300;    // degenerate steps before Bland pricing engages
  long refactor_every = 400; // basis changes between refactorizations
};

struct SimplexResult {
  Vector x;
  Scalar objective = 0;
  long iterations = 0;
  bool bland_engaged = false;
};

// Bounded-variable revised simplex specialized for mostly-slack bases: only
// the working submatrix over tight rows and basic structural columns is ever
// factorized, so solves stay cheap when few constraints are active.
//
// Fully deterministic: largest-reduced-cost pricing with lowest-index tie
// breaks, switching to Bland's rule after a degenerate stall so cycling is
// impossible. Throws std::runtime_error when x = u is infeasible, the
// iteration limit is hit, or the basis becomes numerically unusable.
SimplexResult solve_inequality_lp(const InequalityLP& lp, const SimplexOptions& opt = {});

}  // namespace ian
