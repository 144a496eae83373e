#pragma once

#include <vector>

#include "rcf/lp.hpp"

namespace rcf {

// LP plus a set of variables restricted to {0,1}. Bounds of the listed
// variables must already be within [0,1].
struct MixedIntegerProgram {
  LinearProgram lp;
  std::vector<int> binaries;
};

enum class MipStatus { Optimal, Infeasible, Unbounded, NodeLimit };

struct MipOptions {
  SimplexOptions lp;
  double int_tol = 1e-6;
  long node_limit = 200000;
  int heuristic_period = 8;  // run the rounding heuristic every N expansions
};

// Global lower bound (for minimize) recorded each time a node is expanded.
// Monotone nondecreasing by construction; property tests rely on that.
struct MipTrace {
  std::vector<double> lower_bounds;
};

struct MipSolution {
  MipStatus status = MipStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> values;
  double bound = 0.0;  // best proven bound on the optimum
  long nodes = 0;      // LP relaxations solved
};

// Branch and bound with best-bound node selection and most-fractional
// branching. NodeLimit returns the incumbent found so far (if any).
MipSolution solve_mip(const MixedIntegerProgram& mip, const MipOptions& opt = {},
                      MipTrace* trace = nullptr);

}  // namespace rcf
