#include "rcf/mip.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "rcf/errors.hpp"

namespace rcf {

namespace {

struct Node {
  double bound;  // internal (minimize) orientation, clamped >= parent bound
  long seq;
  std::vector<char> fix;  // per binaries[] slot: -1 free, else fixed value
  std::vector<double> values;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;  // FIFO among equal bounds
  }
};

}  // namespace

MipSolution solve_mip(const MixedIntegerProgram& mip, const MipOptions& opt,
                      MipTrace* trace) {
  mip.lp.validate();
  const int nb = static_cast<int>(mip.binaries.size());
  for (int j : mip.binaries) {
    if (j < 0 || j >= static_cast<int>(mip.lp.vars.size()))
      throw ConfigError("mip: binary index out of range");
    const auto& v = mip.lp.vars[j];
    if (v.lower < -1e-9 || v.upper > 1.0 + 1e-9)
      throw ConfigError("mip: binary variable '" + v.name +
                        "' has bounds outside [0,1]");
  }

  LinearProgram work = mip.lp;
  const bool flipped = work.sense == Sense::Maximize;
  if (flipped) {
    work.sense = Sense::Minimize;
    for (auto& v : work.vars) v.obj = -v.obj;
  }
  const auto ext = [&](double v) { return flipped ? -v : v; };

  std::vector<double> lo0(nb), up0(nb);
  for (int t = 0; t < nb; ++t) {
    lo0[t] = work.vars[mip.binaries[t]].lower;
    up0[t] = work.vars[mip.binaries[t]].upper;
  }
  auto apply_fix = [&](const std::vector<char>& fix) {
    for (int t = 0; t < nb; ++t) {
      auto& v = work.vars[mip.binaries[t]];
      if (fix[t] < 0) {
        v.lower = lo0[t];
        v.upper = up0[t];
      } else {
        v.lower = v.upper = fix[t];
      }
    }
  };
  auto is_integral = [&](const std::vector<double>& x) {
    for (int j : mip.binaries)
      if (std::fabs(x[j] - std::round(x[j])) > opt.int_tol) return false;
    return true;
  };

  MipSolution sol;
  sol.nodes = 0;

  bool have_inc = false;
  double best = kInf;  // internal incumbent objective
  std::vector<double> inc;
  const auto margin = [&] { return 1e-9 * (1.0 + std::fabs(best)); };

  auto try_incumbent = [&](double obj, const std::vector<double>& x) {
    if (!have_inc || obj < best) {
      have_inc = true;
      best = obj;
      inc = x;
    }
  };

  // round the binaries of a relaxation point, fix them, re-solve
  auto rounding_heuristic = [&](const std::vector<double>& x) {
    std::vector<char> fix(nb);
    for (int t = 0; t < nb; ++t)
      fix[t] = x[mip.binaries[t]] >= 0.5 ? 1 : 0;
    apply_fix(fix);
    ++sol.nodes;
    LpSolution r = solve_lp(work, opt.lp);
    if (r.status == LpStatus::Optimal) try_incumbent(r.objective, r.values);
  };

  std::vector<char> root_fix(nb, -1);
  apply_fix(root_fix);
  ++sol.nodes;
  LpSolution root = solve_lp(work, opt.lp);
  if (root.status == LpStatus::Infeasible) {
    sol.status = MipStatus::Infeasible;
    sol.bound = ext(kInf);
    return sol;
  }
  if (root.status == LpStatus::Unbounded) {
    sol.status = MipStatus::Unbounded;
    sol.bound = ext(-kInf);
    return sol;
  }
  if (trace) trace->lower_bounds.push_back(ext(root.objective));

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long seq = 0;
  double global_bound = root.objective;

  if (is_integral(root.values)) {
    try_incumbent(root.objective, root.values);
  } else {
    rounding_heuristic(root.values);
    open.push({root.objective, seq++, root_fix, root.values});
  }

  long expansions = 0;
  bool hit_limit = false;
  while (!open.empty()) {
    if (sol.nodes >= opt.node_limit) {
      hit_limit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (have_inc && node.bound >= best - margin()) break;  // best-bound order
    global_bound = std::max(global_bound, node.bound);
    ++expansions;
    if (trace) trace->lower_bounds.push_back(ext(global_bound));
    if (opt.heuristic_period > 0 && expansions % opt.heuristic_period == 0)
      rounding_heuristic(node.values);

    // most-fractional binary, ties to the smallest variable index
    int bt = -1;
    double bscore = opt.int_tol;
    for (int t = 0; t < nb; ++t) {
      double v = node.values[mip.binaries[t]];
      double f = std::min(v - std::floor(v), std::ceil(v) - v);
      if (f <= opt.int_tol) continue;
      if (f > bscore ||
          (f == bscore && bt >= 0 && mip.binaries[t] < mip.binaries[bt])) {
        bscore = f;
        bt = t;
      }
    }
    if (bt < 0) {
      try_incumbent(node.bound, node.values);
      continue;
    }

    for (char side : {char(0), char(1)}) {
      std::vector<char> fix = node.fix;
      fix[static_cast<size_t>(bt)] = side;
      apply_fix(fix);
      ++sol.nodes;
      LpSolution child = solve_lp(work, opt.lp);
      if (child.status == LpStatus::Infeasible) continue;
      if (child.status == LpStatus::Unbounded)
        throw SolverError("mip: child relaxation unbounded under fixed bounds");
      double cb = std::max(child.objective, node.bound);
      if (have_inc && cb >= best - margin()) continue;
      if (is_integral(child.values)) {
        try_incumbent(child.objective, child.values);
      } else {
        open.push({cb, seq++, std::move(fix), std::move(child.values)});
      }
    }
  }

  if (hit_limit) {
    sol.status = MipStatus::NodeLimit;
    double gb = open.empty() ? (have_inc ? best : global_bound)
                             : std::max(global_bound, open.top().bound);
    if (have_inc) gb = std::min(gb, best);
    sol.bound = ext(gb);
    if (have_inc) {
      sol.objective = ext(best);
      sol.values = inc;
    }
    return sol;
  }

  if (!have_inc) {
    sol.status = MipStatus::Infeasible;
    sol.bound = ext(kInf);
    return sol;
  }
  sol.status = MipStatus::Optimal;
  sol.objective = ext(best);
  sol.values = inc;
  sol.bound = ext(best);
  return sol;
}

}  // namespace rcf
