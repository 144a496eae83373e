#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "rcf/cellular.hpp"
#include "rcf/lp.hpp"
#include "rcf/mip.hpp"

namespace rcf {

// max-flow throughput instance with removals frozen to a 0/1 vector
struct ThroughputProblem {
  const ModifiedFlowGraph* graph = nullptr;
  double bandwidth_hz = 1e5;       // W
  std::unordered_map<int, int> z;  // removable edge id -> {0,1}
};

ThroughputProblem make_throughput_problem(const ModifiedFlowGraph& graph,
                                          double bandwidth_hz);

// tight flow bound for a removable edge: W times the total capacity of the
// finite edges entering its tail, i.e. everything that could ever reach it
double big_m(const ModifiedFlowGraph& graph, double bandwidth_hz, int edge);

struct InnerLpIndex {
  std::vector<int> flow_var;         // edge id -> LP column
  int wc = -1, wd = -1;              // shared bandwidth columns
  std::vector<int> balance_row;      // node id -> row
  std::vector<int> interference_row; // edge id -> row, -1 when none
  std::vector<int> removal_row;      // edge id -> row, -1 unless removable
  int bandwidth_row = -1;
};

LinearProgram build_inner_lp(const ThroughputProblem& problem,
                             InnerLpIndex* index = nullptr);

struct ThroughputSolution {
  double throughput = 0;  // bits/s
  LpSolution lp;
  InnerLpIndex index;
};

ThroughputSolution solve_throughput(const ThroughputProblem& problem,
                                    const SimplexOptions& opt = {});

// convenience: throughput with the listed devices' removable edges deleted
double throughput_after_disable(const ModifiedFlowGraph& graph,
                                double bandwidth_hz,
                                const std::vector<int>& device_ids,
                                const SimplexOptions& opt = {});

struct DualMilpIndex {
  std::vector<int> p;                    // node id -> column
  std::unordered_map<int, int> qc, qd;   // edge id -> column
  std::unordered_map<int, int> r, delta, z;
  int l = -1;
};

// single-level MILP equivalent of the bilevel removal problem: minimize the
// dual bound of the inner LP over binary removals within the budget
MixedIntegerProgram build_dual_milp(const ModifiedFlowGraph& graph,
                                    double bandwidth_hz, int budget,
                                    DualMilpIndex* index = nullptr);

struct InterdictionResult {
  double throughput = 0;             // T at the chosen removals, bits/s
  std::vector<int> removed_edges;    // removable edge ids, ascending
  std::vector<int> removed_devices;  // matching device ids, ascending
  std::map<std::string, double> certificate;  // dual variable values by name
  long nodes = 0;  // branch-and-bound nodes, or subsets tried for the oracle
};

InterdictionResult solve_interdiction(const ModifiedFlowGraph& graph,
                                      double bandwidth_hz, int budget,
                                      const MipOptions& opt = {});

// exhaustive reference: every removal subset of size <= budget, visited in
// lexicographic id order, first minimizer kept
InterdictionResult brute_force_interdiction(const ModifiedFlowGraph& graph,
                                            double bandwidth_hz, int budget,
                                            const SimplexOptions& opt = {},
                                            long subset_cap = 100000);

struct NceResult {
  std::vector<int> budgets;
  std::map<int, double> criticality;  // device id -> cr, every d2d device
  std::vector<std::vector<int>> removed_per_budget;  // device ids
  std::vector<double> throughput_per_budget;
};

// criticality evaluation: one interdiction solve per budget, counting how
// often each device's edge is removed
NceResult nce(const ModifiedFlowGraph& graph, double bandwidth_hz,
              const std::vector<int>& budgets, const MipOptions& opt = {});

// evenly spaced budgets spanning [k, num_d2d], at most 20 of them
std::vector<int> default_budgets(int k, int num_d2d);

std::string criticality_csv(const NceResult& result);

}  // namespace rcf
