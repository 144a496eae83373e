#pragma once
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rcf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class Relation { LessEq, Equal, GreaterEq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// General-form LP: bounded variables, <=/=/>= rows, either objective sense.
struct LinearProgram {
  struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    double obj = 0.0;
  };
  struct Constraint {
    std::string name;
    std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
  };

  Sense sense = Sense::Minimize;
  std::vector<Variable> vars;
  std::vector<Constraint> rows;

  int add_variable(const std::string& name, double lower, double upper,
                   double obj = 0.0);
  int add_constraint(const std::string& name,
                     std::vector<std::pair<int, double>> coeffs, Relation rel,
                     double rhs);
  int var_index(const std::string& name) const;  // -1 if absent

  // Throws ConfigError on out-of-range coefficient indices, lower > upper,
  // non-finite coefficients, or duplicate variable names.
  void validate() const;

 private:
  std::unordered_map<std::string, int> name_to_var_;
};

struct SimplexOptions {
  double feas_tol = 1e-6;  // row/bound feasibility
  double opt_tol = 1e-7;   // reduced-cost optimality threshold
  int stall_limit = 100;   // non-improving pivots before Bland's rule engages
  long max_iters = -1;     // -1: automatic from problem size
};

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;             // in the program's own sense
  std::vector<double> values;         // per variable
  std::vector<double> duals;          // per constraint
  std::vector<double> reduced_costs;  // per variable
  // b·y plus reduced-cost terms of nonbasic variables at their bounds; equals
  // `objective` up to roundoff when status == Optimal.
  double dual_objective = 0.0;
  long iterations = 0;
};

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt = {});

// Text rendering of the model (format documented in README). `binaries`
// optionally lists variable indices to print under a "binary:" footer.
std::string dump_lp(const LinearProgram& lp,
                    const std::vector<int>* binaries = nullptr);

}  // namespace rcf
