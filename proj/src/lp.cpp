#include "rcf/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "rcf/errors.hpp"

namespace rcf {

int LinearProgram::add_variable(const std::string& name, double lower,
                                double upper, double obj) {
  int idx = static_cast<int>(vars.size());
  vars.push_back({name, lower, upper, obj});
  if (!name.empty()) name_to_var_.emplace(name, idx);
  return idx;
}

int LinearProgram::add_constraint(const std::string& name,
                                  std::vector<std::pair<int, double>> coeffs,
                                  Relation rel, double rhs) {
  int idx = static_cast<int>(rows.size());
  rows.push_back({name, std::move(coeffs), rel, rhs});
  return idx;
}

int LinearProgram::var_index(const std::string& name) const {
  auto it = name_to_var_.find(name);
  return it == name_to_var_.end() ? -1 : it->second;
}

void LinearProgram::validate() const {
  std::unordered_map<std::string, int> seen;
  for (size_t j = 0; j < vars.size(); ++j) {
    const auto& v = vars[j];
    if (v.lower > v.upper)
      throw ConfigError("lp: variable '" + v.name + "' has lower > upper");
    if (std::isnan(v.lower) || std::isnan(v.upper) || !std::isfinite(v.obj))
      throw ConfigError("lp: variable '" + v.name + "' has bad bounds/objective");
    if (!v.name.empty()) {
      auto [it, fresh] = seen.emplace(v.name, static_cast<int>(j));
      if (!fresh) throw ConfigError("lp: duplicate variable name '" + v.name + "'");
    }
  }
  for (const auto& r : rows) {
    if (!std::isfinite(r.rhs))
      throw ConfigError("lp: constraint '" + r.name + "' has non-finite rhs");
    for (auto [j, a] : r.coeffs) {
      if (j < 0 || j >= static_cast<int>(vars.size()))
        throw ConfigError("lp: constraint '" + r.name +
                          "' references undeclared variable index " +
                          std::to_string(j));
      if (!std::isfinite(a))
        throw ConfigError("lp: constraint '" + r.name + "' has non-finite coefficient");
    }
  }
}

namespace {

constexpr double kPivotEps = 1e-11;   // column entries below this never pivot
constexpr double kDropEps = 1e-13;    // elimination skip threshold
constexpr double kDegenEps = 1e-12;   // progress below this counts as a stall

struct Tableau {
  int m = 0;       // rows
  int nstruct = 0; // structural columns
  int ncols = 0;   // structural + slack + artificial
  std::vector<double> t;      // (m) x ncols, row-major
  std::vector<double> d;      // reduced-cost row
  std::vector<double> lo, up, cost, xval;
  std::vector<int> basis;         // row -> column
  std::vector<int> pos;           // column -> row or -1
  std::vector<char> at_up;        // nonbasic at upper bound
  std::vector<double> b;          // original rhs
  int first_art = 0;              // columns >= first_art are artificial

  double* row(int i) { return t.data() + static_cast<size_t>(i) * ncols; }
  const double* row(int i) const {
    return t.data() + static_cast<size_t>(i) * ncols;
  }
};

enum class RunResult { OptimalStop, Unbounded, IterLimit };

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt) {}

  LpSolution solve();

 private:
  void setup();
  RunResult run(long cap);
  void pivot(int r, int q);
  void refresh_basics();
  void reset_devex();

  const LinearProgram& lp_;
  SimplexOptions opt_;
  Tableau tb_;
  double sign_ = 1.0;  // -1 when maximizing (internal objective is minimized)
  bool bland_ = false;
  int stall_ = 0;
  long iters_ = 0;
  std::vector<int> scratch_nz_;
  std::vector<double> wdev_;  // devex reference weights
  double wmax_ = 1.0;
};

void Simplex::setup() {
  const int m = static_cast<int>(lp_.rows.size());
  const int n = static_cast<int>(lp_.vars.size());
  sign_ = lp_.sense == Sense::Maximize ? -1.0 : 1.0;

  tb_.m = m;
  tb_.nstruct = n;

  // start structural variables at a finite bound (lower preferred), 0 if free
  std::vector<double> x0(n), lo(n), up(n);
  std::vector<char> atup(n, 0);
  for (int j = 0; j < n; ++j) {
    lo[j] = lp_.vars[j].lower;
    up[j] = lp_.vars[j].upper;
    if (std::isfinite(lo[j])) {
      x0[j] = lo[j];
    } else if (std::isfinite(up[j])) {
      x0[j] = up[j];
      atup[j] = 1;
    } else {
      x0[j] = 0.0;
    }
  }

  // residuals decide which rows need an artificial column
  std::vector<double> resid(m);
  std::vector<double> slo(m), sup(m);
  std::vector<int> art_row;
  std::vector<double> art_sign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const auto& r = lp_.rows[i];
    double ax = 0;
    for (auto [j, a] : r.coeffs) ax += a * x0[j];
    double s = r.rhs - ax;
    resid[i] = s;
    switch (r.rel) {
      case Relation::LessEq: slo[i] = 0; sup[i] = kInf; break;
      case Relation::GreaterEq: slo[i] = -kInf; sup[i] = 0; break;
      case Relation::Equal: slo[i] = 0; sup[i] = 0; break;
    }
    if (s < slo[i] - 0.0 || s > sup[i] + 0.0) {
      double sb = s > sup[i] ? sup[i] : slo[i];
      art_sign[i] = (s - sb) > 0 ? 1.0 : -1.0;
      art_row.push_back(i);
    }
  }

  const int na = static_cast<int>(art_row.size());
  tb_.first_art = n + m;
  tb_.ncols = n + m + na;
  const int ncols = tb_.ncols;

  tb_.t.assign(static_cast<size_t>(m) * ncols, 0.0);
  tb_.d.assign(ncols, 0.0);
  tb_.lo.assign(ncols, 0.0);
  tb_.up.assign(ncols, 0.0);
  tb_.cost.assign(ncols, 0.0);
  tb_.xval.assign(ncols, 0.0);
  tb_.basis.assign(m, -1);
  tb_.pos.assign(ncols, -1);
  tb_.at_up.assign(ncols, 0);
  tb_.b.resize(m);

  for (int j = 0; j < n; ++j) {
    tb_.lo[j] = lo[j];
    tb_.up[j] = up[j];
    tb_.xval[j] = x0[j];
    tb_.at_up[j] = atup[j];
  }
  for (int i = 0; i < m; ++i) {
    tb_.lo[n + i] = slo[i];
    tb_.up[n + i] = sup[i];
    tb_.b[i] = lp_.rows[i].rhs;
  }
  for (int a = 0; a < na; ++a) {
    tb_.lo[n + m + a] = 0;
    tb_.up[n + m + a] = kInf;
  }

  int next_art = 0;
  for (int i = 0; i < m; ++i) {
    double* ri = tb_.row(i);
    for (auto [j, a] : lp_.rows[i].coeffs) ri[j] += a;
    ri[n + i] = 1.0;
    if (art_sign[i] != 0.0) {
      int ac = n + m + next_art++;
      ri[ac] = art_sign[i];
      // scale row so the basic (artificial) column is +1
      if (art_sign[i] < 0)
        for (int j = 0; j < ncols; ++j) ri[j] = -ri[j];
      tb_.basis[i] = ac;
      tb_.pos[ac] = i;
      double sb = resid[i] > sup[i] ? sup[i] : slo[i];
      tb_.xval[n + i] = sb;
      tb_.at_up[n + i] = (sb == sup[i] && std::isfinite(sup[i])) ? 1 : 0;
      tb_.xval[ac] = std::fabs(resid[i] - sb);
    } else {
      tb_.basis[i] = n + i;
      tb_.pos[n + i] = i;
      tb_.xval[n + i] = resid[i];
    }
  }

  reset_devex();
}

void Simplex::reset_devex() {
  wdev_.assign(tb_.ncols, 1.0);
  wmax_ = 1.0;
}

// One Gauss-Jordan elimination step on pivot (r, q). Values are NOT touched
// here; callers update xval first.
void Simplex::pivot(int r, int q) {
  const int ncols = tb_.ncols;
  double* pr = tb_.row(r);
  const double piv = pr[q];
  const double inv = 1.0 / piv;
  auto& nz = scratch_nz_;
  nz.clear();
  for (int j = 0; j < ncols; ++j) {
    if (pr[j] != 0.0) {
      pr[j] *= inv;
      if (std::fabs(pr[j]) > kDropEps || j == q) nz.push_back(j);
      else pr[j] = 0.0;
    }
  }
  pr[q] = 1.0;

  for (int i = 0; i < tb_.m; ++i) {
    if (i == r) continue;
    double* pi = tb_.row(i);
    double f = pi[q];
    if (std::fabs(f) <= kDropEps) {
      pi[q] = 0.0;
      continue;
    }
    for (int j : nz) pi[j] -= f * pr[j];
    pi[q] = 0.0;
  }
  {
    double* pd = tb_.d.data();
    double f = pd[q];
    if (std::fabs(f) > 0.0) {
      for (int j : nz) pd[j] -= f * pr[j];
    }
    pd[q] = 0.0;
  }

  int leaving = tb_.basis[r];
  tb_.pos[leaving] = -1;
  tb_.basis[r] = q;
  tb_.pos[q] = r;
}

RunResult Simplex::run(long cap) {
  const int ncols = tb_.ncols;
  while (true) {
    if (iters_ >= cap) return RunResult::IterLimit;
    if (wmax_ > 1e8) reset_devex();

    // pricing: devex scores, lowest-index (Bland) once fully stalled
    int q = -1;
    double qscore = 0;
    int qdir = 0;
    for (int j = 0; j < ncols; ++j) {
      if (tb_.pos[j] >= 0) continue;
      if (tb_.lo[j] == tb_.up[j]) continue;  // fixed (includes retired artificials)
      double dj = tb_.d[j];
      int dir = 0;
      bool lo_inf = !std::isfinite(tb_.lo[j]);
      bool up_inf = !std::isfinite(tb_.up[j]);
      if (lo_inf && up_inf) {
        if (dj < -opt_.opt_tol) dir = 1;
        else if (dj > opt_.opt_tol) dir = -1;
      } else if (tb_.at_up[j]) {
        if (dj > opt_.opt_tol) dir = -1;
      } else {
        if (dj < -opt_.opt_tol) dir = 1;
      }
      if (dir == 0) continue;
      if (bland_) { q = j; qdir = dir; break; }
      double score = dj * dj / wdev_[j];
      if (score > qscore) { q = j; qdir = dir; qscore = score; }
    }
    if (q < 0) return RunResult::OptimalStop;

    const double sigma = qdir;
    // ratio test
    double own = tb_.up[q] - tb_.lo[q];  // inf when a bound is infinite
    if (!std::isfinite(own)) own = kInf;
    double best = own;
    int brow = -1;
    double balpha = 0;
    for (int i = 0; i < tb_.m; ++i) {
      double alpha = tb_.row(i)[q];
      if (std::fabs(alpha) <= kPivotEps) continue;
      int k = tb_.basis[i];
      double move = -sigma * alpha;  // d(x_k)/d(delta)
      double room, delta;
      if (move < 0) {
        if (!std::isfinite(tb_.lo[k])) continue;
        room = tb_.xval[k] - tb_.lo[k];
      } else {
        if (!std::isfinite(tb_.up[k])) continue;
        room = tb_.up[k] - tb_.xval[k];
      }
      if (room < 0) room = 0;
      delta = room / std::fabs(alpha);
      if (bland_) {
        if (delta < best - kDegenEps ||
            (delta <= best + kDegenEps && brow >= 0 && k < tb_.basis[brow])) {
          best = delta; brow = i; balpha = alpha;
        } else if (brow < 0 && delta <= best + kDegenEps) {
          best = delta; brow = i; balpha = alpha;
        }
      } else {
        if (delta < best - kDegenEps) {
          best = delta; brow = i; balpha = alpha;
        } else if (brow >= 0 && delta <= best + kDegenEps &&
                   (std::fabs(alpha) > std::fabs(balpha) ||
                    (std::fabs(alpha) == std::fabs(balpha) &&
                     k < tb_.basis[brow]))) {
          brow = i; balpha = alpha;
        } else if (brow < 0 && delta <= best + kDegenEps) {
          best = delta; brow = i; balpha = alpha;
        }
      }
    }

    if (brow < 0 && !std::isfinite(best)) return RunResult::Unbounded;

    ++iters_;
    const double dq = tb_.d[q];
    if (brow < 0) {
      // entering variable flips to its opposite bound
      double delta = best;
      tb_.xval[q] += sigma * delta;
      for (int i = 0; i < tb_.m; ++i) {
        double alpha = tb_.row(i)[q];
        if (alpha != 0.0) tb_.xval[tb_.basis[i]] -= sigma * delta * alpha;
      }
      tb_.at_up[q] = tb_.at_up[q] ? 0 : 1;
      if (delta > kDegenEps && std::fabs(dq) > opt_.opt_tol) {
        stall_ = 0; bland_ = false;
      } else if (++stall_ >= opt_.stall_limit) bland_ = true;
      continue;
    }

    double delta = best;
    // value updates
    tb_.xval[q] += sigma * delta;
    for (int i = 0; i < tb_.m; ++i) {
      if (i == brow) continue;
      double alpha = tb_.row(i)[q];
      if (alpha != 0.0) tb_.xval[tb_.basis[i]] -= sigma * delta * alpha;
    }
    int k = tb_.basis[brow];
    double move = -sigma * tb_.row(brow)[q];
    tb_.xval[k] = move < 0 ? tb_.lo[k] : tb_.up[k];
    tb_.at_up[k] = move < 0 ? 0 : 1;

    pivot(brow, q);

    // devex reference-weight update off the (normalized) pivot row
    {
      const double* pr = tb_.row(brow);
      double wq = wdev_[q];
      for (int j = 0; j < ncols; ++j) {
        if (tb_.pos[j] >= 0) continue;
        double a = pr[j];
        if (a == 0.0) continue;
        double cand = a * a * wq;
        if (cand > wdev_[j]) {
          wdev_[j] = cand;
          if (cand > wmax_) wmax_ = cand;
        }
      }
      if (wdev_[k] < 1.0) wdev_[k] = 1.0;
    }

    if (delta > kDegenEps && std::fabs(dq) > opt_.opt_tol) {
      stall_ = 0; bland_ = false;
    } else if (++stall_ >= opt_.stall_limit) bland_ = true;
  }
}

// Recompute basic values from the original rhs through B^{-1} (read off the
// slack block) to shed incremental drift.
void Simplex::refresh_basics() {
  const int m = tb_.m, n = tb_.nstruct;
  std::vector<int> nbnz;
  for (int j = 0; j < tb_.ncols; ++j)
    if (tb_.pos[j] < 0 && tb_.xval[j] != 0.0) nbnz.push_back(j);
  for (int r = 0; r < m; ++r) {
    const double* pr = tb_.row(r);
    double v = 0;
    for (int i = 0; i < m; ++i) v += pr[n + i] * tb_.b[i];
    for (int j : nbnz) v -= pr[j] * tb_.xval[j];
    tb_.xval[tb_.basis[r]] = v;
  }
}

LpSolution Simplex::solve() {
  lp_.validate();
  setup();

  const int m = tb_.m, n = tb_.nstruct, ncols = tb_.ncols;
  long cap = opt_.max_iters > 0
                 ? opt_.max_iters
                 : 40000 + 120L * m + 24L * ncols;

  LpSolution sol;

  const bool phase1_needed = tb_.first_art < ncols;
  if (phase1_needed) {
    for (int j = tb_.first_art; j < ncols; ++j) tb_.cost[j] = 1.0;
    // d = c - sum over artificial-basic rows of their tableau row
    for (int j = 0; j < ncols; ++j) tb_.d[j] = tb_.cost[j];
    for (int i = 0; i < m; ++i) {
      if (tb_.basis[i] >= tb_.first_art) {
        const double* ri = tb_.row(i);
        for (int j = 0; j < ncols; ++j) tb_.d[j] -= ri[j];
      }
    }
    RunResult r1 = run(cap);
    if (r1 == RunResult::IterLimit)
      throw SolverError("simplex: phase-1 iteration limit reached (cannot make progress)");
    if (r1 == RunResult::Unbounded)
      throw SolverError("simplex: phase-1 objective unbounded (numerical failure)");
    double infeas = 0;
    for (int j = tb_.first_art; j < ncols; ++j) infeas += tb_.xval[j];
    if (infeas > opt_.feas_tol) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = iters_;
      return sol;
    }
    // drive surviving artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
      if (tb_.basis[i] < tb_.first_art) continue;
      const double* ri = tb_.row(i);
      int bestj = -1;
      double besta = 1e-7;
      for (int j = 0; j < tb_.first_art; ++j) {
        if (tb_.pos[j] >= 0) continue;
        double a = std::fabs(ri[j]);
        if (a > besta) { besta = a; bestj = j; }
      }
      if (bestj >= 0) {
        tb_.xval[tb_.basis[i]] = 0.0;
        pivot(i, bestj);
        // entering variable becomes basic at its current (bound) value; the
        // leaving artificial held ~0, so values are already consistent
      }
    }
    for (int j = tb_.first_art; j < ncols; ++j) {
      tb_.lo[j] = tb_.up[j] = 0.0;
      if (tb_.pos[j] < 0) tb_.xval[j] = 0.0;
      tb_.at_up[j] = 0;
      tb_.cost[j] = 0.0;
    }
  }

  // phase 2 objective
  for (int j = 0; j < n; ++j) tb_.cost[j] = sign_ * lp_.vars[j].obj;
  for (int j = 0; j < ncols; ++j) tb_.d[j] = tb_.cost[j];
  for (int i = 0; i < m; ++i) {
    double cb = tb_.cost[tb_.basis[i]];
    if (cb != 0.0) {
      const double* ri = tb_.row(i);
      for (int j = 0; j < ncols; ++j) tb_.d[j] -= cb * ri[j];
    }
  }
  bland_ = false;
  stall_ = 0;
  reset_devex();

  RunResult r2 = run(cap);
  if (r2 == RunResult::IterLimit)
    throw SolverError("simplex: iteration limit reached (cannot make progress)");
  if (r2 == RunResult::Unbounded) {
    sol.status = LpStatus::Unbounded;
    sol.iterations = iters_;
    return sol;
  }

  refresh_basics();

  sol.status = LpStatus::Optimal;
  sol.iterations = iters_;
  sol.values.assign(tb_.xval.begin(), tb_.xval.begin() + n);
  double obj = 0;
  for (int j = 0; j < n; ++j) obj += lp_.vars[j].obj * tb_.xval[j];
  sol.objective = obj;

  sol.duals.resize(m);
  for (int i = 0; i < m; ++i) sol.duals[i] = sign_ * -tb_.d[n + i];
  sol.reduced_costs.resize(n);
  for (int j = 0; j < n; ++j) sol.reduced_costs[j] = sign_ * tb_.d[j];

  double dual_obj = 0;
  for (int i = 0; i < m; ++i) dual_obj += -tb_.d[n + i] * tb_.b[i];
  for (int j = 0; j < ncols; ++j)
    if (tb_.pos[j] < 0 && tb_.xval[j] != 0.0) dual_obj += tb_.d[j] * tb_.xval[j];
  sol.dual_objective = sign_ * dual_obj;
  return sol;
}

}  // namespace

namespace {

// nearest power of two, so scaling in and out is exact in floating point
double pow2_near(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) return 1.0;
  int e;
  double m = std::frexp(s, &e);  // s = m * 2^e, m in [0.5, 1)
  return std::ldexp(1.0, m >= 0.7071067811865476 ? e : e - 1);
}

// geometric-mean equilibration; coefficient ranges like 1e-2..1e9 (big-M
// rows next to capacity reciprocals) otherwise wreck the dense eliminations
bool equilibrate(const LinearProgram& lp, std::vector<double>& rs,
                 std::vector<double>& cs) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = static_cast<int>(lp.vars.size());
  rs.assign(m, 1.0);
  cs.assign(n, 1.0);
  for (int pass = 0; pass < 3; ++pass) {
    for (int i = 0; i < m; ++i) {
      double mx = 0, mn = kInf;
      for (auto [j, a] : lp.rows[i].coeffs) {
        double v = std::fabs(a) * cs[j];
        if (v == 0.0) continue;
        mx = std::max(mx, v);
        mn = std::min(mn, v);
      }
      if (mx > 0) rs[i] = pow2_near(1.0 / std::sqrt(mx * mn));
    }
    std::vector<double> cmx(n, 0.0), cmn(n, kInf);
    for (int i = 0; i < m; ++i) {
      for (auto [j, a] : lp.rows[i].coeffs) {
        double v = std::fabs(a) * rs[i];
        if (v == 0.0) continue;
        cmx[j] = std::max(cmx[j], v);
        cmn[j] = std::min(cmn[j], v);
      }
    }
    for (int j = 0; j < n; ++j)
      if (cmx[j] > 0) cs[j] = pow2_near(1.0 / std::sqrt(cmx[j] * cmn[j]));
  }
  for (double v : rs)
    if (v != 1.0) return true;
  for (double v : cs)
    if (v != 1.0) return true;
  return false;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt) {
  lp.validate();
  std::vector<double> rs, cs;
  if (!equilibrate(lp, rs, cs)) {
    Simplex s(lp, opt);
    return s.solve();
  }

  // scaled problem: x = cs .* x', row i multiplied through by rs[i]
  LinearProgram sc = lp;
  for (size_t j = 0; j < sc.vars.size(); ++j) {
    auto& v = sc.vars[j];
    v.obj *= cs[j];
    if (std::isfinite(v.lower)) v.lower /= cs[j];
    if (std::isfinite(v.upper)) v.upper /= cs[j];
  }
  for (size_t i = 0; i < sc.rows.size(); ++i) {
    auto& r = sc.rows[i];
    for (auto& [j, a] : r.coeffs) a *= rs[i] * cs[j];
    r.rhs *= rs[i];
  }

  Simplex s(sc, opt);
  LpSolution sol = s.solve();
  for (size_t j = 0; j < sol.values.size(); ++j) sol.values[j] *= cs[j];
  for (size_t i = 0; i < sol.duals.size(); ++i) sol.duals[i] *= rs[i];
  for (size_t j = 0; j < sol.reduced_costs.size(); ++j)
    sol.reduced_costs[j] /= cs[j];
  return sol;
}

namespace {
std::string num(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string vname(const LinearProgram& lp, int j) {
  if (!lp.vars[j].name.empty()) return lp.vars[j].name;
  return "v" + std::to_string(j);
}
}  // namespace

std::string dump_lp(const LinearProgram& lp, const std::vector<int>* binaries) {
  std::ostringstream os;
  os << "# rcf-lp-v1\n";
  os << (lp.sense == Sense::Minimize ? "min:" : "max:");
  bool first = true;
  for (size_t j = 0; j < lp.vars.size(); ++j) {
    if (lp.vars[j].obj == 0.0) continue;
    os << (first ? " " : " + ") << num(lp.vars[j].obj) << ' ' << vname(lp, (int)j);
    first = false;
  }
  if (first) os << " 0";
  os << ";\n";
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& r = lp.rows[i];
    os << (r.name.empty() ? "r" + std::to_string(i) : r.name) << ':';
    bool f2 = true;
    for (auto [j, a] : r.coeffs) {
      os << (f2 ? " " : " + ") << num(a) << ' ' << vname(lp, j);
      f2 = false;
    }
    if (f2) os << " 0";
    switch (r.rel) {
      case Relation::LessEq: os << " <= "; break;
      case Relation::Equal: os << " = "; break;
      case Relation::GreaterEq: os << " >= "; break;
    }
    os << num(r.rhs) << ";\n";
  }
  os << "bounds:\n";
  for (size_t j = 0; j < lp.vars.size(); ++j) {
    const auto& v = lp.vars[j];
    if (v.lower == -kInf && v.upper == kInf) os << vname(lp, (int)j) << " free;\n";
    else os << num(v.lower) << " <= " << vname(lp, (int)j) << " <= " << num(v.upper) << ";\n";
  }
  if (binaries && !binaries->empty()) {
    os << "binary:";
    for (int j : *binaries) os << ' ' << vname(lp, j);
    os << ";\n";
  }
  return os.str();
}

}  // namespace rcf
