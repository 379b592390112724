// Branch and bound for binary MILPs.
//
// Node selection is best-bound with FIFO tie-breaking, branching picks the
// most fractional binary with lowest-index ties, so the search is fully
// deterministic. A rounding repair heuristic (fix binaries along
// row-feasible directions, then re-solve the LP) supplies incumbents early;
// it does not affect the bound or the final optimum.

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "secopt/milp/model.hpp"
#include "simplex_internal.hpp"

namespace secopt::milp {

namespace {

struct Node {
  double bound;
  long seq;
  std::vector<std::pair<int, int>> fixes;  // (binary var, 0 or 1)
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.seq > b.seq;                              // FIFO on ties
  }
};

double int_dist(double v) { return std::abs(v - std::round(v)); }

}  // namespace

MilpSolution solve_milp(const MilpModel& model, const SolverOptions& opts) {
  model.check_well_formed();

  std::vector<int> binaries;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.var(j).type == VarType::Binary) binaries.push_back(j);
  if (binaries.empty()) return solve_lp(model, opts);

  internal::LpEngine engine(model, opts);
  const int n = model.num_vars();
  std::vector<double> base_lb(n), base_ub(n);
  for (int j = 0; j < n; ++j) {
    base_lb[j] = model.var(j).lb;
    base_ub[j] = model.var(j).ub;
  }

  // var -> rows containing it, for the repair row scans.
  std::vector<std::vector<int>> rows_of_var(n);
  for (int i = 0; i < model.num_rows(); ++i)
    for (const auto& [v, c] : model.row(i).coeffs) rows_of_var[v].push_back(i);

  SolverStats stats;
  bool have_inc = false;
  std::vector<double> inc_x;
  double inc_z = kInf;

  auto gap_abs = [&]() { return opts.relative_gap * std::max(1.0, std::abs(inc_z)); };

  auto offer_incumbent = [&](const std::vector<double>& x, double z) {
    if (!have_inc || z < inc_z - 1e-12) {
      have_inc = true;
      inc_x = x;
      inc_z = z;
    }
  };

  auto lp_at = [&](const std::vector<std::pair<int, int>>& fixes,
                   MilpSolution& out) {
    std::vector<double> lb = base_lb, ub = base_ub;
    for (const auto& [j, v] : fixes) {
      if (v == 0) ub[j] = 0.0;
      else lb[j] = 1.0;
    }
    out = engine.solve(lb, ub);
    ++stats.lp_solves;
    stats.simplex_iterations += out.stats.simplex_iterations;
  };

  // Fix every binary along a row-feasible rounding of x, then re-solve.
  auto repair = [&](const std::vector<std::pair<int, int>>& fixes,
                    std::vector<double> x) {
    std::vector<double> lb = base_lb, ub = base_ub;
    for (const auto& [j, v] : fixes) {
      if (v == 0) ub[j] = 0.0;
      else lb[j] = 1.0;
    }
    for (int round = 0; round < 4; ++round) {
      bool any_fractional = false;
      for (int j : binaries) {
        if (lb[j] == ub[j]) continue;
        double v = x[j];
        if (int_dist(v) <= opts.integrality_tol) {
          double r = std::round(v);
          lb[j] = ub[j] = r;
          x[j] = r;
          continue;
        }
        any_fractional = true;
        double near = std::round(v);
        double candidates[2] = {near, 1.0 - near};
        double chosen = near;
        for (double cand : candidates) {
          bool ok = true;
          for (int ri : rows_of_var[j]) {
            const Row& row = model.row(ri);
            double a = model.eval_row(row, x);
            double coeff = 0.0;
            for (const auto& [vv, cc] : row.coeffs)
              if (vv == j) { coeff = cc; break; }
            a += coeff * (cand - v);
            double tol = 1e-6 * std::max(1.0, std::abs(row.rhs));
            if (row.sense == Sense::LE && a > row.rhs + tol) ok = false;
            else if (row.sense == Sense::GE && a < row.rhs - tol) ok = false;
            else if (row.sense == Sense::EQ && std::abs(a - row.rhs) > tol) ok = false;
            if (!ok) break;
          }
          if (ok) { chosen = cand; break; }
        }
        lb[j] = ub[j] = chosen;
        x[j] = chosen;
      }
      MilpSolution s = engine.solve(lb, ub);
      ++stats.lp_solves;
      stats.simplex_iterations += s.stats.simplex_iterations;
      if (s.status != SolveStatus::Optimal) return;
      bool integral = true;
      for (int j : binaries)
        if (int_dist(s.values[j]) > opts.integrality_tol) { integral = false; break; }
      if (integral) {
        for (int j : binaries) s.values[j] = std::round(s.values[j]);
        offer_incumbent(s.values, model.eval_objective(s.values));
        return;
      }
      if (!any_fractional) return;
      x = s.values;
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long seq = 0;
  open.push({-kInf, seq++, {}});
  bool hit_node_limit = false;

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (have_inc && node.bound >= inc_z - gap_abs()) break;  // best-bound proves optimality
    if (stats.nodes >= opts.node_limit) {
      hit_node_limit = true;
      break;
    }
    ++stats.nodes;

    MilpSolution rel;
    lp_at(node.fixes, rel);
    if (rel.status == SolveStatus::Infeasible) continue;
    if (rel.status == SolveStatus::Unbounded) {
      MilpSolution sol;
      sol.status = SolveStatus::Unbounded;
      sol.stats = stats;
      return sol;
    }
    if (rel.status == SolveStatus::IterationLimit) {
      hit_node_limit = true;
      break;
    }
    if (have_inc && rel.objective >= inc_z - gap_abs()) continue;

    int branch_var = -1;
    double branch_frac = opts.integrality_tol;
    for (int j : binaries) {
      double d = int_dist(rel.values[j]);
      if (d > branch_frac * (1.0 + 1e-12)) {
        branch_frac = d;
        branch_var = j;
      }
    }
    if (branch_var < 0) {
      std::vector<double> x = rel.values;
      for (int j : binaries) x[j] = std::round(x[j]);
      offer_incumbent(x, model.eval_objective(x));
      continue;
    }

    if (!have_inc || stats.nodes == 1 || (stats.nodes & 15) == 0)
      repair(node.fixes, rel.values);
    if (have_inc && rel.objective >= inc_z - gap_abs()) continue;

    Node down{rel.objective, seq++, node.fixes};
    down.fixes.emplace_back(branch_var, 0);
    Node up{rel.objective, seq++, node.fixes};
    up.fixes.emplace_back(branch_var, 1);
    open.push(std::move(down));
    open.push(std::move(up));
  }

  MilpSolution sol;
  sol.stats = stats;
  if (have_inc) {
    sol.status = hit_node_limit ? SolveStatus::IterationLimit : SolveStatus::Optimal;
    sol.values = inc_x;
    sol.objective = inc_z;
  } else {
    sol.status = hit_node_limit ? SolveStatus::IterationLimit : SolveStatus::Infeasible;
  }
  return sol;
}

}  // namespace secopt::milp
