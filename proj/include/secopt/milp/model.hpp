#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace secopt::milp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType { Continuous, Binary };
enum class Sense { LE, EQ, GE };

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(SolveStatus s);

/// Sparse linear expression: sum of coeff * var plus a constant term.
/// Terms may repeat; they are merged when the expression is attached to a model.
struct LinExpr {
  std::vector<std::pair<int, double>> terms;
  double constant = 0.0;

  LinExpr() = default;
  LinExpr(int var, double coeff) { terms.emplace_back(var, coeff); }

  LinExpr& add(int var, double coeff) {
    if (coeff != 0.0) terms.emplace_back(var, coeff);
    return *this;
  }
  LinExpr& add(const LinExpr& e, double scale = 1.0) {
    for (const auto& [v, c] : e.terms) add(v, c * scale);
    constant += e.constant * scale;
    return *this;
  }
  /// Merge duplicate variables, dropping exact zeros. Terms end up sorted by index.
  void compress();
};

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = kInf;
  VarType type = VarType::Continuous;
};

struct Row {
  std::string name;
  std::vector<std::pair<int, double>> coeffs;  // sorted, merged
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

struct SolverOptions {
  double feasibility_tol = 1e-7;
  double integrality_tol = 1e-6;
  double relative_gap = 1e-6;
  long node_limit = 500000;
  long iteration_limit = 2000000;  // simplex iterations per LP
  unsigned long deterministic_seed = 0;  // reserved; the search itself is deterministic
};

struct SolverStats {
  long simplex_iterations = 0;
  long nodes = 0;
  long lp_solves = 0;
};

struct MilpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
  SolverStats stats;
  // Row duals and reduced costs of the final basis (LP solves only).
  std::vector<double> duals;
  std::vector<double> reduced_costs;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

/// Mixed-integer linear program, minimization form.
class MilpModel {
 public:
  int add_var(const std::string& name, double lb, double ub,
              VarType type = VarType::Continuous);
  int add_binary(const std::string& name) { return add_var(name, 0.0, 1.0, VarType::Binary); }

  int add_row(const std::string& name, LinExpr expr, Sense sense, double rhs);

  void set_objective(int var, double coeff);
  void add_objective(int var, double coeff) { obj_[var] += coeff; }
  void add_objective_constant(double c) { obj_constant_ += c; }

  /// Fixes a variable to a value by collapsing its bounds.
  void fix_var(int var, double value) {
    vars_[var].lb = value;
    vars_[var].ub = value;
  }

  void register_big_m(const std::string& constraint_class, double value) {
    big_m_[constraint_class] = value;
  }
  double big_m(const std::string& constraint_class) const;
  const std::map<std::string, double>& big_m_registry() const { return big_m_; }

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_binaries() const;

  const Variable& var(int j) const { return vars_[j]; }
  Variable& var(int j) { return vars_[j]; }
  const Row& row(int i) const { return rows_[i]; }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<double>& objective() const { return obj_; }
  double objective_constant() const { return obj_constant_; }

  double eval_objective(const std::vector<double>& x) const;
  double eval_row(const Row& r, const std::vector<double>& x) const;

  /// Largest constraint violation of x over rows and variable bounds.
  double max_violation(const std::vector<double>& x) const;

  void check_well_formed() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
  std::vector<double> obj_;
  double obj_constant_ = 0.0;
  std::map<std::string, double> big_m_;
};

MilpSolution solve_lp(const MilpModel& model, const SolverOptions& opts = {});
MilpSolution solve_milp(const MilpModel& model, const SolverOptions& opts = {});

}  // namespace secopt::milp
