#include "secopt/milp/model.hpp"

#include <algorithm>

namespace secopt::milp {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

void LinExpr::compress() {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    int v = terms[i].first;
    double c = 0.0;
    while (i < terms.size() && terms[i].first == v) c += terms[i++].second;
    if (c != 0.0) terms[out++] = {v, c};
  }
  terms.resize(out);
}

int MilpModel::add_var(const std::string& name, double lb, double ub, VarType type) {
  if (type == VarType::Binary) {
    if (lb < 0.0 || ub > 1.0 || lb > ub)
      throw std::invalid_argument("binary variable " + name + " must have bounds within [0,1]");
  } else if (lb > ub) {
    throw std::invalid_argument("variable " + name + " has lb > ub");
  }
  vars_.push_back({name, lb, ub, type});
  obj_.push_back(0.0);
  return static_cast<int>(vars_.size()) - 1;
}

int MilpModel::add_row(const std::string& name, LinExpr expr, Sense sense, double rhs) {
  expr.compress();
  for (const auto& [v, c] : expr.terms) {
    if (v < 0 || v >= num_vars())
      throw std::invalid_argument("row " + name + " references undeclared variable");
    if (!std::isfinite(c))
      throw std::invalid_argument("row " + name + " has non-finite coefficient");
  }
  rhs -= expr.constant;
  if (!std::isfinite(rhs)) throw std::invalid_argument("row " + name + " has non-finite rhs");
  rows_.push_back({name, std::move(expr.terms), sense, rhs});
  return static_cast<int>(rows_.size()) - 1;
}

void MilpModel::set_objective(int var, double coeff) { obj_[var] = coeff; }

double MilpModel::big_m(const std::string& constraint_class) const {
  auto it = big_m_.find(constraint_class);
  if (it == big_m_.end())
    throw std::out_of_range("big-M class not registered: " + constraint_class);
  return it->second;
}

int MilpModel::num_binaries() const {
  int n = 0;
  for (const auto& v : vars_)
    if (v.type == VarType::Binary) ++n;
  return n;
}

double MilpModel::eval_objective(const std::vector<double>& x) const {
  double z = obj_constant_;
  for (int j = 0; j < num_vars(); ++j) z += obj_[j] * x[j];
  return z;
}

double MilpModel::eval_row(const Row& r, const std::vector<double>& x) const {
  double a = 0.0;
  for (const auto& [v, c] : r.coeffs) a += c * x[v];
  return a;
}

double MilpModel::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (const auto& r : rows_) {
    double a = eval_row(r, x);
    double v = 0.0;
    if (r.sense == Sense::LE) v = a - r.rhs;
    else if (r.sense == Sense::GE) v = r.rhs - a;
    else v = std::abs(a - r.rhs);
    worst = std::max(worst, v);
  }
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max(worst, vars_[j].lb - x[j]);
    worst = std::max(worst, x[j] - vars_[j].ub);
  }
  return worst;
}

void MilpModel::check_well_formed() const {
  for (const auto& v : vars_) {
    if (v.lb > v.ub) throw std::logic_error("variable " + v.name + " has empty domain");
    if (std::isnan(v.lb) || std::isnan(v.ub))
      throw std::logic_error("variable " + v.name + " has NaN bound");
  }
  for (const auto& r : rows_) {
    for (const auto& [v, c] : r.coeffs) {
      (void)v;
      if (!std::isfinite(c)) throw std::logic_error("row " + r.name + " has bad coefficient");
    }
    if (!std::isfinite(r.rhs)) throw std::logic_error("row " + r.name + " has bad rhs");
  }
}

}  // namespace secopt::milp
