#include "secopt/milp/linearize.hpp"

namespace secopt::milp {

int linearize_bin_times_free(MilpModel& model, int lambda, const LinExpr& theta,
                             double M, const std::string& name) {
  if (M <= 0.0) throw std::invalid_argument("linearize_bin_times_free: M must be positive");
  int aux = model.add_var(name, -kInf, kInf);
  LinExpr e1;
  e1.add(aux, 1.0).add(lambda, -M);
  model.add_row(name + ".ub", e1, Sense::LE, 0.0);
  LinExpr e2;
  e2.add(aux, 1.0).add(lambda, M);
  model.add_row(name + ".lb", e2, Sense::GE, 0.0);
  LinExpr e3;
  e3.add(aux, 1.0).add(theta, -1.0).add(lambda, M);
  model.add_row(name + ".tie_ub", e3, Sense::LE, M);
  LinExpr e4;
  e4.add(aux, 1.0).add(theta, -1.0).add(lambda, -M);
  model.add_row(name + ".tie_lb", e4, Sense::GE, -M);
  return aux;
}

int linearize_bin_times_free(MilpModel& model, int lambda, int theta, double M,
                             const std::string& name) {
  return linearize_bin_times_free(model, lambda, LinExpr(theta, 1.0), M, name);
}

int linearize_bin_times_nonneg(MilpModel& model, int y, const LinExpr& p,
                               double M, const std::string& name) {
  if (M <= 0.0) throw std::invalid_argument("linearize_bin_times_nonneg: M must be positive");
  int aux = model.add_var(name, 0.0, kInf);
  LinExpr e1;
  e1.add(aux, 1.0).add(y, -M);
  model.add_row(name + ".ub", e1, Sense::LE, 0.0);
  LinExpr e2;
  e2.add(aux, 1.0).add(p, -1.0).add(y, M);
  model.add_row(name + ".tie_ub", e2, Sense::LE, M);
  LinExpr e3;
  e3.add(aux, 1.0).add(p, -1.0).add(y, -M);
  model.add_row(name + ".tie_lb", e3, Sense::GE, -M);
  return aux;
}

int linearize_bin_times_nonneg(MilpModel& model, int y, int p, double M,
                               const std::string& name) {
  return linearize_bin_times_nonneg(model, y, LinExpr(p, 1.0), M, name);
}

}  // namespace secopt::milp
