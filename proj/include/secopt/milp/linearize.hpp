#pragma once

#include <string>

#include "secopt/milp/model.hpp"

namespace secopt::milp {

/// Replaces the product lambda * theta (binary times free continuous, with
/// |theta| <= M implied by the model) by a new free variable tied to it with
/// four inequalities. Returns the auxiliary variable.
int linearize_bin_times_free(MilpModel& model, int lambda, int theta, double M,
                             const std::string& name);

/// Same, with theta given as a linear expression instead of a single variable.
int linearize_bin_times_free(MilpModel& model, int lambda, const LinExpr& theta,
                             double M, const std::string& name);

/// Replaces the product y * p (binary times nonnegative continuous, with
/// p <= M implied) by a new nonnegative variable tied by three inequalities.
int linearize_bin_times_nonneg(MilpModel& model, int y, int p, double M,
                               const std::string& name);

int linearize_bin_times_nonneg(MilpModel& model, int y, const LinExpr& p,
                               double M, const std::string& name);

}  // namespace secopt::milp
