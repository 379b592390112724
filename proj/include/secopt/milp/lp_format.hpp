#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "secopt/milp/model.hpp"

namespace secopt::milp {

/// Name a variable the way write_lp_format prints it.
std::string lp_var_name(const MilpModel& model, int j);

/// Emits the model in LP text format (minimize / subject to / bounds /
/// binary sections) so external solvers can cross-check the built-in one.
void write_lp_format(const MilpModel& model, std::ostream& os);
void write_lp_file(const MilpModel& model, const std::string& path);

/// Reads a solution file of "<name> <value>" lines (comments start with #)
/// back into a vector indexed like the model's variables. Unmentioned
/// variables default to zero.
std::vector<double> read_lp_solution(const MilpModel& model, std::istream& is);
std::vector<double> read_lp_solution_file(const MilpModel& model, const std::string& path);

}  // namespace secopt::milp
