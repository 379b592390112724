#pragma once

#include <memory>
#include <vector>

#include "secopt/milp/model.hpp"

namespace secopt::milp::internal {

// Reusable LP engine over a fixed model structure; bounds may vary per solve.
// Branch and bound re-solves the same model with tightened binary bounds.
class LpEngine {
 public:
  LpEngine(const MilpModel& model, const SolverOptions& opts);
  ~LpEngine();
  LpEngine(const LpEngine&) = delete;
  LpEngine& operator=(const LpEngine&) = delete;

  MilpSolution solve();
  MilpSolution solve(const std::vector<double>& lb, const std::vector<double>& ub);

 private:
  std::unique_ptr<class SimplexImpl> impl_;
};

}  // namespace secopt::milp::internal
