#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secopt/case.hpp"
#include "secopt/milp/model.hpp"
#include "secopt/rtp.hpp"
#include "secopt/scenario.hpp"
#include "secopt/terminal.hpp"

namespace secopt {

enum class PolicyKind { N1Benchmark, SeverityControlled };

struct SolveRequest {
  PolicyKind policy = PolicyKind::SeverityControlled;
  double s_max = 0.0;
  double epsilon = 0.0;
  double p_fail = 0.2;
  bool relax_working = false;
  ObjectiveVariant objective = ObjectiveVariant::NetCost;
  // FromMttf, Explicit, or unset = explicit when the case ships probabilities.
  std::optional<ProbabilityMode> prob_mode;
  std::string dump_model_path;
};

/// One reproducible solve: inputs, optimum, and its independent evaluation.
struct RunRecord {
  std::string case_name;
  std::string case_hash;
  SolveRequest request;
  milp::SolveStatus status = milp::SolveStatus::Infeasible;
  double objective_eur = 0.0;
  Strategy strategy;
  StrategyEvaluation evaluation;
  std::vector<SeverityRow> model_severities;  // per (c,b), from the solved model
  milp::SolverStats stats;
  double wall_seconds = 0.0;  // excluded from deterministic outputs
};

ContingencySet contingencies_for(const Case& c, const std::optional<ProbabilityMode>& mode);

/// Builds, solves and evaluates one policy run.
RunRecord run_solve(const Case& c, const SolveRequest& req);

/// Human-readable report: dispatch, re-dispatch, post-failure flows, severity
/// table and cost breakdown. Deterministic byte-for-byte.
std::string render_text_report(const RunRecord& rec, const Case& c,
                               const ContingencySet& conts);

/// Machine-readable tables: same content as CSV blocks.
std::string render_csv_report(const RunRecord& rec, const Case& c,
                              const ContingencySet& conts);

std::string run_record_json(const RunRecord& rec);

Strategy load_strategy(std::istream& in, const std::string& origin = "<stream>");
Strategy load_strategy_file(const std::string& path);
void serialize_strategy(const Strategy& s, std::ostream& out);
std::string serialize_strategy(const Strategy& s);

}  // namespace secopt
