#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "secopt/case.hpp"
#include "secopt/rtp.hpp"
#include "secopt/scenario.hpp"
#include "secopt/terminal.hpp"

namespace secopt {

struct AreaPartition {
  // Ordered area ids with their node sets; nodes must partition the case.
  std::vector<std::pair<std::string, std::set<int>>> areas;

  const std::set<int>& nodes_of(const std::string& area) const;
  std::string area_of_node(int node) const;
  /// Lines whose endpoints lie in different areas.
  std::set<int> interconnectors(const Case& c) const;
  std::vector<std::string> check(const Case& c) const;
};

struct AreaPolicy {
  enum class Kind { SeverityControlled, N1Benchmark };
  Kind kind = Kind::SeverityControlled;
  double s_max = 0.0;
  double epsilon = 0.0;
};

struct Workflow {
  std::string case_ref;  // path or builtin name
  double p_fail = 0.2;
  ProbabilityMode prob_mode = ProbabilityMode::FromMttf;
  AreaPartition partition;
  std::map<std::string, AreaPolicy> policies;
};

Workflow load_workflow(std::istream& in, const std::string& origin = "<stream>");
Workflow load_workflow_file(const std::string& path);

/// Minimum-cost DC dispatch of the pre-contingency block alone.
std::map<int, double> system_opf(const Case& c);

struct AreaSubproblem {
  std::string area;
  ContingencySet contingencies;  // in-area singles + interconnectors + pseudo
  RtpBuild build;
  std::map<int, double> boundary_mw;  // out-of-area units pinned to these values
};

/// Security-management subproblem of one operator. Out-of-area units are
/// pinned to the boundary dispatch, only in-area failures and interconnector
/// failures are credible, constraint relaxation is forbidden outside the
/// operator's jurisdiction, and severity is valued inside the area only.
AreaSubproblem build_area_subproblem(const Case& c, const AreaPartition& partition,
                                     const std::string& area,
                                     const std::map<int, double>& boundary_dispatch,
                                     const AreaPolicy& policy, const BehaviorSet& behs);

/// Combines per-area strategies: each operator contributes the schedules of
/// its own units; contingencies covered by several operators merge their rows.
Strategy merge_strategies(const Case& c, const AreaPartition& partition,
                          const std::map<std::string, AreaSubproblem>& subs,
                          const std::map<std::string, Strategy>& area_strategies,
                          const ContingencySet& full_set);

struct MergedSeverityRow {
  int cont_index = 0;
  int behavior = kFailing;
  double probability = 0.0;
  double total_eur = 0.0;
  std::map<std::string, double> by_area_eur;
};

/// System-wide minimum-severity recomputation of a merged strategy under the
/// true severity coefficients, split per area of the affected asset.
std::vector<MergedSeverityRow> merge_and_min_severity(
    const Case& c, const ContingencySet& conts, const BehaviorSet& behs,
    const Strategy& merged, const AreaPartition& partition,
    RemovalMode mode = RemovalMode::FirstRound);

std::string merged_severity_csv(const std::vector<MergedSeverityRow>& rows,
                                const Case& c, const ContingencySet& conts,
                                const AreaPartition& partition);

}  // namespace secopt
