#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "secopt/case.hpp"
#include "secopt/rtp.hpp"
#include "secopt/scenario.hpp"

namespace secopt {

enum class RemovalMode {
  FirstRound,  // remove the branches overloaded by the initiating state once
  Iterated,    // follow removals to a fixed point (diagnostic)
};

/// Post-emergency equilibrium for one contingency/behavior pair.
struct TerminalState {
  std::map<int, double> served_load_mw;   // demand id -> served
  std::map<int, double> gen_output_mw;    // generator id -> output (0 if off)
  std::set<int> disconnected_units;       // tripped by emergency control
  std::set<int> removed_lines;            // overloaded and taken out
  std::map<int, double> flows_mw;         // terminal flows, in-service lines
  std::map<int, double> post_flows_mw;    // pre-removal propagated flows
  double severity_eur = 0.0;
};

struct SeverityRow {
  int cont_index = 0;
  int behavior = kWorking;
  double probability = 0.0;  // pi_c * pi_b
  double severity_eur = 0.0;
};

struct StrategyEvaluation {
  double preventive_cost_eur = 0.0;
  double expected_corrective_cost_eur = 0.0;
  double operating_cost_eur = 0.0;   // preventive + expected corrective
  double expected_severity_eur = 0.0;
  double total_cost_eur = 0.0;
  std::vector<SeverityRow> severity_table;  // every (c, b) pair, c = 1 included

  /// P(severity <= s) over all contingency/behavior outcomes.
  double prob_leq(double s) const;
  bool chance_ok(double s_max, double epsilon) const;
  double severity_of(int cont_index, int behavior) const;
};

/// Fixes injections per the behavior, removes overloaded branches, then finds
/// the minimum-severity emergency state (shedding, limited ramp-down, unit
/// disconnection) by exhaustive disconnection search over exact LP subproblems.
TerminalState terminal_state(const Case& c, const Contingency& cont, int behavior,
                             const Strategy& strategy, const SeverityWeights& weights,
                             RemovalMode mode = RemovalMode::FirstRound);

TerminalState terminal_state(const Case& c, const Contingency& cont, int behavior,
                             const Strategy& strategy,
                             RemovalMode mode = RemovalMode::FirstRound);

/// Severity of a terminal state under the given valuation.
double severity(const TerminalState& t, const Case& c, const SeverityWeights& weights);
double severity(const TerminalState& t, const Case& c);

/// Exhaustive evaluation of a fixed strategy over every (c, b) pair.
/// Throws with the violated constraint names when the strategy is invalid.
StrategyEvaluation evaluate_strategy(const Case& c, const ContingencySet& conts,
                                     const BehaviorSet& behs, const Strategy& strategy,
                                     const SeverityWeights& weights,
                                     RemovalMode mode = RemovalMode::FirstRound);

StrategyEvaluation evaluate_strategy(const Case& c, const ContingencySet& conts,
                                     const BehaviorSet& behs, const Strategy& strategy);

/// Severity table in CSV form (contingency, behavior, severity, percent of
/// the maximum possible severity, probability).
std::string severity_table_csv(const StrategyEvaluation& eval, const Case& c,
                               const ContingencySet& conts);

}  // namespace secopt
