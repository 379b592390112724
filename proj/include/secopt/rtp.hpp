#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "secopt/case.hpp"
#include "secopt/milp/model.hpp"
#include "secopt/scenario.hpp"

namespace secopt {

/// Behavior index within a two-element behavior set.
enum Behavior : int { kWorking = 0, kFailing = 1 };

/// Per-demand/per-generator severity valuation. Area studies mask the
/// coefficients outside an operator's jurisdiction to zero.
struct SeverityWeights {
  std::map<int, double> voll_eur_mwh;      // demand id -> v_d
  std::map<int, double> disconnect_fee_eur;  // gen id -> w_g

  static SeverityWeights from_case(const Case& c);
  double voll(int demand_id) const;
  double fee(int gen_id) const;
  double max_severity_eur(const Case& c) const;
};

struct IncrementalFees {
  // Defaults reproduce the symmetric absolute-deviation settlement.
  std::map<int, double> prev_up, prev_dn;  // per generator, EUR/MWh
  std::map<int, double> corr_up, corr_dn;
};

enum class ObjectiveVariant { NetCost, Incremental };

struct RtpOptions {
  double s_max = 0.0;
  double epsilon = 0.0;
  bool allow_relax_working = false;
  bool allow_relax_failing = true;
  ObjectiveVariant objective_variant = ObjectiveVariant::NetCost;
  IncrementalFees fees;  // used by the incremental variant

  // Benchmark variant (deterministic N-1 practice): drop the expected-severity
  // objective term and the chance constraint; working-behavior limits stay
  // hard and failing-behavior limits stay relaxable.
  bool n1_benchmark = false;
};

/// Extra controls used by the multi-area workflow.
struct RtpExtras {
  std::map<int, double> fixed_gens_mw;  // preventive and corrective pinned
  std::set<int> no_relax_lines;         // overload relaxation forbidden
  std::optional<SeverityWeights> weights;
};

/// Joint preventive/corrective decision: P_g^0 plus one re-dispatch schedule
/// per outage contingency (the pseudo-contingency has none).
struct Strategy {
  std::map<int, double> preventive;                 // gen id -> MW
  std::map<int, std::map<int, double>> corrective;  // contingency index -> gen -> MW
};

/// Index of every decision variable of the built model.
struct VariableMap {
  using CbKey = std::pair<int, int>;            // (contingency index, behavior)
  using CbId = std::tuple<int, int, int>;       // (contingency, behavior, entity id)

  std::map<int, int> p0;                        // P_g^0
  std::map<int, int> f0;                        // f_l^0
  std::map<int, int> theta0;                    // theta_n^0
  std::map<std::pair<int, int>, int> pc;        // P_g^c, c >= 2
  std::map<CbId, int> flow;                     // f_l^c(b)
  std::map<CbId, int> theta;                    // theta_n^c(b)
  std::map<std::pair<int, int>, int> delta;     // failing-balance slack (c, node)
  std::map<CbId, int> lam;                      // overload indicator
  std::map<CbId, int> flow_sign;                // positive-flow indicator
  std::map<CbId, int> gen_hat;                  // terminal unit output
  std::map<CbId, int> dem_hat;                  // terminal served load
  std::map<CbId, int> flow_hat;                 // terminal line flow
  std::map<CbId, int> theta_hat;                // terminal angle
  std::map<CbId, int> trip;                     // y_g^c(b)
  std::map<CbKey, int> severity;                // s^c(b)
  std::map<CbKey, int> gamma;                   // chance indicator
  std::map<CbId, int> theta_prod;               // lam * angle-difference aux
  std::map<CbId, int> gen_prod;                 // y * dispatch-base aux
  std::map<int, int> prev_dev_up, prev_dev_dn;  // incremental-settlement slacks
  std::map<std::pair<int, int>, int> corr_dev_up, corr_dev_dn;

  int at(const std::map<CbId, int>& m, int c, int b, int id) const;
  int at(const std::map<CbKey, int>& m, int c, int b) const;
};

struct RtpBuild {
  milp::MilpModel model;
  VariableMap map;
  SeverityWeights weights;
};

/// Full severity-controlled formulation.
RtpBuild build_rtp(const Case& c, const ContingencySet& conts, const BehaviorSet& behs,
                   const RtpOptions& opts, const RtpExtras& extras = {});

/// Deterministic N-1 benchmark: expected-severity term omitted, chance pair
/// disabled, working-behavior limits strictly enforced, failing-behavior
/// limits relaxable; failing severities remain as by-products.
RtpBuild build_case_a(const Case& c, const ContingencySet& conts, const BehaviorSet& behs,
                      const RtpExtras& extras = {});

/// Swaps Appendix-style incremental settlement terms into the objective for
/// the preventive or corrective side. Called by build_rtp for the
/// Incremental variant; exposed for direct use and tests.
void objective_incremental(milp::MilpModel& model, VariableMap& map, const Case& c,
                           const ContingencySet& conts, const IncrementalFees& fees,
                           bool preventive_kind);

Strategy extract_strategy(const milp::MilpSolution& sol, const VariableMap& map,
                          const Case& c, const ContingencySet& conts,
                          double integrality_tol = 1e-6);

/// Validates strategy invariants against a case and contingency set; returns
/// the violated-constraint names (empty means valid).
std::vector<std::string> check_strategy(const Strategy& s, const Case& c,
                                        const ContingencySet& conts);

}  // namespace secopt
