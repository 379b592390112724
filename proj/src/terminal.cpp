#include "secopt/terminal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "secopt/milp/model.hpp"

namespace secopt {

namespace {

constexpr double kOverloadSlack = 1e-3;  // a line is overloaded beyond (1+slack)*f_max

// DC flows for fixed nodal injections on a sub-network. Each connected
// component must be balanced; callers rebalance islands first. Solved by
// dense elimination of the reduced susceptance matrix per component.
std::map<int, double> dc_flows(const Case& c, const std::set<int>& in_service,
                               const std::map<int, double>& injection) {
  std::map<int, int> comp;
  int ncomp = 0;
  for (int n : c.nodes) comp[n] = -1;
  for (int n : c.nodes) {
    if (comp[n] >= 0) continue;
    std::vector<int> stack{n};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (comp[u] >= 0) continue;
      comp[u] = ncomp;
      for (const auto& l : c.lines) {
        if (!in_service.count(l.id)) continue;
        if (l.from == u && comp[l.to] < 0) stack.push_back(l.to);
        if (l.to == u && comp[l.from] < 0) stack.push_back(l.from);
      }
    }
    ++ncomp;
  }

  std::map<int, double> theta;
  for (int k = 0; k < ncomp; ++k) {
    std::vector<int> members;
    for (int n : c.nodes)
      if (comp[n] == k) members.push_back(n);
    double s = 0.0;
    for (int n : members) s += injection.at(n);
    if (std::abs(s) > 1e-6)
      throw std::logic_error("dc_flows: component not balanced (" + std::to_string(s) + ")");
    // Reference angle at the lowest-numbered member.
    int nn = static_cast<int>(members.size()) - 1;
    theta[members.front()] = 0.0;
    if (nn == 0) continue;
    std::vector<std::vector<double>> a(nn, std::vector<double>(nn + 1, 0.0));
    std::map<int, int> pos;
    for (int i = 1; i <= nn; ++i) pos[members[i]] = i - 1;
    for (const auto& l : c.lines) {
      if (!in_service.count(l.id)) continue;
      if (comp.at(l.from) != k) continue;
      double b = 1.0 / l.reactance_pu;
      bool fr = pos.count(l.from), to = pos.count(l.to);
      if (fr) a[pos[l.from]][pos[l.from]] += b;
      if (to) a[pos[l.to]][pos[l.to]] += b;
      if (fr && to) {
        a[pos[l.from]][pos[l.to]] -= b;
        a[pos[l.to]][pos[l.from]] -= b;
      }
    }
    for (int i = 1; i <= nn; ++i) a[i - 1][nn] = injection.at(members[i]);
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < nn; ++col) {
      int piv = col;
      for (int r = col + 1; r < nn; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      std::swap(a[col], a[piv]);
      if (std::abs(a[col][col]) < 1e-12)
        throw std::logic_error("dc_flows: singular network matrix");
      for (int r = 0; r < nn; ++r) {
        if (r == col) continue;
        double f = a[r][col] / a[col][col];
        if (f == 0.0) continue;
        for (int cc = col; cc <= nn; ++cc) a[r][cc] -= f * a[col][cc];
      }
    }
    for (int i = 1; i <= nn; ++i) theta[members[i]] = a[i - 1][nn] / a[i - 1][i - 1];
  }

  std::map<int, double> flows;
  for (const auto& l : c.lines)
    if (in_service.count(l.id))
      flows[l.id] = (theta.at(l.from) - theta.at(l.to)) / l.reactance_pu;
  return flows;
}

// Injections fixed by the realized behavior, before any emergency action.
std::map<int, double> fixed_outputs(const Case& c, const Contingency& cont, int behavior,
                                    const Strategy& strategy) {
  std::map<int, double> out;
  const std::map<int, double>* corr = nullptr;
  if (behavior == kWorking && !cont.is_pseudo()) {
    auto it = strategy.corrective.find(cont.index);
    if (it != strategy.corrective.end()) corr = &it->second;
  }
  for (const auto& g : c.generators) {
    if (!cont.gen_available(g.id)) {
      out[g.id] = 0.0;
      continue;
    }
    if (corr) {
      auto it = corr->find(g.id);
      out[g.id] = (it != corr->end()) ? it->second : strategy.preventive.at(g.id);
    } else {
      out[g.id] = strategy.preventive.at(g.id);
    }
  }
  return out;
}

std::map<int, double> node_injections(const Case& c, const std::map<int, double>& gen_out,
                                      const std::map<int, double>& served) {
  std::map<int, double> inj;
  for (int n : c.nodes) inj[n] = 0.0;
  for (const auto& g : c.generators) inj[g.node] += gen_out.at(g.id);
  for (const auto& d : c.demands) inj[d.node] -= served.at(d.id);
  return inj;
}

// Rebalances each island by scaling generation down (surplus) or load down
// (deficit); only used when iterating removals to a fixed point.
void rebalance_islands(const Case& c, const std::set<int>& in_service,
                       std::map<int, double>& gen_out, std::map<int, double>& served) {
  std::map<int, int> comp;
  int ncomp = 0;
  for (int n : c.nodes) comp[n] = -1;
  for (int n : c.nodes) {
    if (comp[n] >= 0) continue;
    std::vector<int> stack{n};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (comp[u] >= 0) continue;
      comp[u] = ncomp;
      for (const auto& l : c.lines) {
        if (!in_service.count(l.id)) continue;
        if (l.from == u && comp[l.to] < 0) stack.push_back(l.to);
        if (l.to == u && comp[l.from] < 0) stack.push_back(l.from);
      }
    }
    ++ncomp;
  }
  for (int k = 0; k < ncomp; ++k) {
    double gen = 0.0, load = 0.0;
    for (const auto& g : c.generators)
      if (comp[g.node] == k) gen += gen_out[g.id];
    for (const auto& d : c.demands)
      if (comp[d.node] == k) load += served[d.id];
    if (std::abs(gen - load) < 1e-9) continue;
    if (gen > load) {
      double f = gen > 0 ? load / gen : 0.0;
      for (const auto& g : c.generators)
        if (comp[g.node] == k) gen_out[g.id] *= f;
    } else {
      double f = load > 0 ? gen / load : 0.0;
      for (const auto& d : c.demands)
        if (comp[d.node] == k) served[d.id] *= f;
    }
  }
}

struct EmergencyResult {
  bool feasible = false;
  double shed_value_eur = 0.0;  // sum v_d * h * (p0 - served)
  std::map<int, double> served;
  std::map<int, double> gen_out;
  std::map<int, double> flows;
};

// Exact service-maximizing LP for a fixed disconnection pattern. Two stages:
// first maximize the severity-weighted served energy, then, holding that
// value, maximize total served load so zero-weight demands are handled
// deterministically.
EmergencyResult emergency_lp(const Case& c, const Contingency& cont,
                             const std::set<int>& in_service,
                             const std::map<int, double>& fix,
                             const std::set<int>& off, const SeverityWeights& weights) {
  using namespace milp;
  MilpModel m;
  std::map<int, int> pg, pd, fl, th;
  for (const auto& g : c.generators) {
    double fix_g = fix.at(g.id);
    double lb = 0.0, ub = 0.0;
    if (cont.gen_available(g.id) && !off.count(g.id) && fix_g > 0.0) {
      ub = fix_g;
      lb = std::max(g.p_min_mw, g.emergency_ramp_mw < kUnlimited
                                    ? fix_g - g.emergency_ramp_mw
                                    : 0.0);
      if (lb > ub + 1e-9) return {};  // cannot stay connected at this point
      lb = std::min(lb, ub);
    } else if (!off.count(g.id) && cont.gen_available(g.id) && fix_g == 0.0) {
      lb = ub = 0.0;  // unit already at zero stays at zero
    }
    pg[g.id] = m.add_var("Pg" + std::to_string(g.id), lb, ub);
  }
  for (const auto& d : c.demands)
    pd[d.id] = m.add_var("Pd" + std::to_string(d.id), 0.0, d.p0_mw);
  for (int n : c.nodes) th[n] = m.add_var("th" + std::to_string(n), -kInf, kInf);
  for (const auto& l : c.lines) {
    if (!in_service.count(l.id)) continue;
    fl[l.id] = m.add_var("f" + std::to_string(l.id), -l.f_max_mw, l.f_max_mw);
    LinExpr e;
    e.add(fl[l.id], 1.0);
    e.add(th[l.from], -1.0 / l.reactance_pu);
    e.add(th[l.to], 1.0 / l.reactance_pu);
    m.add_row("pf" + std::to_string(l.id), e, Sense::EQ, 0.0);
  }
  for (int n : c.nodes) {
    LinExpr e;
    for (const auto& g : c.generators)
      if (g.node == n) e.add(pg[g.id], 1.0);
    for (const auto& l : c.lines) {
      if (!in_service.count(l.id)) continue;
      if (l.from == n) e.add(fl[l.id], -1.0);
      if (l.to == n) e.add(fl[l.id], 1.0);
    }
    for (const auto& d : c.demands)
      if (d.node == n) e.add(pd[d.id], -1.0);
    m.add_row("bal" + std::to_string(n), e, Sense::EQ, 0.0);
  }
  for (const auto& d : c.demands)
    m.set_objective(pd[d.id], -weights.voll(d.id) * c.horizon_hours);
  MilpSolution s1 = solve_lp(m);
  if (s1.status != SolveStatus::Optimal) return {};

  // Stage two: pin the weighted value, maximize total served load.
  LinExpr pin;
  for (const auto& d : c.demands)
    pin.add(pd[d.id], weights.voll(d.id) * c.horizon_hours);
  m.add_row("stage1", pin, Sense::GE, -s1.objective - 1e-7);
  for (const auto& d : c.demands) m.set_objective(pd[d.id], -1.0);
  MilpSolution s2 = solve_lp(m);
  const MilpSolution& s = (s2.status == SolveStatus::Optimal) ? s2 : s1;

  EmergencyResult res;
  res.feasible = true;
  double shed = 0.0;
  for (const auto& d : c.demands) {
    double served = s.values[pd[d.id]];
    res.served[d.id] = served;
    shed += weights.voll(d.id) * c.horizon_hours * (d.p0_mw - served);
  }
  res.shed_value_eur = shed;
  for (const auto& g : c.generators) res.gen_out[g.id] = s.values[pg[g.id]];
  for (const auto& [lid, var] : fl) res.flows[lid] = s.values[var];
  return res;
}

}  // namespace

double StrategyEvaluation::prob_leq(double s) const {
  double p = 0.0;
  for (const auto& row : severity_table)
    if (row.severity_eur <= s) p += row.probability;
  return p;
}

bool StrategyEvaluation::chance_ok(double s_max, double epsilon) const {
  double viol = 0.0;
  for (const auto& row : severity_table)
    if (row.severity_eur > s_max + 1e-9) viol += row.probability;
  return viol <= epsilon + 1e-12;
}

double StrategyEvaluation::severity_of(int cont_index, int behavior) const {
  for (const auto& row : severity_table)
    if (row.cont_index == cont_index && row.behavior == behavior)
      return row.severity_eur;
  throw std::out_of_range("no severity row for that contingency/behavior");
}

TerminalState terminal_state(const Case& c, const Contingency& cont, int behavior,
                             const Strategy& strategy, const SeverityWeights& weights,
                             RemovalMode mode) {
  TerminalState t;
  std::map<int, double> fix = fixed_outputs(c, cont, behavior, strategy);

  std::set<int> in_service;
  for (const auto& l : c.lines)
    if (cont.line_available(l.id)) in_service.insert(l.id);

  // Branch removal. A net energy deficit (a unit outage whose re-dispatch
  // never materialized) admits no flow solution; the grid stays untouched and
  // emergency control settles the imbalance directly. Every other state
  // propagates the fixed injections and drops overloaded branches.
  double balance = -0.0;
  for (const auto& [gid, v] : fix) balance += v;
  for (const auto& d : c.demands) balance -= d.p0_mw;
  bool keep_network = std::abs(balance) > 1e-6;
  if (!keep_network) {
    std::map<int, double> gen_out = fix;
    std::map<int, double> served;
    for (const auto& d : c.demands) served[d.id] = d.p0_mw;
    bool first = true;
    while (true) {
      std::map<int, double> flows =
          dc_flows(c, in_service, node_injections(c, gen_out, served));
      if (first) t.post_flows_mw = flows;
      first = false;
      std::vector<int> over;
      for (const auto& [lid, f] : flows) {
        const Line* l = c.find_line(lid);
        if (std::abs(f) > l->f_max_mw * (1.0 + kOverloadSlack)) over.push_back(lid);
      }
      if (over.empty()) break;
      for (int lid : over) {
        in_service.erase(lid);
        t.removed_lines.insert(lid);
      }
      if (mode == RemovalMode::FirstRound) break;
      rebalance_islands(c, in_service, gen_out, served);
    }
  } else {
    t.post_flows_mw = {};  // no meaningful pre-emergency flow pattern
  }

  // Emergency control: exhaustive search over disconnection patterns, each
  // evaluated by an exact service-maximizing LP.
  std::vector<int> candidates;
  for (const auto& g : c.generators)
    if (cont.gen_available(g.id) && fix.at(g.id) > 0.0) candidates.push_back(g.id);
  if (candidates.size() > 20)
    throw std::logic_error("terminal_state: too many disconnection candidates");

  bool have = false;
  double best_sev = 0.0;
  EmergencyResult best;
  std::set<int> best_off;
  for (unsigned long mask = 0; mask < (1ul << candidates.size()); ++mask) {
    std::set<int> off;
    double fees = 0.0;
    for (std::size_t k = 0; k < candidates.size(); ++k)
      if ((mask >> k) & 1ul) {
        off.insert(candidates[k]);
        fees += weights.fee(candidates[k]);
      }
    if (have && fees >= best_sev) continue;  // disconnection fees alone already worse
    EmergencyResult r = emergency_lp(c, cont, in_service, fix, off, weights);
    if (!r.feasible) continue;
    double sev = r.shed_value_eur + fees;
    if (!have || sev < best_sev - 1e-9) {
      have = true;
      best_sev = sev;
      best = r;
      best_off = off;
      if (best_sev <= 1e-12) break;  // cannot improve on zero
    }
  }
  if (!have) throw std::logic_error("terminal_state: no feasible emergency state");

  t.served_load_mw = best.served;
  t.gen_output_mw = best.gen_out;
  t.disconnected_units = best_off;
  t.flows_mw = best.flows;
  t.severity_eur = best_sev;
  return t;
}

TerminalState terminal_state(const Case& c, const Contingency& cont, int behavior,
                             const Strategy& strategy, RemovalMode mode) {
  return terminal_state(c, cont, behavior, strategy, SeverityWeights::from_case(c), mode);
}

double severity(const TerminalState& t, const Case& c, const SeverityWeights& weights) {
  double s = 0.0;
  for (const auto& d : c.demands)
    s += weights.voll(d.id) * c.horizon_hours * (d.p0_mw - t.served_load_mw.at(d.id));
  for (int g : t.disconnected_units) s += weights.fee(g);
  return s;
}

double severity(const TerminalState& t, const Case& c) {
  return severity(t, c, SeverityWeights::from_case(c));
}

StrategyEvaluation evaluate_strategy(const Case& c, const ContingencySet& conts,
                                     const BehaviorSet& behs, const Strategy& strategy,
                                     const SeverityWeights& weights, RemovalMode mode) {
  auto viol = check_strategy(strategy, c, conts);
  if (!viol.empty()) {
    std::string msg = "invalid strategy:";
    for (const auto& v : viol) msg += " " + v;
    throw std::invalid_argument(msg);
  }

  StrategyEvaluation ev;
  const double h = c.horizon_hours;
  for (const auto& g : c.generators)
    ev.preventive_cost_eur += g.cost_eur_mwh * h * strategy.preventive.at(g.id);

  for (const auto& cont : conts.contingencies) {
    if (cont.is_pseudo()) continue;
    auto it = strategy.corrective.find(cont.index);
    if (it == strategy.corrective.end()) continue;  // units hold: nothing settled
    const std::map<int, double>& corr = it->second;
    double cost_c = 0.0;
    for (const auto& g : c.generators) {
      double p0 = strategy.preventive.at(g.id);
      if (!cont.gen_available(g.id)) {
        // The outaged unit's preventive schedule is backed out of the market.
        cost_c -= g.redispatch_cost_eur_mwh * h * p0;
        continue;
      }
      auto jt = corr.find(g.id);
      double pc = (jt != corr.end()) ? jt->second : p0;
      cost_c += g.redispatch_cost_eur_mwh * h * (pc - p0);
    }
    ev.expected_corrective_cost_eur += cont.probability * cost_c;
  }
  ev.operating_cost_eur = ev.preventive_cost_eur + ev.expected_corrective_cost_eur;

  for (const auto& cont : conts.contingencies) {
    for (int b : {kWorking, kFailing}) {
      double pb = (b == kWorking) ? behs.working : behs.failing;
      SeverityRow row;
      row.cont_index = cont.index;
      row.behavior = b;
      row.probability = cont.probability * pb;
      if (cont.is_pseudo()) {
        row.severity_eur = 0.0;
      } else {
        TerminalState t = terminal_state(c, cont, b, strategy, weights, mode);
        row.severity_eur = t.severity_eur;
      }
      ev.severity_table.push_back(row);
      if (!cont.is_pseudo()) ev.expected_severity_eur += row.probability * row.severity_eur;
    }
  }
  ev.total_cost_eur = ev.operating_cost_eur + ev.expected_severity_eur;
  return ev;
}

StrategyEvaluation evaluate_strategy(const Case& c, const ContingencySet& conts,
                                     const BehaviorSet& behs, const Strategy& strategy) {
  return evaluate_strategy(c, conts, behs, strategy, SeverityWeights::from_case(c));
}

std::string severity_table_csv(const StrategyEvaluation& eval, const Case& c,
                               const ContingencySet& conts) {
  std::ostringstream os;
  os << "contingency,behavior,severity_eur,severity_pct,probability\n";
  double base = c.max_severity_eur();
  for (const auto& row : eval.severity_table) {
    const Contingency* cont = nullptr;
    for (const auto& cc : conts.contingencies)
      if (cc.index == row.cont_index) cont = &cc;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%s,%.2f,%.2f,%.8e\n",
                  cont ? cont->label(c).c_str() : "?",
                  row.behavior == kWorking ? "working" : "failing", row.severity_eur,
                  base > 0 ? 100.0 * row.severity_eur / base : 0.0, row.probability);
    os << buf;
  }
  return os.str();
}

}  // namespace secopt
