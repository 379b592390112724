#include "secopt/rtp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "secopt/milp/linearize.hpp"

namespace secopt {

using milp::LinExpr;
using milp::MilpModel;
using milp::Sense;
using milp::kInf;

SeverityWeights SeverityWeights::from_case(const Case& c) {
  SeverityWeights w;
  for (const auto& d : c.demands) w.voll_eur_mwh[d.id] = d.voll_eur_mwh;
  for (const auto& g : c.generators) w.disconnect_fee_eur[g.id] = g.disconnect_fee_eur;
  return w;
}

double SeverityWeights::voll(int demand_id) const {
  auto it = voll_eur_mwh.find(demand_id);
  return it == voll_eur_mwh.end() ? 0.0 : it->second;
}

double SeverityWeights::fee(int gen_id) const {
  auto it = disconnect_fee_eur.find(gen_id);
  return it == disconnect_fee_eur.end() ? 0.0 : it->second;
}

double SeverityWeights::max_severity_eur(const Case& c) const {
  double s = 0.0;
  for (const auto& d : c.demands) s += voll(d.id) * d.p0_mw * c.horizon_hours;
  for (const auto& g : c.generators) s += fee(g.id);
  return s;
}

int VariableMap::at(const std::map<CbId, int>& m, int c, int b, int id) const {
  auto it = m.find({c, b, id});
  if (it == m.end())
    throw std::out_of_range("variable map misses (" + std::to_string(c) + "," +
                            std::to_string(b) + "," + std::to_string(id) + ")");
  return it->second;
}

int VariableMap::at(const std::map<CbKey, int>& m, int c, int b) const {
  auto it = m.find({c, b});
  if (it == m.end())
    throw std::out_of_range("variable map misses (" + std::to_string(c) + "," +
                            std::to_string(b) + ")");
  return it->second;
}

namespace {

std::string cb_tag(int c, int b) {
  return "c" + std::to_string(c) + (b == kWorking ? "w" : "x");
}

double fee_or(const std::map<int, double>& m, int id, double dflt) {
  auto it = m.find(id);
  return it == m.end() ? dflt : it->second;
}

}  // namespace

void objective_incremental(MilpModel& model, VariableMap& map, const Case& c,
                           const ContingencySet& conts, const IncrementalFees& fees,
                           bool preventive_kind) {
  if (preventive_kind) {
    for (const auto& g : c.generators) {
      if (!g.market_mw)
        throw std::invalid_argument("generator " + std::to_string(g.id) +
                                    " has no settled market schedule");
      int p0 = map.p0.at(g.id);
      std::string base = "pdev(g" + std::to_string(g.id) + ")";
      int up = model.add_var(base + ".up", 0.0, kInf);
      int dn = model.add_var(base + ".dn", 0.0, kInf);
      map.prev_dev_up[g.id] = up;
      map.prev_dev_dn[g.id] = dn;
      LinExpr eu;  // up >= P0 - PM
      eu.add(up, 1.0).add(p0, -1.0);
      model.add_row(base + ".ge_up", eu, Sense::GE, -*g.market_mw);
      LinExpr ed;  // dn >= PM - P0
      ed.add(dn, 1.0).add(p0, 1.0);
      model.add_row(base + ".ge_dn", ed, Sense::GE, *g.market_mw);
      double h = c.horizon_hours;
      model.add_objective(up, h * fee_or(fees.prev_up, g.id, g.cost_eur_mwh));
      model.add_objective(dn, h * fee_or(fees.prev_dn, g.id, g.cost_eur_mwh));
    }
    return;
  }
  for (const auto& cont : conts.contingencies) {
    if (cont.is_pseudo()) continue;
    for (const auto& g : c.generators) {
      int p0 = map.p0.at(g.id);
      auto pcit = map.pc.find({cont.index, g.id});
      std::string base = "cdev(" + std::to_string(cont.index) + ",g" + std::to_string(g.id) + ")";
      int up = model.add_var(base + ".up", 0.0, kInf);
      int dn = model.add_var(base + ".dn", 0.0, kInf);
      map.corr_dev_up[{cont.index, g.id}] = up;
      map.corr_dev_dn[{cont.index, g.id}] = dn;
      LinExpr eu;  // up >= Pc - P0 (outaged units have Pc fixed at zero)
      eu.add(up, 1.0).add(p0, 1.0);
      if (pcit != map.pc.end()) eu.add(pcit->second, -1.0);
      model.add_row(base + ".ge_up", eu, Sense::GE, 0.0);
      LinExpr ed;  // dn >= P0 - Pc
      ed.add(dn, 1.0).add(p0, -1.0);
      if (pcit != map.pc.end()) ed.add(pcit->second, 1.0);
      model.add_row(base + ".ge_dn", ed, Sense::GE, 0.0);
      double w = cont.probability * c.horizon_hours;
      model.add_objective(up, w * fee_or(fees.corr_up, g.id, g.redispatch_cost_eur_mwh));
      model.add_objective(dn, w * fee_or(fees.corr_dn, g.id, g.redispatch_cost_eur_mwh));
    }
  }
}

RtpBuild build_rtp(const Case& c, const ContingencySet& conts, const BehaviorSet& behs,
                   const RtpOptions& opts, const RtpExtras& extras) {
  if (opts.s_max < 0.0) throw std::invalid_argument("s_max must be nonnegative");
  if (opts.epsilon < 0.0 || opts.epsilon > 1.0)
    throw std::invalid_argument("epsilon must lie in [0,1]");
  if (std::abs(behs.working + behs.failing - 1.0) > 1e-9)
    throw std::invalid_argument("behavior probabilities must sum to one");
  if (conts.contingencies.empty() || !conts.contingencies.front().is_pseudo())
    throw std::invalid_argument("contingency set must start with the pseudo-contingency");

  RtpBuild out;
  MilpModel& m = out.model;
  VariableMap& vm = out.map;
  out.weights = extras.weights ? *extras.weights : SeverityWeights::from_case(c);
  const SeverityWeights& weights = out.weights;

  const double h = c.horizon_hours;
  double flow_m = 0.0, angle_m = 0.0, gen_m = 0.0;
  for (const auto& l : c.lines) {
    flow_m += l.f_max_mw;
    angle_m += l.f_max_mw * l.reactance_pu;
  }
  for (const auto& g : c.generators) gen_m = std::max(gen_m, g.p_max_mw);
  double sev_m = std::max(1.0, weights.max_severity_eur(c));
  m.register_big_m("flow_logic", flow_m);
  m.register_big_m("angle", angle_m);
  m.register_big_m("generator", gen_m);
  m.register_big_m("severity", sev_m);

  auto node_load = [&](int node) {
    double s = 0.0;
    for (const auto& d : c.demands)
      if (d.node == node) s += d.p0_mw;
    return s;
  };

  // ---- pre-contingency block -------------------------------------------
  for (const auto& g : c.generators) {
    double lb = g.p_min_mw, ub = g.p_max_mw;
    auto fx = extras.fixed_gens_mw.find(g.id);
    if (fx != extras.fixed_gens_mw.end()) lb = ub = fx->second;
    vm.p0[g.id] = m.add_var("P0(g" + std::to_string(g.id) + ")", lb, ub);
  }
  for (const auto& n : c.nodes) {
    int v = m.add_var("th0(n" + std::to_string(n) + ")", -kInf, kInf);
    if (n == c.slack_node) m.fix_var(v, 0.0);
    vm.theta0[n] = v;
  }
  for (const auto& l : c.lines)
    vm.f0[l.id] = m.add_var("f0(l" + std::to_string(l.id) + ")", -l.f_max_mw, l.f_max_mw);

  for (const auto& n : c.nodes) {
    LinExpr e;
    for (const auto& g : c.generators)
      if (g.node == n) e.add(vm.p0[g.id], 1.0);
    for (const auto& l : c.lines) {
      if (l.from == n) e.add(vm.f0[l.id], -1.0);
      if (l.to == n) e.add(vm.f0[l.id], 1.0);
    }
    m.add_row("pre_pbal(n" + std::to_string(n) + ")", e, Sense::EQ, node_load(n));
  }
  for (const auto& l : c.lines) {
    LinExpr e;
    e.add(vm.f0[l.id], 1.0);
    e.add(vm.theta0[l.from], -1.0 / l.reactance_pu);
    e.add(vm.theta0[l.to], 1.0 / l.reactance_pu);
    m.add_row("pre_pf(l" + std::to_string(l.id) + ")", e, Sense::EQ, 0.0);
  }

  LinExpr chance_lhs;
  bool any_gamma = false;

  // ---- per-contingency blocks ------------------------------------------
  for (const auto& cont : conts.contingencies) {
    if (cont.is_pseudo()) continue;
    const int ci = cont.index;

    // Corrective schedule.
    for (const auto& g : c.generators) {
      int a = cont.gen_available(g.id);
      double lb = a * g.p_min_mw, ub = a * g.p_max_mw;
      auto fx = extras.fixed_gens_mw.find(g.id);
      if (fx != extras.fixed_gens_mw.end()) lb = ub = a * fx->second;
      int v = m.add_var("Pc(c" + std::to_string(ci) + ",g" + std::to_string(g.id) + ")", lb, ub);
      vm.pc[{ci, g.id}] = v;
      if (a == 1) {
        std::string tag = "(c" + std::to_string(ci) + ",g" + std::to_string(g.id) + ")";
        if (g.ramp_up_mw < kUnlimited) {
          LinExpr e;
          e.add(v, 1.0).add(vm.p0[g.id], -1.0);
          m.add_row("post_uppcoup" + tag, e, Sense::LE, g.ramp_up_mw);
        }
        if (g.ramp_down_mw < kUnlimited) {
          LinExpr e;
          e.add(vm.p0[g.id], 1.0).add(v, -1.0);
          m.add_row("post_dwncoup" + tag, e, Sense::LE, g.ramp_down_mw);
        }
      }
    }

    for (int b : {kWorking, kFailing}) {
      const std::string tag = cb_tag(ci, b);
      const double pi_cb =
          cont.probability * (b == kWorking ? behs.working : behs.failing);
      const bool relax_allowed =
          (b == kWorking) ? opts.allow_relax_working : opts.allow_relax_failing;

      // Post-contingency network state.
      for (const auto& n : c.nodes) {
        int v = m.add_var("th(" + tag + ",n" + std::to_string(n) + ")", -kInf, kInf);
        if (n == c.slack_node) m.fix_var(v, 0.0);
        vm.theta[{ci, b, n}] = v;
      }
      for (const auto& l : c.lines) {
        int a = cont.line_available(l.id);
        bool lam_free = a == 1 && relax_allowed && !extras.no_relax_lines.count(l.id);
        double fb = lam_free ? flow_m : l.f_max_mw;
        int fv = m.add_var("f(" + tag + ",l" + std::to_string(l.id) + ")",
                           a ? -fb : 0.0, a ? fb : 0.0);
        vm.flow[{ci, b, l.id}] = fv;
        int lv = m.add_binary("lam(" + tag + ",l" + std::to_string(l.id) + ")");
        if (!lam_free) m.fix_var(lv, 0.0);
        vm.lam[{ci, b, l.id}] = lv;
        if (a == 0) continue;

        LinExpr pf;
        pf.add(fv, 1.0);
        pf.add(vm.theta[{ci, b, l.from}], -1.0 / l.reactance_pu);
        pf.add(vm.theta[{ci, b, l.to}], 1.0 / l.reactance_pu);
        m.add_row("relax_pf(" + tag + ",l" + std::to_string(l.id) + ")", pf, Sense::EQ, 0.0);

        if (lam_free) {
          std::string lt = "(" + tag + ",l" + std::to_string(l.id) + ")";
          LinExpr pos;
          pos.add(fv, 1.0).add(lv, -flow_m);
          m.add_row("relax_posflow" + lt, pos, Sense::LE, l.f_max_mw);
          LinExpr neg;
          neg.add(fv, -1.0).add(lv, -flow_m);
          m.add_row("relax_negflow" + lt, neg, Sense::LE, l.f_max_mw);

          int pv = m.add_binary("sgn" + lt);
          vm.flow_sign[{ci, b, l.id}] = pv;
          LinExpr s1;
          s1.add(fv, 1.0).add(pv, -flow_m);
          m.add_row("flow_sign_one" + lt, s1, Sense::LE, 0.0);
          LinExpr s2;
          s2.add(fv, -1.0).add(pv, flow_m);
          m.add_row("flow_sign_two" + lt, s2, Sense::LE, flow_m);
          double eps_l = 1e-3 * l.f_max_mw;
          LinExpr u1;
          u1.add(lv, 1.0).add(fv, -1.0 / (l.f_max_mw + eps_l)).add(pv, flow_m);
          m.add_row("up_lam_one" + lt, u1, Sense::LE, flow_m);
          LinExpr u2;
          u2.add(lv, 1.0).add(fv, 1.0 / (l.f_max_mw + eps_l)).add(pv, -flow_m);
          m.add_row("up_lam_two" + lt, u2, Sense::LE, 0.0);
        }
      }

      // Nodal balance.
      if (b == kWorking) {
        for (const auto& n : c.nodes) {
          LinExpr e;
          for (const auto& g : c.generators)
            if (g.node == n) e.add(vm.pc[{ci, g.id}], 1.0);
          for (const auto& l : c.lines) {
            if (l.from == n) e.add(vm.flow[{ci, b, l.id}], -1.0);
            if (l.to == n) e.add(vm.flow[{ci, b, l.id}], 1.0);
          }
          m.add_row("post_pbal_one(" + tag + ",n" + std::to_string(n) + ")", e,
                    Sense::EQ, node_load(n));
        }
      } else {
        for (const auto& n : c.nodes) {
          int dv = m.add_var("dslack(c" + std::to_string(ci) + ",n" + std::to_string(n) + ")",
                             -kInf, kInf);
          if (cont.tau() == 0) m.fix_var(dv, 0.0);
          vm.delta[{ci, n}] = dv;
        }
        for (const auto& n : c.nodes) {
          LinExpr e;
          for (const auto& g : c.generators)
            if (g.node == n && cont.gen_available(g.id)) e.add(vm.p0[g.id], 1.0);
          for (const auto& l : c.lines) {
            if (l.from == n) e.add(vm.flow[{ci, b, l.id}], -1.0);
            if (l.to == n) e.add(vm.flow[{ci, b, l.id}], 1.0);
          }
          e.add(vm.delta[{ci, n}], 1.0);
          m.add_row("post_pbal_two(" + tag + ",n" + std::to_string(n) + ")", e,
                    Sense::EQ, node_load(n));
          if (cont.tau() == 1) {
            // Slack pinned to the re-dispatch deltas of the units still in
            // service, so the failing-state flows stay balanced.
            LinExpr d;
            d.add(vm.delta[{ci, n}], 1.0);
            for (const auto& g : c.generators) {
              if (g.node != n || !cont.gen_available(g.id)) continue;
              d.add(vm.pc[{ci, g.id}], -1.0);
              d.add(vm.p0[g.id], 1.0);
            }
            m.add_row("delta(" + tag + ",n" + std::to_string(n) + ")", d, Sense::EQ, 0.0);
          }
        }
      }

      // Terminal state.
      for (const auto& n : c.nodes) {
        int v = m.add_var("thh(" + tag + ",n" + std::to_string(n) + ")", -kInf, kInf);
        if (n == c.slack_node) m.fix_var(v, 0.0);
        vm.theta_hat[{ci, b, n}] = v;
      }
      for (const auto& d : c.demands)
        vm.dem_hat[{ci, b, d.id}] =
            m.add_var("Pdh(" + tag + ",d" + std::to_string(d.id) + ")", 0.0, d.p0_mw);
      for (const auto& g : c.generators) {
        int a = cont.gen_available(g.id);
        vm.gen_hat[{ci, b, g.id}] =
            m.add_var("Ph(" + tag + ",g" + std::to_string(g.id) + ")", 0.0, a * g.p_max_mw);
        int y = m.add_binary("y(" + tag + ",g" + std::to_string(g.id) + ")");
        if (a == 0) m.fix_var(y, 0.0);
        vm.trip[{ci, b, g.id}] = y;
      }
      for (const auto& l : c.lines) {
        int a = cont.line_available(l.id);
        int fh = m.add_var("fh(" + tag + ",l" + std::to_string(l.id) + ")",
                           a ? -l.f_max_mw : 0.0, a ? l.f_max_mw : 0.0);
        vm.flow_hat[{ci, b, l.id}] = fh;
        if (a == 0) continue;

        // A line drops out of the terminal network when its overload
        // indicator fired, except that a failing corrective control after a
        // unit outage leaves the whole network in service.
        int removal = -1;
        if (b == kWorking) {
          int lv = vm.lam[{ci, b, l.id}];
          if (m.var(lv).ub > 0.0) removal = lv;
        } else if (cont.tau() == 0) {
          int lv = vm.lam[{ci, b, l.id}];
          if (m.var(lv).ub > 0.0) removal = lv;
        }
        std::string lt = "(" + tag + ",l" + std::to_string(l.id) + ")";
        if (removal < 0) {
          LinExpr pf;
          pf.add(fh, 1.0);
          pf.add(vm.theta_hat[{ci, b, l.from}], -1.0 / l.reactance_pu);
          pf.add(vm.theta_hat[{ci, b, l.to}], 1.0 / l.reactance_pu);
          m.add_row((b == kWorking ? "low_pf" : "low_pf2") + lt, pf, Sense::EQ, 0.0);
        } else {
          LinExpr dtheta;
          dtheta.add(vm.theta_hat[{ci, b, l.from}], 1.0);
          dtheta.add(vm.theta_hat[{ci, b, l.to}], -1.0);
          int prod = milp::linearize_bin_times_free(m, removal, dtheta, angle_m,
                                                    "thprod" + lt);
          vm.theta_prod[{ci, b, l.id}] = prod;
          LinExpr pf;
          pf.add(fh, 1.0);
          pf.add(dtheta, -1.0 / l.reactance_pu);
          pf.add(prod, 1.0 / l.reactance_pu);
          m.add_row((b == kWorking ? "low_pf" : "low_pf2") + lt, pf, Sense::EQ, 0.0);
          LinExpr pos;
          pos.add(fh, 1.0).add(removal, l.f_max_mw);
          m.add_row((b == kWorking ? "low_posflow" : "low_posflow2") + lt, pos,
                    Sense::LE, l.f_max_mw);
          LinExpr neg;
          neg.add(fh, -1.0).add(removal, l.f_max_mw);
          m.add_row((b == kWorking ? "low_negflow" : "low_negflow2") + lt, neg,
                    Sense::LE, l.f_max_mw);
        }
      }
      for (const auto& n : c.nodes) {
        LinExpr e;
        for (const auto& g : c.generators)
          if (g.node == n) e.add(vm.gen_hat[{ci, b, g.id}], 1.0);
        for (const auto& l : c.lines) {
          if (l.from == n) e.add(vm.flow_hat[{ci, b, l.id}], -1.0);
          if (l.to == n) e.add(vm.flow_hat[{ci, b, l.id}], 1.0);
        }
        for (const auto& d : c.demands)
          if (d.node == n) e.add(vm.dem_hat[{ci, b, d.id}], -1.0);
        m.add_row("low_pbal(" + tag + ",n" + std::to_string(n) + ")", e, Sense::EQ, 0.0);
      }
      for (const auto& g : c.generators) {
        if (!cont.gen_available(g.id)) continue;
        std::string gt = "(" + tag + ",g" + std::to_string(g.id) + ")";
        int ph = vm.gen_hat[{ci, b, g.id}];
        int y = vm.trip[{ci, b, g.id}];
        // Units hold or reduce output at the terminal state; the anchor is
        // the corrective schedule when control worked, the preventive one
        // when it failed.
        LinExpr base = (b == kWorking) ? LinExpr(vm.pc[{ci, g.id}], 1.0)
                                       : LinExpr(vm.p0[g.id], 1.0);
        int prod = milp::linearize_bin_times_nonneg(m, y, base, gen_m, "Pprod" + gt);
        vm.gen_prod[{ci, b, g.id}] = prod;
        LinExpr up;
        up.add(ph, 1.0).add(base, -1.0).add(prod, 1.0);
        m.add_row((b == kWorking ? "low_uppcoup" : "low_uppcoup2") + gt, up, Sense::LE, 0.0);
        if (g.emergency_ramp_mw < kUnlimited) {
          LinExpr dn;
          dn.add(ph, -1.0).add(base, 1.0).add(prod, -1.0).add(y, g.emergency_ramp_mw);
          m.add_row((b == kWorking ? "low_dwncoup" : "low_dwncoup2") + gt, dn, Sense::LE,
                    g.emergency_ramp_mw);
        }
        LinExpr mg;
        mg.add(ph, -1.0).add(y, -g.p_min_mw);
        m.add_row("low_mingen" + gt, mg, Sense::LE, -g.p_min_mw);
      }

      // Severity of the terminal state.
      int sv = m.add_var("s(" + tag + ")", 0.0, sev_m);
      vm.severity[{ci, b}] = sv;
      LinExpr sev;
      sev.add(sv, -1.0);
      double shed_all = 0.0;
      for (const auto& d : c.demands) {
        double v = weights.voll(d.id) * h;
        sev.add(vm.dem_hat[{ci, b, d.id}], -v);
        shed_all += v * d.p0_mw;
      }
      for (const auto& g : c.generators)
        if (cont.gen_available(g.id))
          sev.add(vm.trip[{ci, b, g.id}], weights.fee(g.id));
      m.add_row("sev(" + tag + ")", sev, Sense::LE, -shed_all);

      if (!opts.n1_benchmark) {
        int gv = m.add_binary("gam(" + tag + ")");
        vm.gamma[{ci, b}] = gv;
        if (pi_cb > opts.epsilon) m.fix_var(gv, 0.0);
        LinExpr ch;
        ch.add(sv, 1.0).add(gv, -sev_m);
        m.add_row("chance_one(" + tag + ")", ch, Sense::LE, opts.s_max);
        chance_lhs.add(gv, pi_cb);
        any_gamma = true;
        m.add_objective(sv, pi_cb);
      }
    }
  }

  if (!opts.n1_benchmark && any_gamma)
    m.add_row("chance_two", chance_lhs, Sense::LE, opts.epsilon);

  // ---- objective ---------------------------------------------------------
  if (opts.objective_variant == ObjectiveVariant::NetCost) {
    for (const auto& g : c.generators) m.add_objective(vm.p0[g.id], g.cost_eur_mwh * h);
    for (const auto& cont : conts.contingencies) {
      if (cont.is_pseudo()) continue;
      double w = cont.probability * h;
      for (const auto& g : c.generators) {
        if (cont.gen_available(g.id))
          m.add_objective(vm.pc[{cont.index, g.id}], w * g.redispatch_cost_eur_mwh);
        m.add_objective(vm.p0[g.id], -w * g.redispatch_cost_eur_mwh);
      }
    }
  } else {
    objective_incremental(m, vm, c, conts, opts.fees, /*preventive_kind=*/true);
    objective_incremental(m, vm, c, conts, opts.fees, /*preventive_kind=*/false);
  }

  return out;
}

RtpBuild build_case_a(const Case& c, const ContingencySet& conts, const BehaviorSet& behs,
                      const RtpExtras& extras) {
  RtpOptions opts;
  opts.n1_benchmark = true;
  opts.allow_relax_working = false;
  opts.allow_relax_failing = true;
  opts.s_max = 0.0;
  opts.epsilon = 1.0;
  return build_rtp(c, conts, behs, opts, extras);
}

Strategy extract_strategy(const milp::MilpSolution& sol, const VariableMap& map,
                          const Case& c, const ContingencySet& conts,
                          double integrality_tol) {
  (void)integrality_tol;
  if (!sol.optimal()) throw std::runtime_error("extract_strategy: solution is not optimal");
  Strategy s;
  for (const auto& [gid, var] : map.p0) s.preventive[gid] = sol.values[var];
  for (const auto& cont : conts.contingencies) {
    if (cont.is_pseudo()) continue;
    std::map<int, double> row;
    for (const auto& g : c.generators) {
      if (!cont.gen_available(g.id)) continue;
      row[g.id] = sol.values[map.pc.at({cont.index, g.id})];
    }
    s.corrective[cont.index] = std::move(row);
  }
  return s;
}

std::vector<std::string> check_strategy(const Strategy& s, const Case& c,
                                        const ContingencySet& conts) {
  std::vector<std::string> viol;
  const double tol = 1e-6;
  double total_load = 0.0;
  for (const auto& d : c.demands) total_load += d.p0_mw;

  double sum0 = 0.0;
  for (const auto& g : c.generators) {
    auto it = s.preventive.find(g.id);
    if (it == s.preventive.end()) {
      viol.push_back("preventive: generator " + std::to_string(g.id) + " missing");
      continue;
    }
    double v = it->second;
    sum0 += v;
    if (v < g.p_min_mw - tol)
      viol.push_back("pre_lowgen(g" + std::to_string(g.id) + ")");
    if (v > g.p_max_mw + tol)
      viol.push_back("pre_uppgen(g" + std::to_string(g.id) + ")");
  }
  if (std::abs(sum0 - total_load) > 1e-4) viol.push_back("pre_pbal");

  for (const auto& [ci, row] : s.corrective) {
    const Contingency* cont = nullptr;
    for (const auto& cc : conts.contingencies)
      if (cc.index == ci) cont = &cc;
    if (!cont || cont->is_pseudo()) {
      viol.push_back("corrective: unknown contingency " + std::to_string(ci));
      continue;
    }
    double sum = 0.0;
    for (const auto& g : c.generators) {
      auto it = row.find(g.id);
      if (!cont->gen_available(g.id)) {
        if (it != row.end() && std::abs(it->second) > tol)
          viol.push_back("post_uppgen(c" + std::to_string(ci) + ",g" +
                         std::to_string(g.id) + "): outaged unit scheduled");
        continue;
      }
      double v = (it != row.end()) ? it->second : s.preventive.at(g.id);
      sum += v;
      std::string tag = "(c" + std::to_string(ci) + ",g" + std::to_string(g.id) + ")";
      if (v < g.p_min_mw - tol) viol.push_back("post_lowgen" + tag);
      if (v > g.p_max_mw + tol) viol.push_back("post_uppgen" + tag);
      double p0 = s.preventive.count(g.id) ? s.preventive.at(g.id) : 0.0;
      if (g.ramp_up_mw < kUnlimited && v - p0 > g.ramp_up_mw + tol)
        viol.push_back("post_uppcoup" + tag);
      if (g.ramp_down_mw < kUnlimited && p0 - v > g.ramp_down_mw + tol)
        viol.push_back("post_dwncoup" + tag);
    }
    if (std::abs(sum - total_load) > 1e-4)
      viol.push_back("post_pbal_one(c" + std::to_string(ci) + ")");
  }
  return viol;
}

}  // namespace secopt
