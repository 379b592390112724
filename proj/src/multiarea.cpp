#include "secopt/multiarea.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "secopt/milp/model.hpp"

namespace secopt {

using milp::LinExpr;
using milp::MilpModel;
using milp::Sense;
using milp::kInf;

const std::set<int>& AreaPartition::nodes_of(const std::string& area) const {
  for (const auto& [id, nodes] : areas)
    if (id == area) return nodes;
  throw std::out_of_range("unknown area " + area);
}

std::string AreaPartition::area_of_node(int node) const {
  for (const auto& [id, nodes] : areas)
    if (nodes.count(node)) return id;
  throw std::out_of_range("node " + std::to_string(node) + " belongs to no area");
}

std::set<int> AreaPartition::interconnectors(const Case& c) const {
  std::set<int> out;
  for (const auto& l : c.lines)
    if (area_of_node(l.from) != area_of_node(l.to)) out.insert(l.id);
  return out;
}

std::vector<std::string> AreaPartition::check(const Case& c) const {
  std::vector<std::string> errs;
  std::map<int, int> seen;
  for (const auto& [id, nodes] : areas)
    for (int n : nodes) {
      if (c.node_index(n) < 0)
        errs.push_back("area " + id + " references unknown node " + std::to_string(n));
      if (++seen[n] > 1)
        errs.push_back("node " + std::to_string(n) + " assigned to several areas");
    }
  for (int n : c.nodes)
    if (!seen.count(n)) errs.push_back("node " + std::to_string(n) + " assigned to no area");
  return errs;
}

Workflow load_workflow(std::istream& in, const std::string& origin) {
  Workflow w;
  std::string raw, section;
  int lineno = 0;
  std::string current_area;
  auto fail = [&](const std::string& msg) -> void {
    throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section.rfind("area ", 0) == 0) {
        current_area = section.substr(5);
        if (current_area.empty()) fail("area needs a name");
        w.partition.areas.emplace_back(current_area, std::set<int>{});
        w.policies[current_area] = AreaPolicy{};
        section = "area";
      }
      continue;
    }
    std::istringstream ss(line);
    std::string key, eq, val;
    ss >> key >> eq;
    if (eq != "=") fail("expected 'key = value'");
    if (section == "workflow") {
      ss >> val;
      if (key == "case") w.case_ref = val;
      else if (key == "pfail") w.p_fail = std::stod(val);
      else if (key == "probabilities") {
        if (val == "from_mttf") w.prob_mode = ProbabilityMode::FromMttf;
        else if (val == "explicit") w.prob_mode = ProbabilityMode::Explicit;
        else fail("probabilities must be from_mttf or explicit");
      } else fail("unknown [workflow] key '" + key + "'");
    } else if (section == "area") {
      if (key == "nodes") {
        int n;
        auto& nodes = w.partition.areas.back().second;
        while (ss >> n) nodes.insert(n);
      } else if (key == "policy") {
        ss >> val;
        auto& pol = w.policies[current_area];
        if (val == "severity") pol.kind = AreaPolicy::Kind::SeverityControlled;
        else if (val == "n1-benchmark") pol.kind = AreaPolicy::Kind::N1Benchmark;
        else fail("policy must be 'severity' or 'n1-benchmark'");
      } else if (key == "smax") {
        ss >> val;
        w.policies[current_area].s_max = std::stod(val);
      } else if (key == "eps") {
        ss >> val;
        w.policies[current_area].epsilon = std::stod(val);
      } else fail("unknown area key '" + key + "'");
    } else {
      fail("content outside known sections");
    }
  }
  if (w.case_ref.empty()) throw std::runtime_error(origin + ": workflow misses 'case ='");
  if (w.partition.areas.empty()) throw std::runtime_error(origin + ": workflow defines no areas");
  return w;
}

Workflow load_workflow_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open workflow file " + path);
  return load_workflow(f, path);
}

std::map<int, double> system_opf(const Case& c) {
  MilpModel m;
  std::map<int, int> p0, f0, th;
  for (const auto& g : c.generators) {
    p0[g.id] = m.add_var("P0(g" + std::to_string(g.id) + ")", g.p_min_mw, g.p_max_mw);
    m.set_objective(p0[g.id], g.cost_eur_mwh * c.horizon_hours);
  }
  for (int n : c.nodes) {
    th[n] = m.add_var("th(n" + std::to_string(n) + ")", -kInf, kInf);
    if (n == c.slack_node) m.fix_var(th[n], 0.0);
  }
  for (const auto& l : c.lines) {
    f0[l.id] = m.add_var("f(l" + std::to_string(l.id) + ")", -l.f_max_mw, l.f_max_mw);
    LinExpr e;
    e.add(f0[l.id], 1.0);
    e.add(th[l.from], -1.0 / l.reactance_pu);
    e.add(th[l.to], 1.0 / l.reactance_pu);
    m.add_row("pf(l" + std::to_string(l.id) + ")", e, Sense::EQ, 0.0);
  }
  for (int n : c.nodes) {
    LinExpr e;
    double load = 0.0;
    for (const auto& g : c.generators)
      if (g.node == n) e.add(p0[g.id], 1.0);
    for (const auto& l : c.lines) {
      if (l.from == n) e.add(f0[l.id], -1.0);
      if (l.to == n) e.add(f0[l.id], 1.0);
    }
    for (const auto& d : c.demands)
      if (d.node == n) load += d.p0_mw;
    m.add_row("pbal(n" + std::to_string(n) + ")", e, Sense::EQ, load);
  }
  auto sol = milp::solve_lp(m);
  if (!sol.optimal())
    throw std::runtime_error(std::string("system_opf: ") + milp::to_string(sol.status));
  std::map<int, double> out;
  for (const auto& [gid, var] : p0) out[gid] = sol.values[var];
  return out;
}

namespace {

// Mean-time-to-failure probabilities over a component subset: single-failure
// events are exclusive and exhaustive within the subset's universe.
void assign_subset_probabilities(const Case& c, ContingencySet& set) {
  std::vector<double> p;
  for (const auto& ev : set.contingencies) {
    if (ev.is_pseudo()) continue;
    double mttf = (ev.kind == OutageKind::Line) ? c.find_line(ev.component_id)->mttf_h
                                                : c.find_generator(ev.component_id)->mttf_h;
    if (mttf <= c.horizon_hours)
      throw std::invalid_argument("mttf must exceed the horizon");
    p.push_back(c.horizon_hours / mttf);
  }
  double outage_mass = 0.0;
  std::size_t k = 0;
  for (auto& ev : set.contingencies) {
    if (ev.is_pseudo()) continue;
    double prod = p[k];
    for (std::size_t j = 0; j < p.size(); ++j)
      if (j != k) prod *= 1.0 - p[j];
    ev.probability = prod;
    outage_mass += prod;
    ++k;
  }
  set.contingencies.front().probability = 1.0 - outage_mass;
}

}  // namespace

AreaSubproblem build_area_subproblem(const Case& c, const AreaPartition& partition,
                                     const std::string& area,
                                     const std::map<int, double>& boundary_dispatch,
                                     const AreaPolicy& policy, const BehaviorSet& behs) {
  auto errs = partition.check(c);
  if (!errs.empty()) throw std::invalid_argument("partition mismatch: " + errs.front());
  const std::set<int>& own_nodes = partition.nodes_of(area);
  std::set<int> inter = partition.interconnectors(c);

  AreaSubproblem sub;
  sub.area = area;

  // Credible events: any single in-area failure plus any single interconnector
  // failure, completed by the pseudo-contingency.
  ContingencySet set;
  Contingency pseudo;
  pseudo.index = 1;
  set.contingencies.push_back(pseudo);
  int idx = 2;
  for (const auto& l : c.lines) {
    bool in_area = own_nodes.count(l.from) && own_nodes.count(l.to);
    if (!in_area && !inter.count(l.id)) continue;
    Contingency ev;
    ev.index = idx++;
    ev.kind = OutageKind::Line;
    ev.component_id = l.id;
    set.contingencies.push_back(ev);
  }
  for (const auto& g : c.generators) {
    if (!own_nodes.count(g.node)) continue;
    Contingency ev;
    ev.index = idx++;
    ev.kind = OutageKind::Generator;
    ev.component_id = g.id;
    set.contingencies.push_back(ev);
  }
  assign_subset_probabilities(c, set);
  sub.contingencies = set;

  RtpExtras extras;
  for (const auto& g : c.generators) {
    if (own_nodes.count(g.node)) continue;
    auto it = boundary_dispatch.find(g.id);
    if (it == boundary_dispatch.end())
      throw std::invalid_argument("boundary dispatch misses generator " + std::to_string(g.id));
    extras.fixed_gens_mw[g.id] = it->second;
    sub.boundary_mw[g.id] = it->second;
  }
  // No relaxation outside the operator's jurisdiction; interconnectors are
  // shared assets and stay hard as well.
  for (const auto& l : c.lines) {
    bool in_area = own_nodes.count(l.from) && own_nodes.count(l.to);
    if (!in_area) extras.no_relax_lines.insert(l.id);
  }
  // Severity is valued inside the area only; consequences pushed outside the
  // jurisdiction carry no weight in this subproblem (the merge step restores
  // the true valuation).
  SeverityWeights w;
  for (const auto& d : c.demands)
    w.voll_eur_mwh[d.id] = own_nodes.count(d.node) ? d.voll_eur_mwh : 0.0;
  for (const auto& g : c.generators)
    w.disconnect_fee_eur[g.id] = own_nodes.count(g.node) ? g.disconnect_fee_eur : 0.0;
  extras.weights = w;

  if (policy.kind == AreaPolicy::Kind::N1Benchmark) {
    sub.build = build_case_a(c, set, behs, extras);
  } else {
    RtpOptions opts;
    opts.s_max = policy.s_max;
    opts.epsilon = policy.epsilon;
    opts.allow_relax_working = false;
    opts.allow_relax_failing = true;
    sub.build = build_rtp(c, set, behs, opts, extras);
  }
  return sub;
}

Strategy merge_strategies(const Case& c, const AreaPartition& partition,
                          const std::map<std::string, AreaSubproblem>& subs,
                          const std::map<std::string, Strategy>& area_strategies,
                          const ContingencySet& full_set) {
  // Own-unit sets must be disjoint and cover all generators.
  std::map<int, std::string> owner;
  for (const auto& g : c.generators) owner[g.id] = partition.area_of_node(g.node);
  for (const auto& [area, strat] : area_strategies) {
    (void)strat;
    if (!subs.count(area)) throw std::invalid_argument("strategy for unknown area " + area);
  }

  Strategy merged;
  for (const auto& g : c.generators) {
    const std::string& area = owner[g.id];
    auto it = area_strategies.find(area);
    if (it == area_strategies.end())
      throw std::invalid_argument("no strategy covers generator " + std::to_string(g.id));
    merged.preventive[g.id] = it->second.preventive.at(g.id);
  }

  for (const auto& cont : full_set.contingencies) {
    if (cont.is_pseudo()) continue;
    std::map<int, double> row;
    bool covered = false;
    for (const auto& [area, sub] : subs) {
      // Find this physical event in the operator's own contingency set.
      const Contingency* local = nullptr;
      for (const auto& ev : sub.contingencies.contingencies)
        if (!ev.is_pseudo() && ev.kind == cont.kind && ev.component_id == cont.component_id)
          local = &ev;
      if (!local) continue;
      auto sit = area_strategies.find(area);
      if (sit == area_strategies.end()) continue;
      auto rit = sit->second.corrective.find(local->index);
      if (rit == sit->second.corrective.end()) continue;
      covered = true;
      for (const auto& g : c.generators) {
        if (owner[g.id] != area) continue;
        if (!cont.gen_available(g.id)) continue;
        auto vit = rit->second.find(g.id);
        row[g.id] = (vit != rit->second.end()) ? vit->second : merged.preventive[g.id];
      }
    }
    if (!covered) continue;  // nobody planned for it: units hold preventive
    for (const auto& g : c.generators) {
      if (!cont.gen_available(g.id)) continue;
      if (!row.count(g.id)) row[g.id] = merged.preventive[g.id];
    }
    merged.corrective[cont.index] = std::move(row);
  }
  return merged;
}

std::vector<MergedSeverityRow> merge_and_min_severity(
    const Case& c, const ContingencySet& conts, const BehaviorSet& behs,
    const Strategy& merged, const AreaPartition& partition, RemovalMode mode) {
  (void)behs;
  auto viol = check_strategy(merged, c, conts);
  if (!viol.empty()) {
    std::string msg = "merged strategy invalid:";
    for (const auto& v : viol) msg += " " + v;
    throw std::invalid_argument(msg);
  }
  SeverityWeights weights = SeverityWeights::from_case(c);
  std::vector<MergedSeverityRow> rows;
  for (const auto& cont : conts.contingencies) {
    for (int b : {kWorking, kFailing}) {
      MergedSeverityRow row;
      row.cont_index = cont.index;
      row.behavior = b;
      row.probability =
          cont.probability * (b == kWorking ? behs.working : behs.failing);
      for (const auto& [area, nodes] : partition.areas) {
        (void)nodes;
        row.by_area_eur[area] = 0.0;
      }
      if (!cont.is_pseudo()) {
        TerminalState t = terminal_state(c, cont, b, merged, weights, mode);
        row.total_eur = t.severity_eur;
        for (const auto& d : c.demands) {
          double shed = d.p0_mw - t.served_load_mw.at(d.id);
          if (shed <= 1e-9) continue;
          row.by_area_eur[partition.area_of_node(d.node)] +=
              weights.voll(d.id) * c.horizon_hours * shed;
        }
        for (int g : t.disconnected_units)
          row.by_area_eur[partition.area_of_node(c.find_generator(g)->node)] +=
              weights.fee(g);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string merged_severity_csv(const std::vector<MergedSeverityRow>& rows,
                                const Case& c, const ContingencySet& conts,
                                const AreaPartition& partition) {
  std::ostringstream os;
  os << "event,behavior,probability,total_eur";
  for (const auto& [area, nodes] : partition.areas) {
    (void)nodes;
    os << ",area_" << area << "_eur";
  }
  os << "\n";
  for (const auto& row : rows) {
    const Contingency* cont = nullptr;
    for (const auto& cc : conts.contingencies)
      if (cc.index == row.cont_index) cont = &cc;
    char buf[96];
    std::snprintf(buf, sizeof buf, ",%s,%.8e,%.2f",
                  row.behavior == kWorking ? "working" : "failing", row.probability,
                  row.total_eur);
    os << (cont ? cont->label(c) : "?") << buf;
    for (const auto& [area, nodes] : partition.areas) {
      (void)nodes;
      std::snprintf(buf, sizeof buf, ",%.2f", row.by_area_eur.at(area));
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace secopt
