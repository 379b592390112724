#include "secopt/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "secopt/milp/lp_format.hpp"

namespace secopt {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string mw(double v) { return fmt("%.1f", v + 0.0); }
std::string eur(double v) { return fmt("%.2f", v + 0.0); }

}  // namespace

ContingencySet contingencies_for(const Case& c, const std::optional<ProbabilityMode>& mode) {
  ProbabilityMode m = mode.value_or(c.explicit_probs ? ProbabilityMode::Explicit
                                                     : ProbabilityMode::FromMttf);
  return build_contingencies(c, m);
}

RunRecord run_solve(const Case& c, const SolveRequest& req) {
  auto t0 = std::chrono::steady_clock::now();
  auto rep = validate_case(c);
  if (!rep.accepted()) {
    std::string msg = "case rejected:";
    for (const auto& e : rep.errors) msg += "\n  " + e;
    throw std::runtime_error(msg);
  }

  RunRecord rec;
  rec.case_name = c.name;
  rec.case_hash = case_hash(c);
  rec.request = req;

  ContingencySet conts = contingencies_for(c, req.prob_mode);
  BehaviorSet behs = behavior_set(req.p_fail);

  RtpBuild build;
  if (req.policy == PolicyKind::N1Benchmark) {
    build = build_case_a(c, conts, behs);
  } else {
    RtpOptions opts;
    opts.s_max = req.s_max;
    opts.epsilon = req.epsilon;
    opts.allow_relax_working = req.relax_working;
    opts.allow_relax_failing = true;
    opts.objective_variant = req.objective;
    build = build_rtp(c, conts, behs, opts);
  }
  if (!req.dump_model_path.empty())
    milp::write_lp_file(build.model, req.dump_model_path);

  milp::SolverOptions sopts;
  auto sol = milp::solve_milp(build.model, sopts);
  rec.status = sol.status;
  rec.stats = sol.stats;
  if (sol.optimal()) {
    rec.objective_eur = sol.objective;
    rec.strategy = extract_strategy(sol, build.map, c, conts);
    rec.evaluation = evaluate_strategy(c, conts, behs, rec.strategy, build.weights);
    for (const auto& cont : conts.contingencies) {
      if (cont.is_pseudo()) continue;
      for (int b : {kWorking, kFailing}) {
        SeverityRow row;
        row.cont_index = cont.index;
        row.behavior = b;
        row.probability = cont.probability * (b == kWorking ? behs.working : behs.failing);
        row.severity_eur = sol.values[build.map.at(build.map.severity, cont.index, b)];
        rec.model_severities.push_back(row);
      }
    }
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

namespace {

const Contingency* find_cont(const ContingencySet& conts, int index) {
  for (const auto& c : conts.contingencies)
    if (c.index == index) return &c;
  return nullptr;
}

void dispatch_tables(std::ostream& os, const RunRecord& rec, const Case& c,
                     const ContingencySet& conts) {
  os << "preventive dispatch (MW)\n  gen:";
  for (const auto& g : c.generators) os << " " << g.id;
  os << "\n  MW :";
  for (const auto& g : c.generators) os << " " << mw(rec.strategy.preventive.at(g.id));
  os << "\n\ncorrective re-dispatch (MW)\n";
  for (const auto& cont : conts.contingencies) {
    if (cont.is_pseudo()) continue;
    auto it = rec.strategy.corrective.find(cont.index);
    if (it == rec.strategy.corrective.end()) continue;
    os << "  c=" << cont.index << " (" << cont.label(c) << "):";
    for (const auto& g : c.generators) {
      if (!cont.gen_available(g.id)) {
        os << " x";
        continue;
      }
      os << " " << mw(it->second.at(g.id));
    }
    os << "\n";
  }
}

void flow_tables(std::ostream& os, const RunRecord& rec, const Case& c,
                 const ContingencySet& conts, const BehaviorSet& behs) {
  os << "\npost-contingency flows under corrective-control failure (MW)\n";
  for (const auto& cont : conts.contingencies) {
    if (cont.is_pseudo() || cont.kind != OutageKind::Line) continue;
    TerminalState t = terminal_state(c, cont, kFailing, rec.strategy);
    os << "  c=" << cont.index << " (" << cont.label(c) << "):";
    for (const auto& l : c.lines) {
      if (!cont.line_available(l.id)) {
        os << " x";
        continue;
      }
      auto f = t.post_flows_mw.find(l.id);
      os << " " << (f == t.post_flows_mw.end() ? "-" : mw(f->second));
      if (f != t.post_flows_mw.end() && std::abs(f->second) > l.f_max_mw * (1.0 + 1e-3))
        os << "*";
    }
    os << "\n";
  }
  (void)behs;
  os << "  (* overload: branch removed before the terminal state)\n";
}

void severity_block(std::ostream& os, const RunRecord& rec, const Case& c,
                    const ContingencySet& conts) {
  double base = c.max_severity_eur();
  os << "\nseverity levels\n  event                 behavior  severity_eur  pct    prob\n";
  for (const auto& row : rec.evaluation.severity_table) {
    if (row.cont_index == 1) continue;
    const Contingency* cont = find_cont(conts, row.cont_index);
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-21s %-9s %12.2f %6.2f  %.3e\n",
                  cont ? cont->label(c).c_str() : "?",
                  row.behavior == kWorking ? "working" : "failing", row.severity_eur,
                  base > 0 ? 100.0 * row.severity_eur / base : 0.0, row.probability);
    os << buf;
  }
  os << "\ncost breakdown (EUR): preventive " << eur(rec.evaluation.preventive_cost_eur)
     << ", expected corrective " << eur(rec.evaluation.expected_corrective_cost_eur)
     << ", expected severity " << eur(rec.evaluation.expected_severity_eur)
     << "\n  objective " << eur(rec.objective_eur) << ", status "
     << milp::to_string(rec.status) << "\n";
}

}  // namespace

std::string render_text_report(const RunRecord& rec, const Case& c,
                               const ContingencySet& conts) {
  std::ostringstream os;
  os << "case " << rec.case_name << " (" << rec.case_hash << ")\n";
  if (rec.status != milp::SolveStatus::Optimal) {
    os << "status: " << milp::to_string(rec.status) << "\n";
    return os.str();
  }
  BehaviorSet behs = behavior_set(rec.request.p_fail);
  dispatch_tables(os, rec, c, conts);
  flow_tables(os, rec, c, conts, behs);
  severity_block(os, rec, c, conts);
  return os.str();
}

std::string render_csv_report(const RunRecord& rec, const Case& c,
                              const ContingencySet& conts) {
  std::ostringstream os;
  os << "table,key,value\n";
  os << "meta,case," << rec.case_name << "\n";
  os << "meta,hash," << rec.case_hash << "\n";
  os << "meta,status," << milp::to_string(rec.status) << "\n";
  if (rec.status != milp::SolveStatus::Optimal) return os.str();
  char buf[64];
  for (const auto& g : c.generators) {
    std::snprintf(buf, sizeof buf, "dispatch,g%d,%.1f", g.id,
                  rec.strategy.preventive.at(g.id));
    os << buf << "\n";
  }
  for (const auto& [ci, row] : rec.strategy.corrective)
    for (const auto& [gid, v] : row) {
      std::snprintf(buf, sizeof buf, "redispatch,c%d:g%d,%.1f", ci, gid, v);
      os << buf << "\n";
    }
  std::snprintf(buf, sizeof buf, "cost,preventive,%.2f", rec.evaluation.preventive_cost_eur);
  os << buf << "\n";
  std::snprintf(buf, sizeof buf, "cost,expected_corrective,%.2f",
                rec.evaluation.expected_corrective_cost_eur);
  os << buf << "\n";
  std::snprintf(buf, sizeof buf, "cost,expected_severity,%.2f",
                rec.evaluation.expected_severity_eur);
  os << buf << "\n";
  os << "\n" << severity_table_csv(rec.evaluation, c, conts);
  return os.str();
}

std::string run_record_json(const RunRecord& rec) {
  nlohmann::json j;
  j["case"] = rec.case_name;
  j["hash"] = rec.case_hash;
  j["status"] = milp::to_string(rec.status);
  j["objective_eur"] = rec.objective_eur;
  j["policy"] =
      rec.request.policy == PolicyKind::N1Benchmark ? "n1-benchmark" : "severity";
  j["s_max"] = rec.request.s_max;
  j["epsilon"] = rec.request.epsilon;
  j["p_fail"] = rec.request.p_fail;
  j["relax_working"] = rec.request.relax_working;
  j["preventive"] = rec.strategy.preventive;
  nlohmann::json corr;
  for (const auto& [ci, row] : rec.strategy.corrective)
    corr[std::to_string(ci)] = row;
  j["corrective"] = corr;
  j["costs"] = {{"preventive", rec.evaluation.preventive_cost_eur},
                {"expected_corrective", rec.evaluation.expected_corrective_cost_eur},
                {"expected_severity", rec.evaluation.expected_severity_eur},
                {"total", rec.evaluation.total_cost_eur}};
  j["solver"] = {{"nodes", rec.stats.nodes},
                 {"lp_solves", rec.stats.lp_solves},
                 {"simplex_iterations", rec.stats.simplex_iterations}};
  j["wall_seconds"] = rec.wall_seconds;
  return j.dump(2);
}

Strategy load_strategy(std::istream& in, const std::string& origin) {
  Strategy s;
  std::string raw;
  int lineno = 0;
  int current = 0;  // 0 = preventive, else contingency index
  bool any = false;
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
      if (line == "[preventive]") {
        current = 0;
        any = true;
      } else if (line.rfind("[corrective c=", 0) == 0 && line.back() == ']') {
        current = std::stoi(line.substr(14, line.size() - 15));
        if (current < 2)
          throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                   ": corrective sections need c >= 2");
        s.corrective[current];
      } else {
        throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                 ": unknown section " + line);
      }
      continue;
    }
    std::istringstream ss(line);
    std::string key;
    int gid;
    double v;
    if (!(ss >> key >> gid >> v) || key != "gen")
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": expected 'gen <id> <mw>'");
    if (current == 0) s.preventive[gid] = v;
    else s.corrective[current][gid] = v;
  }
  if (!any) throw std::runtime_error(origin + ": strategy misses [preventive]");
  return s;
}

Strategy load_strategy_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open strategy file " + path);
  return load_strategy(f, path);
}

void serialize_strategy(const Strategy& s, std::ostream& out) {
  out << "[preventive]\n";
  char buf[64];
  for (const auto& [gid, v] : s.preventive) {
    std::snprintf(buf, sizeof buf, "gen %d %.6f", gid, v);
    out << buf << "\n";
  }
  for (const auto& [ci, row] : s.corrective) {
    out << "[corrective c=" << ci << "]\n";
    for (const auto& [gid, v] : row) {
      std::snprintf(buf, sizeof buf, "gen %d %.6f", gid, v);
      out << buf << "\n";
    }
  }
}

std::string serialize_strategy(const Strategy& s) {
  std::ostringstream os;
  serialize_strategy(s, os);
  return os.str();
}

}  // namespace secopt
