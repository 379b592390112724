#include "secopt/case.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace secopt {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_num(const std::string& tok, const std::string& origin, int line) {
  if (tok == "inf" || tok == "+inf") return kUnlimited;
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(origin, line, "expected a number, got '" + tok + "'");
  }
}

std::string fmt_num(double v) {
  if (v >= kUnlimited) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

int Case::node_index(int node_id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == node_id) return static_cast<int>(i);
  return -1;
}

const Generator* Case::find_generator(int id) const {
  for (const auto& g : generators)
    if (g.id == id) return &g;
  return nullptr;
}

const Line* Case::find_line(int id) const {
  for (const auto& l : lines)
    if (l.id == id) return &l;
  return nullptr;
}

const Demand* Case::find_demand(int id) const {
  for (const auto& d : demands)
    if (d.id == id) return &d;
  return nullptr;
}

double Case::max_severity_eur() const {
  double s = 0.0;
  for (const auto& d : demands) s += d.voll_eur_mwh * d.p0_mw * horizon_hours;
  for (const auto& g : generators) s += g.disconnect_fee_eur;
  return s;
}

Case load_case(std::istream& in, const std::string& origin) {
  Case c;
  std::string section;
  std::string raw;
  int lineno = 0;
  bool saw_nodes = false;

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
      if (line.back() != ']') parse_fail(origin, lineno, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      continue;
    }

    std::istringstream ss(line);
    std::string key;
    ss >> key;

    if (section == "network") {
      if (key == "nodes") {
        std::string eq;
        ss >> eq;
        if (eq != "=") parse_fail(origin, lineno, "expected 'nodes = ...'");
        int id;
        while (ss >> id) c.nodes.push_back(id);
        saw_nodes = true;
      } else if (key == "slack") {
        std::string eq;
        ss >> eq;
        if (!(ss >> c.slack_node)) parse_fail(origin, lineno, "bad slack node");
      } else if (key == "line") {
        Line l;
        std::string fmax, x, mttf;
        if (!(ss >> l.id >> l.from >> l.to >> fmax >> x >> mttf))
          parse_fail(origin, lineno, "line needs: id from to f_max_mw x_pu mttf_h");
        l.f_max_mw = parse_num(fmax, origin, lineno);
        l.reactance_pu = parse_num(x, origin, lineno);
        l.mttf_h = parse_num(mttf, origin, lineno);
        c.lines.push_back(l);
      } else {
        parse_fail(origin, lineno, "unknown [network] entry '" + key + "'");
      }
    } else if (section == "generators") {
      if (key != "gen") parse_fail(origin, lineno, "expected 'gen ...'");
      Generator g;
      std::string t[9];
      if (!(ss >> g.id >> g.node >> t[0] >> t[1] >> t[2] >> t[3] >> t[4] >> t[5] >> t[6] >> t[7] >> t[8]))
        parse_fail(origin, lineno,
                   "gen needs: id node c_eur_mwh cr_eur_mwh p_min_mw p_max_mw "
                   "ramp_down_mw ramp_up_mw e_ramp_mw mttf_h w_eur [p_market_mw]");
      g.cost_eur_mwh = parse_num(t[0], origin, lineno);
      g.redispatch_cost_eur_mwh = parse_num(t[1], origin, lineno);
      g.p_min_mw = parse_num(t[2], origin, lineno);
      g.p_max_mw = parse_num(t[3], origin, lineno);
      g.ramp_down_mw = parse_num(t[4], origin, lineno);
      g.ramp_up_mw = parse_num(t[5], origin, lineno);
      g.emergency_ramp_mw = parse_num(t[6], origin, lineno);
      g.mttf_h = parse_num(t[7], origin, lineno);
      g.disconnect_fee_eur = parse_num(t[8], origin, lineno);
      std::string extra;
      if (ss >> extra) g.market_mw = parse_num(extra, origin, lineno);
      c.generators.push_back(g);
    } else if (section == "demands") {
      if (key != "demand") parse_fail(origin, lineno, "expected 'demand ...'");
      Demand d;
      std::string p0, voll;
      if (!(ss >> d.id >> d.node >> p0 >> voll))
        parse_fail(origin, lineno, "demand needs: id node p0_mw voll_eur_mwh");
      d.p0_mw = parse_num(p0, origin, lineno);
      d.voll_eur_mwh = parse_num(voll, origin, lineno);
      c.demands.push_back(d);
    } else if (section == "options") {
      std::string eq, val;
      ss >> eq >> val;
      if (key == "horizon_h") c.horizon_hours = parse_num(val, origin, lineno);
      else if (key == "name") c.name = val;
      else parse_fail(origin, lineno, "unknown [options] entry '" + key + "'");
    } else if (section == "contingencies") {
      if (key != "prob") parse_fail(origin, lineno, "expected 'prob ...'");
      if (!c.explicit_probs) c.explicit_probs = ExplicitProbs{};
      std::string kind;
      ss >> kind;
      if (kind == "no_outage") {
        std::string v;
        ss >> v;
        c.explicit_probs->no_outage = parse_num(v, origin, lineno);
      } else if (kind == "line" || kind == "gen") {
        int id;
        std::string v;
        if (!(ss >> id >> v)) parse_fail(origin, lineno, "prob needs: kind id value");
        double p = parse_num(v, origin, lineno);
        if (kind == "line") c.explicit_probs->line.emplace_back(id, p);
        else c.explicit_probs->gen.emplace_back(id, p);
      } else {
        parse_fail(origin, lineno, "unknown prob kind '" + kind + "'");
      }
    } else if (section.empty()) {
      parse_fail(origin, lineno, "content before any [section]");
    } else {
      parse_fail(origin, lineno, "unknown section [" + section + "]");
    }
  }

  if (!saw_nodes || c.nodes.empty()) throw std::runtime_error(origin + ": no nodes");
  if (c.slack_node == 0) c.slack_node = *std::min_element(c.nodes.begin(), c.nodes.end());
  return c;
}

Case load_case_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open case file " + path);
  return load_case(f, path);
}

Case load_case_string(const std::string& text, const std::string& origin) {
  std::istringstream ss(text);
  return load_case(ss, origin);
}

void serialize_case(const Case& c, std::ostream& out) {
  out << "[network]\n";
  out << "nodes =";
  for (int n : c.nodes) out << ' ' << n;
  out << "\nslack = " << c.slack_node << "\n";
  out << "# line <id> <from> <to> <f_max_mw> <x_pu> <mttf_h>\n";
  for (const auto& l : c.lines)
    out << "line " << l.id << ' ' << l.from << ' ' << l.to << ' ' << fmt_num(l.f_max_mw)
        << ' ' << fmt_num(l.reactance_pu) << ' ' << fmt_num(l.mttf_h) << "\n";
  out << "\n[generators]\n";
  out << "# gen <id> <node> <c_eur_mwh> <cr_eur_mwh> <p_min_mw> <p_max_mw>"
         " <ramp_down_mw> <ramp_up_mw> <e_ramp_mw> <mttf_h> <w_eur> [p_market_mw]\n";
  for (const auto& g : c.generators) {
    out << "gen " << g.id << ' ' << g.node << ' ' << fmt_num(g.cost_eur_mwh) << ' '
        << fmt_num(g.redispatch_cost_eur_mwh) << ' ' << fmt_num(g.p_min_mw) << ' '
        << fmt_num(g.p_max_mw) << ' ' << fmt_num(g.ramp_down_mw) << ' '
        << fmt_num(g.ramp_up_mw) << ' ' << fmt_num(g.emergency_ramp_mw) << ' '
        << fmt_num(g.mttf_h) << ' ' << fmt_num(g.disconnect_fee_eur);
    if (g.market_mw) out << ' ' << fmt_num(*g.market_mw);
    out << "\n";
  }
  out << "\n[demands]\n";
  out << "# demand <id> <node> <p0_mw> <voll_eur_mwh>\n";
  for (const auto& d : c.demands)
    out << "demand " << d.id << ' ' << d.node << ' ' << fmt_num(d.p0_mw) << ' '
        << fmt_num(d.voll_eur_mwh) << "\n";
  out << "\n[options]\n";
  out << "horizon_h = " << fmt_num(c.horizon_hours) << "\n";
  if (!c.name.empty()) out << "name = " << c.name << "\n";
  if (c.explicit_probs) {
    out << "\n[contingencies]\n";
    out << "prob no_outage " << fmt_num(c.explicit_probs->no_outage) << "\n";
    for (const auto& [id, p] : c.explicit_probs->line)
      out << "prob line " << id << ' ' << fmt_num(p) << "\n";
    for (const auto& [id, p] : c.explicit_probs->gen)
      out << "prob gen " << id << ' ' << fmt_num(p) << "\n";
  }
}

std::string serialize_case(const Case& c) {
  std::ostringstream os;
  serialize_case(c, os);
  return os.str();
}

ValidationReport validate_case(const Case& c) {
  ValidationReport rep;
  auto err = [&](const std::string& m) { rep.errors.push_back(m); };
  auto warn = [&](const std::string& m) { rep.warnings.push_back(m); };

  if (c.nodes.empty()) err("no nodes");
  std::set<int> node_set;
  for (int n : c.nodes)
    if (!node_set.insert(n).second) err("duplicate node id " + std::to_string(n));
  if (c.generators.empty()) err("no generators");
  if (c.demands.empty()) err("no demands");
  if (c.horizon_hours <= 0) err("horizon_h must be positive");
  if (!node_set.count(c.slack_node))
    err("slack node " + std::to_string(c.slack_node) + " does not exist");

  std::set<int> line_ids, gen_ids, dem_ids;
  for (const auto& l : c.lines) {
    std::string tag = "line " + std::to_string(l.id);
    if (!line_ids.insert(l.id).second) err("duplicate " + tag);
    if (!node_set.count(l.from)) err(tag + ": from-node " + std::to_string(l.from) + " does not exist");
    if (!node_set.count(l.to)) err(tag + ": to-node " + std::to_string(l.to) + " does not exist");
    if (l.from == l.to) err(tag + ": from and to coincide");
    if (!(l.f_max_mw > 0)) err(tag + ": f_max_mw must be positive");
    if (!(l.reactance_pu > 0)) err(tag + ": reactance must be positive");
  }
  for (const auto& g : c.generators) {
    std::string tag = "generator " + std::to_string(g.id);
    if (!gen_ids.insert(g.id).second) err("duplicate " + tag);
    if (!node_set.count(g.node)) err(tag + ": node " + std::to_string(g.node) + " does not exist");
    if (g.p_min_mw < 0) err(tag + ": p_min_mw negative");
    if (g.p_min_mw > g.p_max_mw) err(tag + ": p_min_mw exceeds p_max_mw");
    if (g.ramp_down_mw < 0 || g.ramp_up_mw < 0 || g.emergency_ramp_mw < 0)
      err(tag + ": ramps must be nonnegative");
    if (g.disconnect_fee_eur < 0) err(tag + ": w_eur negative");
    if (g.market_mw && (*g.market_mw < g.p_min_mw || *g.market_mw > g.p_max_mw))
      err(tag + ": p_market_mw outside [p_min, p_max]");
  }
  for (const auto& d : c.demands) {
    std::string tag = "demand " + std::to_string(d.id);
    if (!dem_ids.insert(d.id).second) err("duplicate " + tag);
    if (!node_set.count(d.node)) err(tag + ": node " + std::to_string(d.node) + " does not exist");
    if (d.p0_mw < 0) err(tag + ": p0_mw negative");
    if (d.voll_eur_mwh < 0) err(tag + ": voll negative");
  }

  if (c.explicit_probs) {
    const auto& ep = *c.explicit_probs;
    double sum = ep.no_outage;
    auto checkp = [&](double p, const std::string& what) {
      if (p < 0 || p > 1) err("probability out of range for " + what);
    };
    checkp(ep.no_outage, "no_outage");
    for (const auto& [id, p] : ep.line) {
      checkp(p, "line " + std::to_string(id));
      if (!line_ids.count(id)) err("prob for unknown line " + std::to_string(id));
      sum += p;
    }
    for (const auto& [id, p] : ep.gen) {
      checkp(p, "gen " + std::to_string(id));
      if (!gen_ids.count(id)) err("prob for unknown generator " + std::to_string(id));
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-3)
      err("explicit contingency probabilities sum to " + std::to_string(sum) + ", not 1");
    if (ep.line.size() != c.lines.size() || ep.gen.size() != c.generators.size())
      err("explicit probabilities must cover every line and generator");
  }

  if (!c.nodes.empty()) {
    std::map<int, std::vector<int>> adj;
    for (const auto& l : c.lines) {
      adj[l.from].push_back(l.to);
      adj[l.to].push_back(l.from);
    }
    std::set<int> seen;
    std::vector<int> stack{c.nodes.front()};
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      if (!seen.insert(n).second) continue;
      for (int nb : adj[n]) stack.push_back(nb);
    }
    if (seen.size() != c.nodes.size()) warn("network graph is disconnected");
  }
  return rep;
}

Case builtin_case(const std::string& name) {
  if (name == "irep-3bus") {
    Case c;
    c.name = "irep-3bus";
    c.nodes = {1, 2, 3};
    c.slack_node = 1;
    c.horizon_hours = 1.0;
    c.lines = {
        {1, 1, 2, 55.0, 1.0, 10000.0},
        {2, 1, 3, 55.0, 1.0, 10000.0},
        {3, 2, 3, 55.0, 1.0, 10000.0},
    };
    auto gen = [](int id, int node, double cg, double cr, double pmin, double pmax,
                  double mttf, double w) {
      Generator g;
      g.id = id;
      g.node = node;
      g.cost_eur_mwh = cg;
      g.redispatch_cost_eur_mwh = cr;
      g.p_min_mw = pmin;
      g.p_max_mw = pmax;
      g.mttf_h = mttf;
      g.disconnect_fee_eur = w;
      return g;
    };
    c.generators = {
        gen(1, 1, 20, 5, 10, 100, 500, 4000),
        gen(2, 2, 40, 8, 10, 100, 500, 4000),
        gen(3, 3, 30, 7, 10, 50, 250, 4000),
    };
    c.demands = {{1, 3, 100.0, 300.0}};
    // Published study probabilities; the rounded set sums to one exactly.
    ExplicitProbs ep;
    ep.no_outage = 0.99193;
    ep.line = {{1, 0.9e-4}, {2, 0.9e-4}, {3, 0.9e-4}};
    ep.gen = {{1, 1.9e-3}, {2, 1.9e-3}, {3, 4e-3}};
    c.explicit_probs = ep;
    return c;
  }
  if (name == "irep-6bus") {
    Case c;
    c.name = "irep-6bus";
    c.nodes = {1, 2, 3, 4, 5, 6};
    c.slack_node = 1;
    c.horizon_hours = 1.0;
    c.lines = {
        {1, 1, 4, 65.0, 1.0, 10000.0},  // interconnector A-B
        {2, 1, 2, 55.0, 1.0, 10000.0},
        {3, 1, 3, 55.0, 1.0, 10000.0},
        {4, 2, 3, 55.0, 1.0, 10000.0},
        {5, 4, 5, 55.0, 1.0, 10000.0},
        {6, 4, 6, 55.0, 1.0, 10000.0},
        {7, 5, 6, 55.0, 1.0, 10000.0},
        {8, 3, 6, 65.0, 1.0, 10000.0},  // interconnector A-B
    };
    auto gen = [](int id, int node, double cg, double cr, double pmin, double pmax,
                  double rdn, double rup, double eramp, double mttf, double w) {
      Generator g;
      g.id = id;
      g.node = node;
      g.cost_eur_mwh = cg;
      g.redispatch_cost_eur_mwh = cr;
      g.p_min_mw = pmin;
      g.p_max_mw = pmax;
      g.ramp_down_mw = rdn;
      g.ramp_up_mw = rup;
      g.emergency_ramp_mw = eramp;
      g.mttf_h = mttf;
      g.disconnect_fee_eur = w;
      return g;
    };
    c.generators = {
        gen(1, 1, 20, 5, 10, 100, 40, 40, 5, 500, 2500),
        gen(2, 2, 40, 8, 10, 100, 20, 40, 5, 500, 2500),
        gen(3, 3, 30, 7, 10, 50, 40, 40, 5, 250, 2500),
        gen(4, 4, 65, 10, 10, 100, 40, 40, 5, 250, 4000),
        gen(5, 5, 50, 8, 5, 40, 20, 20, 5, 250, 4000),
    };
    c.demands = {
        {1, 3, 100.0, 150.0},
        {2, 5, 60.0, 300.0},
    };
    return c;
  }
  throw std::invalid_argument("unknown builtin case '" + name + "'");
}

std::vector<std::string> builtin_case_names() { return {"irep-3bus", "irep-6bus"}; }

Case resolve_case(const std::string& path_or_name) {
  if (std::filesystem::exists(path_or_name)) return load_case_file(path_or_name);
  return builtin_case(path_or_name);
}

std::string case_hash(const Case& c) {
  std::string text = serialize_case(c);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace secopt
