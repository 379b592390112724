#include "secopt/milp/lp_format.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace secopt::milp {

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' ||
        ch == '(' || ch == ')')
      out += ch;
    else
      out += '_';
  }
  return out;
}

void write_terms(std::ostream& os, const std::vector<std::pair<int, double>>& terms,
                 const MilpModel& model) {
  bool first = true;
  for (const auto& [v, c] : terms) {
    if (c >= 0.0) os << (first ? "" : " + ") << c;
    else os << (first ? "- " : " - ") << -c;
    os << ' ' << lp_var_name(model, v);
    first = false;
  }
  if (first) os << "0 " << lp_var_name(model, 0);
}

}  // namespace

std::string lp_var_name(const MilpModel& model, int j) {
  const std::string& n = model.var(j).name;
  if (n.empty()) return "v" + std::to_string(j);
  std::string s = sanitize(n);
  if (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.') s = "v_" + s;
  return s;
}

void write_lp_format(const MilpModel& model, std::ostream& os) {
  os << "\\ written by secopt\n";
  os << "Minimize\n obj: ";
  std::vector<std::pair<int, double>> obj_terms;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.objective()[j] != 0.0) obj_terms.emplace_back(j, model.objective()[j]);
  write_terms(os, obj_terms, model);
  if (model.objective_constant() != 0.0) {
    double c = model.objective_constant();
    os << (c >= 0 ? " + " : " - ") << std::abs(c);
  }
  os << "\nSubject To\n";
  for (int i = 0; i < model.num_rows(); ++i) {
    const Row& r = model.row(i);
    std::string rn = r.name.empty() ? "c" + std::to_string(i) : sanitize(r.name);
    os << ' ' << rn << "_" << i << ": ";
    write_terms(os, r.coeffs, model);
    os << (r.sense == Sense::LE ? " <= " : r.sense == Sense::GE ? " >= " : " = ");
    os << r.rhs << '\n';
  }
  os << "Bounds\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const Variable& v = model.var(j);
    if (v.type == VarType::Binary && v.lb == 0.0 && v.ub == 1.0) continue;
    if (v.lb == 0.0 && v.ub == kInf) continue;
    os << ' ';
    if (v.lb == v.ub) {
      os << lp_var_name(model, j) << " = " << v.lb;
    } else if (!std::isfinite(v.lb) && !std::isfinite(v.ub)) {
      os << lp_var_name(model, j) << " free";
    } else {
      if (std::isfinite(v.lb)) os << v.lb << " <= ";
      else os << "-inf <= ";
      os << lp_var_name(model, j);
      if (std::isfinite(v.ub)) os << " <= " << v.ub;
    }
    os << '\n';
  }
  bool any_bin = false;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.var(j).type == VarType::Binary) {
      if (!any_bin) os << "Binary\n";
      any_bin = true;
      os << ' ' << lp_var_name(model, j) << '\n';
    }
  os << "End\n";
}

void write_lp_file(const MilpModel& model, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_lp_format(model, f);
}

std::vector<double> read_lp_solution(const MilpModel& model, std::istream& is) {
  std::map<std::string, int> index;
  for (int j = 0; j < model.num_vars(); ++j) index[lp_var_name(model, j)] = j;
  std::vector<double> x(model.num_vars(), 0.0);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::string name;
    double value;
    if (!(ss >> name)) continue;
    if (!(ss >> value))
      throw std::runtime_error("solution line " + std::to_string(lineno) +
                               ": missing value for " + name);
    auto it = index.find(name);
    if (it == index.end())
      throw std::runtime_error("solution line " + std::to_string(lineno) +
                               ": unknown variable " + name);
    x[it->second] = value;
  }
  return x;
}

std::vector<double> read_lp_solution_file(const MilpModel& model, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_lp_solution(model, f);
}

}  // namespace secopt::milp
