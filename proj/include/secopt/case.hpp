#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace secopt {

constexpr double kUnlimited = 1e30;  // parsed from "inf" in case files

struct Line {
  int id = 0;
  int from = 0;
  int to = 0;
  double f_max_mw = 0.0;
  double reactance_pu = 1.0;
  double mttf_h = kUnlimited;
};

struct Generator {
  int id = 0;
  int node = 0;
  double cost_eur_mwh = 0.0;            // c_g
  double redispatch_cost_eur_mwh = 0.0; // c_g^r
  double p_min_mw = 0.0;
  double p_max_mw = 0.0;
  double ramp_down_mw = kUnlimited;     // P^-
  double ramp_up_mw = kUnlimited;       // P^+
  double emergency_ramp_mw = kUnlimited;// admissible ramp-down at the terminal state
  double mttf_h = kUnlimited;
  double disconnect_fee_eur = 0.0;      // w_g
  std::optional<double> market_mw;      // settled market schedule, if any
};

struct Demand {
  int id = 0;
  int node = 0;
  double p0_mw = 0.0;
  double voll_eur_mwh = 0.0;  // v_d
};

/// Explicit contingency probabilities a fixture may carry; regression data
/// rather than the general mean-time-to-failure path.
struct ExplicitProbs {
  double no_outage = 0.0;
  std::vector<std::pair<int, double>> line;  // line id -> probability
  std::vector<std::pair<int, double>> gen;   // generator id -> probability
};

struct Case {
  std::string name;
  std::vector<int> nodes;
  std::vector<Line> lines;
  std::vector<Generator> generators;
  std::vector<Demand> demands;
  double horizon_hours = 1.0;
  int slack_node = 0;
  std::optional<ExplicitProbs> explicit_probs;

  int node_index(int node_id) const;
  const Generator* find_generator(int id) const;
  const Line* find_line(int id) const;
  const Demand* find_demand(int id) const;

  /// Value of losing every consumer plus disconnecting every unit, the base
  /// for severity percentages.
  double max_severity_eur() const;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool accepted() const { return errors.empty(); }
};

Case load_case(std::istream& in, const std::string& origin = "<stream>");
Case load_case_file(const std::string& path);
Case load_case_string(const std::string& text, const std::string& origin = "<string>");

void serialize_case(const Case& c, std::ostream& out);
std::string serialize_case(const Case& c);

ValidationReport validate_case(const Case& c);

/// Bundled study systems: "irep-3bus" and "irep-6bus".
Case builtin_case(const std::string& name);
std::vector<std::string> builtin_case_names();

/// Resolves a CLI argument: an existing file path or a builtin name.
Case resolve_case(const std::string& path_or_name);

/// Stable content hash of the serialized case (for run records).
std::string case_hash(const Case& c);

}  // namespace secopt
