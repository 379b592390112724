#pragma once

#include <string>
#include <vector>

#include "secopt/case.hpp"

namespace secopt {

enum class OutageKind { None, Line, Generator };

struct Contingency {
  int index = 0;  // 1-based; index 1 is the no-outage pseudo-contingency
  OutageKind kind = OutageKind::None;
  int component_id = 0;  // line or generator id, 0 for the pseudo-contingency
  double probability = 0.0;

  bool is_pseudo() const { return kind == OutageKind::None; }
  /// tau: one exactly when the event is a generating-unit failure.
  int tau() const { return kind == OutageKind::Generator ? 1 : 0; }

  /// a_i: zero when the referenced component is the outaged one.
  int line_available(int line_id) const {
    return (kind == OutageKind::Line && component_id == line_id) ? 0 : 1;
  }
  int gen_available(int gen_id) const {
    return (kind == OutageKind::Generator && component_id == gen_id) ? 0 : 1;
  }

  std::string label(const Case& c) const;
};

struct ContingencySet {
  std::vector<Contingency> contingencies;  // [0] is the pseudo-contingency

  double total_probability() const;
  int size() const { return static_cast<int>(contingencies.size()); }
};

struct BehaviorSet {
  double working = 1.0;
  double failing = 0.0;
};

enum class ProbabilityMode { FromMttf, Explicit };

/// Builds the exclusive-exhaustive single-outage contingency set:
/// one event per line and generator plus the no-outage pseudo-contingency.
/// FromMttf derives elementary probabilities p_i = horizon / mttf_i and forms
/// the exact product probabilities; Explicit takes the case's shipped values
/// verbatim (sum checked within 1e-3, never renormalized).
ContingencySet build_contingencies(const Case& c, ProbabilityMode mode);

/// Availability flag of a component under a contingency (1 = in service).
int availability(const Contingency& cont, OutageKind kind, int component_id);

/// Two-element behavior set: corrective control works or fails outright.
BehaviorSet behavior_set(double p_fail);

}  // namespace secopt
