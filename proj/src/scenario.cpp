#include "secopt/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace secopt {

std::string Contingency::label(const Case& c) const {
  (void)c;
  switch (kind) {
    case OutageKind::None: return "no outage";
    case OutageKind::Line: return "line " + std::to_string(component_id) + " outage";
    case OutageKind::Generator: return "gen " + std::to_string(component_id) + " outage";
  }
  return "?";
}

double ContingencySet::total_probability() const {
  double s = 0.0;
  for (const auto& c : contingencies) s += c.probability;
  return s;
}

ContingencySet build_contingencies(const Case& c, ProbabilityMode mode) {
  ContingencySet set;
  Contingency pseudo;
  pseudo.index = 1;
  set.contingencies.push_back(pseudo);
  int idx = 2;
  for (const auto& l : c.lines) {
    Contingency ev;
    ev.index = idx++;
    ev.kind = OutageKind::Line;
    ev.component_id = l.id;
    set.contingencies.push_back(ev);
  }
  for (const auto& g : c.generators) {
    Contingency ev;
    ev.index = idx++;
    ev.kind = OutageKind::Generator;
    ev.component_id = g.id;
    set.contingencies.push_back(ev);
  }

  if (mode == ProbabilityMode::FromMttf) {
    std::vector<double> p;
    for (const auto& l : c.lines) {
      if (l.mttf_h <= c.horizon_hours)
        throw std::invalid_argument("line " + std::to_string(l.id) +
                                    ": mttf_h must exceed the horizon");
      p.push_back(c.horizon_hours / l.mttf_h);
    }
    for (const auto& g : c.generators) {
      if (g.mttf_h <= c.horizon_hours)
        throw std::invalid_argument("generator " + std::to_string(g.id) +
                                    ": mttf_h must exceed the horizon");
      p.push_back(c.horizon_hours / g.mttf_h);
    }
    double outage_mass = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      double prod = p[i];
      for (std::size_t j = 0; j < p.size(); ++j)
        if (j != i) prod *= 1.0 - p[j];
      set.contingencies[i + 1].probability = prod;
      outage_mass += prod;
    }
    // The pseudo-contingency completes the exhaustive set exactly, so it
    // also carries the (negligible) mass of multiple simultaneous failures.
    set.contingencies[0].probability = 1.0 - outage_mass;
  } else {
    if (!c.explicit_probs)
      throw std::invalid_argument("case carries no explicit contingency probabilities");
    const auto& ep = *c.explicit_probs;
    set.contingencies[0].probability = ep.no_outage;
    double sum = ep.no_outage;
    for (auto& ev : set.contingencies) {
      if (ev.is_pseudo()) continue;
      const auto& src = (ev.kind == OutageKind::Line) ? ep.line : ep.gen;
      bool found = false;
      for (const auto& [id, prob] : src) {
        if (id == ev.component_id) {
          if (prob < 0.0 || prob > 1.0)
            throw std::invalid_argument("probability out of range for " +
                                        std::to_string(ev.component_id));
          ev.probability = prob;
          sum += prob;
          found = true;
          break;
        }
      }
      if (!found)
        throw std::invalid_argument("explicit probabilities miss an event: " +
                                    ev.label(c));
    }
    if (std::abs(sum - 1.0) > 1e-3)
      throw std::invalid_argument("explicit probabilities sum to " + std::to_string(sum));
  }
  return set;
}

int availability(const Contingency& cont, OutageKind kind, int component_id) {
  if (kind == OutageKind::Line) return cont.line_available(component_id);
  if (kind == OutageKind::Generator) return cont.gen_available(component_id);
  throw std::invalid_argument("availability: component must be a line or a generator");
}

BehaviorSet behavior_set(double p_fail) {
  if (p_fail < 0.0 || p_fail > 1.0)
    throw std::invalid_argument("corrective-control failure probability must lie in [0,1]");
  return {1.0 - p_fail, p_fail};
}

}  // namespace secopt
