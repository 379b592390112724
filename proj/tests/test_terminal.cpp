#include <cmath>

#include "doctest.h"
#include "secopt/case.hpp"
#include "secopt/scenario.hpp"
#include "secopt/terminal.hpp"

using namespace secopt;

namespace {

// The published benchmark schedules for the three-bus system.
Strategy benchmark_strategy() {
  Strategy s;
  s.preventive = {{1, 77.5}, {2, 10.0}, {3, 12.5}};
  s.corrective[2] = {{1, 55.0}, {2, 10.0}, {3, 35.0}};
  s.corrective[3] = {{1, 45.0}, {2, 10.0}, {3, 45.0}};
  s.corrective[4] = {{1, 45.0}, {2, 10.0}, {3, 45.0}};
  s.corrective[5] = {{2, 50.0}, {3, 50.0}};
  s.corrective[6] = {{1, 82.5}, {3, 17.5}};
  s.corrective[7] = {{1, 65.0}, {2, 35.0}};
  return s;
}

Strategy severity_controlled_strategy() {
  Strategy s;
  s.preventive = {{1, 45.0}, {2, 10.0}, {3, 45.0}};
  s.corrective[2] = {{1, 55.0}, {2, 10.0}, {3, 35.0}};
  s.corrective[3] = {{1, 45.0}, {2, 10.0}, {3, 45.0}};
  s.corrective[4] = {{1, 45.0}, {2, 10.0}, {3, 45.0}};
  s.corrective[5] = {{2, 50.0}, {3, 50.0}};
  s.corrective[6] = {{1, 82.5}, {3, 17.5}};
  s.corrective[7] = {{1, 65.0}, {2, 35.0}};
  return s;
}

const Contingency& cont_at(const ContingencySet& set, int index) {
  for (const auto& c : set.contingencies)
    if (c.index == index) return c;
  throw std::out_of_range("contingency");
}

}  // namespace

TEST_CASE("terminal state of the benchmark strategy under control failure") {
  Case c = builtin_case("irep-3bus");
  auto conts = build_contingencies(c, ProbabilityMode::Explicit);
  Strategy s = benchmark_strategy();

  SUBCASE("line-2 outage: both remaining branches overload and the grid islands") {
    TerminalState t = terminal_state(c, cont_at(conts, 3), kFailing, s);
    CHECK(t.post_flows_mw.at(1) == doctest::Approx(77.5));
    CHECK(t.post_flows_mw.at(3) == doctest::Approx(87.5));
    CHECK(t.removed_lines.count(1));
    CHECK(t.removed_lines.count(3));
    CHECK(t.disconnected_units.count(1));
    CHECK(t.disconnected_units.count(2));
    CHECK(t.served_load_mw.at(1) == doctest::Approx(12.5));
    // 87.5 MW shed at 300/MWh plus two 4000 disconnection fees.
    CHECK(t.severity_eur == doctest::Approx(34250.0));
    CHECK(severity(t, c) == doctest::Approx(34250.0));
  }
  SUBCASE("line-1 outage: one overload, partial island") {
    TerminalState t = terminal_state(c, cont_at(conts, 2), kFailing, s);
    CHECK(t.post_flows_mw.at(2) == doctest::Approx(77.5));
    CHECK(t.post_flows_mw.at(3) == doctest::Approx(10.0));
    CHECK(t.removed_lines == std::set<int>{2});
    CHECK(t.severity_eur == doctest::Approx(27250.0));
  }
  SUBCASE("line-3 outage") {
    TerminalState t = terminal_state(c, cont_at(conts, 4), kFailing, s);
    CHECK(t.post_flows_mw.at(1) == doctest::Approx(-10.0));
    CHECK(t.post_flows_mw.at(2) == doctest::Approx(87.5));
    CHECK(t.severity_eur == doctest::Approx(34250.0));
  }
  SUBCASE("unit outages: deficit equals the lost preventive output") {
    CHECK(terminal_state(c, cont_at(conts, 5), kFailing, s).severity_eur ==
          doctest::Approx(23250.0));
    CHECK(terminal_state(c, cont_at(conts, 6), kFailing, s).severity_eur ==
          doctest::Approx(3000.0));
    CHECK(terminal_state(c, cont_at(conts, 7), kFailing, s).severity_eur ==
          doctest::Approx(3750.0));
    // The network stays whole after a unit outage with failed control.
    TerminalState t = terminal_state(c, cont_at(conts, 5), kFailing, s);
    CHECK(t.removed_lines.empty());
    CHECK(t.disconnected_units.empty());
  }
  SUBCASE("working control keeps every state whole") {
    for (int ci = 2; ci <= 7; ++ci) {
      TerminalState t = terminal_state(c, cont_at(conts, ci), kWorking, s);
      CHECK(t.severity_eur == doctest::Approx(0.0));
      CHECK(t.removed_lines.empty());
    }
  }
  SUBCASE("pseudo-contingency is severity free") {
    TerminalState t = terminal_state(c, cont_at(conts, 1), kWorking, s);
    CHECK(t.severity_eur == doctest::Approx(0.0));
    CHECK(t.removed_lines.empty());
    TerminalState tf = terminal_state(c, cont_at(conts, 1), kFailing, s);
    CHECK(tf.severity_eur == doctest::Approx(0.0));
  }
}

TEST_CASE("terminal state of the severity-controlled strategy") {
  Case c = builtin_case("irep-3bus");
  auto conts = build_contingencies(c, ProbabilityMode::Explicit);
  Strategy s = severity_controlled_strategy();

  // Post-failure flows stay within ratings for every line outage.
  TerminalState t2 = terminal_state(c, cont_at(conts, 2), kFailing, s);
  CHECK(t2.post_flows_mw.at(2) == doctest::Approx(45.0));
  CHECK(t2.post_flows_mw.at(3) == doctest::Approx(10.0));
  CHECK(t2.severity_eur == doctest::Approx(0.0));
  TerminalState t3 = terminal_state(c, cont_at(conts, 3), kFailing, s);
  CHECK(t3.post_flows_mw.at(1) == doctest::Approx(45.0));
  CHECK(t3.post_flows_mw.at(3) == doctest::Approx(55.0));
  CHECK(t3.severity_eur == doctest::Approx(0.0));
  TerminalState t4 = terminal_state(c, cont_at(conts, 4), kFailing, s);
  CHECK(t4.post_flows_mw.at(1) == doctest::Approx(-10.0));
  CHECK(t4.post_flows_mw.at(2) == doctest::Approx(55.0));
  CHECK(t4.severity_eur == doctest::Approx(0.0));

  CHECK(terminal_state(c, cont_at(conts, 5), kFailing, s).severity_eur ==
        doctest::Approx(13500.0));
  CHECK(terminal_state(c, cont_at(conts, 6), kFailing, s).severity_eur ==
        doctest::Approx(3000.0));
  CHECK(terminal_state(c, cont_at(conts, 7), kFailing, s).severity_eur ==
        doctest::Approx(13500.0));
}

TEST_CASE("evaluate_strategy aggregates") {
  Case c = builtin_case("irep-3bus");
  auto conts = build_contingencies(c, ProbabilityMode::Explicit);
  auto behs = behavior_set(0.2);

  SUBCASE("benchmark strategy") {
    auto ev = evaluate_strategy(c, conts, behs, benchmark_strategy());
    CHECK(ev.preventive_cost_eur == doctest::Approx(2325.0));
    CHECK(ev.expected_corrective_cost_eur == doctest::Approx(0.55).epsilon(0.02));
    CHECK(std::abs(ev.expected_severity_eur - 14.7) <= 0.05);
    CHECK(ev.total_cost_eur == doctest::Approx(ev.operating_cost_eur +
                                               ev.expected_severity_eur));
    // Chance check against the one-third threshold.
    CHECK_FALSE(ev.chance_ok(14000.0, 0.0));
    CHECK(ev.chance_ok(14000.0, 1e-2));
    CHECK_FALSE(ev.chance_ok(14000.0, 1e-5));
  }
  SUBCASE("severity-controlled strategy") {
    auto ev = evaluate_strategy(c, conts, behs, severity_controlled_strategy());
    CHECK(ev.preventive_cost_eur == doctest::Approx(2650.0));
    CHECK(std::abs(ev.expected_corrective_cost_eur - 0.03) <= 0.01);
    // Consistent expectation over the severity rows themselves.
    double expect = 0.0;
    for (const auto& row : ev.severity_table) expect += row.probability * row.severity_eur;
    CHECK(ev.expected_severity_eur == doctest::Approx(expect));
    CHECK(ev.chance_ok(14000.0, 0.0));
  }
  SUBCASE("probability mass and distribution function") {
    auto ev = evaluate_strategy(c, conts, behs, benchmark_strategy());
    double mass = 0.0;
    for (const auto& row : ev.severity_table) mass += row.probability;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev.prob_leq(-1.0) == doctest::Approx(0.0));
    CHECK(ev.prob_leq(1e18) == doctest::Approx(1.0));
    // Monotone distribution function.
    double last = -1.0;
    for (double s : {0.0, 3000.0, 3750.0, 23250.0, 27250.0, 34250.0}) {
      double p = ev.prob_leq(s);
      CHECK(p >= last - 1e-15);
      last = p;
    }
  }
  SUBCASE("no declared re-dispatch means no corrective settlement") {
    Strategy s;
    s.preventive = benchmark_strategy().preventive;
    auto ev = evaluate_strategy(c, conts, behs, s);
    CHECK(ev.expected_corrective_cost_eur == doctest::Approx(0.0));
  }
  SUBCASE("invalid strategies name the violated constraint") {
    Strategy s = benchmark_strategy();
    s.corrective[5][1] = 20.0;  // scheduling the outaged unit
    CHECK_THROWS_WITH_AS(evaluate_strategy(c, conts, behs, s),
                         doctest::Contains("outaged"), std::invalid_argument);
    Strategy s2 = benchmark_strategy();
    s2.preventive[1] = 150.0;  // above capacity (and unbalanced)
    CHECK_THROWS_WITH_AS(evaluate_strategy(c, conts, behs, s2),
                         doctest::Contains("pre_uppgen"), std::invalid_argument);
  }
}

TEST_CASE("severity monotonicity in the valuation coefficients") {
  Case c = builtin_case("irep-3bus");
  auto conts = build_contingencies(c, ProbabilityMode::Explicit);
  Strategy s = benchmark_strategy();
  SeverityWeights full = SeverityWeights::from_case(c);
  for (double scale : {0.5, 0.1, 0.0}) {
    SeverityWeights lower = full;
    for (auto& [id, v] : lower.voll_eur_mwh) v *= scale;
    for (auto& [id, w] : lower.disconnect_fee_eur) w *= scale;
    for (int ci = 2; ci <= 7; ++ci) {
      const Contingency& cont = [&]() -> const Contingency& {
        for (const auto& cc : conts.contingencies)
          if (cc.index == ci) return cc;
        throw std::out_of_range("c");
      }();
      double hi = terminal_state(c, cont, kFailing, s, full).severity_eur;
      double lo = terminal_state(c, cont, kFailing, s, lower).severity_eur;
      CHECK(lo <= hi + 1e-9);
    }
  }
}

TEST_CASE("iterated removal agrees with single-round closure on the study system") {
  Case c = builtin_case("irep-3bus");
  auto conts = build_contingencies(c, ProbabilityMode::Explicit);
  Strategy s = benchmark_strategy();
  for (int ci = 2; ci <= 7; ++ci) {
    const Contingency& cont = cont_at(conts, ci);
    double a = terminal_state(c, cont, kFailing, s, RemovalMode::FirstRound).severity_eur;
    double b = terminal_state(c, cont, kFailing, s, RemovalMode::Iterated).severity_eur;
    CHECK(a == doctest::Approx(b));
  }
}

TEST_CASE("severity table export") {
  Case c = builtin_case("irep-3bus");
  auto conts = build_contingencies(c, ProbabilityMode::Explicit);
  auto behs = behavior_set(0.2);
  auto ev = evaluate_strategy(c, conts, behs, benchmark_strategy());
  std::string csv = severity_table_csv(ev, c, conts);
  CHECK(csv.find("contingency,behavior,severity_eur,severity_pct,probability") == 0);
  // 81.55% of the 42000 base for the worst rows.
  CHECK(csv.find("34250.00,81.55") != std::string::npos);
  // Emission is deterministic.
  CHECK(csv == severity_table_csv(ev, c, conts));
}
