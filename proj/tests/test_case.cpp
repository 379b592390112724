#include <sstream>

#include "doctest.h"
#include "secopt/case.hpp"

using namespace secopt;

TEST_CASE("builtin three-bus system") {
  Case c = builtin_case("irep-3bus");
  CHECK(c.nodes.size() == 3);
  CHECK(c.lines.size() == 3);
  CHECK(c.generators.size() == 3);
  CHECK(c.demands.size() == 1);
  for (const auto& l : c.lines) CHECK(l.f_max_mw == doctest::Approx(55.0));
  const Generator* g1 = c.find_generator(1);
  REQUIRE(g1 != nullptr);
  CHECK(g1->cost_eur_mwh == 20);
  CHECK(g1->redispatch_cost_eur_mwh == 5);
  CHECK(g1->p_min_mw == 10);
  CHECK(g1->p_max_mw == 100);
  CHECK(g1->mttf_h == 500);
  CHECK(g1->disconnect_fee_eur == 4000);
  CHECK(c.demands[0].p0_mw == 100);
  CHECK(c.demands[0].voll_eur_mwh == 300);
  CHECK(c.demands[0].node == 3);
  // Losing all load plus every unit.
  CHECK(c.max_severity_eur() == doctest::Approx(42000.0));
  CHECK(validate_case(c).accepted());
}

TEST_CASE("builtin six-bus system") {
  Case c = builtin_case("irep-6bus");
  CHECK(c.nodes.size() == 6);
  CHECK(c.lines.size() == 8);
  CHECK(c.generators.size() == 5);
  CHECK(c.demands.size() == 2);
  CHECK(c.find_line(1)->f_max_mw == 65);
  for (int l = 2; l <= 7; ++l) CHECK(c.find_line(l)->f_max_mw == 55);
  CHECK(c.find_line(8)->f_max_mw == 65);
  const Generator* g4 = c.find_generator(4);
  REQUIRE(g4 != nullptr);
  CHECK(g4->cost_eur_mwh == 65);
  CHECK(g4->redispatch_cost_eur_mwh == 10);
  CHECK(g4->disconnect_fee_eur == 4000);
  // Stable-minimum columns read as min/max, not the printed order.
  CHECK(g4->p_min_mw == 10);
  CHECK(g4->p_max_mw == 100);
  CHECK(c.find_generator(5)->p_min_mw == 5);
  CHECK(c.find_generator(5)->p_max_mw == 40);

  // Demand sizes pin both study thresholds: a quarter of the system maximum
  // severity is 12125 and a quarter of the area-A maximum is 5625.
  const Demand* d1 = c.find_demand(1);
  const Demand* d2 = c.find_demand(2);
  REQUIRE(d1 != nullptr);
  REQUIRE(d2 != nullptr);
  CHECK(d1->node == 3);
  CHECK(d1->p0_mw == 100);
  CHECK(d2->node == 5);
  CHECK(d2->p0_mw == 60);
  CHECK(0.25 * c.max_severity_eur() == doctest::Approx(12125.0));
  double area_a_max = d1->voll_eur_mwh * d1->p0_mw + 3 * 2500.0;
  CHECK(0.25 * area_a_max == doctest::Approx(5625.0));
  CHECK(validate_case(c).accepted());
}

TEST_CASE("serialize and reload round-trips") {
  for (const auto& name : builtin_case_names()) {
    Case c = builtin_case(name);
    Case back = load_case_string(serialize_case(c), name);
    CHECK(serialize_case(back) == serialize_case(c));
    CHECK(case_hash(back) == case_hash(c));
  }
}

TEST_CASE("fixture files match the builtins") {
  for (const auto& name : builtin_case_names()) {
    Case file = load_case_file(std::string(SECOPT_FIXTURE_DIR) + "/" + name + ".case");
    CHECK(serialize_case(file) == serialize_case(builtin_case(name)));
  }
}

TEST_CASE("parser rejects malformed input") {
  SUBCASE("empty node list") {
    CHECK_THROWS_WITH_AS(load_case_string("[network]\nslack = 1\n", "t"),
                         doctest::Contains("no nodes"), std::runtime_error);
  }
  SUBCASE("bad number carries location") {
    std::string text = "[network]\nnodes = 1 2\nline 1 1 2 fifty 1 100\n";
    CHECK_THROWS_WITH_AS(load_case_string(text, "t"), doctest::Contains("t:3"),
                         std::runtime_error);
  }
  SUBCASE("missing generator field") {
    std::string text = "[network]\nnodes = 1\n[generators]\ngen 1 1 20 5\n";
    CHECK_THROWS_AS(load_case_string(text, "t"), std::runtime_error);
  }
}

TEST_CASE("validation findings") {
  Case c = builtin_case("irep-3bus");
  SUBCASE("clean case accepted") { CHECK(validate_case(c).errors.empty()); }
  SUBCASE("generator on unknown node") {
    c.generators[0].node = 9;
    auto rep = validate_case(c);
    REQUIRE_FALSE(rep.accepted());
    bool found = false;
    for (const auto& e : rep.errors)
      if (e.find("generator 1") != std::string::npos && e.find("9") != std::string::npos)
        found = true;
    CHECK(found);
  }
  SUBCASE("inverted generation limits") {
    c.generators[1].p_min_mw = 200;
    auto rep = validate_case(c);
    CHECK_FALSE(rep.accepted());
  }
  SUBCASE("disconnected graph warns") {
    c.nodes.push_back(4);
    auto rep = validate_case(c);
    CHECK(rep.accepted());
    REQUIRE_FALSE(rep.warnings.empty());
  }
  SUBCASE("unknown builtin") { CHECK_THROWS(builtin_case("nope")); }
}
