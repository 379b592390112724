#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "secopt/milp/linearize.hpp"
#include "secopt/milp/lp_format.hpp"
#include "secopt/milp/model.hpp"

using namespace secopt::milp;

namespace {

// Exhaustive oracle: enumerate all binary assignments, solve the remaining LP
// for each, take the best. Independent of the branch and bound path.
MilpSolution brute_force_milp(const MilpModel& model) {
  std::vector<int> bins;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.var(j).type == VarType::Binary) bins.push_back(j);
  MilpSolution best;
  best.status = SolveStatus::Infeasible;
  REQUIRE(bins.size() <= 20);
  for (unsigned long mask = 0; mask < (1ul << bins.size()); ++mask) {
    MilpModel fixed = model;
    for (std::size_t k = 0; k < bins.size(); ++k)
      fixed.fix_var(bins[k], (mask >> k) & 1ul ? 1.0 : 0.0);
    MilpSolution s = solve_lp(fixed);
    if (s.status == SolveStatus::Unbounded) return s;
    if (s.status != SolveStatus::Optimal) continue;
    if (best.status != SolveStatus::Optimal || s.objective < best.objective) {
      best = s;
    }
  }
  return best;
}

double dual_objective(const MilpModel& model, const MilpSolution& sol) {
  double z = model.objective_constant();
  for (int i = 0; i < model.num_rows(); ++i) z += sol.duals[i] * model.row(i).rhs;
  for (int j = 0; j < model.num_vars(); ++j) {
    double d = sol.reduced_costs[j];
    const auto& v = model.var(j);
    if (d > 0 && std::isfinite(v.lb)) z += d * v.lb;
    else if (d < 0 && std::isfinite(v.ub)) z += d * v.ub;
  }
  return z;
}

}  // namespace

TEST_CASE("lp basics") {
  SUBCASE("min x subject to x >= 3") {
    MilpModel m;
    int x = m.add_var("x", 0, kInf);
    m.set_objective(x, 1.0);
    m.add_row("floor", LinExpr(x, 1.0), Sense::GE, 3.0);
    auto s = solve_lp(m);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.values[x] == doctest::Approx(3.0));
    CHECK(s.objective == doctest::Approx(3.0));
  }
  SUBCASE("max x via min -x, x <= 5") {
    MilpModel m;
    int x = m.add_var("x", 0, kInf);
    m.set_objective(x, -1.0);
    m.add_row("cap", LinExpr(x, 1.0), Sense::LE, 5.0);
    auto s = solve_lp(m);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.values[x] == doctest::Approx(5.0));
  }
  SUBCASE("infeasible pair") {
    MilpModel m;
    int x = m.add_var("x", -kInf, kInf);
    m.add_row("le", LinExpr(x, 1.0), Sense::LE, 0.0);
    m.add_row("ge", LinExpr(x, 1.0), Sense::GE, 1.0);
    auto s = solve_lp(m);
    CHECK(s.status == SolveStatus::Infeasible);
  }
  SUBCASE("unbounded") {
    MilpModel m;
    int x = m.add_var("x", -kInf, kInf);
    m.set_objective(x, 1.0);
    auto s = solve_lp(m);
    CHECK(s.status == SolveStatus::Unbounded);
  }
  SUBCASE("equalities and free variables") {
    MilpModel m;
    int x = m.add_var("x", -kInf, kInf);
    int y = m.add_var("y", -kInf, kInf);
    m.set_objective(x, 1.0);
    m.set_objective(y, 2.0);
    LinExpr e1;
    e1.add(x, 1.0).add(y, 1.0);
    m.add_row("sum", e1, Sense::EQ, 4.0);
    LinExpr e2;
    e2.add(x, 1.0).add(y, -1.0);
    m.add_row("diff", e2, Sense::GE, 0.0);
    // x + 2y with x+y=4 and x>=y is unbounded below (y -> -inf).
    auto s = solve_lp(m);
    CHECK(s.status == SolveStatus::Unbounded);

    // Flipping the coupling makes it bounded: y >= x forces y >= 2.
    MilpModel m2;
    int x2 = m2.add_var("x", -kInf, kInf);
    int y2 = m2.add_var("y", -kInf, kInf);
    m2.set_objective(x2, 1.0);
    m2.set_objective(y2, 2.0);
    LinExpr f1;
    f1.add(x2, 1.0).add(y2, 1.0);
    m2.add_row("sum", f1, Sense::EQ, 4.0);
    LinExpr f2;
    f2.add(y2, 1.0).add(x2, -1.0);
    m2.add_row("diff", f2, Sense::GE, 0.0);
    auto s2 = solve_lp(m2);
    REQUIRE(s2.status == SolveStatus::Optimal);
    CHECK(s2.values[x2] == doctest::Approx(2.0));
    CHECK(s2.values[y2] == doctest::Approx(2.0));
    CHECK(s2.objective == doctest::Approx(6.0));
  }
}

TEST_CASE("lp degenerate and bounded-variable handling") {
  // Transport-like LP with ties and degeneracy.
  MilpModel m;
  int a = m.add_var("a", 0, 10);
  int b = m.add_var("b", 0, 10);
  int c = m.add_var("c", 0, 10);
  m.set_objective(a, 1.0);
  m.set_objective(b, 1.0);
  m.set_objective(c, 1.0);
  LinExpr e;
  e.add(a, 1.0).add(b, 1.0).add(c, 1.0);
  m.add_row("demand", e, Sense::GE, 15.0);
  LinExpr e2;
  e2.add(a, 1.0).add(b, -1.0);
  m.add_row("tie", e2, Sense::EQ, 0.0);
  auto s = solve_lp(m);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(15.0));
  CHECK(s.values[a] == doctest::Approx(s.values[b]));
}

TEST_CASE("milp pure LP passthrough and tiny binaries") {
  SUBCASE("no binaries equals solve_lp") {
    MilpModel m;
    int x = m.add_var("x", 0, 9);
    m.set_objective(x, -2.0);
    auto a = solve_lp(m);
    auto b = solve_milp(m);
    REQUIRE(a.status == SolveStatus::Optimal);
    REQUIRE(b.status == SolveStatus::Optimal);
    CHECK(a.objective == doctest::Approx(b.objective));
  }
  SUBCASE("cover constraint") {
    MilpModel m;
    int x1 = m.add_binary("x1");
    int x2 = m.add_binary("x2");
    m.set_objective(x1, 1.0);
    m.set_objective(x2, 1.0);
    LinExpr e;
    e.add(x1, 1.0).add(x2, 1.0);
    m.add_row("cover", e, Sense::GE, 1.0);
    auto s = solve_milp(m);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(1.0));
  }
  SUBCASE("knapsack: max 3a+2b with a+b<=1") {
    MilpModel m;
    int a = m.add_binary("a");
    int b = m.add_binary("b");
    m.set_objective(a, -3.0);
    m.set_objective(b, -2.0);
    LinExpr e;
    e.add(a, 1.0).add(b, 1.0);
    m.add_row("cap", e, Sense::LE, 1.0);
    auto s = solve_milp(m);
    REQUIRE(s.status == SolveStatus::Optimal);
    // Oracle: enumerating the four binary points gives -3 at a=1, b=0.
    auto oracle = brute_force_milp(m);
    CHECK(s.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
    CHECK(s.objective == doctest::Approx(-3.0));
    CHECK(s.values[a] == doctest::Approx(1.0));
    CHECK(s.values[b] == doctest::Approx(0.0));
  }
  SUBCASE("infeasible milp") {
    MilpModel m;
    int a = m.add_binary("a");
    m.add_row("lo", LinExpr(a, 1.0), Sense::GE, 0.25);
    m.add_row("hi", LinExpr(a, 1.0), Sense::LE, 0.75);
    auto s = solve_milp(m);
    CHECK(s.status == SolveStatus::Infeasible);
  }
}

TEST_CASE("milp equals brute force on random models") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> nbin_d(2, 12), ncont_d(0, 4), nrow_d(2, 10);
  std::uniform_real_distribution<double> coef_d(-5.0, 5.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  int solved = 0;
  int tried = 0;
  while (solved < 24 && tried < 120) {
    ++tried;
    MilpModel m;
    int nb = nbin_d(rng);
    int nc = ncont_d(rng);
    for (int j = 0; j < nb; ++j) m.add_binary("b" + std::to_string(j));
    for (int j = 0; j < nc; ++j)
      m.add_var("x" + std::to_string(j), 0.0, 3.0 * u01(rng) + 0.5);
    int n = nb + nc;
    for (int j = 0; j < n; ++j) m.set_objective(j, std::round(coef_d(rng) * 4) / 4.0);
    int nr = nrow_d(rng);
    for (int i = 0; i < nr; ++i) {
      LinExpr e;
      int nz = 0;
      for (int j = 0; j < n; ++j) {
        if (u01(rng) < 0.45) {
          double c = std::round(coef_d(rng) * 4) / 4.0;
          if (c != 0.0) {
            e.add(j, c);
            ++nz;
          }
        }
      }
      if (nz == 0) continue;
      double r = u01(rng);
      Sense s = r < 0.4 ? Sense::LE : (r < 0.8 ? Sense::GE : Sense::EQ);
      double rhs = std::round(coef_d(rng) * 2) / 2.0;
      m.add_row("r" + std::to_string(i), e, s, rhs);
    }
    auto oracle = brute_force_milp(m);
    auto got = solve_milp(m);
    REQUIRE(got.status == oracle.status);
    if (oracle.status != SolveStatus::Optimal) continue;
    ++solved;
    CHECK(std::abs(got.objective - oracle.objective) <= 1e-7);
    CHECK(m.max_violation(got.values) <= 1e-6);
    for (int j = 0; j < m.num_vars(); ++j)
      if (m.var(j).type == VarType::Binary)
        CHECK(std::abs(got.values[j] - std::round(got.values[j])) <= 1e-6);
  }
  CHECK(solved >= 20);
}

TEST_CASE("lp weak duality and replay on random LPs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef_d(-4.0, 4.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int done = 0;
  for (int t = 0; t < 60 && done < 15; ++t) {
    MilpModel m;
    int n = 3 + static_cast<int>(u01(rng) * 6);
    for (int j = 0; j < n; ++j) m.add_var("x" + std::to_string(j), 0.0, 1.0 + 4.0 * u01(rng));
    for (int j = 0; j < n; ++j) m.set_objective(j, coef_d(rng));
    int nr = 2 + static_cast<int>(u01(rng) * 6);
    for (int i = 0; i < nr; ++i) {
      LinExpr e;
      bool nz = false;
      for (int j = 0; j < n; ++j)
        if (u01(rng) < 0.5) {
          e.add(j, coef_d(rng));
          nz = true;
        }
      if (!nz) continue;
      double r = u01(rng);
      m.add_row("r" + std::to_string(i), e,
                r < 0.45 ? Sense::LE : (r < 0.9 ? Sense::GE : Sense::EQ), coef_d(rng));
    }
    auto s = solve_lp(m);
    if (s.status != SolveStatus::Optimal) continue;
    ++done;
    CHECK(m.max_violation(s.values) <= 1e-6);
    double dz = dual_objective(m, s);
    CHECK(s.objective >= dz - 1e-5 * std::max(1.0, std::abs(dz)));
    CHECK(std::abs(s.objective - dz) <= 1e-5 * std::max(1.0, std::abs(dz)));
  }
  CHECK(done >= 10);
}

TEST_CASE("linearization exactness") {
  SUBCASE("binary times free over a grid") {
    const double M = 10.0;
    for (int lam_v = 0; lam_v <= 1; ++lam_v) {
      for (double th = -M; th <= M + 1e-9; th += 2.5) {
        MilpModel m;
        int lam = m.add_binary("lam");
        int theta = m.add_var("theta", -M, M);
        m.fix_var(lam, lam_v);
        m.fix_var(theta, th);
        int aux = linearize_bin_times_free(m, lam, theta, M, "prod");
        // Pin the auxiliary by optimizing it in both directions.
        m.set_objective(aux, 1.0);
        auto lo = solve_milp(m);
        REQUIRE(lo.status == SolveStatus::Optimal);
        CHECK(lo.values[aux] == doctest::Approx(lam_v * th).epsilon(1e-9));
        m.set_objective(aux, -1.0);
        auto hi = solve_milp(m);
        REQUIRE(hi.status == SolveStatus::Optimal);
        CHECK(hi.values[aux] == doctest::Approx(lam_v * th).epsilon(1e-9));
      }
    }
  }
  SUBCASE("binary times nonnegative over a grid") {
    const double M = 1000.0;
    for (int y_v = 0; y_v <= 1; ++y_v) {
      for (double p = 0.0; p <= M + 1e-9; p += 250.0) {
        MilpModel m;
        int y = m.add_binary("y");
        int pv = m.add_var("p", 0.0, M);
        m.fix_var(y, y_v);
        m.fix_var(pv, p);
        int aux = linearize_bin_times_nonneg(m, y, pv, M, "prod");
        m.set_objective(aux, 1.0);
        auto lo = solve_milp(m);
        REQUIRE(lo.status == SolveStatus::Optimal);
        CHECK(lo.values[aux] == doctest::Approx(y_v * p).epsilon(1e-9));
        m.set_objective(aux, -1.0);
        auto hi = solve_milp(m);
        REQUIRE(hi.status == SolveStatus::Optimal);
        CHECK(hi.values[aux] == doctest::Approx(y_v * p).epsilon(1e-9));
      }
    }
  }
  SUBCASE("random feasible sampling keeps products exact") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int t = 0; t < 40; ++t) {
      const double M = 50.0;
      MilpModel m;
      int lam = m.add_binary("lam");
      int theta = m.add_var("theta", -M, M);
      int y = m.add_binary("y");
      int p = m.add_var("p", 0.0, M);
      m.fix_var(lam, u01(rng) < 0.5 ? 0.0 : 1.0);
      m.fix_var(theta, (2.0 * u01(rng) - 1.0) * M);
      m.fix_var(y, u01(rng) < 0.5 ? 0.0 : 1.0);
      m.fix_var(p, u01(rng) * M);
      int a1 = linearize_bin_times_free(m, lam, theta, M, "tprod");
      int a2 = linearize_bin_times_nonneg(m, y, p, M, "pprod");
      m.set_objective(a1, u01(rng) < 0.5 ? 1.0 : -1.0);
      m.set_objective(a2, u01(rng) < 0.5 ? 1.0 : -1.0);
      auto s = solve_milp(m);
      REQUIRE(s.status == SolveStatus::Optimal);
      CHECK(std::abs(s.values[a1] - m.var(lam).lb * m.var(theta).lb) <= 1e-7);
      CHECK(std::abs(s.values[a2] - m.var(y).lb * m.var(p).lb) <= 1e-7);
    }
  }
  SUBCASE("nonpositive M rejected") {
    MilpModel m;
    int lam = m.add_binary("lam");
    int th = m.add_var("th", -1, 1);
    CHECK_THROWS(linearize_bin_times_free(m, lam, th, 0.0, "bad"));
    CHECK_THROWS(linearize_bin_times_nonneg(m, lam, th, -3.0, "bad"));
  }
}

TEST_CASE("lp format round trip through the solution seam") {
  MilpModel m;
  int x = m.add_var("flow(1,2)", -55, 55);
  int b = m.add_binary("overload[1]");
  m.set_objective(x, 1.5);
  LinExpr e;
  e.add(x, 1.0).add(b, 10.0);
  m.add_row("limit", e, Sense::GE, -20.0);
  std::ostringstream os;
  write_lp_format(m, os);
  std::string text = os.str();
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("Binary") != std::string::npos);

  std::istringstream sol(lp_var_name(m, x) + " -30\n# comment line\n");
  auto x1 = read_lp_solution(m, sol);
  CHECK(x1[x] == doctest::Approx(-30.0));

  // Writing twice yields identical text (deterministic emission).
  std::ostringstream os2;
  write_lp_format(m, os2);
  CHECK(os.str() == os2.str());
}
