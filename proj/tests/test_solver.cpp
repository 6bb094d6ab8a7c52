#include <doctest.h>

#include <cmath>

#include "krawlp/error.hpp"
#include "krawlp/lp_model.hpp"
#include "krawlp/solver.hpp"

using namespace krawlp;

namespace {

LinearProgram tiny(std::vector<LpRow> rows, std::vector<Rational> objective) {
  LinearProgram lp;
  lp.index_size = objective.size();
  for (std::size_t v = 0; v < objective.size(); ++v) {
    lp.variables.push_back(v);
    lp.variable_names.push_back("x" + std::to_string(v));
  }
  lp.objective = std::move(objective);
  lp.rows = std::move(rows);
  lp.level = 1;
  return lp;
}

// Pointwise check of an optimal result.
void check_point(const LinearProgram& lp, const SolveResult& r) {
  REQUIRE(r.primal.size() == lp.num_variables());
  Rational obj = 0;
  for (std::size_t v = 0; v < r.primal.size(); ++v) {
    CHECK(r.primal[v] >= 0);
    obj += lp.objective[v] * r.primal[v];
  }
  CHECK(obj == r.value);
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (std::size_t v = 0; v < r.primal.size(); ++v) lhs += row.coeffs[v] * r.primal[v];
    if (row.relation == Relation::Equal) {
      CHECK(lhs == row.rhs);
    } else {
      CHECK(lhs >= row.rhs);
    }
  }
}

}  // namespace

TEST_CASE("Delsarte values at d = 1") {
  auto one = solve_exact(build_delsarte(1, 1));
  CHECK(one.status == SolveStatus::Optimal);
  CHECK(one.value == 2);
  CHECK(one.certified);
  for (int n = 1; n <= 8; ++n) {
    const auto lp = build_delsarte(n, 1);
    const auto r = solve_exact(lp);
    CHECK(r.value == Rational(BigInt(1) << n));
    check_point(lp, r);
    // a_i = C(n, i) reaches the optimum.
    std::vector<Rational> binomials;
    for (int i = 0; i <= n; ++i) binomials.emplace_back(binomial(n, i));
    CHECK(check_feasibility(lp, binomials).objective == r.value);
  }
}

TEST_CASE("known Delsarte values") {
  // n = 5, d = 3 has optimum 4; n = 7, d = 3 has 16 (the Hamming bound is tight there).
  CHECK(solve_exact(build_delsarte(5, 3)).value == 4);
  CHECK(solve_exact(build_delsarte(7, 3)).value == 16);
  CHECK(solve_exact(build_delsarte(3, 3)).value == 2);
  CHECK(solve_exact(build_delsarte(4, 5)).value == 1);
}

TEST_CASE("monotone in d") {
  for (int n = 1; n <= 6; ++n) {
    Rational prev = solve_exact(build_delsarte(n, 1)).value;
    for (int d = 2; d <= n + 1; ++d) {
      const Rational v = solve_exact(build_delsarte(n, d)).value;
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("normalization-only program") {
  auto lp = tiny({LpRow{"NORM", {1}, Relation::Equal, 1}}, {1});
  const auto r = solve_exact(lp);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.value == 1);
}

TEST_CASE("infeasible and unbounded detection, exact and float") {
  auto lp = build_delsarte(3, 1);
  lp.rows.push_back(LpRow{"NORM2", std::vector<Rational>(lp.num_variables(), Rational(0)), Relation::Equal, 2});
  lp.rows.back().coeffs[0] = 1;
  CHECK(solve_exact(lp).status == SolveStatus::Infeasible);
  CHECK(solve_exact(lp).certified);
  CHECK(solve_float(lp).status == SolveStatus::Infeasible);

  auto open = build_delsarte(3, 1);
  open.rows.resize(1);
  CHECK(solve_exact(open).status == SolveStatus::Unbounded);
  CHECK(solve_exact(open).certified);
  CHECK(solve_float(open).status == SolveStatus::Unbounded);
}

TEST_CASE("fractional optimum") {
  // max x0 + x1 s.t. 3 x0 + x1 <= 2 (written as -3x0 - x1 >= -2), x0 + 3 x1 <= 2.
  auto lp = tiny({LpRow{"r1", {-3, -1}, Relation::GreaterEqual, -2}, LpRow{"r2", {-1, -3}, Relation::GreaterEqual, -2}},
                 {1, 1});
  const auto r = solve_exact(lp);
  CHECK(r.value == 1);
  CHECK(r.primal == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  auto lp2 = tiny({LpRow{"r1", {-3, -2}, Relation::GreaterEqual, -1}}, {1, 1});
  CHECK(solve_exact(lp2).value == Rational(1, 2));
}

TEST_CASE("degenerate cycling example terminates") {
  // Beale's example, negated into max form with >= rows.
  auto lp = tiny({LpRow{"r1", {-Rational(1, 4), 60, Rational(1, 25), -9}, Relation::GreaterEqual, 0},
                  LpRow{"r2", {-Rational(1, 2), 90, Rational(1, 50), -3}, Relation::GreaterEqual, 0},
                  LpRow{"r3", {0, 0, -1, 0}, Relation::GreaterEqual, -1}},
                 {Rational(3, 4), -150, Rational(1, 50), -6});
  SolverOptions opts;
  opts.dantzig_pivots = 1000;  // if Dantzig cycles, the Bland fallback ends it
  opts.warm_start = false;
  const auto r = solve_exact(lp, opts);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.value == Rational(1, 20));
  check_point(lp, r);
}

TEST_CASE("pivot budget is a resource error") {
  SolverOptions opts;
  opts.max_pivots = 1;  // the double run gives up too, then the rational one throws
  try {
    solve_exact(build_hierarchy_lp(4, 2, 2, false), opts);
    FAIL("expected resource error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Resource);
  }
}

TEST_CASE("float screen agrees with exact") {
  for (int n = 1; n <= 6; ++n) {
    for (int d = 1; d <= n; ++d) {
      for (int l = 1; l <= 2; ++l) {
        if (l == 2 && n > 5) continue;
        for (const bool linear : {false, true}) {
          const auto lp = build_hierarchy_lp(n, d, l, linear);
          const auto e = solve_exact(lp);
          const auto f = solve_float(lp);
          REQUIRE(f.status == e.status);
          CHECK_FALSE(f.exact);
          const double ev = to_double(e.value), fv = to_double(f.value);
          CHECK(std::fabs(ev - fv) <= 1e-6 * std::max(1.0, std::fabs(ev)));
        }
      }
    }
  }
}

TEST_CASE("root_value") {
  CHECK(root_value(64, 2) == 8.0);
  CHECK(root_value(1, 5) == 1.0);
  CHECK(root_value(0, 3) == 0.0);
  CHECK(root_value(27, 3) == 3.0);
  const double r2 = root_value(2, 2);
  CHECK(r2 * r2 <= 2.0);
  CHECK(std::nextafter(r2, 3.0) * std::nextafter(r2, 3.0) > 2.0);
  CHECK(root_value(Rational(256, 9), 2) == doctest::Approx(16.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(root_value(-1, 2), Error);
}

TEST_CASE("collapse at level 2 for n = 5, d = 3") {
  const auto one = solve_exact(build_delsarte(5, 3));
  const auto two = solve_exact(build_hierarchy_lp(5, 3, 2, false));
  CHECK(two.value == one.value * one.value);
  CHECK(root_value(two.value, 2) == doctest::Approx(to_double(one.value)).epsilon(1e-9));
}

TEST_CASE("larger degenerate programs certify and match the squared Delsarte value") {
  // 120 configurations at n = 7; d = 2 and d = 4 are heavily degenerate.
  for (int d = 1; d <= 4; ++d) {
    const auto del = solve_exact(build_delsarte(7, d)).value;
    for (const bool linear : {false, true}) {
      const auto lp = build_hierarchy_lp(7, d, 2, linear);
      const auto r = solve_exact(lp);
      REQUIRE(r.status == SolveStatus::Optimal);
      CHECK(r.certified);
      check_point(lp, r);
      if (!linear) CHECK(r.value == del * del);
      if (linear) CHECK(r.value <= del * del);
    }
  }
}

TEST_CASE("warm start and plain rational pivoting agree") {
  SolverOptions plain;
  plain.warm_start = false;
  for (int n = 2; n <= 5; ++n) {
    for (int d = 1; d <= n; ++d) {
      for (const bool linear : {false, true}) {
        const auto lp = build_hierarchy_lp(n, d, 2, linear);
        const auto a = solve_exact(lp);
        const auto b = solve_exact(lp, plain);
        REQUIRE(a.status == b.status);
        CHECK(a.value == b.value);
        CHECK(b.certified);
        check_point(lp, b);
      }
    }
  }
  auto lp = build_delsarte(3, 1);
  lp.rows.resize(1);
  CHECK(solve_exact(lp, plain).status == SolveStatus::Unbounded);
}

TEST_CASE("result JSON") {
  const auto lp = build_delsarte(3, 3);
  const auto j = to_json(solve_exact(lp), lp);
  CHECK(j["status"] == "optimal");
  CHECK(j["value"] == "2");
  CHECK(j["certified"] == true);
  CHECK(j.contains("root_value"));
}
