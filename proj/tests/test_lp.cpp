#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lppt/lp.hpp"
#include "lppt/util.hpp"

using namespace lppt;

namespace {

LpProblem make_problem(std::size_t m, std::size_t n) {
  LpProblem p;
  p.m = m;
  p.n = n;
  p.rows.resize(m);
  p.b.assign(m, Fraction(0));
  p.c.assign(n, Fraction(0));
  return p;
}

}  // namespace

TEST_CASE("single equality") {
  LpProblem p = make_problem(1, 1);
  p.add_entry(0, 0, 1);
  p.b[0] = 1;
  p.c[0] = 1;
  const LpSolution s = solve(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == 1);
  CHECK(s.x[0] == 1);
  CHECK(verify_solution(p, s));
}

TEST_CASE("one-simplex maximization") {
  LpProblem p = make_problem(1, 3);
  p.add_entry(0, 0, 1);
  p.add_entry(0, 1, 1);
  p.add_entry(0, 2, 1);
  p.b[0] = 1;
  p.c[0] = -1;
  p.c[1] = -1;
  const LpSolution s = solve(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == -1);
  CHECK(verify_solution(p, s));
}

TEST_CASE("infeasible and unbounded statuses") {
  LpProblem inf = make_problem(1, 1);
  inf.add_entry(0, 0, 1);
  inf.b[0] = -1;
  CHECK(solve(inf).status == LpStatus::infeasible);

  LpProblem unb = make_problem(1, 2);
  unb.add_entry(0, 0, 1);
  unb.add_entry(0, 1, -1);
  unb.b[0] = 0;
  unb.c[0] = -1;
  CHECK(solve(unb).status == LpStatus::unbounded);
}

TEST_CASE("classic cycling instance terminates at the optimum") {
  // Beale's example; steepest-descent pivoting cycles without safeguards.
  LpProblem p = make_problem(3, 7);
  p.c[3] = frac(-3, 4);
  p.c[4] = 150;
  p.c[5] = frac(-1, 50);
  p.c[6] = 6;
  p.add_entry(0, 0, 1);
  p.add_entry(0, 3, frac(1, 4));
  p.add_entry(0, 4, -60);
  p.add_entry(0, 5, frac(-1, 25));
  p.add_entry(0, 6, 9);
  p.add_entry(1, 1, 1);
  p.add_entry(1, 3, frac(1, 2));
  p.add_entry(1, 4, -90);
  p.add_entry(1, 5, frac(-1, 50));
  p.add_entry(1, 6, 3);
  p.add_entry(2, 2, 1);
  p.add_entry(2, 5, 1);
  p.b[2] = 1;
  const LpSolution s = solve(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == frac(-1, 20));
  CHECK(verify_solution(p, s));
}

TEST_CASE("redundant equality rows are tolerated") {
  LpProblem p = make_problem(3, 2);
  for (std::size_t r = 0; r < 3; ++r) {
    p.add_entry(r, 0, 1);
    p.add_entry(r, 1, 1);
    p.b[r] = 2;
  }
  p.c[0] = 1;
  const LpSolution s = solve(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == 0);
  CHECK(verify_solution(p, s));
}

TEST_CASE("verify_solution rejects tampered optima") {
  LpProblem p = make_problem(2, 4);
  p.add_entry(0, 0, 1);
  p.add_entry(0, 1, 2);
  p.add_entry(0, 2, 1);
  p.b[0] = 4;
  p.add_entry(1, 0, 1);
  p.add_entry(1, 1, -1);
  p.add_entry(1, 3, 1);
  p.b[1] = 1;
  p.c[0] = 2;
  p.c[1] = 1;
  LpSolution s = solve(p);
  REQUIRE(s.status == LpStatus::optimal);
  REQUIRE(verify_solution(p, s));

  LpSolution bad = s;
  bad.x[0] += frac(1, 1000000000);
  CHECK(!verify_solution(p, bad));

  bad = s;
  for (auto& y : bad.y) y = -y;
  if (bad.y == s.y) bad.y[0] = 1;  // all-zero duals: force a mismatch
  CHECK(!verify_solution(p, bad));

  bad = s;
  bad.objective += 1;
  CHECK(!verify_solution(p, bad));
}

TEST_CASE("random feasible programs: exact, float, basis, certified all agree") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + uniform_below(rng, 4);
    const std::size_t n = m + 1 + uniform_below(rng, 5);
    LpProblem p = make_problem(m, n);
    std::vector<Fraction> x0(n);
    for (std::size_t j = 0; j < n; ++j) {
      x0[j] = frac(static_cast<long>(uniform_below(rng, 5)), 1);
      p.c[j] = frac(static_cast<long>(uniform_below(rng, 9)) - 4, 1);
    }
    for (std::size_t r = 0; r < m; ++r) {
      Fraction rhs(0);
      for (std::size_t j = 0; j < n; ++j) {
        const long coef = static_cast<long>(uniform_below(rng, 7)) - 3;
        if (coef == 0) continue;
        p.add_entry(r, j, frac(coef));
        rhs += frac(coef) * x0[j];
      }
      p.b[r] = rhs;  // x0 is feasible by construction
    }

    const LpSolution s = solve(p);
    if (s.status != LpStatus::optimal) {
      CHECK(s.status == LpStatus::unbounded);
      continue;
    }
    CHECK(verify_solution(p, s));

    const FloatSolution fs = solve_float(p);
    REQUIRE(fs.status == LpStatus::optimal);
    CHECK(std::fabs(fs.objective - s.objective.get_d()) < 1e-6);

    if (fs.basis.size() == p.m) {
      const BasisEvaluation ev = evaluate_basis(p, fs.basis, true);
      if (ev.factorizable && ev.feasible && ev.optimal)
        CHECK(ev.objective == s.objective);
    }

    const LpSolution cert = solve_certified(p);
    REQUIRE(cert.status == LpStatus::optimal);
    CHECK(cert.objective == s.objective);
    CHECK(verify_solution(p, cert));

    const LpSolution warm = solve(p, &s.basis);
    REQUIRE(warm.status == LpStatus::optimal);
    CHECK(warm.objective == s.objective);
  }
}

TEST_CASE("evaluate_basis rejects malformed bases") {
  LpProblem p = make_problem(2, 4);
  p.add_entry(0, 0, 1);
  p.add_entry(1, 1, 1);
  p.b[0] = 1;
  p.b[1] = 1;
  CHECK(!evaluate_basis(p, {0}, false).factorizable);
  CHECK(!evaluate_basis(p, {0, 0}, false).factorizable);
  CHECK(!evaluate_basis(p, {0, 9}, false).factorizable);
  CHECK(!evaluate_basis(p, {2, 3}, false).factorizable);  // singular
  const BasisEvaluation ok = evaluate_basis(p, {0, 1}, true);
  CHECK(ok.factorizable);
  CHECK(ok.feasible);
  CHECK(ok.optimal);
}
