#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lppt/fraction.hpp"

namespace lppt {

// Standard-form linear program: minimize c.x subject to A x = b, x >= 0.
// Rows are stored sparsely; rows of A need not be independent.
struct LpProblem {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::uint32_t, Fraction>>> rows;
  std::vector<Fraction> b;
  std::vector<Fraction> c;

  void add_entry(std::size_t row, std::size_t col, Fraction value);
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<Fraction> x;
  std::vector<Fraction> y;  // one dual per row
  Fraction objective;
  std::vector<std::size_t> basis;  // basic structural columns, sorted
};

// Exact two-phase dense-tableau simplex. Entering rule is steepest
// reduced cost with an automatic switch to Bland's rule on degenerate
// stalls, so it terminates on every input. Deterministic.
// An optional warm basis is eliminated into place first; if it is singular
// or infeasible the solver quietly restarts from scratch.
LpSolution solve(const LpProblem& p,
                 const std::vector<std::size_t>* warm_basis = nullptr);

// Re-checks an optimal solution from scratch in exact arithmetic:
// A x = b, x >= 0, A^T y <= c, c.x = b.y, and complementary slackness.
bool verify_solution(const LpProblem& p, const LpSolution& s);

struct FloatSolution {
  LpStatus status = LpStatus::infeasible;
  bool reliable = false;  // false on iteration cap or numeric trouble
  std::vector<double> x;
  double objective = 0.0;
  std::vector<std::size_t> basis;
};

// Floating-point screen over the same tableau algorithm. Results are only
// hints; everything downstream re-verifies exactly.
FloatSolution solve_float(const LpProblem& p);

struct BasisEvaluation {
  bool factorizable = false;
  bool feasible = false;
  bool optimal = false;  // meaningful only when check_optimality was set
  std::vector<Fraction> x;
  std::vector<Fraction> y;
  Fraction objective;
};

// Exact evaluation of a candidate basis (m distinct structural columns):
// solves B x_B = b by sparse peel + dense elimination, and, on request,
// certifies optimality via B^T y = c_B and full reduced-cost pricing.
BasisEvaluation evaluate_basis(const LpProblem& p,
                               const std::vector<std::size_t>& basis,
                               bool check_optimality);

// Float screen, exact certification of the screened basis, exact warm
// restart, exact scratch solve - first stage that certifies wins. The
// result is always exact.
LpSolution solve_certified(const LpProblem& p);

// Largest m*(n+m) dense-tableau footprint the exact simplex will accept.
inline constexpr std::size_t kExactTableauCap = 3'000'000;

}  // namespace lppt
