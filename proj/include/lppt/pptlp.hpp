#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lppt/fraction.hpp"
#include "lppt/lattice.hpp"
#include "lppt/lp.hpp"

namespace lppt {

// The two independently coded programs for one state set. The primal is the
// ground truth; the dual standard form is rebuilt from scratch as the
// cross-check, so a bug in either construction shows up as a duality gap.

// Diagonal discrimination program: maximize (1/k) sum_j p_j[v(j)] over
// POVM weights p_j >= 0 with sum_j p_j = 1 and (P p_j) >= 0, encoded as a
// minimization with one slack per PPT row. Column layout: p(j,l) = j*D + l,
// then slacks s(j,u) = k*D + j*D + u. Row layout: D completeness rows, then
// k*D PPT rows.
LpProblem build_primal(const StateSet& set);

// Standard form of the dual program: variables alpha (D), beta (D), r (k*D),
// q (k*D) in that order; one equality block per member j with rows
// alpha_u - beta_u - r_j[u] - (P q_j)[u] = delta_{u,v(j)}.
LpProblem build_eq9(const StateSet& set);

// The always-feasible dual point with objective exactly 1 (alpha = sum b_i,
// r_j = sum_{i != j} b_i, beta = q = 0); its optimality is equivalent to
// perfect PPT discrimination.
std::vector<Fraction> trivial_dual_point(const StateSet& set);
bool verify_trivial_dual_point(const StateSet& set);

struct Certificate {
  enum class Type { povm, dual };
  Type type = Type::povm;
  int t = 0;
  StateSet set;
  Fraction value;
  // povm: k vectors p_j of length 4^t.
  // dual: vectors[0] = y, vectors[1..k] = q_j, each of length 4^t.
  std::vector<std::vector<Fraction>> vectors;
};

// Re-checks every certificate invariant from scratch in exact arithmetic.
// A valid povm proves distinguishability; a valid dual (value < 1) proves
// indistinguishability.
bool verify_certificate(const StateSet& set, const Certificate& cert);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

enum class SolveMode { exact, screen };

struct AlphaResult {
  Fraction alpha;
  bool distinguishable = false;
  Certificate certificate;
  std::string method;  // "exact-lp", "criterion", or "cached"
};

// Exact optimum of the discrimination program with a verified certificate.
// exact: scratch exact simplex on the primal, plus an exact solve of the
//   dual standard form whenever alpha < 1 (the optima must agree).
// screen: float screen first, then exact confirmation (a perfect POVM
//   reconstructed from the screened basis, or certified exact solves).
// Either way every returned number is exact and every certificate verified.
AlphaResult alpha(const StateSet& set, SolveMode mode = SolveMode::exact);

// Closed-form optimum of the partially transposed, equality-tightened dual:
// (1/k) sum_u max_j P[u, v(j)]. Always >= alpha; may exceed 1.
Fraction beta_prime(const StateSet& set);
// Same value via an explicit LP solve (cross-check path).
Fraction beta_prime_lp(const StateSet& set);

// Standard-form tableau data at the trivial dual basis: basis partition,
// closed-form inverse, b' = M^{-1} b, N' = -M^{-1} N and reduced costs,
// grouped into the named column blocks.
struct StandardFormTableau {
  StateSet set;
  LpProblem problem;                    // the eq-9 standard form
  std::vector<std::size_t> basis_cols;  // alpha_K then r off-diagonal
  std::vector<std::size_t> nonbasis_cols;
  std::vector<std::vector<Fraction>> m_inverse;  // k*D x k*D
  std::vector<Fraction> b_prime;
  std::vector<std::vector<Fraction>> n_prime;    // k*D x |N|
  std::vector<Fraction> sigma;                   // reduced cost per N column
  Fraction z0;

  // Positions of the column blocks inside nonbasis_cols.
  std::size_t alpha_rest_begin = 0, alpha_rest_end = 0;
  std::size_t r_diag_begin = 0, r_diag_end = 0;
  std::size_t beta_begin = 0, beta_end = 0;
  std::size_t q_begin = 0, q_end = 0;

  bool verify_m_inverse() const;   // M * M^{-1} = I exactly
  bool verify_b_prime() const;     // the Theorem-1 basic values
};

StandardFormTableau build_tableau(const StateSet& set);

struct BlockCheck {
  std::string block;
  std::string expected;
  bool pass = false;
};

struct ReducedCostReport {
  StateSet set;
  std::vector<BlockCheck> blocks;
  Fraction z0;
  bool m_inverse_ok = false;
  bool b_prime_ok = false;
  bool all_pass() const;
};

// Reduced costs grouped by block, compared (after scaling by k) against the
// expected patterns: +1 on the free alpha block, +1 on the diagonal r block,
// 0 on beta over K, -1 on beta off K, and rows of the transition matrix on
// the q blocks.
ReducedCostReport reduced_costs(const StateSet& set);

}  // namespace lppt
