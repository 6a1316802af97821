#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lppt/pptlp.hpp"
#include "lppt/util.hpp"

using namespace lppt;

namespace {

std::size_t exact_rank(const LpProblem& p) {
  std::vector<std::vector<Fraction>> rows(p.m, std::vector<Fraction>(p.n, Fraction(0)));
  for (std::size_t r = 0; r < p.m; ++r)
    for (const auto& [col, value] : p.rows[r]) rows[r][col] = value;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < p.n && rank < p.m; ++col) {
    std::size_t pivot = rank;
    while (pivot < p.m && is_zero(rows[pivot][col])) ++pivot;
    if (pivot == p.m) continue;
    std::swap(rows[rank], rows[pivot]);
    const Fraction inv = rows[rank][col];
    for (std::size_t c = col; c < p.n; ++c)
      if (!is_zero(rows[rank][c])) rows[rank][c] /= inv;
    for (std::size_t r = 0; r < p.m; ++r) {
      if (r == rank || is_zero(rows[r][col])) continue;
      const Fraction f = rows[r][col];
      for (std::size_t c = col; c < p.n; ++c)
        if (!is_zero(rows[rank][c])) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

StateSet random_set(std::mt19937_64& rng, int t, std::uint32_t k) {
  const auto linears = sample_subset(rng, 1u << (2 * t), k);
  return make_state_set(t, {linears.begin(), linears.end()});
}

}  // namespace

TEST_CASE("program shapes and the rank of the standard form") {
  const StateSet yu = parse_set("00,11,21,31");
  const LpProblem primal = build_primal(yu);
  CHECK(primal.m == 16 + 4 * 16);
  CHECK(primal.n == 2 * 4 * 16);
  const LpProblem eq9 = build_eq9(yu);
  CHECK(eq9.m == 4 * 16);
  CHECK(eq9.n == 2 * 16 + 2 * 4 * 16);
  CHECK(exact_rank(eq9) == 4 * 16);
}

TEST_CASE("the four-state example: alpha 7/8 by two independent programs") {
  const StateSet yu = parse_set("00,11,21,31");

  const LpSolution sp = solve(build_primal(yu));
  REQUIRE(sp.status == LpStatus::optimal);
  CHECK(-sp.objective == frac(7, 8));

  const LpSolution sd = solve(build_eq9(yu));
  REQUIRE(sd.status == LpStatus::optimal);
  CHECK(sd.objective == frac(7, 8));

  const AlphaResult result = alpha(yu, SolveMode::exact);
  CHECK(result.alpha == frac(7, 8));
  CHECK(!result.distinguishable);
  CHECK(result.method == "exact-lp");
  CHECK(result.certificate.type == Certificate::Type::dual);
  CHECK(result.certificate.value == frac(7, 8));
  CHECK(verify_certificate(yu, result.certificate));

  const AlphaResult screened = alpha(yu, SolveMode::screen);
  CHECK(screened.alpha == frac(7, 8));
  CHECK(verify_certificate(yu, screened.certificate));
}

TEST_CASE("distinguishable examples give alpha 1 with a perfect POVM") {
  for (const char* text : {"02", "13", "00,01,02"}) {
    const StateSet set = parse_set(text);
    const AlphaResult result = alpha(set, SolveMode::exact);
    CHECK(result.alpha == 1);
    CHECK(result.distinguishable);
    CHECK(result.certificate.type == Certificate::Type::povm);
    CHECK(verify_certificate(set, result.certificate));
  }
}

TEST_CASE("beta_prime: closed form, LP cross-check, named values") {
  const StateSet yu = parse_set("00,11,21,31");
  CHECK(beta_prime(yu) == frac(7, 8));
  CHECK(beta_prime_lp(yu) == frac(7, 8));

  std::vector<std::uint32_t> all;
  for (std::uint32_t v = 0; v < 16; ++v) all.push_back(v);
  CHECK(beta_prime(make_state_set(2, all)) == frac(1, 4));

  CHECK(beta_prime(parse_set("23")) == 1);
  CHECK(beta_prime(parse_set("0123")) == 1);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const StateSet set = random_set(rng, 2, 1 + static_cast<std::uint32_t>(uniform_below(rng, 6)));
    CHECK(beta_prime(set) == beta_prime_lp(set));
  }
}

TEST_CASE("trivial dual point is feasible with objective one") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int t = 1 + static_cast<int>(uniform_below(rng, 2));
    const StateSet set = random_set(rng, t, 2 + static_cast<std::uint32_t>(uniform_below(rng, 4)));
    CHECK(verify_trivial_dual_point(set));
  }
}

TEST_CASE("certificate verification rejects the documented fakes") {
  const StateSet yu = parse_set("00,11,21,31");

  // Uniform POVM: PPT-valid but not perfect discrimination.
  Certificate uniform;
  uniform.type = Certificate::Type::povm;
  uniform.t = 2;
  uniform.set = yu;
  uniform.value = 1;
  uniform.vectors.assign(4, std::vector<Fraction>(16, frac(1, 4)));
  CHECK(!verify_certificate(yu, uniform));

  const AlphaResult result = alpha(yu, SolveMode::exact);
  Certificate dual = result.certificate;
  REQUIRE(verify_certificate(yu, dual));

  Certificate negated = dual;
  bool flipped = false;
  for (std::size_t l = 0; l < 16 && !flipped; ++l)
    if (!is_zero(negated.vectors[1][l])) {
      negated.vectors[1][l] = -negated.vectors[1][l];
      flipped = true;
    }
  REQUIRE(flipped);
  CHECK(!verify_certificate(yu, negated));

  Certificate wrong_value = dual;
  wrong_value.value += frac(1, 1000000000);
  CHECK(!verify_certificate(yu, wrong_value));

  Certificate wrong_set = dual;
  wrong_set.set = parse_set("00,11,21,32");
  CHECK(!verify_certificate(parse_set("00,11,21,32"), wrong_set));
}

TEST_CASE("certificate JSON round trip") {
  const StateSet yu = parse_set("00,11,21,31");
  const AlphaResult result = alpha(yu, SolveMode::exact);
  const std::string text = certificate_to_json(result.certificate);
  const Certificate back = certificate_from_json(text);
  CHECK(back.type == result.certificate.type);
  CHECK(back.t == result.certificate.t);
  CHECK(back.value == result.certificate.value);
  CHECK(back.vectors == result.certificate.vectors);
  CHECK(verify_certificate(yu, back));

  const AlphaResult povm = alpha(parse_set("00,01"), SolveMode::exact);
  const Certificate back2 = certificate_from_json(certificate_to_json(povm.certificate));
  CHECK(verify_certificate(parse_set("00,01"), back2));

  CHECK_THROWS(certificate_from_json("{\"type\":\"nope\"}"));
}

TEST_CASE("tableau invariants for random sets") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    const StateSet set = random_set(rng, 2, 3 + static_cast<std::uint32_t>(uniform_below(rng, 3)));
    const StandardFormTableau tab = build_tableau(set);
    CHECK(tab.z0 == 1);
    CHECK(tab.verify_m_inverse());
    CHECK(tab.verify_b_prime());
    CHECK(tab.basis_cols.size() == set.k * 16);
    CHECK(tab.nonbasis_cols.size() == tab.problem.n - tab.basis_cols.size());
  }
}

TEST_CASE("reduced-cost blocks match the expected patterns") {
  const ReducedCostReport yu_report = reduced_costs(parse_set("00,11,21,31"));
  CHECK(yu_report.all_pass());
  CHECK(yu_report.z0 == 1);

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 4; ++trial) {
    const StateSet set = random_set(rng, 2, 4);
    const ReducedCostReport report = reduced_costs(set);
    INFO(format_set(set));
    CHECK(report.all_pass());
  }
}

TEST_CASE("tableau row patterns on the rows outside the member set") {
  std::mt19937_64 rng(41);
  const StateSet set = random_set(rng, 2, 4);
  const StandardFormTableau tab = build_tableau(set);
  const SignOracle oracle(2);

  std::vector<std::uint32_t> members;
  for (const auto& m : set.members) members.push_back(m.linear);
  auto in_set = [&](std::uint32_t u) {
    return std::find(members.begin(), members.end(), u) != members.end();
  };

  // Basis positions k.. hold r^{(j)}_u for u != v(j); restrict to u outside
  // the member set, where the expected row pattern is [I | 0 | 0,-I | q rows].
  std::size_t pos = set.k;
  for (std::size_t j = 0; j < set.k; ++j)
    for (std::uint32_t u = 0; u < 16; ++u) {
      if (u == members[j]) continue;
      const std::size_t row = pos++;
      if (in_set(u)) continue;
      for (std::size_t nc = 0; nc < tab.nonbasis_cols.size(); ++nc) {
        const Fraction& value = tab.n_prime[row][nc];
        if (nc < tab.alpha_rest_end) {
          const std::uint32_t m = tab.nonbasis_cols[nc];
          CHECK(value == (m == u ? 1 : 0));
        } else if (nc < tab.r_diag_end) {
          CHECK(is_zero(value));
        } else if (nc < tab.beta_end) {
          const std::uint32_t m = tab.nonbasis_cols[nc] - 16;
          CHECK(value == (m == u && !in_set(m) ? -1 : 0));
        } else {
          const std::size_t qpos = nc - tab.q_begin;
          const std::size_t qj = qpos / 16;
          const auto l = static_cast<std::uint32_t>(qpos % 16);
          CHECK(value == (qj == j ? -oracle.entry(u, l) : 0));
        }
      }
    }
}

TEST_CASE("alpha is invariant under translation and factor permutation") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const StateSet set = random_set(rng, 2, 4);
    const Fraction a = alpha(set, SolveMode::screen).alpha;
    const auto z = static_cast<std::uint32_t>(uniform_below(rng, 16));
    CHECK(alpha(xor_translate(set, z), SolveMode::screen).alpha == a);
    CHECK(alpha(permute_factors(set, {1, 0}), SolveMode::screen).alpha == a);
  }
}

TEST_CASE("screen mode agrees with exact mode") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 12; ++trial) {
    const StateSet set = random_set(rng, 2, 2 + static_cast<std::uint32_t>(uniform_below(rng, 4)));
    const AlphaResult ex = alpha(set, SolveMode::exact);
    const AlphaResult sc = alpha(set, SolveMode::screen);
    INFO(format_set(set));
    CHECK(ex.alpha == sc.alpha);
    CHECK(ex.distinguishable == sc.distinguishable);
    CHECK(verify_certificate(set, sc.certificate));
    const Fraction bp = beta_prime(set);
    CHECK(ex.alpha <= bp);
    CHECK(ex.alpha <= 1);
    CHECK(ex.alpha >= frac(1, static_cast<long>(set.k)));
  }
}

TEST_CASE("downward closure on nested sets") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 6; ++trial) {
    const StateSet big = random_set(rng, 2, 5);
    const AlphaResult outer = alpha(big, SolveMode::screen);
    if (!outer.distinguishable) continue;
    std::vector<std::uint32_t> inner(4);
    for (int i = 0; i < 4; ++i) inner[static_cast<std::size_t>(i)] = big.members[static_cast<std::size_t>(i)].linear;
    const AlphaResult sub = alpha(make_state_set(2, inner), SolveMode::screen);
    CHECK(sub.distinguishable);
  }
}
