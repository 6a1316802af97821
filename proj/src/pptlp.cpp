#include "lppt/pptlp.hpp"

#include <json.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace lppt {

namespace {

struct Layout {
  int t;
  std::size_t k;
  std::size_t dim;  // 4^t
  std::vector<std::uint32_t> v;

  explicit Layout(const StateSet& set)
      : t(set.t), k(set.k), dim(1ull << (2 * set.t)) {
    if (set.t > 4)
      throw std::invalid_argument("discrimination programs support t <= 4");
    v.reserve(k);
    for (const auto& m : set.members) v.push_back(m.linear);
  }

  // primal columns
  std::size_t p(std::size_t j, std::size_t l) const { return j * dim + l; }
  std::size_t s(std::size_t j, std::size_t u) const { return k * dim + j * dim + u; }
  // eq-9 columns
  std::size_t col_alpha(std::size_t u) const { return u; }
  std::size_t col_beta(std::size_t u) const { return dim + u; }
  std::size_t col_r(std::size_t j, std::size_t u) const {
    return 2 * dim + j * dim + u;
  }
  std::size_t col_q(std::size_t j, std::size_t l) const {
    return 2 * dim + k * dim + j * dim + l;
  }

  bool in_set(std::size_t u) const {
    for (const auto m : v)
      if (m == u) return true;
    return false;
  }
};

Fraction one_over_k(std::size_t k) { return frac(1, static_cast<long>(k)); }

Certificate extract_povm(const StateSet& set, const std::vector<Fraction>& x) {
  const Layout lay(set);
  Certificate cert;
  cert.type = Certificate::Type::povm;
  cert.t = set.t;
  cert.set = set;
  cert.vectors.assign(lay.k, std::vector<Fraction>(lay.dim, Fraction(0)));
  Fraction hits(0);
  for (std::size_t j = 0; j < lay.k; ++j) {
    for (std::size_t l = 0; l < lay.dim; ++l) cert.vectors[j][l] = x[lay.p(j, l)];
    hits += cert.vectors[j][lay.v[j]];
  }
  cert.value = hits * one_over_k(lay.k);
  return cert;
}

Certificate extract_dual(const StateSet& set, const std::vector<Fraction>& x) {
  const Layout lay(set);
  Certificate cert;
  cert.type = Certificate::Type::dual;
  cert.t = set.t;
  cert.set = set;
  cert.vectors.assign(lay.k + 1, std::vector<Fraction>(lay.dim, Fraction(0)));
  Fraction total(0);
  for (std::size_t u = 0; u < lay.dim; ++u) {
    cert.vectors[0][u] = x[lay.col_alpha(u)] - x[lay.col_beta(u)];
    total += cert.vectors[0][u];
  }
  for (std::size_t j = 0; j < lay.k; ++j)
    for (std::size_t l = 0; l < lay.dim; ++l)
      cert.vectors[j + 1][l] = x[lay.col_q(j, l)];
  cert.value = total * one_over_k(lay.k);
  return cert;
}

// Maps a perfect POVM onto a feasible point of the dual of the standard form
// (y_j = p_j / k) and checks feasibility and objective 1 against the eq-9
// matrix itself. Together with the trivial dual point this pins the dual
// optimum at exactly 1 without a second simplex run.
bool povm_matches_dual_optimum(const StateSet& set, const Certificate& povm) {
  if (!verify_trivial_dual_point(set)) return false;
  const Layout lay(set);
  const LpProblem eq9 = build_eq9(set);
  std::vector<Fraction> y(eq9.m, Fraction(0));
  const Fraction inv_k = one_over_k(lay.k);
  for (std::size_t j = 0; j < lay.k; ++j)
    for (std::size_t u = 0; u < lay.dim; ++u)
      y[j * lay.dim + u] = povm.vectors[j][u] * inv_k;
  std::vector<Fraction> ya(eq9.n, Fraction(0));
  Fraction by(0);
  for (std::size_t r = 0; r < eq9.m; ++r) {
    if (!is_zero(y[r]))
      for (const auto& [col, value] : eq9.rows[r]) ya[col] += y[r] * value;
    if (!is_zero(eq9.b[r]) && !is_zero(y[r])) by += eq9.b[r] * y[r];
  }
  for (std::size_t jcol = 0; jcol < eq9.n; ++jcol)
    if (ya[jcol] > eq9.c[jcol]) return false;
  return by == 1;
}

}  // namespace

LpProblem build_primal(const StateSet& set) {
  const Layout lay(set);
  const SignOracle oracle(set.t);
  LpProblem p;
  p.m = lay.dim + lay.k * lay.dim;
  p.n = 2 * lay.k * lay.dim;
  p.rows.resize(p.m);
  p.b.assign(p.m, Fraction(0));
  p.c.assign(p.n, Fraction(0));

  for (std::size_t u = 0; u < lay.dim; ++u) {
    for (std::size_t j = 0; j < lay.k; ++j) p.add_entry(u, lay.p(j, u), 1);
    p.b[u] = 1;
  }
  for (std::size_t j = 0; j < lay.k; ++j)
    for (std::size_t u = 0; u < lay.dim; ++u) {
      const std::size_t row = lay.dim + j * lay.dim + u;
      for (std::size_t l = 0; l < lay.dim; ++l)
        p.add_entry(row, lay.p(j, l), oracle.entry(u, l));
      p.add_entry(row, lay.s(j, u), -1);
    }
  const Fraction neg_inv_k = -one_over_k(lay.k);
  for (std::size_t j = 0; j < lay.k; ++j) p.c[lay.p(j, lay.v[j])] = neg_inv_k;
  return p;
}

LpProblem build_eq9(const StateSet& set) {
  const Layout lay(set);
  const SignOracle oracle(set.t);
  LpProblem p;
  p.m = lay.k * lay.dim;
  p.n = 2 * lay.dim + 2 * lay.k * lay.dim;
  p.rows.resize(p.m);
  p.b.assign(p.m, Fraction(0));
  p.c.assign(p.n, Fraction(0));

  for (std::size_t j = 0; j < lay.k; ++j)
    for (std::size_t u = 0; u < lay.dim; ++u) {
      const std::size_t row = j * lay.dim + u;
      p.add_entry(row, lay.col_alpha(u), 1);
      p.add_entry(row, lay.col_beta(u), -1);
      p.add_entry(row, lay.col_r(j, u), -1);
      for (std::size_t l = 0; l < lay.dim; ++l)
        p.add_entry(row, lay.col_q(j, l), -oracle.entry(u, l));
      if (u == lay.v[j]) p.b[row] = 1;
    }
  const Fraction inv_k = one_over_k(lay.k);
  for (std::size_t u = 0; u < lay.dim; ++u) {
    p.c[lay.col_alpha(u)] = inv_k;
    p.c[lay.col_beta(u)] = -inv_k;
  }
  return p;
}

std::vector<Fraction> trivial_dual_point(const StateSet& set) {
  const Layout lay(set);
  std::vector<Fraction> x(2 * lay.dim + 2 * lay.k * lay.dim, Fraction(0));
  for (const auto u : lay.v) x[lay.col_alpha(u)] = 1;
  for (std::size_t j = 0; j < lay.k; ++j)
    for (const auto u : lay.v)
      if (u != lay.v[j]) x[lay.col_r(j, u)] = 1;
  return x;
}

bool verify_trivial_dual_point(const StateSet& set) {
  const LpProblem eq9 = build_eq9(set);
  const auto x = trivial_dual_point(set);
  for (const auto& e : x)
    if (sign_of(e) < 0) return false;
  for (std::size_t r = 0; r < eq9.m; ++r) {
    Fraction acc(0);
    for (const auto& [col, value] : eq9.rows[r])
      if (!is_zero(x[col])) acc += value * x[col];
    if (acc != eq9.b[r]) return false;
  }
  Fraction obj(0);
  for (std::size_t j = 0; j < eq9.n; ++j)
    if (!is_zero(x[j])) obj += eq9.c[j] * x[j];
  return obj == 1;
}

bool verify_certificate(const StateSet& set, const Certificate& cert) {
  if (cert.t != set.t || cert.set.members != set.members) return false;
  const Layout lay(set);
  const SignOracle oracle(set.t);

  auto ppt_ok = [&](const std::vector<Fraction>& vec) {
    // (P vec)[u] >= 0 for every u; the 2^-t magnitude cannot change the sign.
    for (std::size_t u = 0; u < lay.dim; ++u) {
      Fraction acc(0);
      for (std::size_t l = 0; l < lay.dim; ++l)
        if (!is_zero(vec[l])) {
          if (oracle.sign(u, l) > 0)
            acc += vec[l];
          else
            acc -= vec[l];
        }
      if (sign_of(acc) < 0) return false;
    }
    return true;
  };

  if (cert.type == Certificate::Type::povm) {
    if (cert.vectors.size() != lay.k) return false;
    for (const auto& vec : cert.vectors) {
      if (vec.size() != lay.dim) return false;
      for (const auto& e : vec)
        if (sign_of(e) < 0) return false;
    }
    for (std::size_t u = 0; u < lay.dim; ++u) {
      Fraction sum(0);
      for (std::size_t j = 0; j < lay.k; ++j) sum += cert.vectors[j][u];
      if (sum != 1) return false;
    }
    for (std::size_t j = 0; j < lay.k; ++j) {
      if (cert.vectors[j][lay.v[j]] != 1) return false;
      if (!ppt_ok(cert.vectors[j])) return false;
    }
    return cert.value == 1;
  }

  // dual
  if (cert.vectors.size() != lay.k + 1) return false;
  for (const auto& vec : cert.vectors)
    if (vec.size() != lay.dim) return false;
  const auto& y = cert.vectors[0];
  for (std::size_t j = 0; j < lay.k; ++j) {
    const auto& q = cert.vectors[j + 1];
    for (const auto& e : q)
      if (sign_of(e) < 0) return false;
    for (std::size_t u = 0; u < lay.dim; ++u) {
      Fraction pq(0);
      for (std::size_t l = 0; l < lay.dim; ++l)
        if (!is_zero(q[l])) pq += oracle.entry(u, l) * q[l];
      Fraction lhs = y[u] - pq;
      if (u == lay.v[j]) lhs -= 1;
      if (sign_of(lhs) < 0) return false;
    }
  }
  Fraction total(0);
  for (const auto& e : y) total += e;
  if (cert.value != total * one_over_k(lay.k)) return false;
  return cert.value < 1;
}

std::string certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["type"] = cert.type == Certificate::Type::povm ? "povm" : "dual";
  j["t"] = cert.t;
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : cert.set.members) members.push_back(m.to_string());
  j["set"] = std::move(members);
  j["value"] = to_string(cert.value);
  nlohmann::json vectors = nlohmann::json::array();
  for (const auto& vec : cert.vectors) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& e : vec) row.push_back(to_string(e));
    vectors.push_back(std::move(row));
  }
  j["vectors"] = std::move(vectors);
  return j.dump();
}

Certificate certificate_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Certificate cert;
  const std::string type = j.at("type").get<std::string>();
  if (type == "povm")
    cert.type = Certificate::Type::povm;
  else if (type == "dual")
    cert.type = Certificate::Type::dual;
  else
    throw std::invalid_argument("certificate: unknown type '" + type + "'");
  cert.t = j.at("t").get<int>();
  std::string joined;
  for (const auto& m : j.at("set")) {
    if (!joined.empty()) joined.push_back(',');
    joined += m.get<std::string>();
  }
  cert.set = parse_set(joined);
  if (cert.set.t != cert.t)
    throw std::invalid_argument("certificate: t does not match the set");
  cert.value = parse_fraction(j.at("value").get<std::string>());
  for (const auto& row : j.at("vectors")) {
    std::vector<Fraction> vec;
    vec.reserve(row.size());
    for (const auto& e : row) vec.push_back(parse_fraction(e.get<std::string>()));
    cert.vectors.push_back(std::move(vec));
  }
  return cert;
}

namespace {

AlphaResult finish_distinguishable(const StateSet& set, Certificate povm) {
  if (!verify_certificate(set, povm))
    throw std::logic_error("alpha: perfect POVM failed verification");
  if (!povm_matches_dual_optimum(set, povm))
    throw std::logic_error("alpha: dual-side witness failed at value 1");
  AlphaResult result;
  result.alpha = 1;
  result.distinguishable = true;
  result.certificate = std::move(povm);
  result.method = "exact-lp";
  return result;
}

AlphaResult finish_indistinguishable(const StateSet& set, const Fraction& a,
                                     Certificate dual) {
  if (dual.value != a)
    throw std::logic_error("alpha: dual certificate value mismatch");
  if (!verify_certificate(set, dual))
    throw std::logic_error("alpha: dual certificate failed verification");
  AlphaResult result;
  result.alpha = a;
  result.distinguishable = false;
  result.certificate = std::move(dual);
  result.method = "exact-lp";
  return result;
}

void check_alpha_range(const StateSet& set, const Fraction& a) {
  if (a < frac(1, static_cast<long>(set.k)) || a > 1)
    throw std::logic_error("alpha: optimum outside [1/k, 1]");
}

AlphaResult alpha_via_exact_solvers(
    const StateSet& set, const LpProblem& primal,
    const std::function<LpSolution(const LpProblem&)>& solver) {
  LpSolution sp = solver(primal);
  if (sp.status != LpStatus::optimal)
    throw std::logic_error("alpha: primal program did not solve to optimality");
  if (!verify_solution(primal, sp))
    throw std::logic_error("alpha: primal solution failed exact verification");
  const Fraction a = -sp.objective;
  check_alpha_range(set, a);
  if (a == 1) return finish_distinguishable(set, extract_povm(set, sp.x));

  const LpProblem eq9 = build_eq9(set);
  LpSolution sd = solver(eq9);
  if (sd.status != LpStatus::optimal)
    throw std::logic_error("alpha: dual program did not solve to optimality");
  if (!verify_solution(eq9, sd))
    throw std::logic_error("alpha: dual solution failed exact verification");
  if (sd.objective != a)
    throw std::logic_error("alpha: primal and dual optima disagree");
  return finish_indistinguishable(set, a, extract_dual(set, sd.x));
}

}  // namespace

AlphaResult alpha(const StateSet& set, SolveMode mode) {
  const LpProblem primal = build_primal(set);

  if (mode == SolveMode::exact)
    return alpha_via_exact_solvers(
        set, primal, [](const LpProblem& p) { return solve(p); });

  // Screen: a cheap certified route to alpha = 1 first.
  FloatSolution fs;
  bool have_float = false;
  try {
    fs = solve_float(primal);
    have_float = true;
  } catch (const std::length_error&) {
  }
  if (have_float && fs.status == LpStatus::optimal &&
      -fs.objective > 1.0 - 1e-4) {
    if (fs.basis.size() == primal.m) {
      auto ev = evaluate_basis(primal, fs.basis, false);
      if (ev.factorizable && ev.feasible && ev.objective == Fraction(-1)) {
        Certificate povm = extract_povm(set, ev.x);
        if (verify_certificate(set, povm))
          return finish_distinguishable(set, std::move(povm));
      }
    }
    // Rational rounding of the float vertex, re-verified exactly.
    std::vector<Fraction> lifted(primal.n, Fraction(0));
    for (std::size_t j = 0; j < primal.n; ++j)
      if (std::abs(fs.x[j]) > 1e-9) lifted[j] = rationalize(fs.x[j], 1u << 20);
    Certificate povm = extract_povm(set, lifted);
    if (povm.value == 1 && verify_certificate(set, povm))
      return finish_distinguishable(set, std::move(povm));
  }

  try {
    return alpha_via_exact_solvers(
        set, primal, [](const LpProblem& p) { return solve_certified(p); });
  } catch (const std::length_error&) {
    throw std::runtime_error(
        "alpha: instance too large for the exact tableau and the float screen "
        "could not be certified; rerun with a different seed");
  }
}

Fraction beta_prime(const StateSet& set) {
  const Layout lay(set);
  RowMask common = family(set.members[0]).rows;
  for (std::size_t j = 1; j < lay.k; ++j) common &= family(set.members[j]).rows;
  const long negatives = static_cast<long>(common.count());
  return frac(static_cast<long>(lay.dim) - 2 * negatives,
              static_cast<long>(lay.k) * (1l << lay.t));
}

Fraction beta_prime_lp(const StateSet& set) {
  const Layout lay(set);
  const SignOracle oracle(set.t);
  LpProblem p;
  p.m = lay.k * lay.dim;
  p.n = 2 * lay.dim + lay.k * lay.dim;
  p.rows.resize(p.m);
  p.b.assign(p.m, Fraction(0));
  p.c.assign(p.n, Fraction(0));
  // y = yplus - yminus; one surplus per row: y_u - s_ju = P[u, v_j].
  for (std::size_t j = 0; j < lay.k; ++j)
    for (std::size_t u = 0; u < lay.dim; ++u) {
      const std::size_t row = j * lay.dim + u;
      p.add_entry(row, u, 1);
      p.add_entry(row, lay.dim + u, -1);
      p.add_entry(row, 2 * lay.dim + row, -1);
      p.b[row] = oracle.entry(u, lay.v[j]);
    }
  const Fraction inv_k = one_over_k(lay.k);
  for (std::size_t u = 0; u < lay.dim; ++u) {
    p.c[u] = inv_k;
    p.c[lay.dim + u] = -inv_k;
  }
  LpSolution s = solve(p);
  if (s.status != LpStatus::optimal)
    throw std::logic_error("beta_prime_lp: program did not solve");
  if (!verify_solution(p, s))
    throw std::logic_error("beta_prime_lp: solution failed verification");
  return s.objective;
}

bool StandardFormTableau::verify_m_inverse() const {
  const std::size_t md = basis_cols.size();
  std::unordered_map<std::size_t, std::size_t> pos_of;
  pos_of.reserve(md);
  for (std::size_t i = 0; i < md; ++i) pos_of.emplace(basis_cols[i], i);
  std::vector<std::vector<Fraction>> product(md,
                                             std::vector<Fraction>(md, Fraction(0)));
  for (std::size_t r = 0; r < problem.m; ++r)
    for (const auto& [col, value] : problem.rows[r]) {
      const auto it = pos_of.find(col);
      if (it == pos_of.end()) continue;
      const auto& inv_row = m_inverse[it->second];
      for (std::size_t rp = 0; rp < md; ++rp)
        if (!is_zero(inv_row[rp])) product[r][rp] += value * inv_row[rp];
    }
  for (std::size_t i = 0; i < md; ++i)
    for (std::size_t jj = 0; jj < md; ++jj)
      if (product[i][jj] != ((i == jj) ? Fraction(1) : Fraction(0))) return false;
  return true;
}

bool StandardFormTableau::verify_b_prime() const {
  const Layout lay(set);
  for (std::size_t j = 0; j < lay.k; ++j)
    if (b_prime[j] != 1) return false;
  std::size_t pos = lay.k;
  for (std::size_t j = 0; j < lay.k; ++j)
    for (std::size_t u = 0; u < lay.dim; ++u) {
      if (u == lay.v[j]) continue;
      const Fraction expected = lay.in_set(u) ? 1 : 0;
      if (b_prime[pos] != expected) return false;
      ++pos;
    }
  return pos == b_prime.size();
}

StandardFormTableau build_tableau(const StateSet& set) {
  const Layout lay(set);
  StandardFormTableau tab;
  tab.set = set;
  tab.problem = build_eq9(set);
  if (tab.problem.n > 4096)
    throw std::invalid_argument("build_tableau: beyond the dense column cap");
  const std::size_t md = lay.k * lay.dim;

  tab.basis_cols.reserve(md);
  for (std::size_t j = 0; j < lay.k; ++j)
    tab.basis_cols.push_back(lay.col_alpha(lay.v[j]));
  for (std::size_t j = 0; j < lay.k; ++j)
    for (std::size_t u = 0; u < lay.dim; ++u)
      if (u != lay.v[j]) tab.basis_cols.push_back(lay.col_r(j, u));

  tab.alpha_rest_begin = 0;
  for (std::size_t u = 0; u < lay.dim; ++u)
    if (!lay.in_set(u)) tab.nonbasis_cols.push_back(lay.col_alpha(u));
  tab.alpha_rest_end = tab.r_diag_begin = tab.nonbasis_cols.size();
  for (std::size_t j = 0; j < lay.k; ++j)
    tab.nonbasis_cols.push_back(lay.col_r(j, lay.v[j]));
  tab.r_diag_end = tab.beta_begin = tab.nonbasis_cols.size();
  for (std::size_t u = 0; u < lay.dim; ++u)
    tab.nonbasis_cols.push_back(lay.col_beta(u));
  tab.beta_end = tab.q_begin = tab.nonbasis_cols.size();
  for (std::size_t j = 0; j < lay.k; ++j)
    for (std::size_t l = 0; l < lay.dim; ++l)
      tab.nonbasis_cols.push_back(lay.col_q(j, l));
  tab.q_end = tab.nonbasis_cols.size();

  // Closed-form inverse of the basis matrix.
  tab.m_inverse.assign(md, std::vector<Fraction>(md, Fraction(0)));
  std::vector<std::size_t> member_pos(lay.dim, static_cast<std::size_t>(-1));
  for (std::size_t j = 0; j < lay.k; ++j) member_pos[lay.v[j]] = j;
  for (std::size_t j = 0; j < lay.k; ++j)
    tab.m_inverse[j][j * lay.dim + lay.v[j]] = 1;
  {
    std::size_t pos = lay.k;
    for (std::size_t j = 0; j < lay.k; ++j)
      for (std::size_t u = 0; u < lay.dim; ++u) {
        if (u == lay.v[j]) continue;
        tab.m_inverse[pos][j * lay.dim + u] = -1;
        if (member_pos[u] != static_cast<std::size_t>(-1)) {
          const std::size_t l = member_pos[u];
          tab.m_inverse[pos][l * lay.dim + lay.v[l]] += 1;
        }
        ++pos;
      }
  }

  // b' = M^{-1} b by direct multiplication.
  tab.b_prime.assign(md, Fraction(0));
  for (std::size_t pos = 0; pos < md; ++pos)
    for (std::size_t r = 0; r < md; ++r)
      if (!is_zero(tab.m_inverse[pos][r]) && !is_zero(tab.problem.b[r]))
        tab.b_prime[pos] += tab.m_inverse[pos][r] * tab.problem.b[r];

  // Column adjacency of M^{-1} for the sparse product N' = -M^{-1} N.
  std::vector<std::vector<std::pair<std::size_t, const Fraction*>>> by_row(md);
  for (std::size_t pos = 0; pos < md; ++pos)
    for (std::size_t r = 0; r < md; ++r)
      if (!is_zero(tab.m_inverse[pos][r]))
        by_row[r].emplace_back(pos, &tab.m_inverse[pos][r]);

  std::vector<std::vector<std::pair<std::size_t, Fraction>>> a_cols(
      tab.problem.n);
  for (std::size_t r = 0; r < tab.problem.m; ++r)
    for (const auto& [col, value] : tab.problem.rows[r])
      a_cols[col].emplace_back(r, value);

  const std::size_t nn = tab.nonbasis_cols.size();
  tab.n_prime.assign(md, std::vector<Fraction>(nn, Fraction(0)));
  for (std::size_t ncol = 0; ncol < nn; ++ncol)
    for (const auto& [r, value] : a_cols[tab.nonbasis_cols[ncol]])
      for (const auto& [pos, mval] : by_row[r])
        tab.n_prime[pos][ncol] -= *mval * value;

  tab.sigma.assign(nn, Fraction(0));
  const Fraction inv_k = one_over_k(lay.k);
  for (std::size_t ncol = 0; ncol < nn; ++ncol) {
    Fraction s = tab.problem.c[tab.nonbasis_cols[ncol]];
    for (std::size_t j = 0; j < lay.k; ++j)
      if (!is_zero(tab.n_prime[j][ncol])) s += inv_k * tab.n_prime[j][ncol];
    tab.sigma[ncol] = std::move(s);
  }

  tab.z0 = 0;
  for (std::size_t pos = 0; pos < md; ++pos) {
    const Fraction& cm = tab.problem.c[tab.basis_cols[pos]];
    if (!is_zero(cm) && !is_zero(tab.b_prime[pos])) tab.z0 += cm * tab.b_prime[pos];
  }
  return tab;
}

bool ReducedCostReport::all_pass() const {
  if (!m_inverse_ok || !b_prime_ok || z0 != 1) return false;
  for (const auto& b : blocks)
    if (!b.pass) return false;
  return true;
}

ReducedCostReport reduced_costs(const StateSet& set) {
  const Layout lay(set);
  const SignOracle oracle(set.t);
  StandardFormTableau tab = build_tableau(set);

  ReducedCostReport report;
  report.set = set;
  report.z0 = tab.z0;
  report.m_inverse_ok = tab.verify_m_inverse();
  report.b_prime_ok = tab.verify_b_prime();

  const Fraction k_frac(static_cast<long>(lay.k));
  auto scaled = [&](std::size_t ncol) { return k_frac * tab.sigma[ncol]; };

  {
    BlockCheck check{"alpha_rest", "+1", true};
    for (std::size_t i = tab.alpha_rest_begin; i < tab.alpha_rest_end; ++i)
      if (scaled(i) != 1) check.pass = false;
    report.blocks.push_back(check);
  }
  {
    BlockCheck check{"r_diag", "+1", true};
    for (std::size_t i = tab.r_diag_begin; i < tab.r_diag_end; ++i)
      if (scaled(i) != 1) check.pass = false;
    report.blocks.push_back(check);
  }
  {
    BlockCheck in{"beta_in_set", "0", true};
    BlockCheck off{"beta_off_set", "-1", true};
    for (std::size_t i = tab.beta_begin; i < tab.beta_end; ++i) {
      const std::size_t u = tab.nonbasis_cols[i] - lay.dim;
      if (lay.in_set(u)) {
        if (!is_zero(scaled(i))) in.pass = false;
      } else {
        if (scaled(i) != -1) off.pass = false;
      }
    }
    report.blocks.push_back(in);
    report.blocks.push_back(off);
  }
  {
    BlockCheck check{"q_blocks", "transition-matrix row of each member", true};
    for (std::size_t j = 0; j < lay.k; ++j)
      for (std::size_t l = 0; l < lay.dim; ++l) {
        const std::size_t i = tab.q_begin + j * lay.dim + l;
        if (scaled(i) != oracle.entry(lay.v[j], static_cast<std::uint32_t>(l)))
          check.pass = false;
      }
    report.blocks.push_back(check);
  }
  return report;
}

}  // namespace lppt
