#include "lppt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace lppt {

void LpProblem::add_entry(std::size_t row, std::size_t col, Fraction value) {
  if (row >= m || col >= n) throw std::out_of_range("LpProblem::add_entry");
  if (is_zero(value)) return;
  rows[row].emplace_back(static_cast<std::uint32_t>(col), std::move(value));
}

void LpProblem::validate() const {
  if (m == 0 || n == 0) throw std::invalid_argument("LpProblem: empty problem");
  if (rows.size() != m || b.size() != m || c.size() != n)
    throw std::invalid_argument("LpProblem: inconsistent dimensions");
  for (const auto& row : rows)
    for (const auto& [col, value] : row) {
      if (col >= n) throw std::invalid_argument("LpProblem: column out of range");
      (void)value;
    }
}

namespace {

// ---------------------------------------------------------------------------
// Exact dense-tableau simplex.

class ExactSimplex {
 public:
  explicit ExactSimplex(const LpProblem& p) : p_(p), m_(p.m), n_(p.n) {
    p_.validate();
    width_ = n_ + m_;
    if (m_ * (width_ + 1) > kExactTableauCap)
      throw std::length_error("exact simplex: dense tableau cap exceeded");
  }

  LpSolution run(const std::vector<std::size_t>* warm) {
    if (warm == nullptr || !try_warm(*warm)) {
      reset();
      crash_slacks();
    }
    bool any_artificial = false;
    bool any_positive = false;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      any_artificial = true;
      if (sign_of(rhs_[r]) > 0) any_positive = true;
    }
    if (any_positive && !phase1()) return make_infeasible();
    if (any_artificial) cleanup_artificials();
    return phase2();
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void reset() {
    tab_.assign(m_, std::vector<Fraction>(width_, Fraction(0)));
    rhs_.assign(m_, Fraction(0));
    cost_.assign(width_, Fraction(0));
    basis_.assign(m_, kNone);
    row_scale_.assign(m_, Fraction(1));
    for (std::size_t r = 0; r < m_; ++r) {
      for (const auto& [col, value] : p_.rows[r]) tab_[r][col] = value;
      rhs_[r] = p_.b[r];
      if (sign_of(rhs_[r]) < 0) {
        for (std::size_t c = 0; c < n_; ++c)
          if (!is_zero(tab_[r][c])) tab_[r][c] = -tab_[r][c];
        rhs_[r] = -rhs_[r];
        row_scale_[r] = -1;
      }
    }
  }

  // Rows without a claimed structural column get an artificial basic column;
  // the artificial block doubles as a running copy of B^{-1}.
  void install_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      tab_[r][n_ + r] = 1;
      if (basis_[r] == kNone) basis_[r] = n_ + r;
    }
  }

  // Claims singleton structural columns (slack pattern) as the initial basis.
  void crash_slacks() {
    std::vector<std::size_t> col_count(n_, 0);
    std::vector<std::size_t> col_row(n_, 0);
    for (std::size_t r = 0; r < m_; ++r)
      for (const auto& [col, value] : p_.rows[r]) {
        (void)value;
        ++col_count[col];
        col_row[col] = r;
      }
    for (std::size_t j = 0; j < n_; ++j) {
      if (col_count[j] != 1) continue;
      const std::size_t r = col_row[j];
      if (basis_[r] != kNone) continue;
      const Fraction& a = tab_[r][j];
      if (is_zero(a)) continue;
      if (sign_of(rhs_[r]) > 0 && sign_of(a) < 0) continue;
      if (a != 1) {
        const Fraction inv = a;
        for (std::size_t c = 0; c < n_; ++c)
          if (!is_zero(tab_[r][c])) tab_[r][c] /= inv;
        rhs_[r] /= inv;
        row_scale_[r] /= inv;
      }
      basis_[r] = j;
    }
    install_artificials();
  }

  // Eliminates a caller-supplied basis into place. Returns false (restoring
  // nothing) when the basis is singular or exactly infeasible, in which case
  // the caller restarts from scratch.
  bool try_warm(const std::vector<std::size_t>& warm) {
    reset();
    install_artificials();
    std::vector<std::size_t> cols(warm);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (cols.size() != m_) return false;
    for (const auto col : cols)
      if (col >= n_) return false;

    std::vector<bool> claimed(m_, false);
    for (const auto col : cols) {
      std::size_t pick = kNone;
      for (std::size_t r = 0; r < m_; ++r) {
        if (claimed[r] || is_zero(tab_[r][col])) continue;
        if (pick == kNone) pick = r;
        const Fraction& a = tab_[r][col];
        if (a == 1 || a == -1) {
          pick = r;
          break;
        }
      }
      if (pick == kNone) return false;
      pivot(pick, col);
      claimed[pick] = true;
      basis_[pick] = col;
    }
    for (std::size_t r = 0; r < m_; ++r)
      if (sign_of(rhs_[r]) < 0) return false;
    return true;
  }

  // Basic artificials at value zero pivot harmlessly onto any structural
  // column; rows where none exists are redundant and stay inert (no entering
  // column ever touches an all-zero structural row).
  void cleanup_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t c = 0; c < n_; ++c) {
        if (is_zero(tab_[r][c])) continue;
        pivot(r, c);
        basis_[r] = c;
        break;
      }
    }
  }

  void pivot(std::size_t prow, std::size_t pcol) {
    auto& row = tab_[prow];
    const Fraction piv = row[pcol];
    scratch_.clear();
    for (std::size_t c = 0; c < width_; ++c) {
      if (is_zero(row[c])) continue;
      if (piv != 1) row[c] /= piv;
      scratch_.push_back(static_cast<std::uint32_t>(c));
    }
    if (piv != 1) rhs_[prow] /= piv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == prow) continue;
      const Fraction f = tab_[r][pcol];
      if (is_zero(f)) continue;
      auto& target = tab_[r];
      for (const auto c : scratch_) target[c] -= f * row[c];
      rhs_[r] -= f * rhs_[prow];
    }
    if (!is_zero(cost_[pcol])) {
      const Fraction f = cost_[pcol];
      for (const auto c : scratch_) cost_[c] -= f * row[c];
    }
  }

  // Returns the entering column under the current rule, or kNone at optimum.
  std::size_t entering(bool bland) const {
    std::size_t best = kNone;
    if (bland) {
      for (std::size_t j = 0; j < n_; ++j)
        if (sign_of(cost_[j]) < 0) return j;
      return kNone;
    }
    for (std::size_t j = 0; j < n_; ++j)
      if (sign_of(cost_[j]) < 0 && (best == kNone || cost_[j] < cost_[best]))
        best = j;
    return best;
  }

  // Min-ratio row; ties broken by the smallest basic column index so the
  // Bland regime is anti-cycling. Returns kNone when unbounded.
  std::size_t leaving(std::size_t pcol) const {
    std::size_t best = kNone;
    Fraction best_ratio;
    for (std::size_t r = 0; r < m_; ++r) {
      if (sign_of(tab_[r][pcol]) <= 0) continue;
      Fraction ratio = rhs_[r] / tab_[r][pcol];
      if (best == kNone || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[best])) {
        best = r;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  // Shared phase loop; returns false on unbounded.
  bool iterate() {
    std::size_t degenerate_streak = 0;
    const std::size_t stall_limit = m_ + n_ + 16;
    bool bland = false;
    for (;;) {
      const std::size_t pcol = entering(bland);
      if (pcol == kNone) return true;
      const std::size_t prow = leaving(pcol);
      if (prow == kNone) return false;
      const bool degenerate = is_zero(rhs_[prow]);
      pivot(prow, pcol);
      basis_[prow] = pcol;
      if (degenerate) {
        if (++degenerate_streak > stall_limit) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
    }
  }

  bool phase1() {
    cost_.assign(width_, Fraction(0));
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (!is_zero(tab_[r][c])) cost_[c] -= tab_[r][c];
    }
    if (!iterate())
      throw std::logic_error("exact simplex: phase 1 unbounded");
    Fraction z1(0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] >= n_) z1 += rhs_[r];
    return is_zero(z1);
  }

  LpSolution phase2() {
    cost_.assign(width_, Fraction(0));
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = p_.c[j];
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= n_) continue;
      const Fraction f = p_.c[basis_[r]];
      if (is_zero(f)) continue;
      for (std::size_t c = 0; c < width_; ++c)
        if (!is_zero(tab_[r][c])) cost_[c] -= f * tab_[r][c];
    }
    if (!iterate()) {
      LpSolution s;
      s.status = LpStatus::unbounded;
      return s;
    }
    LpSolution s;
    s.status = LpStatus::optimal;
    s.x.assign(n_, Fraction(0));
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) s.x[basis_[r]] = rhs_[r];
    s.y.reserve(m_);
    for (std::size_t r = 0; r < m_; ++r)
      s.y.push_back(row_scale_[r] * (-cost_[n_ + r]));
    s.objective = 0;
    for (std::size_t j = 0; j < n_; ++j)
      if (!is_zero(s.x[j])) s.objective += p_.c[j] * s.x[j];
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) s.basis.push_back(basis_[r]);
    std::sort(s.basis.begin(), s.basis.end());
    return s;
  }

  LpSolution make_infeasible() const {
    LpSolution s;
    s.status = LpStatus::infeasible;
    return s;
  }

  const LpProblem& p_;
  std::size_t m_, n_, width_;
  std::vector<std::vector<Fraction>> tab_;
  std::vector<Fraction> rhs_;
  std::vector<Fraction> cost_;
  std::vector<Fraction> row_scale_;
  std::vector<std::size_t> basis_;
};

// ---------------------------------------------------------------------------
// Floating screen over the same algorithm. Only a hint generator.

class FloatSimplex {
 public:
  explicit FloatSimplex(const LpProblem& p) : p_(p), m_(p.m), n_(p.n) {
    width_ = n_ + m_;
    if (m_ * (width_ + 1) > 80'000'000)
      throw std::length_error("float simplex: tableau cap exceeded");
  }

  FloatSolution run() {
    reset();
    crash_slacks();
    FloatSolution out;
    bool any_artificial = false, any_positive = false;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      any_artificial = true;
      if (rhs_[r] > kFeasTol) any_positive = true;
    }
    if (any_positive && !phase1(out)) return out;
    if (any_artificial) cleanup_artificials();
    return phase2(out);
  }

 private:
  static constexpr double kZeroTol = 1e-11;
  static constexpr double kCostTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kFeasTol = 1e-7;
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void reset() {
    tab_.assign(m_, std::vector<double>(width_, 0.0));
    rhs_.assign(m_, 0.0);
    cost_.assign(width_, 0.0);
    basis_.assign(m_, kNone);
    iterations_ = 0;
    reliable_ = true;
    for (std::size_t r = 0; r < m_; ++r) {
      for (const auto& [col, value] : p_.rows[r]) tab_[r][col] = value.get_d();
      rhs_[r] = p_.b[r].get_d();
      if (rhs_[r] < 0) {
        for (std::size_t c = 0; c < n_; ++c) tab_[r][c] = -tab_[r][c];
        rhs_[r] = -rhs_[r];
      }
    }
  }

  void crash_slacks() {
    std::vector<std::size_t> col_count(n_, 0), col_row(n_, 0);
    for (std::size_t r = 0; r < m_; ++r)
      for (const auto& [col, value] : p_.rows[r]) {
        (void)value;
        ++col_count[col];
        col_row[col] = r;
      }
    for (std::size_t j = 0; j < n_; ++j) {
      if (col_count[j] != 1) continue;
      const std::size_t r = col_row[j];
      if (basis_[r] != kNone) continue;
      const double a = tab_[r][j];
      if (std::fabs(a) < kPivotTol) continue;
      if (rhs_[r] > kZeroTol && a < 0) continue;
      if (a != 1.0) {
        for (std::size_t c = 0; c < n_; ++c) tab_[r][c] /= a;
        rhs_[r] /= a;
      }
      basis_[r] = j;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      tab_[r][n_ + r] = 1.0;
      if (basis_[r] == kNone) basis_[r] = n_ + r;
    }
  }

  void pivot(std::size_t prow, std::size_t pcol) {
    auto& row = tab_[prow];
    const double piv = row[pcol];
    // Updates sweep only the pivot row's nonzero columns; the tableau starts
    // a few percent dense and this dominates the per-iteration cost.
    scratch_.clear();
    for (std::size_t c = 0; c < width_; ++c) {
      if (row[c] == 0.0) continue;
      row[c] /= piv;
      scratch_.push_back(static_cast<std::uint32_t>(c));
    }
    row[pcol] = 1.0;
    rhs_[prow] /= piv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == prow) continue;
      const double f = tab_[r][pcol];
      if (std::fabs(f) < kZeroTol) {
        tab_[r][pcol] = 0.0;
        continue;
      }
      auto& target = tab_[r];
      for (const auto c : scratch_) target[c] -= f * row[c];
      target[pcol] = 0.0;
      rhs_[r] -= f * rhs_[prow];
      if (rhs_[r] < 0 && rhs_[r] > -kFeasTol) rhs_[r] = 0.0;
    }
    const double f = cost_[pcol];
    if (std::fabs(f) > kZeroTol)
      for (const auto c : scratch_) cost_[c] -= f * row[c];
    cost_[pcol] = 0.0;
  }

  std::size_t entering(bool bland) const {
    std::size_t best = kNone;
    double best_cost = -kCostTol;
    for (std::size_t j = 0; j < n_; ++j) {
      if (cost_[j] >= -kCostTol) continue;
      if (bland) return j;
      if (cost_[j] < best_cost) {
        best_cost = cost_[j];
        best = j;
      }
    }
    return best;
  }

  std::size_t leaving(std::size_t pcol) const {
    std::size_t best = kNone;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double a = tab_[r][pcol];
      if (a < kPivotTol) continue;
      const double ratio = rhs_[r] / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && a > best_pivot)) {
        best = r;
        best_ratio = std::min(ratio, best_ratio);
        best_pivot = a;
      }
    }
    return best;
  }

  bool iterate() {
    std::size_t degenerate_streak = 0;
    const std::size_t stall_limit = 2 * (m_ + n_) + 64;
    const std::size_t cap = 40 * (m_ + n_) + 20000;
    bool bland = false;
    for (;;) {
      if (++iterations_ > cap) {
        reliable_ = false;
        return true;
      }
      const std::size_t pcol = entering(bland);
      if (pcol == kNone) return true;
      const std::size_t prow = leaving(pcol);
      if (prow == kNone) return false;
      const bool degenerate = rhs_[prow] < kZeroTol;
      pivot(prow, pcol);
      basis_[prow] = pcol;
      if (degenerate) {
        if (++degenerate_streak > stall_limit) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
    }
  }

  bool phase1(FloatSolution& out) {
    cost_.assign(width_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t c = 0; c < n_; ++c) cost_[c] -= tab_[r][c];
    }
    iterate();
    double z1 = 0;
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] >= n_) z1 += rhs_[r];
    if (z1 > kFeasTol) {
      out.status = LpStatus::infeasible;
      out.reliable = reliable_;
      return false;
    }
    return true;
  }

  void cleanup_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (std::fabs(tab_[r][c]) > kFeasTol) {
          pivot(r, c);
          basis_[r] = c;
          break;
        }
    }
  }

  FloatSolution phase2(FloatSolution& out) {
    cost_.assign(width_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = p_.c[j].get_d();
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= n_) continue;
      const double f = p_.c[basis_[r]].get_d();
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) cost_[c] -= f * tab_[r][c];
    }
    if (!iterate()) {
      out.status = LpStatus::unbounded;
      out.reliable = reliable_;
      return out;
    }
    out.status = LpStatus::optimal;
    out.reliable = reliable_;
    out.x.assign(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) out.x[basis_[r]] = rhs_[r];
    out.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
      out.objective += p_.c[j].get_d() * out.x[j];
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) out.basis.push_back(basis_[r]);
    std::sort(out.basis.begin(), out.basis.end());
    if (out.basis.size() != m_) out.reliable = false;
    return out;
  }

  const LpProblem& p_;
  std::size_t m_, n_, width_;
  std::vector<std::vector<double>> tab_;
  std::vector<double> rhs_, cost_;
  std::vector<std::size_t> basis_;
  std::vector<std::uint32_t> scratch_;
  std::size_t iterations_ = 0;
  bool reliable_ = true;
};

// ---------------------------------------------------------------------------
// Exact solve of a square sparse system via singleton peeling plus a dense
// residual elimination. cols[j] lists (row, value); rows[r] lists (col, value).

std::optional<std::vector<Fraction>> solve_square(
    const std::vector<std::vector<std::pair<std::size_t, Fraction>>>& cols,
    const std::vector<std::vector<std::pair<std::size_t, Fraction>>>& rows,
    const std::vector<Fraction>& rhs) {
  const std::size_t m = cols.size();
  std::vector<bool> col_active(m, true), row_active(m, true);
  std::vector<std::size_t> col_nnz(m, 0);
  std::deque<std::size_t> queue;
  for (std::size_t j = 0; j < m; ++j) {
    col_nnz[j] = cols[j].size();
    if (col_nnz[j] == 0) return std::nullopt;
    if (col_nnz[j] == 1) queue.push_back(j);
  }

  std::vector<std::pair<std::size_t, std::size_t>> peel;  // (col, row)
  peel.reserve(m);
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    if (!col_active[j] || col_nnz[j] != 1) continue;
    std::size_t prow = static_cast<std::size_t>(-1);
    for (const auto& [r, value] : cols[j]) {
      (void)value;
      if (row_active[r]) {
        prow = r;
        break;
      }
    }
    if (prow == static_cast<std::size_t>(-1)) return std::nullopt;
    peel.emplace_back(j, prow);
    col_active[j] = false;
    row_active[prow] = false;
    for (const auto& [col, value] : rows[prow]) {
      (void)value;
      if (!col_active[col]) continue;
      if (--col_nnz[col] == 1) queue.push_back(col);
      if (col_nnz[col] == 0) return std::nullopt;
    }
  }

  std::vector<Fraction> x(m, Fraction(0));

  // Dense residual block.
  std::vector<std::size_t> res_rows, res_cols;
  for (std::size_t r = 0; r < m; ++r)
    if (row_active[r]) res_rows.push_back(r);
  for (std::size_t j = 0; j < m; ++j)
    if (col_active[j]) res_cols.push_back(j);
  if (res_rows.size() != res_cols.size()) return std::nullopt;
  const std::size_t nr = res_rows.size();
  if (nr > 0) {
    std::vector<std::size_t> row_pos(m, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < nr; ++i) row_pos[res_rows[i]] = i;
    std::vector<std::vector<Fraction>> dense(nr,
                                             std::vector<Fraction>(nr + 1, Fraction(0)));
    for (std::size_t jj = 0; jj < nr; ++jj)
      for (const auto& [r, value] : cols[res_cols[jj]])
        if (row_pos[r] != static_cast<std::size_t>(-1))
          dense[row_pos[r]][jj] = value;
    for (std::size_t i = 0; i < nr; ++i) dense[i][nr] = rhs[res_rows[i]];

    for (std::size_t k = 0; k < nr; ++k) {
      std::size_t pick = static_cast<std::size_t>(-1);
      for (std::size_t i = k; i < nr; ++i) {
        if (is_zero(dense[i][k])) continue;
        if (pick == static_cast<std::size_t>(-1)) pick = i;
        if (dense[i][k] == 1 || dense[i][k] == -1) {
          pick = i;
          break;
        }
      }
      if (pick == static_cast<std::size_t>(-1)) return std::nullopt;
      std::swap(dense[k], dense[pick]);
      const Fraction piv = dense[k][k];
      if (piv != 1)
        for (std::size_t c = k; c <= nr; ++c)
          if (!is_zero(dense[k][c])) dense[k][c] /= piv;
      for (std::size_t i = 0; i < nr; ++i) {
        if (i == k || is_zero(dense[i][k])) continue;
        const Fraction f = dense[i][k];
        for (std::size_t c = k; c <= nr; ++c)
          if (!is_zero(dense[k][c])) dense[i][c] -= f * dense[k][c];
      }
    }
    for (std::size_t i = 0; i < nr; ++i) x[res_cols[i]] = dense[i][nr];
  }

  // Peeled columns in reverse discovery order; each row then depends only on
  // already-known values.
  for (auto it = peel.rbegin(); it != peel.rend(); ++it) {
    const auto [j, r] = *it;
    Fraction acc = rhs[r];
    Fraction diag(0);
    for (const auto& [col, value] : rows[r]) {
      if (col == j)
        diag = value;
      else if (!is_zero(x[col]))
        acc -= value * x[col];
    }
    if (is_zero(diag)) return std::nullopt;
    x[j] = acc / diag;
  }
  return x;
}

}  // namespace

LpSolution solve(const LpProblem& p, const std::vector<std::size_t>* warm_basis) {
  ExactSimplex simplex(p);
  return simplex.run(warm_basis);
}

FloatSolution solve_float(const LpProblem& p) {
  p.validate();
  FloatSimplex simplex(p);
  return simplex.run();
}

bool verify_solution(const LpProblem& p, const LpSolution& s) {
  if (s.status != LpStatus::optimal) return false;
  if (s.x.size() != p.n || s.y.size() != p.m) return false;
  for (const auto& v : s.x)
    if (sign_of(v) < 0) return false;
  for (std::size_t r = 0; r < p.m; ++r) {
    Fraction acc(0);
    for (const auto& [col, value] : p.rows[r])
      if (!is_zero(s.x[col])) acc += value * s.x[col];
    if (acc != p.b[r]) return false;
  }
  std::vector<Fraction> ya(p.n, Fraction(0));
  for (std::size_t r = 0; r < p.m; ++r) {
    if (is_zero(s.y[r])) continue;
    for (const auto& [col, value] : p.rows[r]) ya[col] += s.y[r] * value;
  }
  Fraction cx(0), by(0);
  for (std::size_t j = 0; j < p.n; ++j) {
    if (ya[j] > p.c[j]) return false;
    if (!is_zero(s.x[j])) {
      cx += p.c[j] * s.x[j];
      if (ya[j] != p.c[j]) return false;  // complementary slackness
    }
  }
  for (std::size_t r = 0; r < p.m; ++r)
    if (!is_zero(s.y[r])) by += p.b[r] * s.y[r];
  if (cx != by) return false;
  if (cx != s.objective) return false;
  return true;
}

BasisEvaluation evaluate_basis(const LpProblem& p,
                               const std::vector<std::size_t>& basis,
                               bool check_optimality) {
  p.validate();
  BasisEvaluation out;
  if (basis.size() != p.m) return out;
  std::unordered_map<std::size_t, std::size_t> pos;
  pos.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] >= p.n) return out;
    if (!pos.emplace(basis[i], i).second) return out;
  }

  const std::size_t m = p.m;
  std::vector<std::vector<std::pair<std::size_t, Fraction>>> bcols(m), brows(m);
  for (std::size_t r = 0; r < m; ++r)
    for (const auto& [col, value] : p.rows[r]) {
      const auto it = pos.find(col);
      if (it == pos.end()) continue;
      bcols[it->second].emplace_back(r, value);
      brows[r].emplace_back(it->second, value);
    }

  const auto xb = solve_square(bcols, brows, p.b);
  if (!xb) return out;
  out.factorizable = true;

  out.x.assign(p.n, Fraction(0));
  out.feasible = true;
  out.objective = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (sign_of((*xb)[i]) < 0) out.feasible = false;
    out.x[basis[i]] = (*xb)[i];
    if (!is_zero((*xb)[i])) out.objective += p.c[basis[i]] * (*xb)[i];
  }

  if (!check_optimality) return out;

  std::vector<Fraction> cb(m);
  for (std::size_t i = 0; i < m; ++i) cb[i] = p.c[basis[i]];
  // B^T y = c_B: columns of B^T are the rows of B.
  const auto y = solve_square(brows, bcols, cb);
  if (!y) return out;
  out.y = *y;

  std::vector<Fraction> ya(p.n, Fraction(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (is_zero(out.y[r])) continue;
    for (const auto& [col, value] : p.rows[r]) ya[col] += out.y[r] * value;
  }
  out.optimal = true;
  for (std::size_t j = 0; j < p.n && out.optimal; ++j) {
    if (pos.count(j)) continue;
    if (ya[j] > p.c[j]) out.optimal = false;
  }
  return out;
}

LpSolution solve_certified(const LpProblem& p) {
  FloatSolution fs;
  bool have_float = false;
  try {
    fs = solve_float(p);
    have_float = true;
  } catch (const std::length_error&) {
    have_float = false;
  }

  if (have_float && fs.status == LpStatus::optimal && fs.basis.size() == p.m) {
    auto ev = evaluate_basis(p, fs.basis, true);
    if (ev.factorizable && ev.feasible && ev.optimal) {
      LpSolution s;
      s.status = LpStatus::optimal;
      s.x = std::move(ev.x);
      s.y = std::move(ev.y);
      s.objective = std::move(ev.objective);
      s.basis = fs.basis;
      std::sort(s.basis.begin(), s.basis.end());
      return s;
    }
  }
  if (have_float && fs.status == LpStatus::optimal && !fs.basis.empty())
    return solve(p, &fs.basis);
  return solve(p);
}

}  // namespace lppt
