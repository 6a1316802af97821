#include "lppt/dense.hpp"

#include <stdexcept>

namespace lppt {

namespace {

constexpr int kMaxDenseT = 3;  // 4^3 = 64-dimensional dense work at most

void check_dense_t(int t, const char* what) {
  if (t < 1 || t > kMaxDenseT)
    throw std::invalid_argument(std::string(what) + ": t outside dense range 1..3");
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t r, std::size_t c)
    : rows(r), cols(c), entries(r * c, Fraction(0)) {
  if (r == 0 || c == 0)
    throw std::invalid_argument("RationalMatrix: dimensions must be positive");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Fraction RationalMatrix::trace() const {
  if (rows != cols) throw std::invalid_argument("trace: matrix not square");
  Fraction t(0);
  for (std::size_t i = 0; i < rows; ++i) t += at(i, i);
  return t;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix m(cols, rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(c, r) = at(r, c);
  return m;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
  if (rows != other.rows || cols != other.cols)
    throw std::invalid_argument("matrix add: dimension mismatch");
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += other.entries[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other) {
  if (rows != other.rows || cols != other.cols)
    throw std::invalid_argument("matrix sub: dimension mismatch");
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] -= other.entries[i];
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix mul: dimension mismatch");
  RationalMatrix out(a.rows, b.cols);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Fraction& f = a.at(r, k);
      if (is_zero(f)) continue;
      for (std::size_t c = 0; c < b.cols; ++c) {
        const Fraction& g = b.at(k, c);
        if (!is_zero(g)) out.at(r, c) += f * g;
      }
    }
  return out;
}

RationalMatrix operator*(const Fraction& s, RationalMatrix m) {
  for (auto& e : m.entries) e *= s;
  return m;
}

RationalMatrix RationalMatrix::kron(const RationalMatrix& a,
                                    const RationalMatrix& b) {
  RationalMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t ar = 0; ar < a.rows; ++ar)
    for (std::size_t ac = 0; ac < a.cols; ++ac) {
      const Fraction& f = a.at(ar, ac);
      if (is_zero(f)) continue;
      for (std::size_t br = 0; br < b.rows; ++br)
        for (std::size_t bc = 0; bc < b.cols; ++bc)
          out.at(ar * b.rows + br, ac * b.cols + bc) = f * b.at(br, bc);
    }
  return out;
}

Fraction KetVector::norm_squared() const {
  Fraction sum(0);
  for (const auto& e : entries) sum += e * e;
  return sum / frac(1l << sqrt2_power);
}

RationalMatrix KetVector::density() const {
  RationalMatrix m(dim, dim);
  const Fraction scale = frac(1, 1l << sqrt2_power);
  for (std::size_t r = 0; r < dim; ++r) {
    if (is_zero(entries[r])) continue;
    for (std::size_t c = 0; c < dim; ++c)
      if (!is_zero(entries[c])) m.at(r, c) = entries[r] * entries[c] * scale;
  }
  return m;
}

Fraction KetVector::inner(const KetVector& other) const {
  if (dim != other.dim) throw std::invalid_argument("inner: dimension mismatch");
  if ((sqrt2_power + other.sqrt2_power) % 2 != 0)
    throw std::invalid_argument("inner: irrational scale combination");
  Fraction sum(0);
  for (std::size_t i = 0; i < dim; ++i) sum += entries[i] * other.entries[i];
  return sum / frac(1l << ((sqrt2_power + other.sqrt2_power) / 2));
}

KetVector KetVector::kron(const KetVector& a, const KetVector& b) {
  KetVector out;
  out.dim = a.dim * b.dim;
  out.sqrt2_power = a.sqrt2_power + b.sqrt2_power;
  out.entries.resize(out.dim, Fraction(0));
  for (std::size_t i = 0; i < a.dim; ++i) {
    if (is_zero(a.entries[i])) continue;
    for (std::size_t j = 0; j < b.dim; ++j)
      out.entries[i * b.dim + j] = a.entries[i] * b.entries[j];
  }
  return out;
}

KetVector bell_ket(int i) {
  static const int amplitudes[4][4] = {
      {1, 0, 0, 1},   // psi_0
      {0, 1, 1, 0},   // psi_1
      {0, 1, -1, 0},  // psi_2
      {1, 0, 0, -1},  // psi_3
  };
  if (i < 0 || i > 3) throw std::invalid_argument("bell_ket: index out of range");
  KetVector ket;
  ket.dim = 4;
  ket.sqrt2_power = 1;
  ket.entries.reserve(4);
  for (int j = 0; j < 4; ++j) ket.entries.emplace_back(amplitudes[i][j]);
  return ket;
}

KetVector lattice_ket(const LatticeIndex& v) {
  check_dense_t(v.t, "lattice_ket");
  const auto digits = v.digits();
  KetVector natural = bell_ket(digits[0]);
  for (std::size_t d = 1; d < digits.size(); ++d)
    natural = KetVector::kron(natural, bell_ket(digits[d]));

  // Reorder from (A_1 B_1)(x)...(x)(A_t B_t) to A(x)B with index a*2^t + b.
  const int t = v.t;
  KetVector out;
  out.dim = natural.dim;
  out.sqrt2_power = natural.sqrt2_power;
  out.entries.assign(out.dim, Fraction(0));
  for (std::size_t n = 0; n < natural.dim; ++n) {
    std::size_t a = 0, b = 0;
    for (int d = 0; d < t; ++d) {
      const std::size_t pair = (n >> (2 * (t - 1 - d))) & 3u;
      a = (a << 1) | (pair >> 1);
      b = (b << 1) | (pair & 1u);
    }
    out.entries[(a << t) | b] = natural.entries[n];
  }
  return out;
}

RationalMatrix partial_transpose(const RationalMatrix& m, std::size_t dim_a,
                                 std::size_t dim_b) {
  if (m.rows != m.cols || m.rows != dim_a * dim_b)
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  RationalMatrix out(m.rows, m.cols);
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t b = 0; b < dim_b; ++b)
      for (std::size_t a2 = 0; a2 < dim_a; ++a2)
        for (std::size_t b2 = 0; b2 < dim_b; ++b2)
          out.at(a2 * dim_b + b, a * dim_b + b2) = m.at(a * dim_b + b, a2 * dim_b + b2);
  return out;
}

RationalMatrix dephase(const RationalMatrix& m, int t) {
  check_dense_t(t, "dephase");
  const std::size_t dim = 1ull << (2 * t);
  if (m.rows != dim || m.cols != dim)
    throw std::invalid_argument("dephase: dimension mismatch");
  RationalMatrix out(dim, dim);
  for (std::uint32_t v = 0; v < dim; ++v) {
    const KetVector chi = lattice_ket(index_from_linear(t, v));
    // <chi|M|chi> with the sqrt2 scale folded in.
    Fraction weight(0);
    for (std::size_t r = 0; r < dim; ++r) {
      if (is_zero(chi.entries[r])) continue;
      for (std::size_t c = 0; c < dim; ++c)
        if (!is_zero(chi.entries[c]))
          weight += chi.entries[r] * m.at(r, c) * chi.entries[c];
    }
    if (is_zero(weight)) continue;
    weight /= frac(1l << chi.sqrt2_power);
    out += weight * chi.density();
  }
  return out;
}

bool ReductionReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ReductionReport verify_reduction(int t) {
  check_dense_t(t, "verify_reduction");
  ReductionReport report;
  report.t = t;

  // (c) Bell identities: T_A(psi_i) = I/2 - psi_{sigma(i)}, sigma = (0 2)(1 3).
  {
    static const int conjugate[4] = {2, 3, 0, 1};
    IdentityCheck check{"bell-pt-identities", true, ""};
    const RationalMatrix half_id = frac(1, 2) * RationalMatrix::identity(4);
    for (int i = 0; i < 4; ++i) {
      const RationalMatrix lhs = partial_transpose(bell_ket(i).density(), 2, 2);
      const RationalMatrix rhs = half_id - bell_ket(conjugate[i]).density();
      if (!(lhs == rhs)) {
        check.pass = false;
        check.detail = "failed at psi_" + std::to_string(i);
        break;
      }
    }
    if (check.pass) check.detail = "4/4 identities";
    report.checks.push_back(std::move(check));
  }

  const std::uint32_t dim = 1u << (2 * t);
  const SignOracle oracle(t);
  std::vector<RationalMatrix> chi_density;
  chi_density.reserve(dim);
  for (std::uint32_t v = 0; v < dim; ++v)
    chi_density.push_back(lattice_ket(index_from_linear(t, v)).density());

  // (b) T_A(chi_v) = sum_u P[u,v] chi_u for every v.
  {
    IdentityCheck check{"transition-matrix", true, ""};
    for (std::uint32_t v = 0; v < dim && check.pass; ++v) {
      const std::size_t d2 = 1ull << t;
      const RationalMatrix lhs = partial_transpose(chi_density[v], d2, d2);
      RationalMatrix rhs(dim, dim);
      for (std::uint32_t u = 0; u < dim; ++u)
        rhs += oracle.entry(u, v) * chi_density[u];
      if (!(lhs == rhs)) {
        check.pass = false;
        check.detail = "failed at v=" + index_from_linear(t, v).to_string();
      }
    }
    if (check.pass)
      check.detail = std::to_string(dim) + "/" + std::to_string(dim) + " columns";
    report.checks.push_back(std::move(check));
  }

  // (a) dephasing commutes with the partial transpose on every matrix unit.
  {
    IdentityCheck check{"pt-dephase-commutation", true, ""};
    const std::size_t d2 = 1ull << t;
    for (std::uint32_t i = 0; i < dim && check.pass; ++i)
      for (std::uint32_t j = 0; j < dim; ++j) {
        RationalMatrix unit(dim, dim);
        unit.at(i, j) = 1;
        const RationalMatrix lhs = dephase(partial_transpose(unit, d2, d2), t);
        const RationalMatrix rhs = partial_transpose(dephase(unit, t), d2, d2);
        if (!(lhs == rhs)) {
          check.pass = false;
          check.detail = "failed at unit (" + std::to_string(i) + "," +
                         std::to_string(j) + ")";
          break;
        }
      }
    if (check.pass)
      check.detail = std::to_string(static_cast<std::size_t>(dim) * dim) + " matrix units";
    report.checks.push_back(std::move(check));
  }

  return report;
}

}  // namespace lppt
