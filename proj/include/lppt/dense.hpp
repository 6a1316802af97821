#pragma once

#include <string>
#include <vector>

#include "lppt/fraction.hpp"
#include "lppt/lattice.hpp"

namespace lppt {

// Small dense matrix over exact rationals. Everything in this module is
// exact; no floating point.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Fraction> entries;  // row-major

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c);

  Fraction& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const Fraction& at(std::size_t r, std::size_t c) const {
    return entries[r * cols + c];
  }

  static RationalMatrix identity(std::size_t n);

  Fraction trace() const;
  RationalMatrix transpose() const;
  bool operator==(const RationalMatrix&) const = default;

  RationalMatrix& operator+=(const RationalMatrix& other);
  RationalMatrix& operator-=(const RationalMatrix& other);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
    a += b;
    return a;
  }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
    a -= b;
    return a;
  }
  friend RationalMatrix operator*(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend RationalMatrix operator*(const Fraction& s, RationalMatrix m);

  static RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);
};

// Real state vector with amplitudes entries[i] / sqrt(2)^sqrt2_power, so Bell
// kets and their Kronecker products stay exact.
struct KetVector {
  std::size_t dim = 0;
  std::vector<Fraction> entries;
  int sqrt2_power = 0;

  Fraction norm_squared() const;
  RationalMatrix density() const;
  // Defined only when both vectors carry the same sqrt(2) scale parity.
  Fraction inner(const KetVector& other) const;
  static KetVector kron(const KetVector& a, const KetVector& b);
};

// Bell basis ordered so the partial transpose acts as the transition matrix
// with negative entries at (0,2),(1,3),(2,0),(3,1):
//   psi_0 = (|00>+|11>)/sqrt2, psi_1 = (|01>+|10>)/sqrt2,
//   psi_2 = (|01>-|10>)/sqrt2, psi_3 = (|00>-|11>)/sqrt2.
KetVector bell_ket(int i);

// chi_v on A(x)B ordering (basis index a*2^t + b); t <= 3.
KetVector lattice_ket(const LatticeIndex& v);

RationalMatrix partial_transpose(const RationalMatrix& m, std::size_t dim_a,
                                 std::size_t dim_b);

// Bell-basis dephasing applied to every factor; output is diagonal in the
// lattice basis.
RationalMatrix dephase(const RationalMatrix& m, int t);

struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReductionReport {
  int t = 0;
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

// Exhaustively confirms, in exact arithmetic, the identities the diagonal LP
// reduction rests on: the four Bell partial-transpose identities, the
// transition-matrix expansion of T_A(chi_v) for every v, and commutation of
// dephasing with the partial transpose on every matrix unit. t in {1,2,3};
// t=3 is slow and intended to sit behind a flag.
ReductionReport verify_reduction(int t);

}  // namespace lppt
