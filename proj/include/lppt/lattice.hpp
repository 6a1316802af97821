#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "lppt/fraction.hpp"

namespace lppt {

// Quaternary label of one lattice state. The leftmost digit is the first
// tensor factor and the most significant base-4 digit, so the linear value of
// "23" is 2*4+3 = 11.
struct LatticeIndex {
  int t = 0;
  std::uint32_t linear = 0;

  std::vector<int> digits() const;
  std::string to_string() const;
  friend auto operator<=>(const LatticeIndex&, const LatticeIndex&) = default;
};

LatticeIndex index_from_digits(const std::vector<int>& digits);
LatticeIndex index_from_linear(int t, std::uint32_t linear);
LatticeIndex parse_index(const std::string& text);

// Sign of entry (v, w) of the Kronecker power of the partial-transpose
// transition matrix: -1 iff an odd number of digit positions d satisfy
// w_d = v_d ^ 2. All entries have magnitude 2^-t.
int sign(const LatticeIndex& v, const LatticeIndex& w);
int sign_linear(std::uint32_t v, std::uint32_t w);

class SignOracle {
 public:
  explicit SignOracle(int t);

  int t() const { return t_; }
  std::uint32_t dim() const { return dim_; }

  int sign(std::uint32_t v, std::uint32_t w) const;
  // Entry of the Kronecker power: sign(v,w) / 2^t.
  Fraction entry(std::uint32_t v, std::uint32_t w) const;
  const std::array<std::array<Fraction, 4>, 4>& base() const { return base_; }

 private:
  int t_;
  std::uint32_t dim_;
  std::array<std::array<Fraction, 4>, 4> base_;
};

// Packed bit vector over row indices 0..4^t-1.
class RowMask {
 public:
  RowMask() = default;
  explicit RowMask(std::size_t bits);

  std::size_t size() const { return bits_; }
  void set(std::size_t i);
  bool test(std::size_t i) const;
  std::size_t count() const;
  bool any() const;
  std::vector<std::uint32_t> indices() const;

  RowMask& operator&=(const RowMask& other);
  friend RowMask operator&(RowMask lhs, const RowMask& rhs) {
    lhs &= rhs;
    return lhs;
  }
  bool operator==(const RowMask&) const = default;
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

// Rows crossing one column of the transition matrix with a negative entry.
struct ColumnFamily {
  LatticeIndex column;
  RowMask rows;
  std::size_t cardinality = 0;
};

ColumnFamily family(const LatticeIndex& column);

// Canonical (strictly increasing) set of lattice indices to distinguish.
struct StateSet {
  int t = 0;
  std::size_t k = 0;
  std::vector<LatticeIndex> members;

  bool contains(const LatticeIndex& v) const;
  bool subset_of(const StateSet& other) const;
  friend auto operator<=>(const StateSet&, const StateSet&) = default;
};

StateSet make_state_set(int t, std::vector<std::uint32_t> linears);
StateSet parse_set(const std::string& text);
std::string format_set(const StateSet& set);

// Member-wise XOR of every linear index with z (a symmetry of the sign
// structure once the invariance suite has confirmed it).
StateSet xor_translate(const StateSet& set, std::uint32_t z);
// Permutes the t digit positions of every member; perm[d] = source position.
StateSet permute_factors(const StateSet& set, const std::vector<int>& perm);

}  // namespace lppt
