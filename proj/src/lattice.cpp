#include "lppt/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace lppt {

namespace {

constexpr int kMaxT = 15;          // linear index fits in 32 bits
constexpr int kMaxFamilyT = 8;     // family masks stay small

void check_t(int t, int max_t, const char* what) {
  if (t < 1) throw std::invalid_argument(std::string(what) + ": t must be >= 1");
  if (t > max_t)
    throw std::invalid_argument(std::string(what) + ": t exceeds supported bound");
}

}  // namespace

std::vector<int> LatticeIndex::digits() const {
  std::vector<int> out(static_cast<std::size_t>(t));
  for (int d = 0; d < t; ++d)
    out[static_cast<std::size_t>(d)] = static_cast<int>((linear >> (2 * (t - 1 - d))) & 3u);
  return out;
}

std::string LatticeIndex::to_string() const {
  std::string out;
  for (const int d : digits()) out.push_back(static_cast<char>('0' + d));
  return out;
}

LatticeIndex index_from_digits(const std::vector<int>& digits) {
  if (digits.empty()) throw std::invalid_argument("index_from_digits: empty sequence");
  if (digits.size() > kMaxT)
    throw std::invalid_argument("index_from_digits: too many digits");
  std::uint32_t linear = 0;
  for (const int d : digits) {
    if (d < 0 || d > 3)
      throw std::invalid_argument("index_from_digits: digit out of range");
    linear = (linear << 2) | static_cast<std::uint32_t>(d);
  }
  return LatticeIndex{static_cast<int>(digits.size()), linear};
}

LatticeIndex index_from_linear(int t, std::uint32_t linear) {
  check_t(t, kMaxT, "index_from_linear");
  if (linear >= (1u << (2 * t)))
    throw std::invalid_argument("index_from_linear: linear value out of range");
  return LatticeIndex{t, linear};
}

LatticeIndex parse_index(const std::string& text) {
  std::vector<int> digits;
  digits.reserve(text.size());
  for (const char c : text) {
    if (c < '0' || c > '3')
      throw std::invalid_argument("parse_index: bad digit in '" + text + "'");
    digits.push_back(c - '0');
  }
  return index_from_digits(digits);
}

int sign_linear(std::uint32_t v, std::uint32_t w) {
  const std::uint32_t x = v ^ w;
  // Digit positions where w_d = v_d ^ 2, i.e. the base-4 digit of x is 2.
  const std::uint32_t twos = (x >> 1) & ~x & 0x55555555u;
  return (std::popcount(twos) & 1u) ? -1 : 1;
}

int sign(const LatticeIndex& v, const LatticeIndex& w) {
  if (v.t != w.t) throw std::invalid_argument("sign: mismatched t");
  return sign_linear(v.linear, w.linear);
}

SignOracle::SignOracle(int t) : t_(t) {
  check_t(t, kMaxT, "SignOracle");
  dim_ = 1u << (2 * t);
  for (std::uint32_t v = 0; v < 4; ++v)
    for (std::uint32_t w = 0; w < 4; ++w)
      base_[v][w] = frac(sign_linear(v, w), 2);
}

int SignOracle::sign(std::uint32_t v, std::uint32_t w) const {
  if (v >= dim_ || w >= dim_)
    throw std::invalid_argument("SignOracle::sign: index out of range");
  return sign_linear(v, w);
}

Fraction SignOracle::entry(std::uint32_t v, std::uint32_t w) const {
  return frac(sign(v, w), 1l << t_);
}

RowMask::RowMask(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

void RowMask::set(std::size_t i) {
  if (i >= bits_) throw std::out_of_range("RowMask::set");
  words_[i / 64] |= 1ull << (i % 64);
}

bool RowMask::test(std::size_t i) const {
  if (i >= bits_) throw std::out_of_range("RowMask::test");
  return (words_[i / 64] >> (i % 64)) & 1ull;
}

std::size_t RowMask::count() const {
  std::size_t total = 0;
  for (const auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool RowMask::any() const {
  for (const auto w : words_)
    if (w != 0) return true;
  return false;
}

std::vector<std::uint32_t> RowMask::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(count());
  for (std::uint32_t i = 0; i < bits_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

RowMask& RowMask::operator&=(const RowMask& other) {
  if (bits_ != other.bits_) throw std::invalid_argument("RowMask: size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

ColumnFamily family(const LatticeIndex& column) {
  check_t(column.t, kMaxFamilyT, "family");
  const std::uint32_t dim = 1u << (2 * column.t);
  ColumnFamily fam{column, RowMask(dim), 0};
  for (std::uint32_t v = 0; v < dim; ++v)
    if (sign_linear(v, column.linear) < 0) fam.rows.set(v);
  fam.cardinality = fam.rows.count();
  return fam;
}

bool StateSet::contains(const LatticeIndex& v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

bool StateSet::subset_of(const StateSet& other) const {
  if (t != other.t) return false;
  return std::includes(other.members.begin(), other.members.end(),
                       members.begin(), members.end());
}

StateSet make_state_set(int t, std::vector<std::uint32_t> linears) {
  check_t(t, kMaxT, "make_state_set");
  if (linears.empty()) throw std::invalid_argument("make_state_set: empty set");
  std::sort(linears.begin(), linears.end());
  if (std::adjacent_find(linears.begin(), linears.end()) != linears.end())
    throw std::invalid_argument("make_state_set: duplicate member");
  StateSet set;
  set.t = t;
  set.k = linears.size();
  set.members.reserve(linears.size());
  for (const auto v : linears) set.members.push_back(index_from_linear(t, v));
  return set;
}

StateSet parse_set(const std::string& text) {
  std::string compact;
  compact.reserve(text.size());
  for (const char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  if (compact.empty()) throw std::invalid_argument("parse_set: empty set");

  std::vector<std::string> tokens;
  std::size_t start = 0;
  for (;;) {
    const auto comma = compact.find(',', start);
    tokens.push_back(compact.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  int t = -1;
  std::vector<std::uint32_t> linears;
  linears.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (tok.empty()) throw std::invalid_argument("parse_set: empty index");
    const LatticeIndex idx = parse_index(tok);
    if (t == -1)
      t = idx.t;
    else if (idx.t != t)
      throw std::invalid_argument("parse_set: mixed index lengths");
    linears.push_back(idx.linear);
  }
  return make_state_set(t, std::move(linears));
}

std::string format_set(const StateSet& set) {
  std::string out;
  for (std::size_t i = 0; i < set.members.size(); ++i) {
    if (i) out.push_back(',');
    out += set.members[i].to_string();
  }
  return out;
}

StateSet xor_translate(const StateSet& set, std::uint32_t z) {
  std::vector<std::uint32_t> linears;
  linears.reserve(set.k);
  for (const auto& m : set.members) linears.push_back(m.linear ^ z);
  return make_state_set(set.t, std::move(linears));
}

StateSet permute_factors(const StateSet& set, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != set.t)
    throw std::invalid_argument("permute_factors: bad permutation size");
  std::vector<bool> seen(perm.size(), false);
  for (const int p : perm) {
    if (p < 0 || p >= set.t || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("permute_factors: not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<std::uint32_t> linears;
  linears.reserve(set.k);
  for (const auto& m : set.members) {
    const auto digits = m.digits();
    std::vector<int> moved(digits.size());
    for (std::size_t d = 0; d < digits.size(); ++d)
      moved[d] = digits[static_cast<std::size_t>(perm[d])];
    linears.push_back(index_from_digits(moved).linear);
  }
  return make_state_set(set.t, std::move(linears));
}

}  // namespace lppt
