#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lppt/dense.hpp"
#include "lppt/lattice.hpp"
#include "lppt/util.hpp"

using namespace lppt;

TEST_CASE("digit/linear round trips and the base-4 convention") {
  CHECK(index_from_digits({0, 0}).linear == 0);
  CHECK(index_from_digits({2, 3}).linear == 11);
  CHECK(index_from_digits({3, 1}).linear == 13);
  CHECK(index_from_digits({1, 0, 2}).linear == 18);
  for (std::uint32_t v = 0; v < 64; ++v)
    CHECK(index_from_digits(index_from_linear(3, v).digits()).linear == v);
  CHECK(parse_index("23").linear == 11);
  CHECK(parse_index("23").t == 2);
  CHECK(index_from_linear(2, 11).to_string() == "23");

  CHECK_THROWS_AS(index_from_digits({}), std::invalid_argument);
  CHECK_THROWS_AS(index_from_digits({4}), std::invalid_argument);
  CHECK_THROWS_AS(index_from_digits({-1}), std::invalid_argument);
  CHECK_THROWS_AS(index_from_linear(2, 16), std::invalid_argument);
  CHECK_THROWS_AS(parse_index("2x"), std::invalid_argument);
}

TEST_CASE("sign rule on the worked column-23 example") {
  const auto v00 = parse_index("00");
  const auto v11 = parse_index("11");
  const auto w23 = parse_index("23");
  CHECK(sign(v00, v00) == 1);
  CHECK(sign(v00, w23) == -1);
  CHECK(sign(v11, w23) == -1);
  CHECK(sign(parse_index("21"), w23) == -1);
  CHECK(sign(parse_index("31"), w23) == -1);
  CHECK_THROWS_AS(sign(v00, parse_index("000")), std::invalid_argument);
}

namespace {

// Independent route to the transition matrix: expand the partial transpose of
// each Bell projector in the Bell projector basis (coefficients via the
// trace inner product), then take Kronecker powers.
RationalMatrix base_from_dense() {
  RationalMatrix base(4, 4);
  for (int w = 0; w < 4; ++w) {
    const RationalMatrix pt = partial_transpose(bell_ket(w).density(), 2, 2);
    for (int u = 0; u < 4; ++u) {
      const RationalMatrix proj = bell_ket(u).density();
      base.at(u, w) = (proj * pt).trace();
    }
  }
  return base;
}

}  // namespace

TEST_CASE("sign oracle matches explicit Kronecker powers up to t=4") {
  RationalMatrix power = base_from_dense();
  const SignOracle base_oracle(1);
  for (int u = 0; u < 4; ++u)
    for (int w = 0; w < 4; ++w) CHECK(power.at(u, w) == base_oracle.base()[u][w]);

  for (int t = 1; t <= 4; ++t) {
    const SignOracle oracle(t);
    const std::uint32_t dim = oracle.dim();
    REQUIRE(power.rows == dim);
    for (std::uint32_t v = 0; v < dim; ++v)
      for (std::uint32_t w = 0; w < dim; ++w) {
        CHECK(power.at(v, w) == oracle.entry(v, w));
        CHECK(sign_of(power.at(v, w)) == oracle.sign(v, w));
      }
    if (t < 4) power = RationalMatrix::kron(power, base_from_dense());
  }
}

TEST_CASE("families: derived examples and the cardinality formula") {
  const auto f00 = family(parse_index("00"));
  CHECK(f00.cardinality == 6);
  std::vector<std::string> names;
  for (const auto r : f00.rows.indices())
    names.push_back(index_from_linear(2, r).to_string());
  CHECK(names == std::vector<std::string>{"02", "12", "20", "21", "23", "32"});

  const auto f23 = family(parse_index("23"));
  names.clear();
  for (const auto r : f23.rows.indices())
    names.push_back(index_from_linear(2, r).to_string());
  CHECK(names == std::vector<std::string>{"00", "02", "03", "11", "21", "31"});

  for (int t = 2; t <= 4; ++t) {
    const std::size_t expected = ((1u << (2 * t)) - (1u << t)) / 2;
    const std::uint32_t dim = 1u << (2 * t);
    for (std::uint32_t c = 0; c < dim; c += (t == 4 ? 37 : 1))
      CHECK(family(index_from_linear(t, c)).cardinality == expected);
  }
}

TEST_CASE("family translation structure") {
  for (int t = 2; t <= 3; ++t) {
    const std::uint32_t dim = 1u << (2 * t);
    const auto f0 = family(index_from_linear(t, 0));
    for (std::uint32_t c = 0; c < dim; ++c) {
      const auto fc = family(index_from_linear(t, c));
      RowMask translated(dim);
      for (const auto u : f0.rows.indices()) translated.set(u ^ c);
      CHECK(fc.rows == translated);
    }
  }
}

TEST_CASE("parse_set / format_set grammar and canonical form") {
  const StateSet yu = parse_set("00,11,21,31");
  CHECK(yu.t == 2);
  CHECK(yu.k == 4);
  std::vector<std::uint32_t> linears;
  for (const auto& m : yu.members) linears.push_back(m.linear);
  CHECK(linears == std::vector<std::uint32_t>{0, 5, 9, 13});
  CHECK(format_set(yu) == "00,11,21,31");

  CHECK(parse_set("02").k == 1);
  CHECK(parse_set(" 31 ,00,\t11, 21").members == yu.members);  // whitespace + order
  CHECK(format_set(parse_set("31,00,11,21")) == "00,11,21,31");

  CHECK_THROWS_AS(parse_set("00,00"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("00,111"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("00,1x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("00,,11"), std::invalid_argument);
}

TEST_CASE("format/parse is the identity on random canonical sets") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int t = 1 + static_cast<int>(uniform_below(rng, 4));
    const std::uint32_t dim = 1u << (2 * t);
    const auto k = static_cast<std::uint32_t>(1 + uniform_below(rng, std::min(dim, 9u)));
    const auto linears = sample_subset(rng, dim, k);
    const StateSet set = make_state_set(t, {linears.begin(), linears.end()});
    CHECK(parse_set(format_set(set)).members == set.members);
  }
}

TEST_CASE("sign symmetry and XOR invariance, exhaustive through t=3") {
  for (int t = 1; t <= 3; ++t) {
    const std::uint32_t dim = 1u << (2 * t);
    for (std::uint32_t v = 0; v < dim; ++v)
      for (std::uint32_t w = 0; w < dim; ++w) {
        CHECK(sign_linear(v, w) == sign_linear(w, v));
        for (std::uint32_t z = 0; z < dim; z += 5)
          CHECK(sign_linear(v ^ z, w ^ z) == sign_linear(v, w));
      }
  }
}

TEST_CASE("sampled t=4 invariance properties") {
  std::mt19937_64 rng(11);
  for (std::size_t i = 0; i < 100000; ++i) {
    const auto v = static_cast<std::uint32_t>(uniform_below(rng, 256));
    const auto w = static_cast<std::uint32_t>(uniform_below(rng, 256));
    const auto z = static_cast<std::uint32_t>(uniform_below(rng, 256));
    REQUIRE(sign_linear(v, w) == sign_linear(w, v));
    REQUIRE(sign_linear(v ^ z, w ^ z) == sign_linear(v, w));
  }
}

TEST_CASE("row sums: positives minus negatives equals 2^t") {
  for (int t = 1; t <= 4; ++t) {
    const std::uint32_t dim = 1u << (2 * t);
    for (std::uint32_t v = 0; v < dim; ++v) {
      long total = 0;
      for (std::uint32_t w = 0; w < dim; ++w) total += sign_linear(v, w);
      CHECK(total == (1l << t));
    }
  }
}

TEST_CASE("factor-permutation covariance of the sign") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const int t = 2 + static_cast<int>(uniform_below(rng, 3));
    const std::uint32_t dim = 1u << (2 * t);
    const auto v = index_from_linear(t, static_cast<std::uint32_t>(uniform_below(rng, dim)));
    const auto w = index_from_linear(t, static_cast<std::uint32_t>(uniform_below(rng, dim)));
    std::vector<int> perm(static_cast<std::size_t>(t));
    for (int d = 0; d < t; ++d) perm[static_cast<std::size_t>(d)] = d;
    for (int d = t - 1; d > 0; --d)
      std::swap(perm[static_cast<std::size_t>(d)],
                perm[uniform_below(rng, static_cast<std::uint64_t>(d + 1))]);
    auto apply = [&](const LatticeIndex& idx) {
      const auto digits = idx.digits();
      std::vector<int> moved(digits.size());
      for (std::size_t d = 0; d < digits.size(); ++d)
        moved[d] = digits[static_cast<std::size_t>(perm[d])];
      return index_from_digits(moved);
    };
    REQUIRE(sign(apply(v), apply(w)) == sign(v, w));
  }
}

TEST_CASE("state-set helpers") {
  const StateSet a = parse_set("00,11");
  const StateSet b = parse_set("00,11,21,31");
  CHECK(a.subset_of(b));
  CHECK(!b.subset_of(a));
  CHECK(b.contains(parse_index("21")));
  CHECK(!b.contains(parse_index("22")));

  const StateSet shifted = xor_translate(b, 3);
  CHECK(shifted.k == b.k);
  CHECK(shifted.members[0].linear == (0u ^ 3u));

  const StateSet swapped = permute_factors(parse_set("01,23"), {1, 0});
  CHECK(format_set(swapped) == "10,32");
  CHECK_THROWS_AS(permute_factors(b, {0}), std::invalid_argument);
  CHECK_THROWS_AS(permute_factors(b, {1, 1}), std::invalid_argument);
}
