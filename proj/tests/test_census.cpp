#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "lppt/census.hpp"
#include "lppt/util.hpp"

using namespace lppt;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("lppt-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("quadruple criterion on the worked examples") {
  CHECK(quad_criterion_t2(parse_set("00,11,21,31")));
  CHECK(!quad_criterion_t2(parse_set("00,01,02,03")));
  CHECK_THROWS_AS(quad_criterion_t2(parse_set("00,11,21")), std::invalid_argument);
  CHECK_THROWS_AS(quad_criterion_t2(parse_set("000,110,210,310")),
                  std::invalid_argument);

  // Every 4-subset of the first maximal family.
  const auto& family0 = canonical_families_t2().front();
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b)
      for (std::size_t c = b + 1; c < 6; ++c)
        for (std::size_t d = c + 1; d < 6; ++d) {
          const std::string text = family0[a] + "," + family0[b] + "," +
                                   family0[c] + "," + family0[d];
          CHECK(quad_criterion_t2(parse_set(text)));
        }
}

TEST_CASE("criterion-true quadruples number 240 (no LP involved)") {
  std::size_t count = 0;
  for (std::uint32_t a = 0; a < 16; ++a)
    for (std::uint32_t b = a + 1; b < 16; ++b)
      for (std::uint32_t c = b + 1; c < 16; ++c)
        for (std::uint32_t d = c + 1; d < 16; ++d)
          if (quad_criterion_t2(make_state_set(2, {a, b, c, d}))) ++count;
  CHECK(count == 240);
}

TEST_CASE("maximal families equal the sixteen known sets") {
  const auto families = maximal_families_t2();
  REQUIRE(families.size() == 16);
  const auto& expected = canonical_families_t2();
  for (std::size_t c = 0; c < 16; ++c) {
    std::vector<std::string> names;
    for (const auto& m : families[c]) names.push_back(m.to_string());
    CHECK(names == expected[c]);  // the paper lists them in column order
  }
}

TEST_CASE("intersection statistics: frozen enumeration values") {
  StatsOptions so;
  so.parallelism = 2;

  StatsOptions full = so;
  full.reduced = false;

  auto s = intersection_stats(2, 1, full);
  CHECK(s.min_count == 6);
  CHECK(s.max_count == 6);
  CHECK(s.subsets == 16);

  s = intersection_stats(2, 2, so);
  CHECK(s.min_count == 2);
  CHECK(s.max_count == 2);
  CHECK(s.subsets == 15);

  s = intersection_stats(3, 1, full);
  CHECK(s.min_count == 28);
  CHECK(s.max_count == 28);

  s = intersection_stats(3, 2, so);
  CHECK(s.min_count == 12);
  CHECK(s.max_count == 12);
  CHECK(s.subsets == 63);

  s = intersection_stats(3, 3, so);
  CHECK(s.min_count == 4);
  CHECK(s.max_count == 6);
  CHECK(s.histogram.at(4) == 945);
  CHECK(s.histogram.at(6) == 1008);

  s = intersection_stats(4, 1, full);
  CHECK(s.min_count == 120);
  CHECK(s.max_count == 120);

  s = intersection_stats(4, 4, so);
  CHECK(s.max_count == 24);
  CHECK(s.subsets == 2731135);
  CHECK(s.histogram.at(24) == 5355);
  CHECK(s.histogram.at(0) == 5440);
}

TEST_CASE("reduced and full enumeration agree up to the known scaling") {
  StatsOptions reduced;
  reduced.parallelism = 2;
  StatsOptions full = reduced;
  full.reduced = false;
  for (const auto& [t, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const auto r = intersection_stats(t, m, reduced);
    const auto f = intersection_stats(t, m, full);
    CHECK(r.min_count == f.min_count);
    CHECK(r.max_count == f.max_count);
    for (const auto& [count, freq] : f.histogram)
      CHECK(freq * r.subsets == r.histogram.at(count) * f.subsets);
  }
}

TEST_CASE("subset-count guard trips without the override") {
  StatsOptions so;
  CHECK_THROWS_AS(intersection_stats(4, 6, so), std::invalid_argument);
}

TEST_CASE("xor invariance gate") {
  CHECK(xor_invariance_holds(2));
  CHECK(xor_invariance_holds(3));
  CHECK(xor_invariance_holds(4, 1, 20000));
}

TEST_CASE("candidate construction draws rows from a common-negative block") {
  const StateSet quad = construct_candidate(2, 1, 4, 0);
  CHECK(quad.k == 4);
  CHECK(quad_criterion_t2(quad));
  CHECK(format_set(construct_candidate(2, 1, 4, 7)) ==
        format_set(construct_candidate(2, 1, 4, 7)));

  const StateSet eight = construct_candidate(3, 2, 8, 0);
  CHECK(eight.t == 3);
  CHECK(eight.k == 8);
  bool found_pair = false;
  for (std::uint32_t c1 = 0; c1 < 64 && !found_pair; ++c1)
    for (std::uint32_t c2 = c1 + 1; c2 < 64 && !found_pair; ++c2) {
      bool all = true;
      for (const auto& m : eight.members)
        if (sign_linear(m.linear, c1) > 0 || sign_linear(m.linear, c2) > 0) {
          all = false;
          break;
        }
      found_pair = all;
    }
    CHECK(found_pair);

  CHECK_THROWS_AS(construct_candidate(2, 3, 4, 0), std::invalid_argument);
}

TEST_CASE("result cache: round trip, misses, corrupt lines") {
  TempDir dir;
  {
    ResultCache cache(dir.path.string());
    CHECK(cache.enabled());
    CHECK(!cache.read(2, "00,11,21,31").has_value());
    CensusRecord rec;
    rec.t = 2;
    rec.k = 4;
    rec.set = "00,11,21,31";
    rec.alpha = "7/8";
    rec.distinguishable = false;
    rec.method = "exact-lp";
    rec.certificate_digest = "deadbeefdeadbeef";
    rec.timestamp = kEpochTimestamp;
    cache.append(rec);
    const auto hit = cache.read(2, "00,11,21,31");
    REQUIRE(hit.has_value());
    CHECK(hit->alpha == "7/8");
    CHECK(!hit->distinguishable);
  }
  {
    // Corrupt line in the middle survives a reload.
    std::ofstream out(dir.path / "records.jsonl", std::ios::app);
    out << "{ not json }\n";
  }
  ResultCache reloaded(dir.path.string());
  CHECK(reloaded.corrupt_lines() == 1);
  CHECK(reloaded.all().size() == 1);
  CHECK(reloaded.read(2, "00,11,21,31").has_value());
  CHECK(!reloaded.read(3, "00,11,21,31").has_value());

  ResultCache disabled;
  CHECK(!disabled.enabled());
  CHECK_THROWS(disabled.append(CensusRecord{}));
}

TEST_CASE("census record JSON round trip") {
  CensusRecord rec;
  rec.t = 2;
  rec.k = 4;
  rec.set = "00,11,21,31";
  rec.alpha = "7/8";
  rec.distinguishable = false;
  rec.method = "exact-lp";
  rec.certificate_digest = "0123456789abcdef";
  rec.timestamp = "2024-05-01T10:00:00Z";
  const auto back = record_from_json(record_to_json(rec));
  REQUIRE(back.has_value());
  CHECK(back->set == rec.set);
  CHECK(back->alpha == rec.alpha);
  CHECK(back->timestamp == rec.timestamp);
  CHECK(!record_from_json("{\"t\":2}").has_value());
  CHECK(!record_from_json("garbage").has_value());
}

TEST_CASE("sampling is deterministic and cache hits skip the solver") {
  EvalOptions eo;
  eo.mode = SolveMode::screen;
  eo.no_timestamp = true;
  eo.parallelism = 2;
  const auto a = random_sample_census(2, 4, 12, 99, eo);
  const auto b = random_sample_census(2, 4, 12, 99, eo);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].set == b[i].set);
    CHECK(a[i].alpha == b[i].alpha);
    CHECK(a[i].certificate_digest == b[i].certificate_digest);
  }

  TempDir dir;
  ResultCache cache(dir.path.string());
  EvalOptions cached = eo;
  cached.cache = &cache;
  const auto cold = random_sample_census(2, 4, 12, 99, cached);
  const auto warm = random_sample_census(2, 4, 12, 99, cached);
  for (std::size_t i = 0; i < warm.size(); ++i) {
    CHECK(warm[i].method == "cached");
    CHECK(warm[i].alpha == cold[i].alpha);
  }
}

TEST_CASE("evaluate_set consults the cache") {
  TempDir dir;
  ResultCache cache(dir.path.string());
  EvalOptions eo;
  eo.mode = SolveMode::screen;
  eo.no_timestamp = true;
  eo.cache = &cache;
  const StateSet yu = parse_set("00,11,21,31");
  const CensusRecord first = evaluate_set(yu, eo);
  CHECK(first.method == "exact-lp");
  CHECK(first.alpha == "7/8");
  const CensusRecord second = evaluate_set(yu, eo);
  CHECK(second.method == "cached");
  CHECK(second.alpha == "7/8");
}

TEST_CASE("downward-closure scan flags a fabricated violation") {
  CensusRecord inner;
  inner.t = 2;
  inner.k = 4;
  inner.set = "00,11,21,31";
  inner.alpha = "7/8";
  inner.distinguishable = false;
  CensusRecord outer = inner;
  outer.k = 5;
  outer.set = "00,02,11,21,31";
  outer.alpha = "1";
  outer.distinguishable = true;  // impossible in reality
  const auto violations = downward_closure_violations({inner, outer});
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].inner == inner.set);
  CHECK(violations[0].outer == outer.set);

  CensusRecord honest = outer;
  honest.alpha = "7/8";
  honest.distinguishable = false;
  CHECK(downward_closure_violations({inner, honest}).empty());
}
