#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lppt/lattice.hpp"
#include "lppt/pptlp.hpp"

namespace lppt {

struct CensusRecord {
  int t = 0;
  int k = 0;
  std::string set;    // canonical comma-separated digit strings
  std::string alpha;  // lowest-terms fraction
  bool distinguishable = false;
  std::string method;  // "exact-lp", "criterion", or "cached"
  std::string certificate_digest;
  std::string timestamp;
};

// Append-only JSONL store keyed by (t, canonical set string); reads return
// the latest record for a key. Corrupt lines are counted and skipped.
class ResultCache {
 public:
  ResultCache() = default;  // disabled cache
  explicit ResultCache(const std::string& directory);

  bool enabled() const { return !path_.empty(); }
  const std::string& path() const { return path_; }
  std::size_t corrupt_lines() const { return corrupt_lines_; }

  std::optional<CensusRecord> read(int t, const std::string& set) const;
  void append(const CensusRecord& record);
  std::vector<CensusRecord> all() const;

 private:
  std::string path_;
  std::size_t corrupt_lines_ = 0;
  std::map<std::pair<int, std::string>, CensusRecord> latest_;
  std::vector<CensusRecord> order_;
};

std::string record_to_json(const CensusRecord& record);
std::optional<CensusRecord> record_from_json(const std::string& line);

struct EvalOptions {
  SolveMode mode = SolveMode::exact;
  ResultCache* cache = nullptr;
  bool no_timestamp = false;
  // Seeded fraction of instances re-certified through a full exact
  // optimality check of the screened basis (census audit).
  double audit_fraction = 0.01;
  std::uint64_t audit_seed = 0;
  unsigned parallelism = 1;
};

// One set through the LP pipeline: cache lookup, alpha with verified
// certificate, bound-chain assertion alpha <= beta' and alpha <= 1.
CensusRecord evaluate_set(const StateSet& set, const EvalOptions& opts);

// True iff some column of the transition matrix is negative on all four
// members (the quadruple criterion at t=2).
bool quad_criterion_t2(const StateSet& set);

struct QuadCensusSummary {
  std::size_t total = 0;
  std::size_t criterion_true = 0;
  std::size_t lp_indistinguishable = 0;
  std::size_t disagreements = 0;
  std::size_t lp_solves = 0;  // cache misses that ran the LP
  std::vector<std::string> indistinguishable_sets;
  std::vector<CensusRecord> records;  // in subset-lex order
};

// All C(16,4) = 1820 quadruples, each evaluated with BOTH the criterion and
// the exact LP; results persisted through the cache when one is attached.
QuadCensusSummary enumerate_quadruples_t2(const EvalOptions& opts);

// The sixteen maximal six-element families at t=2, one per column, sorted by
// column. Independently frozen reference copy for comparison.
std::vector<std::vector<LatticeIndex>> maximal_families_t2();
const std::vector<std::vector<std::string>>& canonical_families_t2();

struct IntersectionStats {
  int t = 0;
  int m = 0;
  bool reduced = false;
  std::uint64_t subsets = 0;
  std::size_t min_count = 0;
  std::size_t max_count = 0;
  std::map<std::size_t, std::uint64_t> histogram;
};

struct StatsOptions {
  bool reduced = true;
  unsigned parallelism = 1;
  std::uint64_t max_subsets = 300'000'000;  // guard; override to exceed
  bool override_guard = false;
};

// Rows negative on all m chosen columns, over every m-subset of columns
// (first column fixed to 0 in reduced mode). Reduced mode refuses to run
// until the XOR-invariance suite passes for this t.
IntersectionStats intersection_stats(int t, int m, const StatsOptions& opts);

// Exhaustive (t <= 3) or sampled (t = 4) confirmation that translating both
// arguments leaves the sign unchanged; gates the reduced enumeration.
bool xor_invariance_holds(int t, std::uint64_t seed = 0,
                          std::size_t samples = 100000);

// k rows drawn from the common-negative rows of s columns (seeded choice of
// a qualifying column subset; rows are the k smallest after translation).
StateSet construct_candidate(int t, int s, int k, std::uint64_t seed);

struct TheoremCheck {
  std::string claim;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct TheoremReport {
  std::string theorem;
  std::vector<TheoremCheck> checks;
  bool overall_pass = false;
};

struct TheoremOptions {
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  bool long_running = false;
  unsigned parallelism = 1;
  ResultCache* cache = nullptr;
  bool no_timestamp = false;
};

// thm3: full quadruple census against the criterion plus the family list.
// thm4: counting checks at t=3, sampled 6/7-subsets all alpha = 1, and one
//       8-state candidate with alpha < 1 (7-subset count is 2/5 of samples).
// thm5: counting checks at t=4; the k=14 samples and k=15 candidate run only
//       with long_running set.
TheoremReport verify_theorem(const std::string& name, const TheoremOptions& opts);

// n seeded uniformly random k-subsets evaluated (screen mode) and persisted.
std::vector<CensusRecord> random_sample_census(int t, int k, std::size_t n,
                                               std::uint64_t seed,
                                               const EvalOptions& opts);

// No persisted pair S inside S' may have alpha(S) < 1 with alpha(S') = 1.
struct ClosureViolation {
  std::string inner;
  std::string outer;
};
std::vector<ClosureViolation> downward_closure_violations(
    const std::vector<CensusRecord>& records);

}  // namespace lppt
