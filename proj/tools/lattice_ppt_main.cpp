#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lppt/census.hpp"
#include "lppt/dense.hpp"
#include "lppt/pptlp.hpp"
#include "lppt/util.hpp"

namespace {

using nlohmann::json;
using namespace lppt;

struct CommonOpts {
  std::string format = "text";
  std::string output;
  std::string cache_dir;
  bool no_timestamp = false;
  unsigned parallel = 1;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_cache = true) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--output", opts.output, "Also write the result to this file");
  if (with_cache)
    cmd->add_option("--cache-dir", opts.cache_dir,
                    "Record store directory (default $LATTICE_PPT_CACHE_DIR or "
                    "./.lattice-ppt-cache)");
  cmd->add_flag("--no-timestamp", opts.no_timestamp,
                "Emit a fixed epoch timestamp (reproducible output)");
  cmd->add_option("--parallel", opts.parallel, "Worker thread bound")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
}

ResultCache open_cache(const CommonOpts& opts) {
  std::string dir = opts.cache_dir;
  if (dir.empty()) {
    const char* env = std::getenv("LATTICE_PPT_CACHE_DIR");
    dir = env != nullptr ? env : ".lattice-ppt-cache";
  }
  return ResultCache(dir);
}

void render_text(const json& j, std::ostream& os, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || value.is_array()) {
        os << pad << key << ":\n";
        render_text(value, os, indent + 2);
      } else {
        os << pad << key << ": "
           << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_object() || value.is_array()) {
        os << pad << "-\n";
        render_text(value, os, indent + 2);
      } else {
        os << pad << "- "
           << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void csv_escape(const std::string& field, std::ostream& os) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    os << field;
    return;
  }
  os << '"';
  for (const char c : field) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

std::string scalar_text(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

void render_csv(const json& j, std::ostream& os) {
  // Tabular when a "records" array is present; flat key,value otherwise.
  if (j.is_object() && j.contains("records") && j["records"].is_array() &&
      !j["records"].empty()) {
    const auto& records = j["records"];
    std::vector<std::string> header;
    for (const auto& [key, value] : records.front().items()) {
      (void)value;
      header.push_back(key);
    }
    for (std::size_t i = 0; i < header.size(); ++i)
      os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& rec : records) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ",";
        csv_escape(scalar_text(rec.at(header[i])), os);
      }
      os << "\n";
    }
    return;
  }
  os << "key,value\n";
  if (j.is_object())
    for (const auto& [key, value] : j.items()) {
      os << key << ",";
      csv_escape(value.is_structured() ? value.dump() : scalar_text(value), os);
      os << "\n";
    }
}

std::string render(const json& j, const std::string& format) {
  std::ostringstream os;
  if (format == "json")
    os << j.dump(2) << "\n";
  else if (format == "csv")
    render_csv(j, os);
  else
    render_text(j, os);
  return os.str();
}

int emit(const json& j, const CommonOpts& opts) {
  const std::string body = render(j, opts.format);
  std::cout << body;
  if (!opts.output.empty()) {
    std::ofstream out(opts.output);
    if (!out.is_open()) {
      std::cerr << "cannot write " << opts.output << "\n";
      return 1;
    }
    out << body;
  }
  return 0;
}

json record_json(const CensusRecord& rec) {
  json j;
  j["t"] = rec.t;
  j["k"] = rec.k;
  j["set"] = rec.set;
  j["alpha"] = rec.alpha;
  j["distinguishable"] = rec.distinguishable;
  j["method"] = rec.method;
  j["certificate_digest"] = rec.certificate_digest;
  j["timestamp"] = rec.timestamp;
  return j;
}

json report_json(const TheoremReport& report) {
  json j;
  j["theorem"] = report.theorem;
  j["overall_pass"] = report.overall_pass;
  json checks = json::array();
  for (const auto& c : report.checks) {
    json cj;
    cj["claim"] = c.claim;
    cj["expected"] = c.expected;
    cj["observed"] = c.observed;
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

json stats_json(const IntersectionStats& stats) {
  json j;
  j["t"] = stats.t;
  j["m"] = stats.m;
  j["reduced"] = stats.reduced;
  j["subsets"] = stats.subsets;
  j["min"] = stats.min_count;
  j["max"] = stats.max_count;
  json hist = json::object();
  for (const auto& [count, freq] : stats.histogram)
    hist[std::to_string(count)] = freq;
  j["histogram"] = std::move(hist);
  return j;
}

int run_check(const std::string& set_text, const std::string& mode_name,
              const std::string& cert_out, const std::string& cert_verify,
              const CommonOpts& opts) {
  const StateSet set = parse_set(set_text);

  if (!cert_verify.empty()) {
    std::ifstream in(cert_verify);
    if (!in.is_open()) {
      std::cerr << "cannot read " << cert_verify << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const Certificate cert = certificate_from_json(buf.str());
    const bool ok = verify_certificate(set, cert);
    json j;
    j["command"] = "check";
    j["set"] = format_set(set);
    j["certificate_file"] = cert_verify;
    j["certificate_verified"] = ok;
    j["certificate_type"] =
        cert.type == Certificate::Type::povm ? "povm" : "dual";
    j["value"] = to_string(cert.value);
    const int rc = emit(j, opts);
    return rc != 0 ? rc : (ok ? 0 : 1);
  }

  const SolveMode mode =
      mode_name == "screen" ? SolveMode::screen : SolveMode::exact;
  const AlphaResult result = alpha(set, mode);
  const std::string cert_json = certificate_to_json(result.certificate);

  if (!cert_out.empty()) {
    std::ofstream out(cert_out);
    if (!out.is_open()) {
      std::cerr << "cannot write " << cert_out << "\n";
      return 1;
    }
    out << cert_json << "\n";
  }

  ResultCache cache = open_cache(opts);
  CensusRecord rec;
  rec.t = set.t;
  rec.k = static_cast<int>(set.k);
  rec.set = format_set(set);
  rec.alpha = to_string(result.alpha);
  rec.distinguishable = result.distinguishable;
  rec.method = result.method;
  rec.certificate_digest = hex64(fnv1a64(cert_json));
  rec.timestamp = opts.no_timestamp ? kEpochTimestamp : rfc3339_now();
  if (cache.enabled()) cache.append(rec);

  json j = record_json(rec);
  j["command"] = "check";
  j["mode"] = mode_name;
  j["beta_prime"] = to_string(beta_prime(set));
  j["certificate_verified"] = true;  // alpha() refuses to return otherwise
  j["certificate_type"] =
      result.certificate.type == Certificate::Type::povm ? "povm" : "dual";
  return emit(j, opts);
}

int run_census(const std::string& mode_name, const CommonOpts& opts) {
  ResultCache cache = open_cache(opts);
  EvalOptions eval;
  eval.mode = mode_name == "exact" ? SolveMode::exact : SolveMode::screen;
  eval.cache = cache.enabled() ? &cache : nullptr;
  eval.no_timestamp = opts.no_timestamp;
  eval.parallelism = opts.parallel;
  eval.audit_seed = opts.seed;
  std::cerr << "census: evaluating all 1820 quadruples at t=2\n";
  const QuadCensusSummary summary = enumerate_quadruples_t2(eval);

  json j;
  j["command"] = "census";
  j["t"] = 2;
  j["k"] = 4;
  j["mode"] = mode_name;
  j["total"] = summary.total;
  j["criterion_true"] = summary.criterion_true;
  j["lp_indistinguishable"] = summary.lp_indistinguishable;
  j["disagreements"] = summary.disagreements;
  j["lp_solves"] = summary.lp_solves;
  j["indistinguishable_sets"] = summary.indistinguishable_sets;
  json records = json::array();
  for (const auto& rec : summary.records) records.push_back(record_json(rec));
  j["records"] = std::move(records);
  const int rc = emit(j, opts);
  return rc != 0 ? rc : (summary.disagreements == 0 ? 0 : 1);
}

int run_families(const CommonOpts& opts) {
  const auto families = maximal_families_t2();
  auto expected = canonical_families_t2();
  std::vector<std::vector<std::string>> got;
  json list = json::array();
  for (std::uint32_t c = 0; c < 16; ++c) {
    json fam;
    fam["column"] = index_from_linear(2, c).to_string();
    json rows = json::array();
    std::vector<std::string> names;
    for (const auto& m : families[c]) {
      rows.push_back(m.to_string());
      names.push_back(m.to_string());
    }
    fam["rows"] = std::move(rows);
    fam["cardinality"] = families[c].size();
    list.push_back(std::move(fam));
    std::sort(names.begin(), names.end());
    got.push_back(std::move(names));
  }
  std::sort(got.begin(), got.end());
  for (auto& fam : expected) std::sort(fam.begin(), fam.end());
  std::sort(expected.begin(), expected.end());
  const bool ok = got == expected;

  json j;
  j["command"] = "families";
  j["t"] = 2;
  j["families"] = std::move(list);
  j["matches_known_sets"] = ok;
  const int rc = emit(j, opts);
  return rc != 0 ? rc : (ok ? 0 : 1);
}

int run_lemmas(int t, int m, bool full, bool override_guard,
               const CommonOpts& opts) {
  StatsOptions so;
  so.reduced = !full;
  so.parallelism = opts.parallel;
  so.override_guard = override_guard;
  const IntersectionStats stats = intersection_stats(t, m, so);
  json j = stats_json(stats);
  j["command"] = "lemmas";
  return emit(j, opts);
}

int run_verify_theorem(const std::string& name, std::size_t samples,
                       bool long_run, const CommonOpts& opts) {
  ResultCache cache = open_cache(opts);
  TheoremOptions topts;
  topts.samples = samples;
  topts.seed = opts.seed;
  topts.long_running = long_run;
  topts.parallelism = opts.parallel;
  topts.cache = cache.enabled() ? &cache : nullptr;
  topts.no_timestamp = opts.no_timestamp;
  std::cerr << "verify-theorem: running " << name << "\n";
  const TheoremReport report = verify_theorem(name, topts);
  json j = report_json(report);
  j["command"] = "verify-theorem";
  const int rc = emit(j, opts);
  return rc != 0 ? rc : (report.overall_pass ? 0 : 1);
}

int run_oracle(int t, const CommonOpts& opts) {
  json reports = json::array();
  bool all = true;
  for (int ti = 1; ti <= t; ++ti) {
    const ReductionReport report = verify_reduction(ti);
    json rj;
    rj["t"] = report.t;
    json checks = json::array();
    for (const auto& c : report.checks) {
      json cj;
      cj["name"] = c.name;
      cj["pass"] = c.pass;
      cj["detail"] = c.detail;
      checks.push_back(std::move(cj));
      all = all && c.pass;
    }
    rj["checks"] = std::move(checks);
    reports.push_back(std::move(rj));
  }
  json j;
  j["command"] = "oracle";
  j["reports"] = std::move(reports);
  j["all_pass"] = all;
  const int rc = emit(j, opts);
  return rc != 0 ? rc : (all ? 0 : 1);
}

int run_bound(const std::string& set_text, const CommonOpts& opts) {
  const StateSet set = parse_set(set_text);
  json j;
  j["command"] = "bound";
  j["set"] = format_set(set);
  j["beta_prime"] = to_string(beta_prime(set));
  return emit(j, opts);
}

int run_reduced_costs(const std::string& set_text, const CommonOpts& opts) {
  const StateSet set = parse_set(set_text);
  const ReducedCostReport report = reduced_costs(set);
  json j;
  j["command"] = "reduced-costs";
  j["set"] = format_set(set);
  j["z0"] = to_string(report.z0);
  j["m_inverse_ok"] = report.m_inverse_ok;
  j["b_prime_ok"] = report.b_prime_ok;
  json blocks = json::array();
  for (const auto& b : report.blocks) {
    json bj;
    bj["block"] = b.block;
    bj["expected"] = b.expected;
    bj["pass"] = b.pass;
    blocks.push_back(std::move(bj));
  }
  j["blocks"] = std::move(blocks);
  j["all_pass"] = report.all_pass();
  const int rc = emit(j, opts);
  return rc != 0 ? rc : (report.all_pass() ? 0 : 1);
}

int run_sample(int t, int k, std::size_t n, const std::string& mode_name,
               const CommonOpts& opts) {
  ResultCache cache = open_cache(opts);
  EvalOptions eval;
  eval.mode = mode_name == "exact" ? SolveMode::exact : SolveMode::screen;
  eval.cache = cache.enabled() ? &cache : nullptr;
  eval.no_timestamp = opts.no_timestamp;
  eval.parallelism = opts.parallel;
  eval.audit_seed = opts.seed;
  std::cerr << "sample: " << n << " random " << k << "-subsets at t=" << t
            << "\n";
  const auto records = random_sample_census(t, k, n, opts.seed, eval);
  std::size_t indistinguishable = 0;
  json list = json::array();
  for (const auto& rec : records) {
    if (!rec.distinguishable) ++indistinguishable;
    list.push_back(record_json(rec));
  }
  json j;
  j["command"] = "sample";
  j["t"] = t;
  j["k"] = k;
  j["n"] = n;
  j["seed"] = opts.seed;
  j["indistinguishable"] = indistinguishable;
  j["records"] = std::move(list);
  return emit(j, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact PPT-distinguishability toolkit for lattice states"};
  app.require_subcommand(1);

  CommonOpts o_check, o_census, o_families, o_lemmas, o_thm, o_oracle, o_bound,
      o_rc, o_sample;
  std::string set_text, mode = "exact", census_mode = "screen",
                        sample_mode = "screen";
  std::string cert_out, cert_verify, theorem;
  int lem_t = 2, lem_m = 1, oracle_t = 2, sample_t = 2, sample_k = 4;
  int census_t = 2, census_k = 4;
  std::size_t samples = 500, sample_n = 100;
  bool full = false, override_guard = false, long_run = false;

  auto* c_check = app.add_subcommand("check", "Exact alpha for one state set");
  c_check->add_option("--set", set_text, "Comma-separated quaternary indices")
      ->required();
  c_check->add_option("--mode", mode, "exact | screen")
      ->check(CLI::IsMember({"exact", "screen"}))
      ->capture_default_str();
  c_check->add_option("--certificate", cert_out,
                      "Write the certificate JSON here");
  c_check->add_option(
      "--verify", cert_verify,
      "Verify a stored certificate against --set instead of solving");
  add_common(c_check, o_check);

  auto* c_census =
      app.add_subcommand("census", "Evaluate all 1820 quadruples at t=2");
  c_census->add_option("--t", census_t, "Number of Bell factors (must be 2)")
      ->capture_default_str();
  c_census->add_option("--k", census_k, "Subset size (must be 4)")
      ->capture_default_str();
  c_census->add_option("--mode", census_mode, "exact | screen")
      ->check(CLI::IsMember({"exact", "screen"}))
      ->capture_default_str();
  add_common(c_census, o_census);

  auto* c_families =
      app.add_subcommand("families", "The sixteen maximal six-state families");
  add_common(c_families, o_families, false);

  auto* c_lemmas = app.add_subcommand(
      "lemmas", "Common-negative counting over column subsets");
  c_lemmas->add_option("--t", lem_t, "Number of Bell factors (1..4)")->required();
  c_lemmas->add_option("--m", lem_m, "Columns per subset")->required();
  c_lemmas->add_flag("--full", full,
                     "Enumerate all subsets (no translation reduction)");
  c_lemmas->add_flag("--override-guard", override_guard,
                     "Run past the subset-count guard");
  add_common(c_lemmas, o_lemmas, false);

  auto* c_thm = app.add_subcommand("verify-theorem", "Machine-check one theorem");
  c_thm->add_option("--name", theorem, "thm3 | thm4 | thm5")
      ->required()
      ->check(CLI::IsMember({"thm3", "thm4", "thm5"}));
  c_thm->add_option("--samples", samples,
                    "Sampled subsets (thm4: 7-state count is 2/5 of this)")
      ->capture_default_str();
  c_thm->add_flag("--long", long_run,
                  "Run the long t=4 LP sampling (thm5; expect tens of minutes)");
  add_common(c_thm, o_thm);

  auto* c_oracle = app.add_subcommand(
      "oracle", "Exhaustive partial-transpose and dephasing identity checks");
  c_oracle->add_option("--t", oracle_t, "Check every t up to this (1..3)")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  add_common(c_oracle, o_oracle, false);

  auto* c_bound = app.add_subcommand("bound", "Closed-form dual bound beta'");
  c_bound->add_option("--set", set_text, "Comma-separated quaternary indices")
      ->required();
  add_common(c_bound, o_bound, false);

  auto* c_rc = app.add_subcommand(
      "reduced-costs", "Reduced-cost blocks at the trivial dual basis");
  c_rc->add_option("--set", set_text, "Comma-separated quaternary indices")
      ->required();
  add_common(c_rc, o_rc, false);

  auto* c_sample =
      app.add_subcommand("sample", "Random k-subset census (screen then exact)");
  c_sample->add_option("--t", sample_t, "Number of Bell factors")->required();
  c_sample->add_option("--k", sample_k, "Subset size")->required();
  c_sample->add_option("--n", sample_n, "Number of samples")
      ->capture_default_str();
  c_sample->add_option("--mode", sample_mode, "exact | screen")
      ->check(CLI::IsMember({"exact", "screen"}))
      ->capture_default_str();
  add_common(c_sample, o_sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_check->parsed())
      return run_check(set_text, mode, cert_out, cert_verify, o_check);
    if (c_census->parsed()) {
      if (census_t != 2 || census_k != 4)
        throw std::invalid_argument("census: only t=2, k=4 is enumerable");
      return run_census(census_mode, o_census);
    }
    if (c_families->parsed()) return run_families(o_families);
    if (c_lemmas->parsed())
      return run_lemmas(lem_t, lem_m, full, override_guard, o_lemmas);
    if (c_thm->parsed())
      return run_verify_theorem(theorem, samples, long_run, o_thm);
    if (c_oracle->parsed()) return run_oracle(oracle_t, o_oracle);
    if (c_bound->parsed()) return run_bound(set_text, o_bound);
    if (c_rc->parsed()) return run_reduced_costs(set_text, o_rc);
    if (c_sample->parsed())
      return run_sample(sample_t, sample_k, sample_n, sample_mode, o_sample);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
