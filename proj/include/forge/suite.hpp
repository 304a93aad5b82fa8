// Experiment runner: run configuration, the nine acceptance criteria, the
// verifier benchmark, and CSV/JSON emitters.

#pragma once

#include "forge/goedel.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

// Key-value text, one `key = value` per line, `#` comments. Ranges are
// `a:b` (a, 2a, 4a, .. capped by b, b included) or `a:b:s` (step s).
struct RunConfig {
  std::string theory = "q";
  NumeralMode numeral_mode = NumeralMode::Unary;
  std::uint64_t seed = 1;
  std::size_t size_cap = 24;
  std::uint64_t candidate_cap = 1'000'000;
  std::size_t witness_cap = 12;
  std::size_t membership_corpus = 200;
  std::size_t soundness_proofs = 1000;
  std::size_t eval_sentences = 10000;
  std::uint64_t con_max_m = 24;
  unsigned binary_max_exponent = 10;
  int regen_depth = 3;
  std::uint64_t regen_m = 2;
  std::size_t fuzz_invalid = 500;
  std::size_t translation_corpus = 200;
  unsigned translation_max_n = 6;
  std::string bench_k = "10:200:10";
  std::size_t bench_k_m = 16;
  std::string bench_m = "8:256";
  std::size_t bench_m_k = 50;
  std::string report = "report.json";
  std::string csv_dir;
  bool timings = false;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

RunConfig parse_config(std::string_view text);
std::string print_config(const RunConfig& config);
std::vector<std::size_t> parse_range(std::string_view text);

// ---------------------------------------------------------------------------
// Verifier benchmark

struct VerifierBenchRow {
  std::size_t k = 0, m = 0;
  bool accepted = false;
  std::uint64_t lines_scanned = 0, pair_searches = 0, symbol_comparisons = 0;
  std::uint64_t wall_ns = 0;
};

// Every (k, m) pair, in order, on synthetic modus ponens chains.
std::vector<VerifierBenchRow> verifier_bench(const TheorySpec& T, const std::vector<std::size_t>& ks,
                                             const std::vector<std::size_t>& ms);
std::string verifier_bench_csv(const std::vector<VerifierBenchRow>& rows);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Acceptance criteria

inline constexpr int kCriterionCount = 9;

struct CriterionResult {
  int id = 0;
  std::string key;
  std::string title;
  bool pass = false;
  std::string summary;
  nlohmann::ordered_json details;
  std::vector<std::pair<std::string, std::string>> csv; // file name, contents
  double seconds = 0;
};

CriterionResult run_criterion(int id, const RunConfig& config);
std::vector<CriterionResult> run_suite(const RunConfig& config, const std::vector<int>& ids = {});
std::string suite_report_json(const RunConfig& config, const std::vector<CriterionResult>& results);

// Lookup by number (1..9) or key.
int criterion_id(std::string_view name);
std::string criterion_key(int id);

} // namespace forge
