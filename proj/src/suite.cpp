#include "forge/suite.hpp"

#include "forge/bounded.hpp"
#include "forge/corpus.hpp"
#include "forge/kernels.hpp"
#include "forge/propositional.hpp"
#include "forge/verifier.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

namespace forge {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || end != v.data() + v.size()) throw ConfigError(key + ": expected a non-negative integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false");
}

} // namespace

std::vector<std::size_t> parse_range(std::string_view text) {
  std::vector<std::size_t> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    const std::string piece = trim(text.substr(start, colon == std::string_view::npos ? text.npos : colon - start));
    parts.push_back(static_cast<std::size_t>(to_u64("range", piece)));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() > 3 || parts[0] == 0 || parts[1] < parts[0]) throw ConfigError("range: expected a:b or a:b:s");
  std::vector<std::size_t> out;
  if (parts.size() == 3) {
    if (parts[2] == 0) throw ConfigError("range: step must be positive");
    for (std::size_t v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
  } else {
    for (std::size_t v = parts[0]; v < parts[1]; v *= 2) out.push_back(v);
  }
  if (out.back() != parts[1]) out.push_back(parts[1]);
  return out;
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string v = trim(std::string_view(line).substr(eq + 1));
    auto num = [&] { return to_u64(key, v); };
    if (key == "theory") {
      make_theory(v);
      c.theory = v;
    } else if (key == "numeral_mode") {
      if (v != "unary" && v != "binary") throw ConfigError("numeral_mode: expected unary or binary");
      c.numeral_mode = v == "binary" ? NumeralMode::Binary : NumeralMode::Unary;
    } else if (key == "seed") {
      c.seed = num();
    } else if (key == "size_cap") {
      c.size_cap = num();
    } else if (key == "candidate_cap") {
      c.candidate_cap = num();
    } else if (key == "witness_cap") {
      c.witness_cap = num();
    } else if (key == "membership_corpus") {
      c.membership_corpus = num();
    } else if (key == "soundness_proofs") {
      c.soundness_proofs = num();
    } else if (key == "eval_sentences") {
      c.eval_sentences = num();
    } else if (key == "con_max_m") {
      c.con_max_m = num();
    } else if (key == "binary_max_exponent") {
      c.binary_max_exponent = static_cast<unsigned>(std::min<std::uint64_t>(num(), 60));
    } else if (key == "regen_depth") {
      c.regen_depth = static_cast<int>(std::min<std::uint64_t>(num(), kMaxTheoryLevel));
    } else if (key == "regen_m") {
      c.regen_m = num();
    } else if (key == "fuzz_invalid") {
      c.fuzz_invalid = num();
    } else if (key == "translation_corpus") {
      c.translation_corpus = num();
    } else if (key == "translation_max_n") {
      c.translation_max_n = static_cast<unsigned>(std::min<std::uint64_t>(num(), 20));
    } else if (key == "bench_k") {
      parse_range(v);
      c.bench_k = v;
    } else if (key == "bench_k_m") {
      c.bench_k_m = num();
    } else if (key == "bench_m") {
      parse_range(v);
      c.bench_m = v;
    } else if (key == "bench_m_k") {
      c.bench_m_k = num();
    } else if (key == "report") {
      c.report = v;
    } else if (key == "csv_dir") {
      c.csv_dir = v;
    } else if (key == "timings") {
      c.timings = to_bool(key, v);
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

std::string print_config(const RunConfig& c) {
  std::ostringstream out;
  out << "theory = " << c.theory << "\n"
      << "numeral_mode = " << (c.numeral_mode == NumeralMode::Binary ? "binary" : "unary") << "\n"
      << "seed = " << c.seed << "\n"
      << "size_cap = " << c.size_cap << "\n"
      << "candidate_cap = " << c.candidate_cap << "\n"
      << "witness_cap = " << c.witness_cap << "\n"
      << "membership_corpus = " << c.membership_corpus << "\n"
      << "soundness_proofs = " << c.soundness_proofs << "\n"
      << "eval_sentences = " << c.eval_sentences << "\n"
      << "con_max_m = " << c.con_max_m << "\n"
      << "binary_max_exponent = " << c.binary_max_exponent << "\n"
      << "regen_depth = " << c.regen_depth << "\n"
      << "regen_m = " << c.regen_m << "\n"
      << "fuzz_invalid = " << c.fuzz_invalid << "\n"
      << "translation_corpus = " << c.translation_corpus << "\n"
      << "translation_max_n = " << c.translation_max_n << "\n"
      << "bench_k = " << c.bench_k << "\n"
      << "bench_k_m = " << c.bench_k_m << "\n"
      << "bench_m = " << c.bench_m << "\n"
      << "bench_m_k = " << c.bench_m_k << "\n"
      << "report = " << c.report << "\n"
      << "csv_dir = " << c.csv_dir << "\n"
      << "timings = " << (c.timings ? "true" : "false") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Verifier benchmark

std::vector<VerifierBenchRow> verifier_bench(const TheorySpec& T, const std::vector<std::size_t>& ks,
                                             const std::vector<std::size_t>& ms) {
  std::vector<VerifierBenchRow> rows;
  for (auto k : ks)
    for (auto m : ms) {
      const Proof p = synthetic_mp_chain(k, m);
      const auto v = proof_of_with_cost(T, p, p.conclusion());
      rows.push_back({k, m, v.accepted, v.cost.lines_scanned, v.cost.pair_searches, v.cost.symbol_comparisons,
                      static_cast<std::uint64_t>(v.cost.wall_time.count())});
    }
  return rows;
}

std::string verifier_bench_csv(const std::vector<VerifierBenchRow>& rows) {
  std::string out = "k,m,symbol_comparisons,wall_ns\n";
  for (const auto& r : rows)
    out += std::to_string(r.k) + "," + std::to_string(r.m) + "," + std::to_string(r.symbol_comparisons) + "," +
           std::to_string(r.wall_ns) + "\n";
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
  }
  return sxx > 0 ? sxy / sxx : 0;
}

// ---------------------------------------------------------------------------
// Criteria

namespace {

struct CriterionInfo {
  const char* key;
  const char* title;
};

constexpr CriterionInfo kCriteria[kCriterionCount] = {
    {"verifier-scaling", "verifier cost grows at most quadratically in lines and linearly in line size"},
    {"biconditional", "backward search and witness enumeration agree on L_k membership"},
    {"soundness", "search-found proofs of Delta_0 sentences are true; evaluator matches a reference"},
    {"fixed-point", "diagonalization yields checked equivalence proofs"},
    {"bounded-consistency", "Con(m) is true for every m up to the cap; binary size grows logarithmically"},
    {"regeneration", "each Con-extension accepts the previous Con and finds no short proof of its own"},
    {"resolution", "resolution checker accepts valid refutations and rejects fuzzed invalid ones"},
    {"translation", "propositional translation is a tautology iff the formula holds on 0..n"},
    {"truth-without-short-proof", "a true sentence outside L_1 that lies in L_k for a larger k"},
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(digits);
  o << v;
  return o.str();
}

SearchBudget budget_for(const RunConfig& c) {
  SearchBudget b;
  b.max_candidates = c.candidate_cap;
  b.max_size = c.size_cap;
  b.max_wall = std::chrono::hours(24); // candidate caps keep runs deterministic
  return b;
}

// --- 1

CriterionResult verifier_scaling(const RunConfig& c) {
  CriterionResult r;
  const auto T = make_theory(c.theory);
  const auto t0 = std::chrono::steady_clock::now();
  const auto k_rows = verifier_bench(*T, parse_range(c.bench_k), {c.bench_k_m});
  const auto m_rows = verifier_bench(*T, {c.bench_m_k}, parse_range(c.bench_m));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::vector<double> kx, ky, mx, my;
  bool all_accepted = true;
  for (const auto& row : k_rows) {
    kx.push_back(static_cast<double>(row.k));
    ky.push_back(static_cast<double>(row.symbol_comparisons));
    all_accepted = all_accepted && row.accepted;
  }
  for (const auto& row : m_rows) {
    mx.push_back(static_cast<double>(row.m));
    my.push_back(static_cast<double>(row.symbol_comparisons));
    all_accepted = all_accepted && row.accepted;
  }
  const double slope_k = loglog_slope(kx, ky);
  const double slope_m = loglog_slope(mx, my);
  r.pass = all_accepted && slope_k <= 2.2 && slope_m <= 1.3 && secs < 120;
  r.summary = "slope vs k " + fmt(slope_k) + " (<= 2.2), slope vs m " + fmt(slope_m) + " (<= 1.3), " +
              (all_accepted ? "all chains accepted" : "a chain was rejected") + (secs < 120 ? "" : ", over 2 min");
  r.details["slope_k"] = std::round(slope_k * 1e6) / 1e6;
  r.details["slope_m"] = std::round(slope_m * 1e6) / 1e6;
  r.details["all_accepted"] = all_accepted;
  r.details["under_two_minutes"] = secs < 120;
  auto rows_json = [](const std::vector<VerifierBenchRow>& rows) {
    json a = json::array();
    for (const auto& row : rows)
      a.push_back({{"k", row.k}, {"m", row.m}, {"symbol_comparisons", row.symbol_comparisons}});
    return a;
  };
  r.details["k_series"] = rows_json(k_rows);
  r.details["m_series"] = rows_json(m_rows);
  r.csv.emplace_back("verifier_k.csv", verifier_bench_csv(k_rows));
  r.csv.emplace_back("verifier_m.csv", verifier_bench_csv(m_rows));
  return r;
}

// --- 2

const char* verdict_name(Membership m) {
  switch (m) {
  case Membership::In: return "in";
  case Membership::Out: return "out";
  case Membership::BudgetExhausted: return "exhausted";
  }
  return "?";
}

CriterionResult biconditional(const RunConfig& c) {
  CriterionResult r;
  // Witness enumeration ranges over every formula of the signature, so the
  // comparison runs in bare Q where the signature has no function symbols.
  const auto T = make_theory("q0");
  std::vector<Formula> pool = corpus::small_formulas({"x", "y"}, 3, 7);
  corpus::Rng rng(c.seed * 7919 + 2);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<Formula> formulas;
  for (const char* s : {"0 = 0", "x = x", "forall x (x = x)", "0 = 0 -> 0 = 0", "forall y (0 = 0)"})
    formulas.push_back(parse_formula(s));
  for (const auto& f : pool) {
    if (formulas.size() >= c.membership_corpus) break;
    if (std::find(formulas.begin(), formulas.end(), f) == formulas.end()) formulas.push_back(f);
  }
  struct Item {
    Membership back = Membership::Out, fwd = Membership::Out;
    bool witness_ok = true;
  };
  const std::size_t n = formulas.size();
  std::vector<Item> items(n * 3);
  const SearchBudget budget = budget_for(c);
  WitnessSearchOptions wopt;
  wopt.size_cap = c.witness_cap;
  const auto total = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::int64_t i = 0; i < total; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Formula& f = formulas[idx / 3];
    const unsigned k = static_cast<unsigned>(idx % 3) + 1;
    const BoundedLanguage L{T, k};
    auto b = l_k_membership(L, f, budget);
    auto w = l_k_membership_by_witness(L, f, wopt);
    Item& it = items[idx];
    it.back = b.verdict;
    it.fwd = w.verdict;
    if (b.witness) it.witness_ok = check_witness(*T, f, *b.witness, k);
    if (w.witness) it.witness_ok = it.witness_ok && check_witness(*T, f, *w.witness, k);
  }
  std::size_t definitive = 0, in = 0, disagreements = 0, bad_witness = 0;
  json disagree = json::array();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    if (!it.witness_ok) ++bad_witness;
    if (it.back == Membership::BudgetExhausted || it.fwd == Membership::BudgetExhausted) continue;
    ++definitive;
    if (it.back == Membership::In) ++in;
    if (it.back != it.fwd) {
      ++disagreements;
      disagree.push_back({{"formula", print_formula(formulas[i / 3])},
                          {"k", i % 3 + 1},
                          {"backward", verdict_name(it.back)},
                          {"witness", verdict_name(it.fwd)}});
    }
  }
  r.pass = n >= 200 && disagreements == 0 && bad_witness == 0 && definitive > 0;
  r.summary = std::to_string(n) + " formulas x k in {1,2,3}: " + std::to_string(definitive) + " definitive (" +
              std::to_string(in) + " in), " + std::to_string(disagreements) + " disagreements";
  r.details["theory"] = "q0";
  r.details["formulas"] = n;
  r.details["items"] = items.size();
  r.details["definitive"] = definitive;
  r.details["definitive_in"] = in;
  r.details["disagreements"] = disagreements;
  r.details["invalid_witnesses"] = bad_witness;
  r.details["disagreeing_items"] = disagree;
  return r;
}

// --- 3

CriterionResult soundness(const RunConfig& c) {
  CriterionResult r;
  const auto T = make_theory(c.theory);
  corpus::Rng rng(c.seed * 7919 + 3);
  SearchBudget budget = budget_for(c);
  budget.max_candidates = std::min<std::uint64_t>(budget.max_candidates, 20'000);

  // Proofs found by search.
  std::vector<Proof> proofs;
  std::vector<Formula> proved;
  std::set<std::string> seen;
  std::size_t attempts = 0;
  const std::size_t max_attempts = std::max<std::size_t>(c.soundness_proofs * 400, 1000);
  while (proofs.size() < c.soundness_proofs && attempts < max_attempts) {
    std::vector<Formula> batch;
    while (batch.size() < 256 && attempts < max_attempts) {
      ++attempts;
      corpus::Delta0Shape shape;
      shape.depth = rng() % 3;
      shape.term_depth = 1 + rng() % 2;
      Formula f = corpus::random_delta0(rng, shape);
      if (f.size() <= c.size_cap - 2 && seen.insert(print_formula(f)).second) batch.push_back(f);
    }
    std::vector<std::optional<Proof>> found(batch.size());
    const auto nb = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
    for (std::int64_t i = 0; i < nb; ++i) {
      auto res = enumerate_proofs(*T, batch[static_cast<std::size_t>(i)], c.size_cap, budget);
      if (res.status == SearchStatus::Found) found[static_cast<std::size_t>(i)] = std::move(res.proof);
    }
    for (std::size_t i = 0; i < batch.size() && proofs.size() < c.soundness_proofs; ++i)
      if (found[i]) {
        proofs.push_back(*found[i]);
        proved.push_back(batch[i]);
      }
  }
  const auto checked = kernels::check_proofs_parallel(*T, proofs);
  std::size_t rejected = 0, false_theorems = 0;
  json bad = json::array();
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    if (!checked[i]) ++rejected;
    bool truth = false;
    try {
      truth = eval_delta0(*T, proved[i]);
    } catch (const EvalError&) {
    }
    if (!truth) {
      ++false_theorems;
      if (bad.size() < 10) bad.push_back(print_formula(proved[i]));
    }
  }

  // Evaluator against the reference.
  std::vector<Formula> sentences;
  for (std::size_t i = 0; i < c.eval_sentences; ++i) {
    corpus::Delta0Shape shape;
    shape.depth = 3;
    shape.term_depth = 2;
    sentences.push_back(corpus::random_delta0(rng, shape));
  }
  std::vector<char> agree(sentences.size(), 0);
  const auto ns = static_cast<std::int64_t>(sentences.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::int64_t i = 0; i < ns; ++i) {
    const Formula& f = sentences[static_cast<std::size_t>(i)];
    std::optional<bool> a, b;
    try {
      a = eval_delta0(*T, f);
    } catch (const EvalError&) {
    }
    try {
      b = corpus::reference_eval(f);
    } catch (const std::invalid_argument&) {
    }
    agree[static_cast<std::size_t>(i)] = a == b && a.has_value();
  }
  const auto disagreements = static_cast<std::size_t>(std::count(agree.begin(), agree.end(), 0));
  std::size_t true_count = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i)
    if (agree[i] && corpus::reference_eval(sentences[i])) ++true_count;

  r.pass = proofs.size() >= 1000 && rejected == 0 && false_theorems == 0 && sentences.size() >= 10000 &&
           disagreements == 0;
  r.summary = std::to_string(proofs.size()) + " proofs, " + std::to_string(false_theorems) + " false, " +
              std::to_string(rejected) + " rejected; evaluator vs reference on " + std::to_string(sentences.size()) +
              " sentences: " + std::to_string(disagreements) + " disagreements";
  r.details["proofs"] = proofs.size();
  r.details["sentences_tried"] = attempts;
  r.details["rejected_by_checker"] = rejected;
  r.details["false_theorems"] = false_theorems;
  r.details["false_examples"] = bad;
  r.details["eval_sentences"] = sentences.size();
  r.details["eval_true"] = true_count;
  r.details["eval_disagreements"] = disagreements;
  return r;
}

// --- 4

CriterionResult fixed_point(const RunConfig& c) {
  CriterionResult r;
  const auto T = make_theory(c.theory);
  struct Shape {
    std::string label;
    Formula psi;
  };
  std::vector<Shape> shapes;
  for (const auto& f : corpus::psi_shapes()) shapes.push_back({print_formula(f), f});
  for (std::uint64_t m : {1, 2, 3, 5, 8})
    shapes.push_back({"no proof of size <= " + std::to_string(m), bounded_unprovability_psi(*T, m)});
  for (std::uint64_t m : {4, 16})
    shapes.push_back({"no proof of size <= " + std::to_string(m) + " (binary)",
                      bounded_unprovability_psi(*T, m, NumeralMode::Binary)});
  std::size_t accepted = 0;
  json rows = json::array();
  std::string csv = "shape,sentence_size,proof_lines,proof_size,accepted\n";
  for (const auto& s : shapes) {
    bool ok = false;
    std::size_t lines = 0, size = 0, sentence = 0;
    std::string error;
    try {
      const auto d = diagonalize(*T, s.psi);
      ok = proof_of(*T, d.proof, d.equivalence) && decode_formula(d.sentence_code) == d.sentence &&
           substitute(d.psi, "x", code_numeral(d.sentence_code)) == d.fixed_point;
      lines = d.proof.lines.size();
      size = d.proof.size();
      sentence = d.sentence.size();
    } catch (const std::exception& e) {
      error = e.what();
    }
    if (ok) ++accepted;
    json row = {{"shape", s.label}, {"sentence_size", sentence}, {"proof_lines", lines}, {"proof_size", size},
                {"accepted", ok}};
    if (!error.empty()) row["error"] = error;
    rows.push_back(row);
    std::string label = s.label;
    std::replace(label.begin(), label.end(), ',', ';');
    csv += "\"" + label + "\"," + std::to_string(sentence) + "," + std::to_string(lines) + "," + std::to_string(size) +
           "," + (ok ? "1" : "0") + "\n";
  }
  r.pass = shapes.size() >= 20 && accepted == shapes.size();
  r.summary = std::to_string(accepted) + "/" + std::to_string(shapes.size()) +
              " equivalence proofs accepted, bounded-provability shapes included";
  r.details["shapes"] = shapes.size();
  r.details["accepted"] = accepted;
  r.details["items"] = rows;
  r.csv.emplace_back("fixed_point.csv", csv);
  return r;
}

// --- 5

CriterionResult bounded_consistency(const RunConfig& c) {
  CriterionResult r;
  const auto T = make_theory(c.theory);
  EvalOptions opts;
  opts.max_search_candidates = c.candidate_cap;
  opts.max_search_size = c.size_cap;
  SearchBudget budget = budget_for(c);
  std::vector<int> truth; // 1 true, 0 false, -1 undecided
  std::vector<int> search; // 1 no proof of falsum, 0 found, -1 exhausted
  std::string csv = "m,mode,size,eval,falsum_search\n";
  json rows = json::array();
  bool all_true = true;
  for (std::uint64_t m = 1; m <= c.con_max_m; ++m) {
    const Formula con = con_bounded(*T, m, c.numeral_mode);
    int t = -1;
    try {
      t = eval_delta0(*T, con, opts) ? 1 : 0;
    } catch (const EvalError&) {
    }
    const auto s = enumerate_proofs(*T, falsum(), m, budget);
    const int sv = s.status == SearchStatus::None ? 1 : s.status == SearchStatus::Found ? 0 : -1;
    truth.push_back(t);
    search.push_back(sv);
    all_true = all_true && t == 1 && sv == 1;
    rows.push_back({{"m", m}, {"size", con.size()}, {"eval", t}, {"falsum_search", sv}});
    csv += std::to_string(m) + "," + (c.numeral_mode == NumeralMode::Binary ? "binary" : "unary") + "," +
           std::to_string(con.size()) + "," + std::to_string(t) + "," + std::to_string(sv) + "\n";
  }
  // Con(m + 1) implies Con(m), for the evaluator and for the search.
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < truth.size(); ++i) {
    if (truth[i + 1] == 1 && truth[i] != 1) monotone = false;
    if (search[i + 1] == 1 && search[i] != 1) monotone = false;
  }
  // Binary numerals: size against log2 m.
  std::vector<double> lx, sy;
  json binary = json::array();
  for (unsigned e = 1; e <= c.binary_max_exponent; ++e) {
    const std::uint64_t m = std::uint64_t{1} << e;
    const std::size_t size = con_bounded(*T, m, NumeralMode::Binary).size();
    lx.push_back(e);
    sy.push_back(static_cast<double>(size));
    binary.push_back({{"m", m}, {"size", size}});
    csv += std::to_string(m) + ",binary," + std::to_string(size) + ",,\n";
  }
  double slope = 0, intercept = 0, residual = 0;
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += sy[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (sy[i] - my);
    }
    slope = sxy / sxx;
    intercept = my - slope * mx;
    for (std::size_t i = 0; i < lx.size(); ++i) residual = std::max(residual, sy[i] - (slope * lx[i] + intercept));
  }
  const bool logarithmic = lx.size() >= 2 && residual <= 0.5;
  r.pass = all_true && monotone && logarithmic;
  r.summary = "Con(m) true and no proof of falsum for m = 1.." + std::to_string(c.con_max_m) + ": " +
              (all_true ? "yes" : "no") + ", monotone: " + (monotone ? "yes" : "no") +
              ", binary size = " + fmt(slope, 2) + " log2(m) + " + fmt(intercept, 2) +
              " (max excess " + fmt(residual, 2) + ")";
  r.details["all_true"] = all_true;
  r.details["monotone"] = monotone;
  r.details["binary_slope"] = slope;
  r.details["binary_intercept"] = intercept;
  r.details["binary_max_excess"] = residual;
  r.details["levels"] = rows;
  r.details["binary_sizes"] = binary;
  r.csv.emplace_back("consistency.csv", csv);
  return r;
}

// --- 6

CriterionResult regeneration(const RunConfig& c) {
  CriterionResult r;
  const auto report = regeneration_demo(c.regen_depth, c.regen_m, budget_for(c));
  std::set<std::string> distinct;
  for (const auto& l : report.levels) distinct.insert(print_formula(l.con));
  const bool pass = report.all_pass() && distinct.size() == report.levels.size() &&
                    static_cast<int>(report.levels.size()) == c.regen_depth && c.regen_depth >= 3;
  r.pass = pass;
  r.summary = std::to_string(report.levels.size()) + " levels, " + std::to_string(distinct.size()) +
              " distinct Con sentences, " + (report.all_pass() ? "all checks pass" : "a check failed");
  r.details = json::parse(regeneration_report_json(report));
  return r;
}

// --- 7

CriterionResult resolution(const RunConfig& c) {
  CriterionResult r;
  corpus::Rng rng(c.seed * 7919 + 7);
  // Canonical refutation.
  const ClauseSet unit{1, {{Literal{0, true}}, {Literal{0, false}}}};
  const ResolutionProof canonical{{InputStep{0}, InputStep{1}, ResolveStep{0, 1, 0}}};
  const bool canonical_ok = check_resolution(unit, canonical, false);
  const bool wrong_pivot_rejected =
      !check_resolution(unit, ResolutionProof{{InputStep{0}, InputStep{1}, ResolveStep{0, 1, 1}}}, false);
  // Two pigeons, one hole: {p0}, {p1}, {!p0 | !p1}.
  const ClauseSet php = corpus::pigeonhole(2, 1);
  const ResolutionProof php_proof{
      {InputStep{0}, InputStep{1}, InputStep{2}, ResolveStep{0, 2, 0}, ResolveStep{1, 3, 1}}};
  const bool php_ok = check_resolution(php, php_proof, false);

  struct Case {
    ClauseSet cs;
    ResolutionProof proof;
    bool extended;
  };
  std::vector<Case> cases{{unit, canonical, false}, {php, php_proof, false}};
  cases.push_back({corpus::pigeonhole(3, 2), tree_refutation(corpus::pigeonhole(3, 2)), false});
  std::vector<ClauseSet> clause_sets{unit, php, corpus::pigeonhole(3, 2)};
  std::size_t sat_sets = 0;
  while (cases.size() < 80) {
    const auto vars = static_cast<std::uint32_t>(3 + rng() % 8);
    const std::size_t width = 1 + rng() % 3;
    ClauseSet cs = corpus::random_cnf(rng, vars, vars * 2 + rng() % (vars * 2), width);
    clause_sets.push_back(cs);
    if (is_satisfiable_bruteforce(cs)) {
      ++sat_sets;
      continue;
    }
    ResolutionProof p = tree_refutation(cs);
    if (cases.size() % 2 == 0) {
      // Same refutation with a leading extension step.
      ResolutionProof q;
      q.steps.push_back(ExtendStep{cs.num_vars, Literal{0, true}, Literal{1, false}});
      for (auto s : p.steps) {
        if (auto* rs = std::get_if<ResolveStep>(&s)) {
          rs->i += 3;
          rs->j += 3;
        }
        q.steps.push_back(s);
      }
      cases.push_back({cs, q, true});
    } else {
      cases.push_back({cs, p, false});
    }
  }
  std::size_t valid_accepted = 0;
  for (const auto& k : cases)
    if (check_resolution(k.cs, k.proof, k.extended) && corpus::reference_check_resolution(k.cs, k.proof, k.extended))
      ++valid_accepted;

  // Fuzzing.
  std::size_t invalid = 0, false_accepts = 0, false_rejects = 0, mutants = 0, unsound = 0;
  std::vector<std::pair<const ClauseSet*, ResolutionProof>> accepted;
  while (invalid < c.fuzz_invalid && mutants < c.fuzz_invalid * 20) {
    const Case& k = cases[rng() % cases.size()];
    ResolutionProof m = k.proof;
    const std::size_t rounds = 1 + rng() % 3;
    for (std::size_t i = 0; i < rounds; ++i) m = corpus::mutate(rng, m, k.cs.clauses.size());
    ++mutants;
    const bool main = check_resolution(k.cs, m, k.extended);
    const bool ref = corpus::reference_check_resolution(k.cs, m, k.extended);
    if (!ref) ++invalid;
    if (main && !ref) ++false_accepts;
    if (!main && ref) ++false_rejects;
    if (main && k.cs.num_vars <= 20 && is_satisfiable_bruteforce(k.cs)) ++unsound;
  }
  // Soundness of every accepted corpus refutation.
  std::size_t checked_sets = 0;
  for (const auto& k : cases) {
    if (k.cs.num_vars > 20 || !check_resolution(k.cs, k.proof, k.extended)) continue;
    ++checked_sets;
    if (is_satisfiable_bruteforce(k.cs)) ++unsound;
  }
  r.pass = canonical_ok && wrong_pivot_rejected && php_ok && valid_accepted == cases.size() &&
           invalid >= c.fuzz_invalid && c.fuzz_invalid >= 500 && false_accepts == 0 && false_rejects == 0 &&
           unsound == 0;
  r.summary = std::string("canonical ") + (canonical_ok ? "accepted" : "REJECTED") + ", PHP(2,1) " +
              (php_ok ? "accepted" : "REJECTED") + ", " + std::to_string(invalid) + " invalid mutants with " +
              std::to_string(false_accepts) + " false accepts, " + std::to_string(unsound) + " soundness violations";
  r.details["canonical_accepted"] = canonical_ok;
  r.details["wrong_pivot_rejected"] = wrong_pivot_rejected;
  r.details["php_2_1_accepted"] = php_ok;
  r.details["corpus_refutations"] = cases.size();
  r.details["corpus_refutations_accepted"] = valid_accepted;
  r.details["satisfiable_sets_skipped"] = sat_sets;
  r.details["mutants"] = mutants;
  r.details["invalid_mutants"] = invalid;
  r.details["false_accepts"] = false_accepts;
  r.details["false_rejects"] = false_rejects;
  r.details["soundness_checked_sets"] = checked_sets;
  r.details["soundness_violations"] = unsound;
  return r;
}

// --- 8

CriterionResult translation(const RunConfig& c) {
  CriterionResult r;
  const auto T = make_theory(c.theory);
  corpus::Rng rng(c.seed * 7919 + 8);
  std::vector<Formula> formulas;
  std::set<std::string> seen;
  while (formulas.size() < c.translation_corpus) {
    Formula f = corpus::random_delta0_in_x(rng, 2 + rng() % 2);
    if (seen.insert(print_formula(f)).second) formulas.push_back(f);
  }
  const unsigned max_n = c.translation_max_n;
  std::vector<int> outcome(formulas.size() * max_n, 0); // 1 agree, 0 disagree, -1 error
  const auto total = static_cast<std::int64_t>(outcome.size());
  const auto t0 = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::int64_t i = 0; i < total; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Formula& A = formulas[idx / max_n];
    const unsigned n = static_cast<unsigned>(idx % max_n) + 1;
    try {
      const bool taut = is_tautology_bruteforce(translate_delta0(*T, A, "x", n));
      bool holds = true;
      for (std::uint64_t v = 0; v <= n && holds; ++v) holds = eval_delta0(*T, substitute(A, "x", numeral(v)));
      outcome[idx] = taut == holds ? 1 : 0;
    } catch (const std::exception&) {
      outcome[idx] = -1;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t agree = 0, disagree = 0, errors = 0, tautologies = 0;
  json bad = json::array();
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i] == 1) ++agree;
    if (outcome[i] == -1) ++errors;
    if (outcome[i] == 0) {
      ++disagree;
      if (bad.size() < 10) bad.push_back({{"formula", print_formula(formulas[i / max_n])}, {"n", i % max_n + 1}});
    }
  }
  for (const auto& A : formulas) {
    bool all = true;
    for (std::uint64_t v = 0; v <= max_n && all; ++v) all = corpus::reference_eval(substitute(A, "x", numeral(v)));
    if (all) ++tautologies;
  }
  r.pass = formulas.size() >= 200 && max_n >= 6 && disagree == 0 && errors == 0 && secs < 300;
  r.summary = std::to_string(formulas.size()) + " formulas x n in 1.." + std::to_string(max_n) + ": " +
              std::to_string(agree) + " agree, " + std::to_string(disagree) + " disagree, " + std::to_string(errors) +
              " errors" + (secs < 300 ? "" : ", over 5 min");
  r.details["formulas"] = formulas.size();
  r.details["max_n"] = max_n;
  r.details["agreements"] = agree;
  r.details["disagreements"] = disagree;
  r.details["errors"] = errors;
  r.details["true_on_all_of_0_to_max_n"] = tautologies;
  r.details["under_five_minutes"] = secs < 300;
  r.details["disagreeing_items"] = bad;
  return r;
}

// --- 9

CriterionResult truth_without_short_proof(const RunConfig& c) {
  CriterionResult r;
  const auto T = make_theory(c.theory);
  corpus::Rng rng(c.seed * 7919 + 9);
  std::vector<Formula> scan;
  std::set<std::string> seen;
  for (const char* s : {"0 = 0 -> 0 = 0", "!(S(0) = 0)", "S(0) = S(0) -> 0 = 0", "0 = S(0) -> 0 = 0"}) {
    scan.push_back(parse_formula(s));
    seen.insert(print_formula(scan.back()));
  }
  while (scan.size() < 40) {
    Formula f = corpus::random_delta0_sentence(rng, 10, 2);
    if (seen.insert(print_formula(f)).second) scan.push_back(f);
  }
  const SearchBudget budget = budget_for(c);
  struct Row {
    bool truth = false;
    Membership l1 = Membership::BudgetExhausted;
    int k = 0;
    std::size_t proof_size = 0;
  };
  std::vector<Row> rows(scan.size());
  const auto total = static_cast<std::int64_t>(scan.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::int64_t i = 0; i < total; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Formula& f = scan[idx];
    Row& row = rows[idx];
    try {
      row.truth = eval_delta0(*T, f);
    } catch (const EvalError&) {
      continue;
    }
    if (!row.truth) continue;
    row.l1 = l_k_membership({T, 1}, f, budget).verdict;
    if (row.l1 != Membership::Out) continue;
    for (unsigned k = 2; k <= 3; ++k) {
      auto m = l_k_membership({T, k}, f, budget);
      if (m.verdict == Membership::In) {
        row.k = static_cast<int>(k);
        row.proof_size = m.witness->size();
        break;
      }
    }
  }
  json witnesses = json::array();
  std::size_t true_count = 0, out_of_l1 = 0;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (rows[i].truth) ++true_count;
    if (rows[i].l1 == Membership::Out) ++out_of_l1;
    if (rows[i].k)
      witnesses.push_back({{"sentence", print_formula(scan[i])},
                           {"size", scan[i].size()},
                           {"k", rows[i].k},
                           {"proof_size", rows[i].proof_size}});
  }
  r.pass = !witnesses.empty();
  r.summary = "scanned " + std::to_string(scan.size()) + " sentences: " + std::to_string(true_count) + " true, " +
              std::to_string(out_of_l1) + " definitively outside L_1, " + std::to_string(witnesses.size()) +
              " in L_k for k in {2,3}";
  if (!witnesses.empty())
    r.summary += "; e.g. " + witnesses[0]["sentence"].get<std::string>() + " (size " +
                 std::to_string(witnesses[0]["size"].get<std::size_t>()) + ", proof " +
                 std::to_string(witnesses[0]["proof_size"].get<std::size_t>()) + ")";
  r.details["scanned"] = scan.size();
  r.details["true"] = true_count;
  r.details["outside_l1"] = out_of_l1;
  r.details["witnesses"] = witnesses;
  return r;
}

} // namespace

int criterion_id(std::string_view name) {
  for (int i = 0; i < kCriterionCount; ++i)
    if (name == kCriteria[i].key || name == std::to_string(i + 1)) return i + 1;
  return 0;
}

std::string criterion_key(int id) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("no criterion " + std::to_string(id));
  return kCriteria[id - 1].key;
}

CriterionResult run_criterion(int id, const RunConfig& config) {
  using Fn = CriterionResult (*)(const RunConfig&);
  static constexpr Fn kRun[kCriterionCount] = {verifier_scaling, biconditional,  soundness,
                                               fixed_point,      bounded_consistency, regeneration,
                                               resolution,       translation,    truth_without_short_proof};
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("no criterion " + std::to_string(id));
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = kRun[id - 1](config);
  } catch (const std::exception& e) {
    r = CriterionResult{};
    r.pass = false;
    r.summary = std::string("error: ") + e.what();
  }
  r.id = id;
  r.key = kCriteria[id - 1].key;
  r.title = kCriteria[id - 1].title;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_suite(const RunConfig& config, const std::vector<int>& ids) {
  std::vector<int> which = ids;
  if (which.empty())
    for (int i = 1; i <= kCriterionCount; ++i) which.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : which) out.push_back(run_criterion(id, config));
  return out;
}

std::string suite_report_json(const RunConfig& config, const std::vector<CriterionResult>& results) {
  json j;
  j["schema"] = "forge.report/1";
  j["version"] = FORGE_VERSION;
  json cfg;
  std::istringstream in(print_config(config));
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find(" = ");
    cfg[line.substr(0, eq)] = line.substr(eq + 3);
  }
  j["config"] = cfg;
  bool all = true;
  j["criteria"] = json::array();
  for (const auto& r : results) {
    json e;
    e["id"] = r.id;
    e["key"] = r.key;
    e["title"] = r.title;
    e["pass"] = r.pass;
    e["summary"] = r.summary;
    if (config.timings) e["seconds"] = r.seconds;
    e["details"] = r.details.is_null() ? json::object() : r.details;
    j["criteria"].push_back(e);
    all = all && r.pass;
  }
  j["all_pass"] = all;
  return j.dump(2) + "\n";
}

} // namespace forge
