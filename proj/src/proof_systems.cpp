#include "forge/kernels.hpp"
#include "forge/propositional.hpp"

#include <cmath>
#include <sstream>

namespace forge {

// ---------------------------------------------------------------------------
// Tautologies

namespace {

void check_vars(std::uint32_t n, std::uint32_t max_vars) {
  if (n > max_vars)
    throw TooManyVariables(std::to_string(n) + " variables exceed the limit of " + std::to_string(max_vars));
}

} // namespace

std::optional<std::uint64_t> falsifying_assignment(const PropFormula& f, std::uint32_t max_vars) {
  check_vars(f.num_vars(), max_vars);
  return kernels::falsify_parallel(f);
}

bool is_tautology_bruteforce(const PropFormula& f, std::uint32_t max_vars) {
  return !falsifying_assignment(f, max_vars).has_value();
}

bool is_satisfiable_bruteforce(const ClauseSet& cs, std::uint32_t max_vars) {
  check_vars(cs.num_vars, max_vars);
  return kernels::satisfy_parallel(cs).has_value();
}

// ---------------------------------------------------------------------------
// Handles

bool taut_proof_check(const ProofSystem& P, std::string_view proof, const PropFormula& alpha) {
  try {
    return P.verify(proof, alpha);
  } catch (...) {
    return false;
  }
}

SpMeasure measure_s_p(const ProofSystem& P, const PropFormula& alpha, std::size_t cap) {
  return P.shortest(alpha, cap);
}

std::string truth_table_proof(const PropFormula& alpha) {
  const std::uint32_t n = alpha.num_vars();
  check_vars(n, kMaxTruthTableVars);
  std::string out;
  for (std::uint64_t a = 0; a < (1ull << n); ++a) {
    for (std::uint32_t i = 0; i < n; ++i) out += ((a >> i) & 1u) ? '1' : '0';
    if (n) out += ' ';
    out += alpha.evaluate(a) ? "1\n" : "0\n";
  }
  return out;
}

namespace {

std::size_t count_symbols(std::string_view proof) {
  std::size_t n = 0;
  for (char c : proof)
    if (c == '0' || c == '1') ++n;
  return n;
}

bool verify_truth_table(std::string_view proof, const PropFormula& alpha) {
  const std::uint32_t n = alpha.num_vars();
  if (n > kMaxTruthTableVars) return false;
  std::istringstream in{std::string(proof)};
  std::string line;
  std::uint64_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= (1ull << n)) return false;
    std::string expect;
    for (std::uint32_t i = 0; i < n; ++i) expect += ((row >> i) & 1u) ? '1' : '0';
    if (n) expect += ' ';
    expect += '1';
    if (line != expect || !alpha.evaluate(row)) return false;
    ++row;
  }
  return row == (1ull << n);
}

std::size_t count_steps(std::string_view proof) {
  try {
    return parse_resolution_proof(proof).steps.size();
  } catch (const ResolutionFormatError&) {
    return 0;
  }
}

ProofSystem resolution_like(std::string name, bool extended, AxiomOracle axioms) {
  ProofSystem P;
  P.name = std::move(name);
  P.verify = [extended, axioms](std::string_view proof, const PropFormula& alpha) {
    const auto parsed = parse_resolution_proof(proof);
    return check_resolution_detailed(tseitin_negation(alpha), parsed, extended, axioms).ok;
  };
  P.size = count_steps;
  P.shortest = [extended](const PropFormula& alpha, std::size_t cap) {
    SpMeasure m;
    auto r = shortest_refutation(tseitin_negation(alpha), cap, extended);
    m.exhausted = r.exhausted;
    if (r.proof) {
      m.size = r.proof->steps.size();
      m.proof = print_resolution_proof(*r.proof);
    }
    return m;
  };
  return P;
}

} // namespace

ProofSystem truth_table_system() {
  ProofSystem P;
  P.name = "truth-table";
  P.verify = verify_truth_table;
  P.size = count_symbols;
  P.shortest = [](const PropFormula& alpha, std::size_t cap) {
    SpMeasure m;
    const std::uint32_t n = alpha.num_vars();
    if (n > kMaxTruthTableVars) {
      m.exhausted = true;
      return m;
    }
    const std::size_t size = (std::size_t{1} << n) * (n + 1);
    if (size <= cap && is_tautology_bruteforce(alpha)) {
      m.size = size;
      m.proof = truth_table_proof(alpha);
    }
    return m;
  };
  return P;
}

ProofSystem resolution_system() { return resolution_like("resolution", false, {}); }
ProofSystem extended_resolution_system() { return resolution_like("extended-resolution", true, {}); }
ProofSystem axiom_extended_system(std::string name, AxiomOracle axioms) {
  return resolution_like(std::move(name), true, std::move(axioms));
}

// ---------------------------------------------------------------------------
// Translators

ProofTranslator identity_translator() {
  return [](std::string_view proof, const PropFormula&) { return std::string(proof); };
}

ProofTranslator truth_table_to_resolution() {
  return [](std::string_view proof, const PropFormula& alpha) -> std::string {
    if (!verify_truth_table(proof, alpha)) return "";
    return print_resolution_proof(tree_refutation(tseitin_negation(alpha)));
  };
}

ProofTranslator drop_last_step(ProofTranslator inner) {
  return [inner = std::move(inner)](std::string_view proof, const PropFormula& alpha) {
    std::string out = inner(proof, alpha);
    while (!out.empty() && out.back() == '\n') out.pop_back();
    const auto cut = out.rfind('\n');
    out = cut == std::string::npos ? std::string() : out.substr(0, cut + 1);
    return out;
  };
}

PSimReport p_simulation_check(const ProofSystem& P, const ProofSystem& Q, const ProofTranslator& translator,
                              const std::vector<std::pair<PropFormula, std::string>>& corpus) {
  PSimReport report;
  report.all_accepted = true;
  std::vector<std::pair<double, double>> points;
  for (const auto& [alpha, proof] : corpus) {
    PSimItem item;
    item.source_valid = taut_proof_check(Q, proof, alpha);
    item.original_size = Q.size(proof);
    if (!item.source_valid) {
      item.reason = "source proof rejected by " + Q.name;
    } else {
      std::string translated;
      try {
        translated = translator(proof, alpha);
      } catch (const std::exception& e) {
        item.reason = std::string("translator failed: ") + e.what();
      }
      item.translated_size = P.size(translated);
      item.accepted = item.reason.empty() && taut_proof_check(P, translated, alpha);
      if (!item.accepted && item.reason.empty()) item.reason = "translated proof rejected by " + P.name;
      if (item.accepted && item.original_size > 0 && item.translated_size > 0)
        points.emplace_back(std::log(static_cast<double>(item.original_size)),
                            std::log(static_cast<double>(item.translated_size)));
    }
    report.all_accepted = report.all_accepted && item.accepted;
    report.items.push_back(std::move(item));
  }
  if (points.size() >= 2) {
    double mx = 0, my = 0;
    for (const auto& [x, y] : points) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
      sxx += (x - mx) * (x - mx);
      sxy += (x - mx) * (y - my);
    }
    if (sxx > 0) report.growth_exponent = sxy / sxx;
  }
  return report;
}

} // namespace forge
