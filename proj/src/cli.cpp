#include "forge/cli.hpp"

#include "forge/bounded.hpp"
#include "forge/goedel.hpp"
#include "forge/propositional.hpp"
#include "forge/suite.hpp"
#include "forge/verifier.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace forge::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << contents;
}

// "q", "pa", "q0", each optionally followed by "+Con" suffixes.
Theory resolve_theory(const std::string& name) {
  std::string base = name;
  int extensions = 0;
  while (base.size() > 4 && base.compare(base.size() - 4, 4, "+Con") == 0) {
    base.resize(base.size() - 4);
    ++extensions;
  }
  Theory T = make_theory(base);
  for (int i = 0; i < extensions; ++i) T = extend_with_con(T);
  return T;
}

Formula formula_in(const TheorySpec& T, const std::string& text) { return parse_formula(text, T.arity_lookup()); }

Proof proof_file(const TheorySpec& T, const std::string& path) {
  return parse_proof(read_file(path), T.arity_lookup());
}

NumeralMode mode_of(bool binary) { return binary ? NumeralMode::Binary : NumeralMode::Unary; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& v : s) out += (out.empty() ? "" : " ") + v;
  return out;
}

std::string status_name(SearchStatus s) {
  switch (s) {
  case SearchStatus::Found: return "found";
  case SearchStatus::None: return "none";
  case SearchStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

std::string membership_name(Membership m) {
  switch (m) {
  case Membership::In: return "in";
  case Membership::Out: return "out";
  case Membership::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

std::optional<AxiomSchema> schema_by_name(const TheorySpec& T, std::string name) {
  auto squash = [](std::string s) {
    std::string out;
    for (char ch : s)
      if (ch != ' ') out += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
  };
  name = squash(name);
  for (const auto& s : schemata(T))
    if (squash(schema_name(s)) == name) return s;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Propositional families

ClauseSet pigeonhole_clauses(std::uint32_t pigeons, std::uint32_t holes) {
  ClauseSet cs;
  cs.num_vars = pigeons * holes;
  for (std::uint32_t p = 0; p < pigeons; ++p) {
    std::vector<Literal> some;
    for (std::uint32_t h = 0; h < holes; ++h) some.push_back({p * holes + h, true});
    cs.clauses.push_back(make_clause(some));
  }
  for (std::uint32_t h = 0; h < holes; ++h)
    for (std::uint32_t p = 0; p < pigeons; ++p)
      for (std::uint32_t q = p + 1; q < pigeons; ++q)
        cs.clauses.push_back(make_clause({{p * holes + h, false}, {q * holes + h, false}}));
  return cs;
}

PropFormula negated_cnf(const ClauseSet& cs) {
  std::vector<PropFormula> conj;
  for (const auto& c : cs.clauses) {
    std::vector<PropFormula> lits;
    for (const auto& l : c) lits.push_back(l.positive ? PropFormula::var(l.var) : fold_not(PropFormula::var(l.var)));
    conj.push_back(big_or(lits));
  }
  return PropFormula::negate(big_and(conj));
}

const char* const kFamilies = "php, chain, parity";

PropFormula family_member(const std::string& family, unsigned n) {
  if (family == "php") return negated_cnf(pigeonhole_clauses(n + 1, n));
  if (family == "chain") {
    std::vector<PropFormula> premises{PropFormula::var(0)};
    for (std::uint32_t i = 0; i < n; ++i)
      premises.push_back(PropFormula::implies(PropFormula::var(i), PropFormula::var(i + 1)));
    return PropFormula::implies(big_and(premises), PropFormula::var(n));
  }
  if (family == "parity") {
    static const Formula parity =
        parse_formula("!exists<= y x (y + y = x) -> exists<= y x (S(y + y) = x)");
    return translate_delta0(parity, "x", n);
  }
  throw UsageError("unknown family '" + family + "' (expected " + kFamilies + ")");
}

ProofSystem system_by_name(const std::string& name, const std::vector<Formula>& theorems = {},
                           const Theory& T = nullptr) {
  if (name == "tt") return truth_table_system();
  if (name == "res") return resolution_system();
  if (name == "er") return extended_resolution_system();
  if (name == "pt") {
    const Theory theory = T ? T : standard_theory();
    AxiomOracle oracle = [theory, theorems](std::size_t i, std::size_t n) -> std::optional<PropFormula> {
      if (i >= theorems.size()) return std::nullopt;
      try {
        return translate_delta0(*theory, theorems[i], "x", static_cast<unsigned>(n));
      } catch (const TranslationError&) {
        return std::nullopt;
      }
    };
    return axiom_extended_system("pt", oracle);
  }
  throw UsageError("unknown proof system '" + name + "' (expected tt, res, er, pt)");
}

std::vector<Formula> theorem_registry(const TheorySpec& T, const std::string& path) {
  std::vector<Formula> out;
  if (path.empty()) return out;
  std::istringstream in(read_file(path));
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    out.push_back(formula_in(T, line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Command table

const std::vector<CommandInfo> kCommands = {
    {"parse", "parse <formula>: print, size, free variables, code",
     {"parse_formula", "print_formula", "free_variables", "formula_size", "encode_formula"}},
    {"subst", "subst <formula> <var> <term>: capture-avoiding substitution", {"substitute"}},
    {"numeral", "numeral <n> [--binary]: the numeral term for n", {"numeral"}},
    {"eval", "eval <theory> <sentence> [--term]: truth in the standard model", {"eval_delta0", "eval_closed_term"}},
    {"axioms", "axioms <theory>: schemata and axioms of a theory", {"robinson_axioms"}},
    {"match", "match <theory> <schema> <formula>: schema instance test", {"match_schema"}},
    {"check", "check <theory> <proof-file> <formula> [--k k] [--lines] [--cost]",
     {"proof_of", "check_line", "check_witness", "proof_of_with_cost"}},
    {"bench verifier", "bench verifier --k a:b[:s] --m a:b[:s] [--csv out.csv]", {"proof_of_with_cost"}},
    {"code", "code <theory> (<formula> | --proof file | --decode n)", {"encode_formula", "encode_proof"}},
    {"pr", "pr <theory> <formula> --m m: bounded provability formula", {"provability_formula_bounded"}},
    {"diagonalize", "diagonalize <theory> --psi <formula-with-x> [--out file]", {"diagonalize"}},
    {"goedel", "goedel <theory> --m m [--binary-numerals] [--out file]", {"goedel_sentence_bounded"}},
    {"con", "con <theory> --m m [--binary-numerals]", {"con_bounded", "eval_delta0"}},
    {"search", "search <theory> <formula> --bound n", {"enumerate_proofs"}},
    {"member", "member <theory> <formula> --k k [--by-witness]", {"l_k_membership"}},
    {"shortest", "shortest <theory> <formula> --cap n", {"shortest_proof_length"}},
    {"extend", "extend <theory> [--m m]", {"extend_with_con"}},
    {"regen", "regen --depth d [--m m] [--report out.json]", {"regeneration_demo"}},
    {"demo", "demo [--depth d]: the regeneration walkthrough", {"regeneration_demo"}},
    {"prop check", "prop check <dimacs> <proof> [--extended]", {"check_resolution"}},
    {"prop taut", "prop taut <formula> [--proof file --system tt|res|er|pt]",
     {"is_tautology_bruteforce", "taut_proof_check"}},
    {"prop translate", "prop translate <formula> --n n [--x var] [--dimacs]", {"translate_delta0"}},
    {"prop sp", "prop sp --family f --system s --max-n n --cap c [--csv out]", {"measure_s_p"}},
    {"prop psim", "prop psim --family f --max-n n [--broken] [--csv out]", {"p_simulation_check"}},
    {"suite", "suite [--config file] [--report out.json] [--only ids]", {"run"}},
};

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  int code = kExitOk;
};

} // namespace

const std::vector<CommandInfo>& command_table() { return kCommands; }

int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
  Ctx ctx{out, err};
  CLI::App app{"forge: proof checking, Goedel coding and bounded provability for arithmetic", "forge"};
  app.set_version_flag("--version", std::string("forge ") + FORGE_VERSION);
  app.require_subcommand(1);
  std::string grammar =
      "\nFormulas: t = u, !A, A -> B, A & B, A | B, A <-> B, forall x A, exists x A,\n"
      "forall<= x t A, exists<= x t A. Terms: 0, S(t), t + u, t * u, x, f(t, ..).\n"
      "Theories: q0, q, pa, optionally with +Con suffixes (q+Con+Con).\n";
  app.footer(grammar);

  // Shared option storage.
  std::string theory = "q", a1, a2, a3, psi, out_path, csv, system = "res", family = "chain", config_path, report,
              only, proof_path, theorems, xvar = "x", decode, diag_out, csv_dir;
  std::uint64_t m = 2, k = 1, bound = 12, cap = 12, depth = 3, n = 2, max_n = 3, candidates = kDeskCandidateCap;
  std::string k_range = "10:200:10", m_range = "16";
  bool flag_term = false, flag_binary = false, flag_lines = false, flag_cost = false, flag_extended = false,
       flag_dimacs = false, flag_witness = false, flag_broken = false;

  auto budget = [&] {
    SearchBudget b;
    b.max_candidates = candidates;
    return b;
  };

  // --- syntax
  auto* parse = app.add_subcommand("parse", "Parse a formula and report its size, variables and code");
  parse->add_option("formula", a1)->required();
  parse->add_option("--theory", theory, "theory whose function symbols are allowed");
  parse->callback([&] {
    const auto T = resolve_theory(theory);
    const Formula f = formula_in(*T, a1);
    out << "formula: " << print_formula(f) << "\n"
        << "size: " << formula_size(f).symbol_count << "\n"
        << "free: " << join(free_variables(f)) << "\n"
        << "delta0: " << yes_no(is_delta0(f)) << "\n"
        << "sentence: " << yes_no(is_sentence(f)) << "\n"
        << "code: " << encode_formula(f) << "\n";
  });

  auto* subst = app.add_subcommand("subst", "Substitute a term for the free occurrences of a variable");
  subst->add_option("formula", a1)->required();
  subst->add_option("var", a2)->required();
  subst->add_option("term", a3)->required();
  subst->add_option("--theory", theory);
  subst->callback([&] {
    const auto T = resolve_theory(theory);
    out << print_formula(substitute(formula_in(*T, a1), a2, parse_term(a3, T->arity_lookup()))) << "\n";
  });

  auto* num = app.add_subcommand("numeral", "Print the numeral for n");
  num->add_option("n", a1)->required();
  num->add_flag("--binary", flag_binary, "binary numeral built from b0, b1");
  num->callback([&] {
    if (a1.empty() || a1.find_first_not_of("0123456789") != std::string::npos) throw UsageError("n: expected digits");
    const Natural v(a1);
    if (!flag_binary && v > 10000) throw UsageError("unary numerals are limited to n <= 10000");
    out << print_term(flag_binary ? binary_numeral(v) : numeral(v)) << "\n";
  });

  // --- goedel: evaluation
  auto* eval = app.add_subcommand("eval", "Evaluate a bounded sentence (or closed term) in the standard model");
  eval->add_option("theory", theory)->required();
  eval->add_option("expr", a1)->required();
  eval->add_flag("--term", flag_term, "evaluate a closed term");
  eval->callback([&] {
    const auto T = resolve_theory(theory);
    if (flag_term) {
      out << eval_closed_term(*T, parse_term(a1, T->arity_lookup())) << "\n";
      return;
    }
    const bool v = eval_delta0(*T, formula_in(*T, a1));
    out << (v ? "true" : "false") << "\n";
    ctx.code = v ? kExitOk : kExitNegative;
  });

  // --- calculus
  auto* axioms = app.add_subcommand("axioms", "List the schemata and axioms of a theory");
  axioms->add_option("theory", theory)->required();
  axioms->callback([&] {
    const auto T = resolve_theory(theory);
    out << "theory " << T->name << " (level " << T->level << ")\nschemata:";
    for (const auto& s : schemata(*T))
      if (s.kind != SchemaKind::Robinson) out << " " << schema_name(s);
    out << "\n";
    for (std::size_t i = 0; i < robinson_axioms().size(); ++i)
      out << "QAX " << i + 1 << ": " << print_formula(robinson_axioms()[i]) << "\n";
    for (std::size_t i = 0; i < T->extra_axioms.size(); ++i)
      out << "THAX " << i << ": " << print_formula(T->extra_axioms[i]) << "\n";
    for (const auto& d : T->def_extensions)
      out << "def " << d.symbol << "/" << d.arity << ": " << d.defining_axiom << "\n";
  });

  auto* match = app.add_subcommand("match", "Test whether a formula is an instance of a schema");
  match->add_option("theory", theory)->required();
  match->add_option("schema", a1, "P1 P2 P3 Q1 Q2 EQREFL EQSUBST IND COMPUTE or \"QAX n\"")->required();
  match->add_option("formula", a2)->required();
  match->callback([&] {
    const auto T = resolve_theory(theory);
    const auto s = schema_by_name(*T, a1);
    if (!s) throw UsageError("unknown schema '" + a1 + "' for theory " + T->name);
    MatchContext mc;
    mc.theory = T.get();
    const auto r = match_schema(*s, formula_in(*T, a2), mc);
    if (!r) {
      out << "no match\n";
      ctx.code = kExitNegative;
      return;
    }
    out << "instance of " << schema_name(*s) << "\n";
    for (const auto& [name, f] : r->formulas) out << "  " << name << " := " << print_formula(f) << "\n";
    for (const auto& [name, t] : r->terms) out << "  " << name << " := " << print_term(t) << "\n";
    if (!r->var.empty()) out << "  var := " << r->var << "\n";
  });

  // --- verifier
  auto* check = app.add_subcommand("check", "Decide ProofOf(proof, formula) in a theory");
  check->add_option("theory", theory)->required();
  check->add_option("proof-file", a1)->required();
  check->add_option("formula", a2)->required();
  check->add_option("--k", k, "also require size(proof) <= size(formula)^k")->check(CLI::PositiveNumber);
  check->add_flag("--lines", flag_lines, "check each recorded justification");
  check->add_flag("--cost", flag_cost, "report verifier cost counters");
  check->callback([&] {
    const auto T = resolve_theory(theory);
    const Proof p = proof_file(*T, a1);
    const Formula phi = formula_in(*T, a2);
    Diagnostics d;
    const auto v = proof_of_with_cost(*T, p, phi, &d);
    bool ok = v.accepted;
    if (flag_lines)
      for (std::size_t i = 0; i < p.lines.size(); ++i) {
        const auto lc = check_line(*T, p, i);
        out << "line " << i << ": " << (lc.ok ? "ok" : "rejected: " + lc.reason) << "\n";
      }
    for (const auto& r : d.reasons) out << "reason: " << r << "\n";
    if (check->count("--k")) {
      const bool w = check_witness(*T, phi, p, static_cast<unsigned>(k));
      out << "size " << p.size() << " vs bound " << size_power(phi.size(), static_cast<unsigned>(k))
          << (w ? ": witness" : ": not a witness") << "\n";
      ok = ok && w;
    }
    if (flag_cost)
      out << "lines_scanned " << v.cost.lines_scanned << "\npair_searches " << v.cost.pair_searches
          << "\nsymbol_comparisons " << v.cost.symbol_comparisons << "\nwall_ns " << v.cost.wall_time.count() << "\n";
    out << (ok ? "accepted" : "rejected") << "\n";
    ctx.code = ok ? kExitOk : kExitNegative;
  });

  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto* bench_v = bench->add_subcommand("verifier", "Verifier cost on synthetic modus ponens chains");
  bench_v->add_option("--k,--k-range", k_range, "line counts, a:b (doubling) or a:b:s");
  bench_v->add_option("--m,--m-range", m_range, "line sizes, a:b (doubling) or a:b:s");
  bench_v->add_option("--csv", csv, "write CSV here instead of stdout");
  bench_v->add_option("--theory", theory);
  bench_v->callback([&] {
    const auto T = resolve_theory(theory);
    std::vector<std::size_t> ks, ms;
    try {
      ks = parse_range(k_range);
      ms = parse_range(m_range);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    const auto rows = verifier_bench(*T, ks, ms);
    const std::string text = verifier_bench_csv(rows);
    if (csv.empty())
      out << text;
    else
      write_file(csv, text);
    for (const auto& r : rows)
      if (!r.accepted) ctx.code = kExitNegative;
  });

  // --- goedel
  auto* code = app.add_subcommand("code", "Goedel code of a formula or proof, or decode a code");
  code->add_option("theory", theory)->required();
  code->add_option("formula", a1);
  code->add_option("--proof", proof_path, "encode the formulas of a proof file");
  code->add_option("--decode", decode, "decode a formula code");
  code->callback([&] {
    const auto T = resolve_theory(theory);
    if (!decode.empty()) {
      if (decode.find_first_not_of("0123456789") != std::string::npos) throw UsageError("--decode: expected digits");
      const auto f = decode_formula(Natural(decode));
      if (!f) {
        out << "not a formula code\n";
        ctx.code = kExitNegative;
        return;
      }
      out << print_formula(*f) << "\n";
      return;
    }
    if (!proof_path.empty()) {
      const Natural c = encode_proof(proof_file(*T, proof_path));
      out << c << "\nlength " << code_length(c) << "\n";
      return;
    }
    if (a1.empty()) throw UsageError("code: give a formula, --proof or --decode");
    const Natural c = encode_formula(formula_in(*T, a1));
    out << c << "\nlength " << code_length(c) << "\n";
  });

  auto* pr = app.add_subcommand("pr", "Bounded provability formula for the code of a formula");
  pr->add_option("theory", theory)->required();
  pr->add_option("formula", a1)->required();
  pr->add_option("--m", m, "proof size bound")->required();
  pr->add_flag("--binary-numerals", flag_binary);
  pr->callback([&] {
    const auto T = resolve_theory(theory);
    out << print_formula(provability_formula_bounded(*T, m, encode_formula(formula_in(*T, a1)), mode_of(flag_binary)))
        << "\n";
  });

  auto print_diag = [&](const Diagonalization& d, const std::string& path) {
    const auto T = resolve_theory(theory);
    const bool ok = proof_of(*T, d.proof, d.equivalence);
    out << "psi: " << print_formula(d.psi) << "\n"
        << "delta: " << print_formula(d.sentence) << "\n"
        << "code: " << d.sentence_code << "\n"
        << "fixed point: " << print_formula(d.fixed_point) << "\n"
        << "proof: " << d.proof.lines.size() << " lines, size " << d.proof.size() << ", "
        << (ok ? "accepted" : "REJECTED") << "\n";
    if (!path.empty()) {
      write_file(path, print_proof(d.proof));
      out << "wrote " << path << "\n";
    }
    ctx.code = ok ? kExitOk : kExitNegative;
  };

  auto* diag = app.add_subcommand("diagonalize", "Fixed point of psi(x) with its equivalence proof");
  diag->add_option("theory", theory)->required();
  diag->add_option("--psi", psi, "formula with one free variable")->required();
  diag->add_option("--out", diag_out, "equivalence proof file")->default_val("equivalence.fp");
  diag->callback([&] {
    const auto T = resolve_theory(theory);
    print_diag(diagonalize(*T, formula_in(*T, psi)), diag_out);
  });

  auto* goedel = app.add_subcommand("goedel", "Sentence asserting it has no proof of size <= m");
  goedel->add_option("theory", theory)->required();
  goedel->add_option("--m", m)->required();
  goedel->add_flag("--binary-numerals", flag_binary);
  goedel->add_option("--out", out_path, "equivalence proof file");
  goedel->callback([&] {
    const auto T = resolve_theory(theory);
    print_diag(goedel_sentence_bounded(*T, m, mode_of(flag_binary)), out_path);
  });

  auto* con = app.add_subcommand("con", "Bounded consistency Con(m) and its truth value");
  con->add_option("theory", theory)->required();
  con->add_option("--m", m)->required();
  con->add_flag("--binary-numerals", flag_binary);
  con->callback([&] {
    const auto T = resolve_theory(theory);
    const Formula f = con_bounded(*T, m, mode_of(flag_binary));
    out << print_formula(f) << "\nsize " << f.size() << "\n";
    const bool v = eval_delta0(*T, f);
    out << "eval: " << (v ? "true" : "false") << "\n";
    ctx.code = v ? kExitOk : kExitNegative;
  });

  // --- bounded
  auto* search = app.add_subcommand("search", "Exhaustive search for a proof of size <= bound");
  search->add_option("theory", theory)->required();
  search->add_option("formula", a1)->required();
  search->add_option("--bound", bound)->required();
  search->add_option("--candidates", candidates, "candidate budget");
  search->callback([&] {
    const auto T = resolve_theory(theory);
    const auto r = enumerate_proofs(*T, formula_in(*T, a1), bound, budget());
    out << status_name(r.status) << " (" << r.candidates << " candidates)\n";
    if (r.proof) out << print_proof(*r.proof);
    ctx.code = r.status == SearchStatus::Found ? kExitOk : kExitNegative;
  });

  auto* member = app.add_subcommand("member", "Membership in L_k: a proof of size <= size(formula)^k");
  member->add_option("theory", theory)->required();
  member->add_option("formula", a1)->required();
  member->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  member->add_option("--candidates", candidates, "candidate budget");
  member->add_flag("--by-witness", flag_witness, "enumerate formula sequences instead (tiny caps only)");
  member->add_option("--witness-cap", cap, "size cap for --by-witness");
  member->callback([&] {
    const auto T = resolve_theory(theory);
    const BoundedLanguage L{T, static_cast<unsigned>(k)};
    const Formula f = formula_in(*T, a1);
    MembershipResult r;
    if (flag_witness) {
      WitnessSearchOptions w;
      w.size_cap = cap;
      r = l_k_membership_by_witness(L, f, w);
    } else {
      r = l_k_membership(L, f, budget());
    }
    out << membership_name(r.verdict) << " (bound " << r.size_bound << ")\n";
    if (r.witness) out << print_proof(*r.witness);
    ctx.code = r.verdict == Membership::In ? kExitOk : kExitNegative;
  });

  auto* shortest = app.add_subcommand("shortest", "Size of a shortest proof, up to a cap");
  shortest->add_option("theory", theory)->required();
  shortest->add_option("formula", a1)->required();
  shortest->add_option("--cap", cap)->required();
  shortest->add_option("--candidates", candidates, "candidate budget");
  shortest->callback([&] {
    const auto T = resolve_theory(theory);
    const auto r = shortest_proof_length(*T, formula_in(*T, a1), cap, budget());
    if (r.length) {
      out << *r.length << "\n";
      if (r.proof) out << print_proof(*r.proof);
    } else {
      out << (r.exhausted ? "budget_exhausted" : "exceeds_cap") << "\n";
      ctx.code = kExitNegative;
    }
  });

  auto* extend = app.add_subcommand("extend", "Add Con of a theory as a new axiom");
  extend->add_option("theory", theory)->required();
  extend->add_option("--m", m, "add the instance Con(m) instead of the unbounded sentence");
  extend->callback([&] {
    const auto T = resolve_theory(theory);
    std::optional<std::uint64_t> inst;
    if (extend->count("--m")) inst = m;
    const auto U = extend_with_con(T, inst);
    out << "theory " << U->name << " (level " << U->level << ", proof predicate "
        << proof_predicate_symbol(U->level) << ")\n";
    out << "new axiom: " << print_formula(U->extra_axioms.back()) << "\n";
  });

  auto* regen = app.add_subcommand("regen", "Iterate T -> T + Con(T) and report each level");
  regen->add_option("--depth", depth)->check(CLI::Range(1, kMaxTheoryLevel));
  regen->add_option("--m", m, "size bound for the Con instances");
  regen->add_option("--report", report, "write the JSON report here");
  regen->callback([&] {
    const auto r = regeneration_demo(static_cast<int>(depth), m, budget());
    for (const auto& l : r.levels)
      out << "level " << l.level << " " << l.theory << ": previous Con accepted " << yes_no(l.previous_con_accepted)
          << ", rejected below " << yes_no(l.previous_con_rejected_below) << ", own Con(" << r.m
          << ") search " << status_name(l.own_con_search) << ", true " << yes_no(l.con_instance_true) << "\n";
    out << (r.all_pass() ? "all levels pass" : "a level failed") << "\n";
    if (!report.empty()) write_file(report, regeneration_report_json(r));
    ctx.code = r.all_pass() ? kExitOk : kExitNegative;
  });

  auto* demo = app.add_subcommand("demo", "Walk through the regeneration of unprovable consistency statements");
  demo->add_option("--depth", depth)->check(CLI::Range(1, kMaxTheoryLevel));
  demo->callback([&] {
    const auto r = regeneration_demo(static_cast<int>(depth), m, budget());
    out << "Start from " << (r.levels.empty() ? std::string("q") : r.levels.front().theory)
        << " and repeatedly add consistency as an axiom.\n\n";
    for (const auto& l : r.levels) {
      out << "Level " << l.level << ": " << l.theory << "\n"
          << "  added axiom      " << print_formula(l.con) << "\n"
          << "  its code         " << l.con_code << "\n"
          << "  one-line proof of the added axiom: "
          << (l.previous_con_accepted ? "accepted here" : "REJECTED here") << ", "
          << (l.previous_con_rejected_below ? "rejected one level down" : "ACCEPTED one level down") << "\n"
          << "  own Con(" << r.m << ")       " << print_formula(l.con_instance) << "\n"
          << "  true in N: " << yes_no(l.con_instance_true) << "; proofs of size <= " << kDeskSizeCap << ": "
          << status_name(l.own_con_search) << "\n"
          << "  bounded Goedel sentence " << print_formula(l.goedel_sentence) << "\n\n";
    }
    out << "Each extension proves the previous consistency statement in one line, "
           "yet its own consistency statement again has no short proof.\n";
    ctx.code = r.all_pass() ? kExitOk : kExitNegative;
  });

  // --- propositional
  auto* prop = app.add_subcommand("prop", "Propositional proof systems");
  prop->require_subcommand(1);
  auto* pcheck = prop->add_subcommand("check", "Check a resolution refutation of a DIMACS clause set");
  pcheck->add_option("dimacs", a1)->required();
  pcheck->add_option("proof", a2)->required();
  pcheck->add_flag("--extended", flag_extended, "allow extension steps");
  pcheck->callback([&] {
    const ClauseSet cs = parse_dimacs(read_file(a1));
    const auto r = check_resolution_detailed(cs, parse_resolution_proof(read_file(a2)), flag_extended);
    out << (r.ok ? "accepted" : "rejected: " + r.reason) << "\n";
    ctx.code = r.ok ? kExitOk : kExitNegative;
  });

  auto* ptaut = prop->add_subcommand("taut", "Tautology by truth table, or check a proof in a proof system");
  ptaut->add_option("formula", a1)->required();
  ptaut->add_option("--proof", proof_path, "proof file");
  ptaut->add_option("--system", system, "tt, res, er or pt");
  ptaut->add_option("--theorems", theorems, "pt: file of formulas in x, one per line, cited by t steps");
  ptaut->add_option("--theory", theory);
  ptaut->callback([&] {
    const PropFormula f = parse_prop(a1);
    bool v = false;
    if (proof_path.empty()) {
      const auto bad = falsifying_assignment(f);
      v = !bad;
      out << (v ? "tautology" : "not a tautology") << "\n";
      if (bad) {
        out << "falsified by";
        for (std::uint32_t i = 0; i < f.num_vars(); ++i) out << " x" << i << "=" << ((*bad >> i) & 1);
        out << "\n";
      }
    } else {
      const auto T = resolve_theory(theory);
      const auto P = system_by_name(system, theorem_registry(*T, theorems), T);
      v = taut_proof_check(P, read_file(proof_path), f);
      out << (v ? "accepted" : "rejected") << "\n";
    }
    ctx.code = v ? kExitOk : kExitNegative;
  });

  auto* ptrans = prop->add_subcommand("translate", "Propositional translation of a bounded formula in x");
  ptrans->add_option("formula", a1)->required();
  ptrans->add_option("--n", n, "largest value of x")->required();
  ptrans->add_option("--x", xvar, "the free variable");
  ptrans->add_option("--theory", theory);
  ptrans->add_flag("--dimacs", flag_dimacs, "print the clauses of its negation");
  ptrans->callback([&] {
    const auto T = resolve_theory(theory);
    const PropFormula p = translate_delta0(*T, formula_in(*T, a1), xvar, static_cast<unsigned>(n));
    if (flag_dimacs)
      out << print_dimacs(tseitin_negation(p));
    else
      out << print_prop(p) << "\n";
  });

  auto* psp = prop->add_subcommand("sp", "Shortest proof sizes s_P over a formula family");
  psp->add_option("--family", family, kFamilies);
  psp->add_option("--system", system, "tt, res or er");
  psp->add_option("--max-n", max_n);
  psp->add_option("--cap", cap, "proof size cap");
  psp->add_option("--csv", csv);
  psp->callback([&] {
    const auto P = system_by_name(system);
    std::string text = "family,n,system,vars,formula_size,s_p,exhausted\n";
    for (unsigned i = 1; i <= max_n; ++i) {
      const PropFormula f = family_member(family, i);
      const auto s = measure_s_p(P, f, cap);
      text += family + "," + std::to_string(i) + "," + P.name + "," + std::to_string(f.num_vars()) + "," +
              std::to_string(f.size()) + "," + (s.size ? std::to_string(*s.size) : std::string("")) + "," +
              (s.exhausted ? "1" : "0") + "\n";
    }
    if (csv.empty())
      out << text;
    else
      write_file(csv, text);
  });

  auto* psim = prop->add_subcommand("psim", "Resolution simulates truth tables on a family");
  psim->add_option("--family", family, kFamilies);
  psim->add_option("--max-n", max_n);
  psim->add_flag("--broken", flag_broken, "use a translator that drops the final step");
  psim->add_option("--csv", csv);
  psim->callback([&] {
    std::vector<std::pair<PropFormula, std::string>> corpus;
    for (unsigned i = 1; i <= max_n; ++i) {
      const PropFormula f = family_member(family, i);
      corpus.emplace_back(f, truth_table_proof(f));
    }
    const auto tr = flag_broken ? drop_last_step(truth_table_to_resolution()) : truth_table_to_resolution();
    const auto r = p_simulation_check(resolution_system(), truth_table_system(), tr, corpus);
    std::string text = "n,source_valid,accepted,original_size,translated_size\n";
    for (std::size_t i = 0; i < r.items.size(); ++i) {
      const auto& it = r.items[i];
      text += std::to_string(i + 1) + "," + (it.source_valid ? "1" : "0") + "," + (it.accepted ? "1" : "0") + "," +
              std::to_string(it.original_size) + "," + std::to_string(it.translated_size) + "\n";
    }
    if (csv.empty())
      out << text;
    else
      write_file(csv, text);
    out << (r.all_accepted ? "all translations accepted" : "some translation rejected");
    if (r.growth_exponent) out << ", growth exponent " << *r.growth_exponent;
    out << "\n";
    ctx.code = r.all_accepted ? kExitOk : kExitNegative;
  });

  // --- suite
  auto* suite = app.add_subcommand("suite", "Run the acceptance criteria and write report.json");
  suite->add_option("--config", config_path, "key = value configuration file");
  suite->add_option("--report", report, "report path (overrides the config)");
  suite->add_option("--only", only, "comma-separated criterion numbers or keys");
  suite->add_option("--csv-dir", csv_dir, "directory for CSV series (overrides the config)");
  suite->add_flag("--print-config", flag_lines, "print the effective configuration and exit");
  suite->callback([&] {
    RunConfig c;
    if (!config_path.empty()) c = parse_config(read_file(config_path));
    if (!report.empty()) c.report = report;
    if (!csv_dir.empty()) c.csv_dir = csv_dir;
    if (flag_lines) {
      out << print_config(c);
      return;
    }
    std::vector<int> ids;
    std::stringstream ss(only);
    for (std::string item; std::getline(ss, item, ',');) {
      const int id = criterion_id(item);
      if (id == 0) throw UsageError("unknown criterion '" + item + "'");
      ids.push_back(id);
    }
    const auto results = run_suite(c, ids);
    bool all = true;
    for (const auto& r : results) {
      out << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.key << ": " << r.summary << "\n";
      all = all && r.pass;
      if (!c.csv_dir.empty())
        for (const auto& [name, text] : r.csv) write_file((std::filesystem::path(c.csv_dir) / name).string(), text);
    }
    if (!c.report.empty()) write_file(c.report, suite_report_json(c, results));
    ctx.code = all ? kExitOk : kExitNegative;
  });

  std::vector<std::string> args(argv_in.begin() + (argv_in.empty() ? 0 : 1), argv_in.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << grammar;
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "forge: " << e.what() << "\n" << grammar;
    return kExitUsage;
  } catch (const PropParseError& e) {
    err << "forge: " << e.what() << "\nPropositional formulas: x<i>, T, F, !A, A & B, A | B, A -> B\n";
    return kExitUsage;
  } catch (const ProofFormatError& e) {
    err << "forge: proof line " << e.line() << ": " << e.what()
        << "\nProof files: one line per formula, \"<idx>. <formula> ; <justification>\"\n";
    return kExitUsage;
  } catch (const DimacsError& e) {
    err << "forge: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResolutionFormatError& e) {
    err << "forge: " << e.what() << "\nResolution proofs: i <idx> | r <i> <j> <pivot> | e <var> <a> <b>\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "forge: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "forge: " << e.what() << "\n";
    return kExitNegative;
  }
  return ctx.code;
}

int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

} // namespace forge::cli
