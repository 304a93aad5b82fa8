#include "forge/corpus.hpp"
#include "forge/goedel.hpp"
#include "forge/propositional.hpp"
#include "forge/suite.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace forge;

namespace {

PropFormula random_prop(std::mt19937_64& rng, int depth, std::uint32_t vars) {
  const unsigned r = depth <= 0 ? rng() % 2 : rng() % 6;
  switch (r) {
  case 0: return PropFormula::var(static_cast<std::uint32_t>(rng() % vars));
  case 1:
    if (rng() % 8) return PropFormula::var(static_cast<std::uint32_t>(rng() % vars));
    return PropFormula::constant(rng() % 2);
  case 2: return PropFormula::negate(random_prop(rng, depth - 1, vars));
  case 3: return PropFormula::conj(random_prop(rng, depth - 1, vars), random_prop(rng, depth - 1, vars));
  case 4: return PropFormula::disj(random_prop(rng, depth - 1, vars), random_prop(rng, depth - 1, vars));
  default: return PropFormula::implies(random_prop(rng, depth - 1, vars), random_prop(rng, depth - 1, vars));
  }
}

// Truth table by direct evaluation.
bool tautology_oracle(const PropFormula& f) {
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars()); ++a)
    if (!f.evaluate(a)) return false;
  return true;
}

bool satisfiable_oracle(const ClauseSet& cs) {
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << cs.num_vars); ++a) {
    bool all = true;
    for (const auto& c : cs.clauses) {
      bool any = false;
      for (const auto& l : c) any = any || (((a >> l.var) & 1) != 0) == l.positive;
      all = all && any;
    }
    if (all) return true;
  }
  return false;
}

ResolutionProof unit_refutation() {
  return {{InputStep{0}, InputStep{1}, ResolveStep{0, 1, 0}}};
}

ClauseSet unit_pair() {
  return {1, {make_clause({{0, true}}), make_clause({{0, false}})}};
}

// x0, x0 -> x1, ..., x(k-1) -> xk, !xk refuted by a linear chain.
std::pair<ClauseSet, ResolutionProof> implication_chain(std::uint32_t k) {
  ClauseSet cs;
  cs.num_vars = k + 1;
  ResolutionProof p;
  cs.clauses.push_back(make_clause({{0, true}}));
  for (std::uint32_t v = 0; v < k; ++v) cs.clauses.push_back(make_clause({{v, false}, {v + 1, true}}));
  cs.clauses.push_back(make_clause({{k, false}}));
  p.steps.push_back(InputStep{0});
  std::size_t last = 0;
  for (std::uint32_t v = 0; v < k; ++v) {
    p.steps.push_back(InputStep{v + 1});
    p.steps.push_back(ResolveStep{last, p.steps.size() - 1, v});
    last = p.steps.size() - 1;
  }
  p.steps.push_back(InputStep{k + 1});
  p.steps.push_back(ResolveStep{last, p.steps.size() - 1, k});
  return {cs, p};
}

} // namespace

TEST_CASE("tautology oracle examples") {
  CHECK(is_tautology_bruteforce(parse_prop("x0 | !x0")));
  CHECK_FALSE(is_tautology_bruteforce(parse_prop("x0")));
  CHECK(is_tautology_bruteforce(translate_delta0(parse_formula("x = x"), "x", 2)));
  CHECK_THROWS_AS(is_tautology_bruteforce(parse_prop("x30 | !x30")), TooManyVariables);
  CHECK(is_tautology_bruteforce(parse_prop("x30 | !x30"), 31));
  CHECK(falsifying_assignment(parse_prop("x0 -> x1")) == std::uint64_t{1});
}

TEST_CASE("prop formula round trip and oracle agreement") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 3000; ++i) {
    const PropFormula f = random_prop(rng, 4, 6);
    const std::string text = print_prop(f);
    REQUIRE_MESSAGE(parse_prop(text) == f, text);
    CHECK(is_tautology_bruteforce(f) == tautology_oracle(f));
  }
  CHECK_THROWS_AS(parse_prop("x0 &"), PropParseError);
  CHECK_THROWS_AS(parse_prop("y0"), PropParseError);
}

TEST_CASE("check_resolution examples") {
  const ClauseSet cs = unit_pair();
  CHECK(check_resolution(cs, unit_refutation(), false));
  ResolutionProof wrong = unit_refutation();
  std::get<ResolveStep>(wrong.steps[2]).pivot = 1;
  CHECK_FALSE(check_resolution(cs, wrong, false));
  const auto d = check_resolution_detailed(cs, wrong, false);
  CHECK_FALSE(d.reason.empty());

  const ClauseSet php = corpus::pigeonhole(2, 1);
  const ResolutionProof hand{{InputStep{0}, InputStep{1}, InputStep{2}, ResolveStep{0, 2, 0}, ResolveStep{1, 3, 1}}};
  CHECK(check_resolution(php, hand, false));
  CHECK(check_resolution(php, tree_refutation(php), false));
  CHECK(check_resolution(corpus::pigeonhole(3, 2), tree_refutation(corpus::pigeonhole(3, 2)), false));
  CHECK_THROWS_AS(tree_refutation(ClauseSet{1, {make_clause({{0, true}})}}), std::invalid_argument);

  // Indices must point backwards and the last clause must be empty.
  CHECK_FALSE(check_resolution(cs, {{InputStep{0}, ResolveStep{0, 1, 0}, InputStep{1}}}, false));
  CHECK_FALSE(check_resolution(cs, {{InputStep{0}, InputStep{1}}}, false));
  CHECK_FALSE(check_resolution(cs, {{InputStep{5}}}, false));
}

TEST_CASE("extension steps") {
  const ClauseSet cs = unit_pair();
  ResolutionProof er{{ExtendStep{1, {0, true}, {0, false}}, InputStep{0}, InputStep{1}, ResolveStep{3, 4, 0}}};
  CHECK(check_resolution(cs, er, true));
  CHECK_FALSE(check_resolution(cs, er, false));
  // Not fresh.
  ResolutionProof stale{{ExtendStep{0, {0, true}, {0, false}}, InputStep{0}, InputStep{1}, ResolveStep{3, 4, 0}}};
  CHECK_FALSE(check_resolution(cs, stale, true));
  // Defining clauses are usable.
  const ClauseSet two{2, {make_clause({{0, true}}), make_clause({{1, true}}), make_clause({{0, false}, {1, false}})}};
  ResolutionProof use{{ExtendStep{2, {0, true}, {1, true}}, InputStep{0}, InputStep{1}, InputStep{2},
                       ResolveStep{2, 3, 0}, ResolveStep{6, 4, 1}, ResolveStep{0, 7, 2}, ResolveStep{8, 5, 0},
                       ResolveStep{4, 9, 1}}};
  CHECK(check_resolution(two, use, true));
}

TEST_CASE("resolution soundness against brute force") {
  corpus::Rng rng(102);
  std::size_t refuted = 0;
  for (int i = 0; i < 400; ++i) {
    const auto vars = static_cast<std::uint32_t>(2 + rng() % 5);
    const ClauseSet cs = corpus::random_cnf(rng, vars, 4 + rng() % 14, 3);
    const bool sat = satisfiable_oracle(cs);
    CHECK(is_satisfiable_bruteforce(cs) == sat);
    if (sat) continue;
    const ResolutionProof p = tree_refutation(cs);
    REQUIRE(check_resolution(cs, p, false));
    REQUIRE(corpus::reference_check_resolution(cs, p, false));
    ++refuted;
    for (int j = 0; j < 20; ++j) {
      const ResolutionProof q = corpus::mutate(rng, p, cs.clauses.size());
      const bool main = check_resolution(cs, q, true);
      CHECK(main == corpus::reference_check_resolution(cs, q, true));
      if (main) CHECK_FALSE(satisfiable_oracle(cs));
    }
  }
  CHECK(refuted > 50);
}

TEST_CASE("checker work is linear in proof length") {
  std::vector<double> len, ops;
  for (std::uint32_t k = 50; k <= 1600; k *= 2) {
    const auto [cs, p] = implication_chain(k);
    const auto r = check_resolution_detailed(cs, p, false);
    REQUIRE(r.ok);
    len.push_back(static_cast<double>(p.steps.size()));
    ops.push_back(static_cast<double>(r.literal_ops));
  }
  CHECK(loglog_slope(len, ops) <= 1.2);
}

TEST_CASE("dimacs and proof text round trip") {
  corpus::Rng rng(103);
  for (int i = 0; i < 200; ++i) {
    const ClauseSet cs = corpus::random_cnf(rng, 6, 10, 3);
    const ClauseSet back = parse_dimacs(print_dimacs(cs));
    CHECK(back.num_vars == cs.num_vars);
    CHECK(back.clauses == cs.clauses);
  }
  const ClauseSet parsed = parse_dimacs("c comment\np cnf 2 2\n1 -2 0\n2 0\n");
  CHECK(parsed.clauses.size() == 2);
  CHECK(parsed.clauses[0] == make_clause({{0, true}, {1, false}}));
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n3 0\n"), DimacsError);
  CHECK_THROWS_AS(parse_dimacs("1 0\n"), DimacsError);
  CHECK(print_literal({2, false}) == "-3");
  CHECK(parse_literal("-3") == Literal{2, false});

  const ResolutionProof er{{ExtendStep{4, {0, true}, {1, false}}, InputStep{0}, ResolveStep{0, 3, 0}}};
  const std::string text = print_resolution_proof(er);
  CHECK(print_resolution_proof(parse_resolution_proof(text)) == text);
  CHECK(parse_resolution_proof("c x\ni 0\n\ni 1\nr 0 1 1\n").steps.size() == 3);
  CHECK_THROWS_AS(parse_resolution_proof("q 1\n"), ResolutionFormatError);
  CHECK_THROWS_AS(parse_resolution_proof("r 0 1\n"), ResolutionFormatError);
}

TEST_CASE("tseitin preserves satisfiability") {
  std::mt19937_64 rng(104);
  std::size_t checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const PropFormula f = random_prop(rng, 3, 4);
    const ClauseSet cs = tseitin_negation(f);
    if (cs.num_vars > 16) continue;
    ++checked;
    CHECK(satisfiable_oracle(cs) == !tautology_oracle(f));
  }
  CHECK(checked > 1000);
}

TEST_CASE("proof systems") {
  const PropFormula em = parse_prop("x0 | !x0");
  const ProofSystem res = resolution_system();
  const auto m = measure_s_p(res, em, 6);
  REQUIRE(m.size);
  CHECK(taut_proof_check(res, m.proof, em));
  CHECK_FALSE(taut_proof_check(res, m.proof, parse_prop("x0")));

  const ProofSystem tt = truth_table_system();
  const PropFormula f = parse_prop("(x0 & x1) -> (x1 | x2)");
  const std::string table = truth_table_proof(f);
  CHECK(taut_proof_check(tt, table, f));
  CHECK(tt.size(table) == (std::size_t{1} << 3) * 4);
  CHECK(measure_s_p(tt, f, 1000).size == (std::size_t{1} << 3) * 4);
  CHECK_FALSE(measure_s_p(tt, parse_prop("x0"), 1000).size);
  std::string flipped = table;
  flipped[0] = flipped[0] == '0' ? '1' : '0';
  CHECK_FALSE(taut_proof_check(tt, flipped, f));

  const auto direct = shortest_refutation(unit_pair(), 5, false);
  REQUIRE(direct.proof);
  CHECK(direct.proof->steps.size() == 3);
  CHECK_FALSE(shortest_refutation(unit_pair(), 2, false).proof);

  std::mt19937_64 rng(105);
  const ProofSystem er = extended_resolution_system();
  for (int i = 0; i < 2000; ++i) {
    std::string junk(rng() % 40, ' ');
    for (auto& c : junk) c = static_cast<char>(rng() % 256);
    for (const ProofSystem* P : {&res, &er, &tt}) CHECK_FALSE(taut_proof_check(*P, junk, parse_prop("x0")));
  }
}

TEST_CASE("extended resolution is never longer") {
  const ProofSystem res = resolution_system(), er = extended_resolution_system();
  std::size_t compared = 0;
  for (const char* s : {"x0 | !x0", "x0 -> x0", "!(x0 & !x0)", "(x0 & x1) -> x0", "x0 -> (x1 -> x0)", "T"}) {
    const PropFormula a = parse_prop(s);
    const auto r = measure_s_p(res, a, 12), e = measure_s_p(er, a, 12);
    if (!r.size || !e.size) continue;
    ++compared;
    CHECK(*e.size <= *r.size);
  }
  CHECK(compared >= 3);
}

TEST_CASE("translate examples") {
  const auto xx = translate_delta0(parse_formula("x = x"), "x", 1);
  CHECK(xx.num_vars() == 2);
  CHECK(is_tautology_bruteforce(xx));
  CHECK(is_tautology_bruteforce(translate_delta0(parse_formula("!(S(x) = 0)"), "x", 2)));
  const auto zero = translate_delta0(parse_formula("x = 0"), "x", 1);
  const auto bad = falsifying_assignment(zero);
  REQUIRE(bad);
  CHECK(*bad == 2); // x_1 alone: x = 1
  CHECK_THROWS_AS(translate_delta0(parse_formula("forall y (x = y)"), "x", 2), TranslationError);
  CHECK_THROWS_AS(translate_delta0(parse_formula("x = y"), "x", 2), TranslationError);
  CHECK(is_tautology_bruteforce(translate_delta0(parse_formula("exists<= y x (y + y = x + x)"), "x", 4)));
  CHECK_FALSE(is_tautology_bruteforce(translate_delta0(parse_formula("exists<= y x (y + y = x)"), "x", 4)));
}

TEST_CASE("translation adequacy") {
  corpus::Rng rng(106);
  std::size_t tautologies = 0, items = 0;
  for (int i = 0; i < 200; ++i) {
    const Formula A = corpus::random_delta0_in_x(rng, 2);
    for (unsigned n = 1; n <= 6; ++n) {
      bool all = true;
      for (unsigned v = 0; v <= n; ++v) {
        const Formula inst = substitute(A, "x", numeral(v));
        const bool truth = eval_delta0(inst);
        CHECK(truth == corpus::reference_eval(inst));
        all = all && truth;
      }
      const bool t = is_tautology_bruteforce(translate_delta0(A, "x", n));
      CHECK_MESSAGE(t == all, print_formula(A) << " n=" << n);
      tautologies += t;
      ++items;
    }
  }
  CHECK(tautologies > 0);
  CHECK(tautologies < items);
}

TEST_CASE("p-simulation") {
  std::vector<std::pair<PropFormula, std::string>> res_corpus, tt_corpus;
  const ProofSystem res = resolution_system(), er = extended_resolution_system(), tt = truth_table_system();
  for (const char* s : {"x0 | !x0", "(x0 & x1) -> x0", "x0 -> (x1 -> x0)", "(x0 -> x1) -> (!x1 -> !x0)",
                        "((x0 -> x1) & (x1 -> x2)) -> (x0 -> x2)"}) {
    const PropFormula a = parse_prop(s);
    res_corpus.emplace_back(a, print_resolution_proof(tree_refutation(tseitin_negation(a))));
    tt_corpus.emplace_back(a, truth_table_proof(a));
  }
  const auto id = p_simulation_check(er, res, identity_translator(), res_corpus);
  CHECK(id.all_accepted);
  for (const auto& it : id.items) CHECK(it.translated_size == it.original_size);

  const auto naive = p_simulation_check(res, tt, truth_table_to_resolution(), tt_corpus);
  CHECK(naive.all_accepted);
  CHECK(naive.growth_exponent.has_value());
  for (const auto& it : naive.items) CHECK(it.source_valid);

  const auto broken = p_simulation_check(er, res, drop_last_step(identity_translator()), res_corpus);
  CHECK_FALSE(broken.all_accepted);
  for (const auto& it : broken.items) {
    CHECK_FALSE(it.accepted);
    CHECK_FALSE(it.reason.empty());
  }
}

TEST_CASE("axiom steps cite available translations") {
  const auto T = standard_theory();
  const Formula thm = parse_formula("x = x");
  const AxiomOracle oracle = [&](std::size_t theorem, std::size_t n) -> std::optional<PropFormula> {
    if (theorem != 0) return std::nullopt;
    return translate_delta0(*T, thm, "x", static_cast<unsigned>(n));
  };
  const ProofSystem pt = axiom_extended_system("pt", oracle);
  const PropFormula alpha = translate_delta0(*T, thm, "x", 1);
  // The instance's root unit clause resolves against the negated root.
  const ClauseSet neg = tseitin_negation(alpha);
  ResolutionProof p;
  p.steps.push_back(AxiomStep{0, 1, {0, 1}, neg.num_vars});
  const auto inst = check_resolution_detailed(neg, p, true, oracle);
  REQUIRE_FALSE(inst.clauses.empty());
  CHECK(taut_proof_check(pt, print_resolution_proof(tree_refutation(neg)), alpha));
  ResolutionProof missing{{AxiomStep{3, 1, {0, 1}, neg.num_vars}}};
  CHECK_FALSE(check_resolution_detailed(neg, missing, true, oracle).ok);
  CHECK_FALSE(check_resolution(neg, p, true));
}
