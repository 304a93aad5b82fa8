#include "forge/bounded.hpp"
#include "forge/corpus.hpp"
#include "forge/verifier.hpp"

#include <doctest.h>
#include <json.hpp>

#include <set>

using namespace forge;

TEST_CASE("enumerate_proofs examples") {
  const auto T = standard_theory();
  const auto found = enumerate_proofs(*T, parse_formula("0=0"), 3);
  REQUIRE(found.status == SearchStatus::Found);
  CHECK(found.minimal);
  CHECK(found.proof->size() == 3);
  CHECK(proof_of(*T, *found.proof, parse_formula("0 = 0")));
  CHECK(enumerate_proofs(*T, parse_formula("!(0=0)"), kDeskSizeCap).status == SearchStatus::None);
  for (const char* f : {"0 = 0", "x = x", "!(0 = 0)", "forall x (x = x)"})
    CHECK(enumerate_proofs(*T, parse_formula(f), 0).status == SearchStatus::None);
  CHECK(enumerate_proofs(*T, parse_formula("0=0"), 2).status == SearchStatus::None);
}

TEST_CASE("enumeration is deterministic and reports exhaustion") {
  const auto T = standard_theory();
  const Formula f = parse_formula("0 = 0 -> 0 = 0");
  const auto a = enumerate_proofs(*T, f, 24);
  const auto b = enumerate_proofs(*T, f, 24);
  REQUIRE(a.proof);
  CHECK(print_proof(*a.proof) == print_proof(*b.proof));
  CHECK(a.candidates == b.candidates);
  SearchBudget tiny;
  tiny.max_candidates = 1;
  CHECK(enumerate_proofs(*T, parse_formula("!(0 = 0)"), 24, tiny).status == SearchStatus::BudgetExhausted);
  // A bound above the desk cap cannot be certified.
  CHECK(enumerate_proofs(*T, parse_formula("!(0 = 0)"), 1000).status == SearchStatus::BudgetExhausted);
}

TEST_CASE("found proofs are minimal") {
  const auto T = standard_theory();
  corpus::Rng rng(41);
  std::size_t found = 0;
  for (int i = 0; i < 300 && found < 40; ++i) {
    const Formula f = corpus::random_delta0_sentence(rng, 9, 1);
    SearchBudget b;
    b.max_candidates = 50000;
    const auto r = enumerate_proofs(*T, f, 20, b);
    if (r.status != SearchStatus::Found || !r.minimal) continue;
    ++found;
    CHECK(proof_of(*T, *r.proof, f));
    CHECK(enumerate_proofs(*T, f, r.proof->size() - 1, b).status == SearchStatus::None);
  }
  CHECK(found >= 20);
}

TEST_CASE("l_k membership examples") {
  const auto T = standard_theory();
  CHECK(l_k_membership({T, 2}, parse_formula("0=0")).verdict == Membership::In);
  const Formula imp = parse_formula("0 = 0 -> 0 = 0");
  CHECK(l_k_membership({T, 1}, imp).verdict == Membership::Out);
  const auto in = l_k_membership({T, 2}, imp);
  REQUIRE(in.verdict == Membership::In);
  CHECK(check_witness(*T, imp, *in.witness, 2));
  CHECK(in.witness->size() == 23);
  // The bounded Goedel sentence is far larger than the desk cap: never `in`.
  const auto d = goedel_sentence_bounded(*T, 1);
  for (unsigned k = 1; k <= 3; ++k) CHECK(l_k_membership({T, k}, d.sentence).verdict != Membership::In);
  CHECK(size_power(7, 2) == 49);
  CHECK(size_power(1000, 9) == size_power(1000, 10));
}

TEST_CASE("membership is monotone in k") {
  const auto T = make_theory("q0");
  SearchBudget b;
  b.max_candidates = 200000;
  for (const auto& f : corpus::small_formulas({"x"}, 3, 6)) {
    bool was_in = false;
    for (unsigned k = 1; k <= 3; ++k) {
      const auto r = l_k_membership({T, k}, f, b);
      if (was_in) CHECK(r.verdict == Membership::In);
      was_in = r.verdict == Membership::In;
    }
  }
}

TEST_CASE("search and witness paths agree") {
  const auto T = make_theory("q0");
  std::size_t definitive = 0;
  auto formulas = corpus::small_formulas({"x", "y"}, 3, 5);
  formulas.push_back(parse_formula("0 = 0 -> 0 = 0"));
  for (const auto& f : formulas)
    for (unsigned k = 1; k <= 2; ++k) {
      const auto a = l_k_membership({T, k}, f);
      const auto w = l_k_membership_by_witness({T, k}, f);
      if (a.verdict == Membership::BudgetExhausted || w.verdict == Membership::BudgetExhausted) continue;
      ++definitive;
      CHECK_MESSAGE(a.verdict == w.verdict, print_formula(f) << " k=" << k);
      if (w.witness) CHECK(check_witness(*T, f, *w.witness, k));
    }
  CHECK(definitive > 50);
}

TEST_CASE("definitive negatives do not depend on the budget") {
  const auto T = standard_theory();
  SearchBudget small, large;
  small.max_candidates = 200000;
  large.max_candidates = 2000000;
  for (const char* s : {"!(0 = 0)", "0 = S(0)", "0 = 0 -> 0 = 0", "x = 0", "!(x = x)"}) {
    const Formula f = parse_formula(s);
    for (unsigned k = 1; k <= 2; ++k) {
      const auto a = l_k_membership({T, k}, f, small);
      const auto b = l_k_membership({T, k}, f, large);
      if (a.verdict != Membership::BudgetExhausted) CHECK(a.verdict == b.verdict);
    }
  }
}

TEST_CASE("shortest proof length") {
  const auto T = standard_theory();
  const auto r = shortest_proof_length(*T, parse_formula("0=0"), 24);
  REQUIRE(r.length);
  CHECK(*r.length == 3);
  const auto none = shortest_proof_length(*T, parse_formula("!(0=0)"), kDeskSizeCap);
  CHECK_FALSE(none.length);
  CHECK_FALSE(none.exhausted);
  const auto U = extend_with_con(T, 1);
  for (const char* s : {"0 = 0", "0 = 0 -> 0 = 0", "S(0) + 0 = S(0)", "forall x (x = x)"}) {
    const auto a = shortest_proof_length(*T, parse_formula(s), 24);
    const auto b = shortest_proof_length(*U, parse_formula(s), 24);
    REQUIRE(a.length);
    REQUIRE(b.length);
    CHECK(*b.length <= *a.length);
  }
  const Formula con = U->extra_axioms.back();
  CHECK(check_witness(*U, con, Proof{{{con, TheoryAxiomRef{0}}}}, 1));
}

TEST_CASE("extend_with_con") {
  const auto Q = standard_theory();
  const auto T1 = extend_with_con(Q);
  CHECK(T1->extra_axioms.size() == Q->extra_axioms.size() + 1);
  CHECK(T1->level == Q->level + 1);
  CHECK(T1->name != Q->name);
  const Proof one{{{T1->extra_axioms.back(), TheoryAxiomRef{0}}}};
  CHECK(proof_of(*T1, one, T1->extra_axioms.back()));
  CHECK_FALSE(proof_of(*Q, one, T1->extra_axioms.back()));
  const Term code = code_numeral(encode_proof(one));
  const Term claim = code_numeral(encode_formula(T1->extra_axioms.back()));
  CHECK(eval_closed_term(*T1, Term::fn(proof_predicate_symbol(1), {code, claim})) == 1);
  CHECK(eval_closed_term(*T1, Term::fn(proof_predicate_symbol(0), {code, claim})) == 0);
  const auto T2 = extend_with_con(T1);
  std::set<Natural> codes{encode_formula(con_unbounded(*Q)), encode_formula(con_unbounded(*T1)),
                          encode_formula(con_unbounded(*T2))};
  CHECK(codes.size() == 3);
  const auto inst = extend_with_con(Q, 3);
  CHECK(inst->extra_axioms.back() == con_bounded(*Q, 3));
}

TEST_CASE("regeneration") {
  const auto one = regeneration_demo(1);
  CHECK(one.levels.size() == 1);
  CHECK(one.all_pass());
  const auto three = regeneration_demo(3);
  REQUIRE(three.levels.size() == 3);
  CHECK(three.all_pass());
  std::set<Natural> codes;
  for (const auto& l : three.levels) {
    codes.insert(l.con_code);
    CHECK(l.previous_con_accepted);
    CHECK(l.previous_con_rejected_below);
    CHECK(l.con_instance_true);
    CHECK(l.own_con_search == SearchStatus::None);
  }
  CHECK(codes.size() == 3);
  const auto json = nlohmann::ordered_json::parse(regeneration_report_json(three));
  CHECK(json["schema"] == "forge.regen/1");
  CHECK(json["levels"].size() == 3);
  CHECK(regeneration_report_json(three) == regeneration_report_json(regeneration_demo(3)));
}
