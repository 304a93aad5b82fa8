#include "forge/bounded.hpp"
#include "forge/calculus.hpp"
#include "forge/derivation.hpp"
#include "forge/goedel.hpp"
#include "forge/verifier.hpp"

#include "random_ast.hpp"

#include <doctest.h>

#include <map>

using namespace forge;

namespace {

// Truth over {0..n} for formulas in 0, S, +, *; unbounded quantifiers range
// over the same finite segment.
using Env = std::map<std::string, long>;

long value(const Term& t, const Env& env) {
  switch (t.kind()) {
  case Term::Kind::Zero: return 0;
  case Term::Kind::Var: return env.at(t.name());
  case Term::Kind::Succ: return value(t.arg(0), env) + 1;
  case Term::Kind::Plus: return value(t.arg(0), env) + value(t.arg(1), env);
  case Term::Kind::Times: return value(t.arg(0), env) * value(t.arg(1), env);
  default: throw std::logic_error("function symbol");
  }
}

bool holds_upto(const Formula& f, Env& env, long n) {
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::Eq: return value(f.lhs(), env) == value(f.rhs(), env);
  case K::Not: return !holds_upto(f.operand(), env, n);
  case K::Implies: return !holds_upto(f.left(), env, n) || holds_upto(f.right(), env, n);
  default: break;
  }
  const long top = f.kind() == K::ForAll ? n : value(f.bound(), env);
  const bool all = f.kind() != K::BoundedExists;
  const auto saved = env.count(f.var()) ? std::optional<long>(env[f.var()]) : std::nullopt;
  bool result = all;
  for (long v = 0; v <= top; ++v) {
    env[f.var()] = v;
    if (holds_upto(f.body(), env, n) != all) {
      result = !all;
      break;
    }
  }
  if (saved)
    env[f.var()] = *saved;
  else
    env.erase(f.var());
  return result;
}

Proof mp_example() {
  return parse_proof("0. 0 = 0 ; EQREFL[t=0]\n"
                     "1. 0 = 0 -> (0 = 0 -> 0 = 0) ; P1\n"
                     "2. 0 = 0 -> 0 = 0 ; MP 0 1\n");
}

} // namespace

TEST_CASE("robinson axioms") {
  const auto& ax = robinson_axioms();
  CHECK(ax.size() == 7);
  bool found = false;
  for (const auto& a : ax) {
    found = found || print_formula(a) == "forall x !(S(x) = 0)";
    CHECK(is_sentence(a));
    Env env;
    CHECK_MESSAGE(holds_upto(a, env, 50), print_formula(a));
  }
  CHECK(found);
}

TEST_CASE("match_schema examples") {
  const AxiomSchema p1{SchemaKind::P1};
  auto m = match_schema(p1, parse_formula("0=0 -> (0=S(0) -> 0=0)"));
  REQUIRE(m);
  CHECK(m->formulas.at("A") == parse_formula("0 = 0"));
  CHECK(m->formulas.at("B") == parse_formula("0 = S(0)"));
  CHECK_FALSE(match_schema(p1, parse_formula("0=0 -> (0=S(0) -> 0=S(0))")));
  auto q1 = match_schema({SchemaKind::Q1Inst}, parse_formula("forall x (x = x) -> S(0) = S(0)"));
  REQUIRE(q1);
  CHECK(q1->terms.at("t") == parse_term("S(0)"));
}

TEST_CASE("schema matching is sound") {
  const auto T = make_theory("pa");
  test::RandomAst gen(21, {"x", "y"}, false);
  std::size_t matches = 0;
  auto try_all = [&](const Formula& f) {
    MatchContext ctx;
    ctx.theory = T.get();
    for (const auto& s : schemata(*T)) {
      if (s.kind == SchemaKind::Compute || s.kind == SchemaKind::Robinson) continue;
      if (auto b = match_schema(s, f, ctx)) {
        ++matches;
        REQUIRE_MESSAGE(instantiate_schema(s, *b) == f, schema_name(s) << ": " << print_formula(f));
      }
    }
  };
  for (int i = 0; i < 3000; ++i) {
    const Formula a = gen.formula(2), b = gen.formula(2), c = gen.formula(1);
    try_all(gen.formula(3));
    try_all(Formula::implies(a, Formula::implies(b, a)));
    try_all(Formula::implies(Formula::implies(a, Formula::implies(b, c)),
                             Formula::implies(Formula::implies(a, b), Formula::implies(a, c))));
    try_all(Formula::implies(Formula::implies(Formula::negate(b), Formula::negate(a)), Formula::implies(a, b)));
    const Term t = gen.term(2);
    try_all(Formula::implies(Formula::forall("x", a), substitute(a, "x", t)));
    try_all(Formula::eq(t, t));
  }
  CHECK(matches > 12000);
}

TEST_CASE("check_line examples") {
  const auto T = standard_theory();
  const Proof one = parse_proof("0. 0 = 0 ; EQREFL[t=0]\n");
  CHECK(check_line(*T, one, 0).ok);
  const Proof bad = parse_proof("0. 0 = S(0) ; MP 0 1\n");
  const auto r = check_line(*T, bad, 0);
  CHECK_FALSE(r.ok);
  CHECK(r.reason.find("not earlier") != std::string::npos);
  const Proof p = mp_example();
  for (std::size_t i = 0; i < p.lines.size(); ++i) CHECK(check_line(*T, p, i).ok);
  const Proof wrong = parse_proof("0. 0 = 0 ; EQREFL[t=0]\n1. 0 = S(0) ; P1\n");
  CHECK_FALSE(check_line(*T, wrong, 1).ok);
}

TEST_CASE("generalization and theory axioms") {
  const auto T = standard_theory();
  const Proof p = parse_proof("0. x = x ; EQREFL[t=x]\n1. forall x (x = x) ; GEN 0 x\n");
  CHECK(check_proof_justified(*T, p));
  CHECK(proof_of(*T, p, parse_formula("forall x (x = x)")));
  const auto U = extend_with_con(T);
  const Proof thax = parse_proof("0. " + print_formula(U->extra_axioms[0]) + " ; THAX 0\n", U->arity_lookup());
  CHECK(check_line(*U, thax, 0).ok);
  CHECK_FALSE(check_line(*T, thax, 0).ok);
}

TEST_CASE("proof file round trip") {
  const auto T = standard_theory();
  std::vector<Proof> proofs{mp_example(), synthetic_mp_chain(9, 12),
                            double_negation_elimination(*T, parse_formula("x = 0")),
                            conjunction_introduction(*T, parse_formula("0 = 0"), parse_formula("y = S(0)"))};
  for (const char* psi : {"x = 0", "!(x = S(0))", "len(x) = S(0)", "forall<= y x (y = y)"})
    proofs.push_back(diagonalize(*T, parse_formula(psi)).proof);
  for (const auto& p : proofs) {
    const std::string text = print_proof(p);
    const Proof q = parse_proof(text, T->arity_lookup());
    CHECK(print_proof(q) == text);
    CHECK(q.formulas() == p.formulas());
    CHECK(check_proof_justified(*T, q));
  }
}

TEST_CASE("proof format errors") {
  CHECK_THROWS_AS(parse_proof("0. 0 = 0\n"), ProofFormatError);
  CHECK_THROWS_AS(parse_proof("0. 0 = 0 ; BOGUS\n"), ProofFormatError);
  CHECK_THROWS_AS(parse_proof("1. 0 = 0 ; EQREFL[t=0]\n"), ProofFormatError);
  CHECK_THROWS_AS(parse_proof(""), ProofFormatError);
}

TEST_CASE("prefix closure and concatenation") {
  const auto T = standard_theory();
  const Proof a = synthetic_mp_chain(7, 10);
  for (std::size_t k = 1; k <= a.lines.size(); ++k) {
    Proof prefix{{a.lines.begin(), a.lines.begin() + static_cast<std::ptrdiff_t>(k)}};
    CHECK(proof_of(*T, prefix, prefix.conclusion()));
    CHECK(check_proof_justified(*T, prefix));
  }
  Proof cat = a;
  const Proof b = double_negation_elimination(*T, parse_formula("0 = 0"));
  append_proof(cat, b);
  CHECK(check_proof_justified(*T, cat));
  CHECK(proof_of(*T, cat, b.conclusion()));
}

TEST_CASE("derivations discharge hypotheses") {
  const auto T = standard_theory();
  const Formula a = parse_formula("x = 0"), b = parse_formula("y = 0");
  Derivation d(*T);
  const auto h = d.hypothesis(a);
  const auto ab = d.hypothesis(Formula::implies(a, b));
  d.mp(h, ab);
  d.discharge(Formula::implies(a, b));
  d.discharge(a);
  const Proof p = d.to_proof();
  CHECK(p.conclusion() == Formula::implies(a, Formula::implies(Formula::implies(a, b), b)));
  CHECK(check_proof_justified(*T, p));
  CHECK(proof_of(*T, p, p.conclusion()));
}
