#include "forge/bounded.hpp"
#include "forge/goedel.hpp"
#include "forge/verifier.hpp"

#include "random_ast.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace forge;

namespace {

// Independent evaluator for sentences over 0, S, +, * with small bounds.
struct Naive {
  std::map<std::string, long> env;

  long term(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::Var: return env.at(t.name());
    case Term::Kind::Succ: return term(t.arg(0)) + 1;
    case Term::Kind::Plus: return term(t.arg(0)) + term(t.arg(1));
    case Term::Kind::Times: return term(t.arg(0)) * term(t.arg(1));
    default: throw std::logic_error("unsupported term");
    }
  }

  bool formula(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Eq: return term(f.lhs()) == term(f.rhs());
    case K::Not: return !formula(f.operand());
    case K::Implies: return !formula(f.left()) || formula(f.right());
    case K::ForAll: throw std::logic_error("unbounded");
    default: break;
    }
    const long top = term(f.bound());
    const bool exists = f.kind() == K::BoundedExists;
    auto saved = env.find(f.var()) != env.end() ? std::optional<long>(env[f.var()]) : std::nullopt;
    bool any = false, all = true;
    for (long v = 0; v <= top; ++v) {
      env[f.var()] = v;
      const bool b = formula(f.body());
      any = any || b;
      all = all && b;
    }
    if (saved)
      env[f.var()] = *saved;
    else
      env.erase(f.var());
    return exists ? any : all;
  }
};

// Random bounded sentences; bounds are numerals up to 20 or variables in scope.
class SentenceGen {
public:
  explicit SentenceGen(std::uint64_t seed) : rng_(seed) {}

  Formula sentence(int depth) {
    std::vector<std::string> scope;
    return formula(depth, scope);
  }

private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Term term(int depth, const std::vector<std::string>& scope) {
    const int r = pick(depth <= 0 ? 2 : 5);
    switch (r) {
    case 0: return numeral(static_cast<std::uint64_t>(pick(4)));
    case 1:
      if (scope.empty()) return Term::zero();
      return Term::var(scope[static_cast<std::size_t>(pick(static_cast<int>(scope.size())))]);
    case 2: return Term::succ(term(depth - 1, scope));
    case 3: return Term::plus(term(depth - 1, scope), term(depth - 1, scope));
    default: return Term::times(term(depth - 1, scope), term(depth - 1, scope));
    }
  }

  Formula formula(int depth, std::vector<std::string>& scope) {
    const int r = pick(depth <= 0 ? 1 : 5);
    if (r == 0) return Formula::eq(term(2, scope), term(2, scope));
    if (r == 1) return Formula::negate(formula(depth - 1, scope));
    if (r == 2) return Formula::implies(formula(depth - 1, scope), formula(depth - 1, scope));
    const std::string v = std::string(1, static_cast<char>('a' + scope.size()));
    const Term bound =
        !scope.empty() && pick(2) ? Term::var(scope.back()) : numeral(static_cast<std::uint64_t>(pick(21)));
    scope.push_back(v);
    Formula body = formula(depth - 1, scope);
    scope.pop_back();
    return r == 3 ? Formula::bounded_forall(v, bound, body) : Formula::bounded_exists(v, bound, body);
  }

  std::mt19937_64 rng_;
};

Term code_of(const Formula& f) { return code_numeral(encode_formula(f)); }

} // namespace

TEST_CASE("encode and decode") {
  test::RandomAst gen(31);
  std::set<Natural> codes;
  std::set<std::string> texts;
  for (int i = 0; i < 10000; ++i) {
    const Formula f = gen.formula(4);
    const Natural c = encode_formula(f);
    const auto back = decode_formula(c);
    REQUIRE(back);
    REQUIRE(*back == f);
    CHECK(code_length(c) == f.size());
    if (texts.insert(print_formula(f)).second) CHECK(codes.insert(c).second);
  }
  CHECK(encode_formula(parse_formula("0 = 0")) == Natural(82049));
  CHECK_FALSE(decode_formula(Natural(0)));
  CHECK_FALSE(decode_formula(Natural(5)));
}

TEST_CASE("proof codes") {
  const Proof p = synthetic_mp_chain(5, 9);
  const Natural c = encode_proof(p);
  const auto back = decode_proof(c);
  REQUIRE(back);
  CHECK(*back == p.formulas());
  CHECK(code_length(c) == p.size());
  CHECK(c <= code_bound(p.size()));
  CHECK(code_bound(2) == Natural(128 * 128 - 1));
}

TEST_CASE("closed term evaluation") {
  const auto T = standard_theory();
  CHECK(eval_closed_term(parse_term("S(S(0)) + S(0)")) == 3);
  const Term sub = Term::fn("sub", {code_of(parse_formula("x = x")), code_numeral(encode_term(Term::var("x"))),
                                    code_numeral(encode_term(Term::zero()))});
  CHECK(eval_closed_term(sub) == encode_formula(parse_formula("0 = 0")));
  const Proof one = parse_proof("0. 0 = 0 ; EQREFL[t=0]\n");
  const Term prf =
      Term::fn(proof_predicate_symbol(0), {code_numeral(encode_proof(one)), code_of(parse_formula("0 = 0"))});
  CHECK(eval_closed_term(prf) == 1);
  CHECK(eval_closed_term(binary_numeral(Natural(1000))) == 1000);
  CHECK_THROWS_AS(eval_closed_term(parse_term("x + 0")), EvalError);
}

TEST_CASE("proof predicate agrees with the verifier") {
  const auto T = standard_theory();
  std::vector<Proof> proofs{synthetic_mp_chain(3, 6), parse_proof("0. 0 = 0 ; EQREFL[t=0]\n"),
                            parse_proof("0. x = x ; EQREFL[t=x]\n1. forall x (x = x) ; GEN 0 x\n")};
  std::vector<Formula> claims{parse_formula("0 = 0"), parse_formula("0 = S(0)"), parse_formula("forall x (x = x)")};
  for (const auto& p : proofs) claims.push_back(p.conclusion());
  for (const auto& p : proofs)
    for (const auto& phi : claims) {
      const Term t = Term::fn(proof_predicate_symbol(0), {code_numeral(encode_proof(p)), code_of(phi)});
      CHECK((eval_closed_term(*T, t) == 1) == proof_of(*T, p, phi));
    }
  // Codes that are not proofs.
  const Term junk = Term::fn(proof_predicate_symbol(0), {numeral(3), code_of(parse_formula("0 = 0"))});
  CHECK(eval_closed_term(*T, junk) == 0);
}

TEST_CASE("eval_delta0 examples") {
  CHECK(eval_delta0(parse_formula("0=0")));
  CHECK_FALSE(eval_delta0(parse_formula("0=S(0)")));
  CHECK(eval_delta0(parse_formula("forall<= x S(S(0)) !(S(x) = 0)")));
  CHECK_THROWS_AS(eval_delta0(parse_formula("forall x (x = x)")), EvalError);
  CHECK_THROWS_AS(eval_delta0(parse_formula("x = x")), EvalError);
}

TEST_CASE("eval_delta0 matches an independent evaluator") {
  SentenceGen gen(32);
  std::size_t trues = 0;
  for (int i = 0; i < 10000; ++i) {
    const Formula f = gen.sentence(3);
    Naive n;
    const bool expected = n.formula(f);
    REQUIRE_MESSAGE(eval_delta0(f) == expected, print_formula(f));
    trues += expected;
  }
  CHECK(trues > 1000);
  CHECK(trues < 9000);
}

TEST_CASE("bounded provability") {
  const auto T = standard_theory();
  const Natural zero_eq = encode_formula(parse_formula("0 = 0"));
  CHECK_FALSE(eval_delta0(*T, provability_formula_bounded(*T, 0, zero_eq)));
  CHECK_FALSE(eval_delta0(*T, provability_formula_bounded(*T, 2, zero_eq)));
  CHECK(eval_delta0(*T, provability_formula_bounded(*T, 3, zero_eq)));
  CHECK(eval_delta0(*T, provability_formula_bounded(*T, 5, zero_eq, NumeralMode::Binary)));
  const Natural bad = encode_formula(parse_formula("0 = S(0)"));
  for (std::uint64_t m = 0; m <= 8; ++m) CHECK_FALSE(eval_delta0(*T, provability_formula_bounded(*T, m, bad)));
  CHECK_FALSE(is_delta0(provability_formula(*T, code_numeral(zero_eq))));
}

TEST_CASE("bounded consistency") {
  const auto T = standard_theory();
  CHECK(eval_delta0(*T, con_bounded(*T, 0)));
  for (std::uint64_t m = 1; m <= 16; ++m) CHECK(eval_delta0(*T, con_bounded(*T, m)));
  // The numeral for m occurs three times.
  for (std::uint64_t m = 1; m < 40; ++m) CHECK(con_bounded(*T, m + 1).size() == con_bounded(*T, m).size() + 3);
  for (unsigned e = 1; e < 20; ++e) {
    const std::uint64_t m = std::uint64_t{1} << e;
    CHECK(con_bounded(*T, 2 * m, NumeralMode::Binary).size() == con_bounded(*T, m, NumeralMode::Binary).size() + 3);
  }
  CHECK_FALSE(is_delta0(con_unbounded(*T)));
}

TEST_CASE("diagonalization examples") {
  const auto T = standard_theory();
  const auto taut = diagonalize(*T, parse_formula("x = x"));
  CHECK(proof_of(*T, taut.proof, taut.equivalence));
  CHECK(eval_delta0(*T, taut.sentence));
  CHECK(eval_delta0(*T, taut.fixed_point));

  const auto neg = diagonalize(*T, parse_formula("!(x = x)"));
  CHECK(proof_of(*T, neg.proof, neg.equivalence));
  CHECK_FALSE(eval_delta0(*T, neg.fixed_point));
  CHECK_FALSE(eval_delta0(*T, neg.sentence));
  CHECK(neg.fixed_point == substitute(neg.psi, "x", code_numeral(neg.sentence_code)));
  CHECK(decode_formula(neg.sentence_code) == neg.sentence);
  CHECK(is_sentence(neg.sentence));

  const auto renamed = diagonalize(*T, parse_formula("!(z = S(z))"));
  CHECK(proof_of(*T, renamed.proof, renamed.equivalence));
  CHECK_THROWS_AS(diagonalize(*T, parse_formula("x = y")), std::invalid_argument);
  CHECK_THROWS_AS(diagonalize(*T, parse_formula("0 = 0")), std::invalid_argument);
}

TEST_CASE("bounded goedel sentences") {
  const auto T = standard_theory();
  std::set<std::string> seen;
  for (std::uint64_t m : {0, 1, 2, 4}) {
    const auto d = goedel_sentence_bounded(*T, m);
    CHECK(proof_of(*T, d.proof, d.equivalence));
    CHECK(eval_delta0(*T, d.fixed_point));
    CHECK(eval_delta0(*T, d.sentence));
    CHECK(enumerate_proofs(*T, d.sentence, m).status == SearchStatus::None);
    CHECK(seen.insert(print_formula(d.sentence)).second);
  }
  const auto b = goedel_sentence_bounded(*T, 8, NumeralMode::Binary);
  CHECK(proof_of(*T, b.proof, b.equivalence));
}

TEST_CASE("theories") {
  CHECK(make_theory("q0")->def_extensions.empty());
  CHECK_FALSE(make_theory("q")->def_extensions.empty());
  CHECK(make_theory("pa")->induction);
  CHECK_THROWS_AS(make_theory("zf"), std::invalid_argument);
  CHECK(standard_theory() == standard_theory());
}
