#include "forge/syntax.hpp"

#include "random_ast.hpp"

#include <doctest.h>

using namespace forge;

namespace {

// Free variables computed directly from the tree.
void free_vars_oracle(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Var) {
    if (!bound.count(t.name())) out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) free_vars_oracle(a, bound, out);
}

void free_vars_oracle(const Formula& f, std::set<std::string> bound, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::Eq:
    free_vars_oracle(f.lhs(), bound, out);
    free_vars_oracle(f.rhs(), bound, out);
    return;
  case K::Not: free_vars_oracle(f.operand(), bound, out); return;
  case K::Implies:
    free_vars_oracle(f.left(), bound, out);
    free_vars_oracle(f.right(), bound, out);
    return;
  case K::ForAll: break;
  case K::BoundedForAll:
  case K::BoundedExists: free_vars_oracle(f.bound(), bound, out); break;
  }
  bound.insert(f.var());
  free_vars_oracle(f.body(), bound, out);
}

std::set<std::string> fv(const Formula& f) {
  std::set<std::string> out;
  free_vars_oracle(f, {}, out);
  return out;
}

// One symbol per operator, constant and function symbol; a variable counts
// one per character of its name.
std::size_t size_oracle(const Term& t) {
  if (t.kind() == Term::Kind::Var) return t.name().size();
  std::size_t s = 1;
  for (const auto& a : t.args()) s += size_oracle(a);
  return s;
}

std::size_t size_oracle(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::Eq: return 1 + size_oracle(f.lhs()) + size_oracle(f.rhs());
  case K::Not: return 1 + size_oracle(f.operand());
  case K::Implies: return 1 + size_oracle(f.left()) + size_oracle(f.right());
  case K::ForAll: return 1 + f.var().size() + size_oracle(f.body());
  default: return 1 + f.var().size() + size_oracle(f.bound()) + size_oracle(f.body());
  }
}

} // namespace

TEST_CASE("parse examples") {
  CHECK(parse_formula("0 = 0") == Formula::eq(Term::zero(), Term::zero()));
  CHECK(parse_formula("!(S(x) = 0)") == Formula::negate(Formula::eq(Term::succ(Term::var("x")), Term::zero())));
  const Formula xx = Formula::eq(Term::var("x"), Term::var("x"));
  CHECK(parse_formula("forall x (x = x -> x = x)") == Formula::forall("x", Formula::implies(xx, xx)));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_formula("0 = "), ParseError);
  CHECK_THROWS_AS(parse_formula("foo(0) = 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("len(0, 0) = 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("(0 = 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("0 = 0 0"), ParseError);
}

TEST_CASE("print examples") {
  CHECK(print_formula(Formula::eq(Term::zero(), Term::zero())) == "0 = 0");
  CHECK(print_formula(parse_formula("!(S(x) = 0)")) == "!(S(x) = 0)");
  CHECK(print_formula(parse_formula("0=0 -> 0=0")) == "0 = 0 -> 0 = 0");
}

TEST_CASE("derived connectives expand") {
  const Formula a = parse_formula("0 = 0");
  const Formula b = parse_formula("x = 0");
  CHECK(parse_formula("0 = 0 & x = 0") == conj(a, b));
  CHECK(parse_formula("0 = 0 | x = 0") == disj(a, b));
  CHECK(parse_formula("0 = 0 <-> x = 0") == iff(a, b));
  CHECK(parse_formula("exists x (x = 0)") == exists("x", b));
  CHECK(parse_formula("0 = 0 -> x = 0 -> 0 = 0") ==
        Formula::implies(a, Formula::implies(b, a)));
}

TEST_CASE("round trip on random formulas") {
  test::RandomAst gen(11);
  for (int i = 0; i < 10000; ++i) {
    const Formula f = gen.formula(4);
    const std::string text = print_formula(f);
    const Formula g = parse_formula(text);
    REQUIRE_MESSAGE(g == f, text);
    CHECK(print_formula(g) == text);
  }
}

TEST_CASE("substitution examples") {
  CHECK(substitute(parse_formula("x = 0"), "x", parse_term("S(0)")) == parse_formula("S(0) = 0"));
  const Formula bound_x = parse_formula("forall x (x = x)");
  CHECK(substitute(bound_x, "x", Term::zero()) == bound_x);
  const Formula g = substitute(parse_formula("forall y (x = y)"), "x", Term::var("y"));
  REQUIRE(g.kind() == Formula::Kind::ForAll);
  CHECK(g.var() != "y");
  CHECK(g.body() == Formula::eq(Term::var("y"), Term::var(g.var())));
  CHECK(fv(g) == std::set<std::string>{"y"});
  CHECK(print_formula(g) == "forall y' (y = y')");
}

TEST_CASE("substitution soundness on random formulas") {
  test::RandomAst gen(12);
  for (int i = 0; i < 10000; ++i) {
    const Formula f = gen.formula(4);
    const Term t = gen.term(2);
    const std::string x = i % 2 ? "x" : "y";
    const Formula g = substitute(f, x, t);
    std::set<std::string> allowed = fv(f);
    allowed.erase(x);
    for (const auto& v : free_variables(t)) allowed.insert(v);
    for (const auto& v : fv(g))
      REQUIRE_MESSAGE(allowed.count(v), print_formula(f) << " [" << print_term(t) << "/" << x << "]");
    // Occurrences of t's variables survive when x occurs free.
    if (fv(f).count(x))
      for (const auto& v : free_variables(t)) CHECK(fv(g).count(v));
    if (!fv(f).count(x)) CHECK(g == f);
  }
}

TEST_CASE("free variables") {
  CHECK(free_variables(parse_formula("x = 0")) == std::set<std::string>{"x"});
  CHECK(free_variables(parse_formula("forall x (x = 0)")).empty());
  CHECK(free_variables(parse_formula("x = x -> forall x (x = y)")) == std::set<std::string>{"x", "y"});
  test::RandomAst gen(13);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = gen.formula(4);
    CHECK(free_variables(f) == fv(f));
    CHECK(is_sentence(f) == fv(f).empty());
  }
}

TEST_CASE("numerals") {
  CHECK(numeral(0) == Term::zero());
  CHECK(print_term(numeral(3)) == "S(S(S(0)))");
  for (std::uint64_t n = 1; n <= 100; ++n) CHECK(numeral(n).size() == n + 1);
  CHECK(numeral(Natural(5)) == numeral(5));
}

TEST_CASE("formula size") {
  CHECK(formula_size(parse_formula("0 = 0")).symbol_count == 3);
  CHECK(numeral(2).size() == 3);
  test::RandomAst gen(14);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = gen.formula(4);
    CHECK(f.size() == size_oracle(f));
    CHECK(Formula::negate(f).size() == f.size() + 1);
    CHECK(parse_formula(print_formula(f)).size() == f.size());
    CHECK(f.size() >= 1);
  }
}

TEST_CASE("delta0 predicate") {
  CHECK(is_delta0(parse_formula("forall<= y x (y = y)")));
  CHECK(is_delta0(parse_formula("exists<= y S(0) !(y = 0)")));
  CHECK_FALSE(is_delta0(parse_formula("forall x (x = x)")));
  CHECK_FALSE(is_delta0(parse_formula("exists x (x = 0)")));
}
