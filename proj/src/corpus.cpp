#include "forge/corpus.hpp"

#include "formula_space.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace forge::corpus {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Term small_numeral(std::uint64_t k) {
  Term t = Term::zero();
  for (std::uint64_t i = 0; i < k; ++i) t = Term::succ(t);
  return t;
}

class Delta0Generator {
public:
  Delta0Generator(Rng& rng, const Delta0Shape& shape) : rng_(rng), shape_(shape) {}

  Formula run() {
    std::vector<std::string> scope = shape_.free;
    return formula(shape_.depth, scope);
  }

private:
  Term term(std::size_t d, const std::vector<std::string>& scope) {
    if (d == 0 || pick(rng_, 3) == 0) {
      const std::size_t r = pick(rng_, scope.empty() ? 2 : 4);
      if (r == 0) return Term::zero();
      if (r == 1) return small_numeral(1 + pick(rng_, 2));
      return Term::var(scope[pick(rng_, scope.size())]);
    }
    switch (pick(rng_, 3)) {
    case 0: return Term::succ(term(d - 1, scope));
    case 1: return Term::plus(term(d - 1, scope), term(d - 1, scope));
    default: return Term::times(term(d - 1, scope), term(d - 1, scope));
    }
  }

  Formula atom(const std::vector<std::string>& scope) {
    return Formula::eq(term(shape_.term_depth, scope), term(shape_.term_depth, scope));
  }

  Formula formula(std::size_t d, std::vector<std::string>& scope) {
    if (d == 0) return atom(scope);
    const std::size_t r = pick(rng_, 10);
    if (r < 2) return atom(scope);
    if (r < 4) return Formula::negate(formula(d - 1, scope));
    if (r < 6) return Formula::implies(formula(d - 1, scope), formula(d - 1, scope));
    static const char* const kNames[] = {"y", "z", "w", "u", "v", "t"};
    std::string v = kNames[std::min<std::size_t>(depth_++, 5)];
    Term bound = small_numeral(pick(rng_, shape_.max_closed_bound + 1));
    if (!scope.empty() && pick(rng_, 2) == 0) bound = Term::var(scope[pick(rng_, scope.size())]);
    scope.push_back(v);
    Formula body = formula(d - 1, scope);
    scope.pop_back();
    return r < 8 ? Formula::bounded_forall(v, bound, body) : Formula::bounded_exists(v, bound, body);
  }

  Rng& rng_;
  const Delta0Shape& shape_;
  std::size_t depth_ = 0;
};

} // namespace

Formula random_delta0(Rng& rng, const Delta0Shape& shape) { return Delta0Generator(rng, shape).run(); }

Formula random_delta0_sentence(Rng& rng, std::size_t max_size, std::size_t depth) {
  Delta0Shape shape;
  shape.depth = depth;
  shape.term_depth = 1;
  while (true) {
    Formula f = random_delta0(rng, shape);
    if (f.size() <= max_size) return f;
  }
}

Formula random_delta0_in_x(Rng& rng, std::size_t depth) {
  Delta0Shape shape;
  shape.depth = depth;
  shape.free = {"x"};
  while (true) {
    Formula f = random_delta0(rng, shape);
    if (occurs_free("x", f)) return f;
  }
}

std::vector<Formula> small_formulas(const std::vector<std::string>& vars, std::size_t min_size, std::size_t max_size) {
  detail::Signature sig;
  sig.variables = vars;
  detail::FormulaSpace space(sig);
  std::vector<Formula> out;
  for (std::size_t s = min_size; s <= max_size; ++s)
    for (const auto& f : space.formulas(s)) out.push_back(f);
  return out;
}

std::vector<Formula> psi_shapes() {
  static const char* const kShapes[] = {
      "x = x",
      "x = 0",
      "!(x = 0)",
      "x = S(0)",
      "S(x) = x",
      "x + 0 = x",
      "x * S(0) = x",
      "x = x -> x = 0",
      "!(x = x)",
      "exists<= y x (y + y = x)",
      "forall<= y x (y = y)",
      "forall<= y S(S(0)) !(x = y)",
      "forall y (y + x = x + y)",
      "len(x) = S(0)",
      "b0(x) = x + x",
      "!(cb(0) = x)",
      "sub(x, x, x) = x",
      "diag(x) = x",
      "prf(x, x) = S(0)",
      "!(prf(S(0), x) = S(0))",
      "exists<= p cb(S(0)) (prf(p, x) = S(0))",
      "z = S(z)",
      "forall<= x y (x = y)",
  };
  std::vector<Formula> out;
  for (const char* s : kShapes) out.push_back(parse_formula(s));
  return out;
}

ClauseSet random_cnf(Rng& rng, std::uint32_t vars, std::size_t clauses, std::size_t max_width) {
  ClauseSet cs;
  cs.num_vars = vars;
  for (std::size_t c = 0; c < clauses; ++c) {
    const std::size_t width = 1 + pick(rng, std::min<std::size_t>(max_width, vars));
    std::vector<std::uint32_t> pool(vars);
    for (std::uint32_t v = 0; v < vars; ++v) pool[v] = v;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Literal> lits;
    for (std::size_t i = 0; i < width; ++i) lits.push_back({pool[i], pick(rng, 2) == 0});
    cs.clauses.push_back(make_clause(std::move(lits)));
  }
  return cs;
}

ClauseSet pigeonhole(std::uint32_t pigeons, std::uint32_t holes) {
  ClauseSet cs;
  cs.num_vars = pigeons * holes;
  auto var = [&](std::uint32_t p, std::uint32_t h) { return p * holes + h; };
  for (std::uint32_t p = 0; p < pigeons; ++p) {
    std::vector<Literal> some;
    for (std::uint32_t h = 0; h < holes; ++h) some.push_back({var(p, h), true});
    cs.clauses.push_back(make_clause(std::move(some)));
  }
  for (std::uint32_t h = 0; h < holes; ++h)
    for (std::uint32_t p = 0; p < pigeons; ++p)
      for (std::uint32_t q = p + 1; q < pigeons; ++q)
        cs.clauses.push_back(make_clause({{var(p, h), false}, {var(q, h), false}}));
  return cs;
}

// ---------------------------------------------------------------------------
// Reference evaluator

namespace {

using Env = std::map<std::string, Natural>;

Natural ref_term(const Term& t, const Env& env) {
  switch (t.kind()) {
  case Term::Kind::Zero: return 0;
  case Term::Kind::Var: {
    auto it = env.find(t.name());
    if (it == env.end()) throw std::invalid_argument("free variable " + t.name());
    return it->second;
  }
  case Term::Kind::Succ: return ref_term(t.args()[0], env) + 1;
  case Term::Kind::Plus: return ref_term(t.args()[0], env) + ref_term(t.args()[1], env);
  case Term::Kind::Times: return ref_term(t.args()[0], env) * ref_term(t.args()[1], env);
  case Term::Kind::Fn: break;
  }
  throw std::invalid_argument("function symbol " + t.name());
}

bool ref_formula(const Formula& f, Env& env) {
  switch (f.kind()) {
  case Formula::Kind::Eq: return ref_term(f.lhs(), env) == ref_term(f.rhs(), env);
  case Formula::Kind::Not: return !ref_formula(f.operand(), env);
  case Formula::Kind::Implies: return !ref_formula(f.left(), env) || ref_formula(f.right(), env);
  case Formula::Kind::ForAll: throw std::invalid_argument("unbounded quantifier");
  default: break;
  }
  const Natural bound = ref_term(f.bound(), env);
  if (bound > 1'000'000) throw std::invalid_argument("bound too large");
  const bool all = f.kind() == Formula::Kind::BoundedForAll;
  auto saved = env.find(f.var()) == env.end() ? std::nullopt : std::optional<Natural>(env[f.var()]);
  bool result = all;
  for (Natural v = 0; v <= bound; ++v) {
    env[f.var()] = v;
    if (ref_formula(f.body(), env) != all) {
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

} // namespace

bool reference_eval(const Formula& sentence) {
  Env env;
  return ref_formula(sentence, env);
}

// ---------------------------------------------------------------------------
// Reference resolution checker

bool reference_check_resolution(const ClauseSet& cs, const ResolutionProof& proof, bool extended) {
  using Set = std::set<long long>;
  auto lit = [](const Literal& l) { return (l.positive ? 1 : -1) * (static_cast<long long>(l.var) + 1); };
  std::vector<Set> inputs;
  for (const auto& c : cs.clauses) {
    Set s;
    for (const auto& l : c) s.insert(lit(l));
    inputs.push_back(s);
  }
  std::vector<Set> derived;
  auto mentions = [&](long long var) {
    for (const auto* group : {&inputs, &derived})
      for (const auto& s : *group)
        if (s.count(var) || s.count(-var)) return true;
    return false;
  };
  for (const auto& step : proof.steps) {
    if (const auto* in = std::get_if<InputStep>(&step)) {
      if (in->index >= inputs.size()) return false;
      derived.push_back(inputs[in->index]);
    } else if (const auto* r = std::get_if<ResolveStep>(&step)) {
      if (r->i >= derived.size() || r->j >= derived.size()) return false;
      const long long p = static_cast<long long>(r->pivot) + 1;
      const Set& a = derived[r->i];
      const Set& b = derived[r->j];
      Set out;
      if (a.count(p) && b.count(-p)) {
        for (auto l : a)
          if (l != p) out.insert(l);
        for (auto l : b)
          if (l != -p) out.insert(l);
      } else if (a.count(-p) && b.count(p)) {
        for (auto l : a)
          if (l != -p) out.insert(l);
        for (auto l : b)
          if (l != p) out.insert(l);
      } else {
        return false;
      }
      derived.push_back(out);
    } else if (const auto* e = std::get_if<ExtendStep>(&step)) {
      if (!extended) return false;
      const long long v = static_cast<long long>(e->var) + 1;
      const long long a = lit(e->a), b = lit(e->b);
      if (mentions(v) || a == v || a == -v || b == v || b == -v) return false;
      derived.push_back({-v, a});
      derived.push_back({-v, b});
      derived.push_back({v, -a, -b});
    } else {
      return false;
    }
  }
  return !derived.empty() && derived.back().empty();
}

ResolutionProof mutate(Rng& rng, const ResolutionProof& proof, std::size_t input_count) {
  ResolutionProof out = proof;
  if (out.steps.empty()) {
    out.steps.push_back(InputStep{pick(rng, input_count + 1)});
    return out;
  }
  const std::size_t s = pick(rng, out.steps.size());
  auto& step = out.steps[s];
  switch (pick(rng, 6)) {
  case 0:
    if (auto* in = std::get_if<InputStep>(&step)) {
      in->index = pick(rng, input_count + 2);
      return out;
    }
    break;
  case 1:
    if (auto* r = std::get_if<ResolveStep>(&step)) {
      (pick(rng, 2) ? r->i : r->j) = pick(rng, s + 2);
      return out;
    }
    break;
  case 2:
    if (auto* r = std::get_if<ResolveStep>(&step)) {
      r->pivot = static_cast<std::uint32_t>(pick(rng, r->pivot + 3));
      return out;
    }
    break;
  case 3:
    if (out.steps.size() > 1) {
      const std::size_t t = pick(rng, out.steps.size());
      std::swap(out.steps[s], out.steps[t]);
      return out;
    }
    break;
  case 4:
    if (auto* e = std::get_if<ExtendStep>(&step)) {
      e->var = static_cast<std::uint32_t>(pick(rng, e->var + 2));
      return out;
    }
    break;
  default: break;
  }
  out.steps.erase(out.steps.begin() + static_cast<std::ptrdiff_t>(s));
  return out;
}

} // namespace forge::corpus
