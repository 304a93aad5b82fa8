#include "forge/goedel.hpp"

#include "forge/bounded.hpp"
#include "forge/derivation.hpp"
#include "forge/verifier.hpp"

#include <map>

namespace forge {

namespace {

void check_size(const Natural& v) {
  if (bit_length(v) > kMaxValueBits) throw EvalError("value exceeds the value-size limit");
}

std::size_t to_size(const Natural& v, const char* what) {
  if (v > Natural(std::numeric_limits<std::uint32_t>::max())) throw EvalError(std::string(what) + " too large");
  return static_cast<std::size_t>(v);
}

using Env = std::map<std::string, Natural, std::less<>>;

Natural eval_term(const TheorySpec& T, const Term& t, const Env& env) {
  switch (t.kind()) {
  case Term::Kind::Var: {
    auto it = env.find(t.name());
    if (it == env.end()) throw EvalError("free variable " + t.name());
    return it->second;
  }
  case Term::Kind::Zero:
    return 0;
  case Term::Kind::Succ: {
    // Numerals nest deeply; walk the chain instead of recursing.
    std::size_t n = 0;
    const Term* cur = &t;
    while (cur->kind() == Term::Kind::Succ) {
      ++n;
      cur = &cur->arg(0);
    }
    Natural v = eval_term(T, *cur, env) + n;
    check_size(v);
    return v;
  }
  case Term::Kind::Plus: {
    Natural v = eval_term(T, t.arg(0), env) + eval_term(T, t.arg(1), env);
    check_size(v);
    return v;
  }
  case Term::Kind::Times: {
    Natural a = eval_term(T, t.arg(0), env);
    Natural b = eval_term(T, t.arg(1), env);
    if (bit_length(a) + bit_length(b) > kMaxValueBits + 1) throw EvalError("product exceeds the value-size limit");
    Natural v = a * b;
    check_size(v);
    return v;
  }
  case Term::Kind::Fn: {
    const auto* def = T.find_function(t.name());
    if (!def || def->arity != static_cast<int>(t.args().size()))
      throw EvalError("unregistered function symbol " + t.name());
    std::vector<Natural> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(eval_term(T, a, env));
    Natural v = def->evaluate(T, args);
    check_size(v);
    return v;
  }
  }
  throw EvalError("unknown term");
}

// The shape `prf_j(p, c) = S(0)` optionally conjoined with `len(p) <= t`.
struct ProofSearchShape {
  int level = 0;
  Term code;
  std::optional<Term> length_bound;
};

std::optional<int> proof_predicate_level(const std::string& symbol) {
  for (int j = 0; j <= kMaxTheoryLevel; ++j)
    if (symbol == proof_predicate_symbol(j)) return j;
  return std::nullopt;
}

bool mentions(const Term& t, const std::string& v) { return free_variables(t).count(v) > 0; }

std::optional<ProofSearchShape> prf_atom(const Formula& f, const std::string& p) {
  if (f.kind() != Formula::Kind::Eq) return std::nullopt;
  const Term& l = f.lhs();
  if (l.kind() != Term::Kind::Fn || l.args().size() != 2) return std::nullopt;
  auto level = proof_predicate_level(l.name());
  if (!level) return std::nullopt;
  if (!(l.arg(0) == Term::var(p)) || mentions(l.arg(1), p)) return std::nullopt;
  if (!(f.rhs() == Term::succ(Term::zero()))) return std::nullopt;
  return ProofSearchShape{*level, l.arg(1), std::nullopt};
}

std::optional<ProofSearchShape> proof_search_shape(const Formula& body, const std::string& p) {
  if (auto s = prf_atom(body, p)) return s;
  // !(E -> !L)
  if (body.kind() != Formula::Kind::Not || body.operand().kind() != Formula::Kind::Implies) return std::nullopt;
  const Formula& imp = body.operand();
  auto s = prf_atom(imp.left(), p);
  if (!s || imp.right().kind() != Formula::Kind::Not) return std::nullopt;
  // exists<= z t (len(p) + z = t)
  const Formula& le = imp.right().operand();
  if (le.kind() != Formula::Kind::BoundedExists) return std::nullopt;
  const std::string& z = le.var();
  const Term& t = le.bound();
  if (z == p || mentions(t, p) || mentions(t, z)) return std::nullopt;
  const Formula& eq = le.body();
  if (eq.kind() != Formula::Kind::Eq || !(eq.rhs() == t)) return std::nullopt;
  const Term& sum = eq.lhs();
  if (sum.kind() != Term::Kind::Plus || !(sum.arg(1) == Term::var(z))) return std::nullopt;
  if (!(sum.arg(0) == Term::fn("len", {Term::var(p)}))) return std::nullopt;
  s->length_bound = t;
  return s;
}

class Evaluator {
public:
  Evaluator(const TheorySpec& T, const EvalOptions& options) : T_(T), options_(options) {}

  bool formula(const Formula& f, Env& env) {
    switch (f.kind()) {
    case Formula::Kind::Eq:
      return eval_term(T_, f.lhs(), env) == eval_term(T_, f.rhs(), env);
    case Formula::Kind::Not:
      return !formula(f.operand(), env);
    case Formula::Kind::Implies:
      return !formula(f.left(), env) || formula(f.right(), env);
    case Formula::Kind::ForAll:
      throw EvalError("unbounded quantifier");
    case Formula::Kind::BoundedForAll:
    case Formula::Kind::BoundedExists:
      break;
    }
    const bool universal = f.kind() == Formula::Kind::BoundedForAll;
    const Natural bound = eval_term(T_, f.bound(), env);
    if (!universal) {
      if (auto shape = proof_search_shape(f.body(), f.var())) return proof_search(*shape, bound, env);
    }
    if (bound >= options_.max_iterations) throw EvalError("bounded quantifier range too large to iterate");
    const auto n = static_cast<std::uint64_t>(bound);
    auto saved = env.find(f.var()) == env.end() ? std::nullopt : std::optional<Natural>(env[f.var()]);
    bool result = universal;
    for (std::uint64_t i = 0; i <= n; ++i) {
      env[f.var()] = i;
      if (formula(f.body(), env) != universal) {
        result = !universal;
        break;
      }
    }
    if (saved) env[f.var()] = *saved;
    else env.erase(f.var());
    return result;
  }

private:
  // exists<= p B (prf_j(p, c) = S(0) [& len(p) <= t]): the only p that can
  // satisfy the body are codes of proofs of decode(c), and a proof of size s
  // has a code of exactly s digits. So the quantifier holds iff some proof of
  // decode(c) has size <= t and code <= B.
  bool proof_search(const ProofSearchShape& shape, const Natural& bound, const Env& env) {
    const Natural c = eval_term(T_, shape.code, env);
    const auto phi = decode_formula(c);
    if (!phi) return false;
    const std::size_t digits = code_length(bound);
    std::size_t limit = digits;
    if (shape.length_bound) {
      const Natural t = eval_term(T_, *shape.length_bound, env);
      if (t < limit) limit = static_cast<std::size_t>(t);
    }
    const TheorySpec& level = T_.at_level(shape.level);
    SearchBudget budget;
    budget.max_candidates = options_.max_search_candidates;
    budget.max_size = options_.max_search_size;
    auto r = enumerate_proofs(level, *phi, limit, budget);
    if (r.status == SearchStatus::BudgetExhausted) throw EvalError("proof search exceeded its budget");
    if (r.status == SearchStatus::None) return false;
    const std::size_t size = r.proof->size();
    if (size < digits || bound == code_bound(digits) || encode_proof(*r.proof) <= bound) return true;
    throw EvalError("bounded proof search cannot decide a bound that is not a full digit range");
  }

  const TheorySpec& T_;
  const EvalOptions& options_;
};

// ---------------------------------------------------------------------------
// Definitional extensions

Natural fn_sub(const TheorySpec&, std::span<const Natural> a) {
  auto f = decode_formula(a[0]);
  auto v = decode_term(a[1]);
  auto t = decode_term(a[2]);
  if (!f || !v || !t || v->kind() != Term::Kind::Var) return 0;
  return encode_formula(substitute(*f, v->name(), *t));
}

Natural fn_diag(const TheorySpec&, std::span<const Natural> a) {
  auto f = decode_formula(a[0]);
  if (!f) return 0;
  return encode_formula(substitute(*f, "x", code_numeral(a[0])));
}

Natural fn_len(const TheorySpec&, std::span<const Natural> a) { return code_length(a[0]); }

Natural fn_cb(const TheorySpec&, std::span<const Natural> a) { return code_bound(to_size(a[0], "cb argument")); }

Natural fn_b0(const TheorySpec&, std::span<const Natural> a) { return a[0] * 2; }

Natural fn_b1(const TheorySpec&, std::span<const Natural> a) { return a[0] * 2 + 1; }

FunctionEvaluator proof_predicate(int level) {
  return [level](const TheorySpec& T, std::span<const Natural> a) -> Natural {
    auto lines = decode_proof(a[0]);
    auto phi = decode_formula(a[1]);
    if (!lines || !phi) return 0;
    return proof_of(T.at_level(level), *lines, *phi) ? 1 : 0;
  };
}

} // namespace

void install_definitional_extensions(TheorySpec& T) {
  auto add = [&](std::string symbol, int arity, FunctionEvaluator f, std::string axiom) {
    if (T.find_function(symbol)) return;
    T.def_extensions.push_back({std::move(symbol), arity, std::move(f), std::move(axiom)});
  };
  add("sub", 3, fn_sub, "sub(f, v, t) = code of the formula coded f with t substituted for the variable coded v");
  add("diag", 1, fn_diag, "diag(c) = sub(c, code(x), b(c)) with b(c) the binary numeral of c");
  add("len", 1, fn_len, "len(p) = number of base-128 digits of p");
  add("cb", 1, fn_cb, "cb(m) = 128^m - 1");
  add("b0", 1, fn_b0, "b0(t) = t + t");
  add("b1", 1, fn_b1, "b1(t) = S(t + t)");
  add(proof_predicate_symbol(T.level), 2, proof_predicate(T.level),
      "prf(p, c) = 1 iff p codes a proof in this theory of the formula coded c, else 0");
}

Theory make_theory(std::string_view name) {
  auto T = std::make_shared<TheorySpec>();
  T->name = std::string(name);
  if (name == "q0") return T;
  if (name != "q" && name != "pa") throw std::invalid_argument("unknown theory '" + std::string(name) + "'");
  T->induction = name == "pa";
  install_definitional_extensions(*T);
  return T;
}

Theory standard_theory() {
  static const Theory q = make_theory("q");
  return q;
}

Natural eval_closed_term(const TheorySpec& T, const Term& t) {
  Env env;
  return eval_term(T, t, env);
}

Natural eval_closed_term(const Term& t) { return eval_closed_term(*standard_theory(), t); }

bool eval_delta0(const TheorySpec& T, const Formula& f, const EvalOptions& options) {
  if (!is_delta0(f)) throw EvalError("formula is not bounded");
  if (!is_sentence(f)) throw EvalError("formula has free variables");
  Env env;
  return Evaluator(T, options).formula(f, env);
}

bool eval_delta0(const Formula& f) { return eval_delta0(*standard_theory(), f); }

// ---------------------------------------------------------------------------
// Provability and consistency

Term make_numeral(const Natural& n, NumeralMode mode) {
  return mode == NumeralMode::Binary ? binary_numeral(n) : numeral(n);
}

Term code_numeral(const Natural& code) { return binary_numeral(code); }

Formula falsum() { return Formula::negate(Formula::eq(Term::zero(), Term::zero())); }

namespace {

std::string require_proof_predicate(const TheorySpec& T) {
  std::string prf = proof_predicate_symbol(T.level);
  if (!T.find_function(prf) || !T.find_function("len") || !T.find_function("cb"))
    throw std::invalid_argument("theory " + T.name + " has no proof predicate");
  return prf;
}

} // namespace

Formula provability_formula_bounded(const TheorySpec& T, const Term& m, const Term& code) {
  const std::string prf = require_proof_predicate(T);
  std::set<std::string> avoid = free_variables(m);
  for (const auto& v : free_variables(code)) avoid.insert(v);
  const std::string p = fresh_variable("p", avoid);
  const Term pv = Term::var(p);
  const Formula holds = Formula::eq(Term::fn(prf, {pv, code}), Term::succ(Term::zero()));
  const Formula short_enough = less_equal(Term::fn("len", {pv}), m);
  return Formula::bounded_exists(p, Term::fn("cb", {m}), conj(holds, short_enough));
}

Formula provability_formula_bounded(const TheorySpec& T, std::uint64_t m, const Natural& code, NumeralMode mode) {
  return provability_formula_bounded(T, make_numeral(m, mode), code_numeral(code));
}

Formula provability_formula(const TheorySpec& T, const Term& code) {
  const std::string prf = require_proof_predicate(T);
  const std::string p = fresh_variable("p", free_variables(code));
  return exists(p, Formula::eq(Term::fn(prf, {Term::var(p), code}), Term::succ(Term::zero())));
}

Formula con_bounded(const TheorySpec& T, std::uint64_t m, NumeralMode mode) {
  return Formula::negate(provability_formula_bounded(T, m, encode_formula(falsum()), mode));
}

Formula con_unbounded(const TheorySpec& T) {
  return Formula::negate(provability_formula(T, code_numeral(encode_formula(falsum()))));
}

// ---------------------------------------------------------------------------
// Diagonalization

namespace {

void check_symbols(const TheorySpec& T, const Term& t) {
  if (t.kind() == Term::Kind::Fn) {
    const auto* d = T.find_function(t.name());
    if (!d || d->arity != static_cast<int>(t.args().size()))
      throw std::invalid_argument("function symbol " + t.name() + " is not registered with this arity");
  }
  for (const auto& a : t.args()) check_symbols(T, a);
}

void check_symbols(const TheorySpec& T, const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
    check_symbols(T, f.lhs());
    check_symbols(T, f.rhs());
    return;
  case Formula::Kind::Not:
    check_symbols(T, f.operand());
    return;
  case Formula::Kind::Implies:
    check_symbols(T, f.left());
    check_symbols(T, f.right());
    return;
  case Formula::Kind::ForAll:
    check_symbols(T, f.body());
    return;
  default:
    check_symbols(T, f.bound());
    check_symbols(T, f.body());
  }
}

} // namespace

Diagonalization diagonalize(const TheorySpec& T, const Formula& psi) {
  const auto fv = free_variables(psi);
  if (fv.size() != 1) throw std::invalid_argument("psi must have exactly one free variable");
  check_symbols(T, psi);
  if (!T.find_function("diag")) throw std::invalid_argument("theory " + T.name + " has no diag symbol");

  using F = Formula;
  const Term x = Term::var("x");
  const F normal = *fv.begin() == "x" ? psi : substitute(psi, *fv.begin(), x);
  const F theta = substitute(normal, "x", Term::fn("diag", {x}));
  Natural theta_code = encode_formula(theta);
  const Term D = Term::fn("diag", {code_numeral(theta_code)});
  const F sentence = substitute(theta, "x", code_numeral(theta_code));
  Natural sentence_code = encode_formula(sentence);
  const Term N = code_numeral(sentence_code);
  const F fixed_point = substitute(normal, "x", N);
  Diagonalization d{normal, theta, std::move(theta_code), sentence, std::move(sentence_code), fixed_point,
                    iff(sentence, fixed_point), {}};

  auto subst = [](const Term& t, const Term& u) {
    return Justification{AxiomRef{{SchemaKind::EqSubst}, t, u}};
  };
  Proof& p = d.proof;
  const F forward = F::implies(d.sentence, d.fixed_point);
  const F backward = F::implies(d.fixed_point, d.sentence);
  p.lines.push_back({F::eq(D, N), ComputeStep{}});
  p.lines.push_back({F::implies(F::eq(D, N), forward), subst(D, N)});
  p.lines.push_back({forward, ModusPonens{0, 1}});
  p.lines.push_back({F::eq(N, D), ComputeStep{}});
  p.lines.push_back({F::implies(F::eq(N, D), backward), subst(N, D)});
  p.lines.push_back({backward, ModusPonens{3, 4}});
  append_proof(p, conjunction_introduction(T, forward, backward));
  const std::size_t lemma = p.lines.size() - 1;
  p.lines.push_back({p.lines[lemma].formula.right(), ModusPonens{2, lemma}});
  p.lines.push_back({d.equivalence, ModusPonens{5, lemma + 1}});
  return d;
}

Formula bounded_unprovability_psi(const TheorySpec& T, std::uint64_t m, NumeralMode mode) {
  return Formula::negate(provability_formula_bounded(T, make_numeral(m, mode), Term::var("x")));
}

Diagonalization goedel_sentence_bounded(const TheorySpec& T, std::uint64_t m, NumeralMode mode) {
  return diagonalize(T, bounded_unprovability_psi(T, m, mode));
}

} // namespace forge
