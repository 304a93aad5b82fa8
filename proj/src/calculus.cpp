#include "forge/calculus.hpp"
#include "forge/goedel.hpp"

#include <algorithm>

namespace forge {

// ---------------------------------------------------------------------------
// TheorySpec

const DefinitionalExtension* TheorySpec::find_function(std::string_view symbol) const {
  for (const auto& d : def_extensions)
    if (d.symbol == symbol) return &d;
  return nullptr;
}

ArityLookup TheorySpec::arity_lookup() const {
  return [this](std::string_view s) -> std::optional<int> {
    if (const auto* d = find_function(s)) return d->arity;
    return std::nullopt;
  };
}

const TheorySpec& TheorySpec::at_level(int wanted) const {
  const TheorySpec* t = this;
  while (t && t->level != wanted) t = t->parent.get();
  if (!t) throw std::out_of_range("theory " + name + " has no level " + std::to_string(wanted));
  return *t;
}

std::set<std::string> TheorySpec::axiom_variables() const {
  std::set<std::string> out;
  for (const auto& a : robinson_axioms())
    for (const auto& v : all_variables(a)) out.insert(v);
  for (const auto& a : extra_axioms)
    for (const auto& v : all_variables(a)) out.insert(v);
  return out;
}

// ---------------------------------------------------------------------------
// Schemata

std::string schema_name(const AxiomSchema& s) {
  switch (s.kind) {
  case SchemaKind::P1: return "P1";
  case SchemaKind::P2: return "P2";
  case SchemaKind::P3: return "P3";
  case SchemaKind::Q1Inst: return "Q1";
  case SchemaKind::Q2Dist: return "Q2";
  case SchemaKind::EqRefl: return "EQREFL";
  case SchemaKind::EqSubst: return "EQSUBST";
  case SchemaKind::Robinson: return "QAX " + std::to_string(s.index);
  case SchemaKind::Induction: return "IND";
  case SchemaKind::Compute: return "COMPUTE";
  }
  return "?";
}

std::vector<AxiomSchema> schemata(const TheorySpec& T) {
  std::vector<AxiomSchema> out{{SchemaKind::P1}, {SchemaKind::P2},     {SchemaKind::P3},
                               {SchemaKind::Q1Inst}, {SchemaKind::Q2Dist}, {SchemaKind::EqRefl},
                               {SchemaKind::EqSubst}};
  for (int i = 1; i <= 7; ++i) out.push_back({SchemaKind::Robinson, i});
  if (T.induction) out.push_back({SchemaKind::Induction});
  out.push_back({SchemaKind::Compute});
  return out;
}

const std::vector<Formula>& robinson_axioms() {
  static const std::vector<Formula> axioms = [] {
    const char* text[] = {
        "forall x !(S(x) = 0)",
        "forall x forall y (S(x) = S(y) -> x = y)",
        "forall x (!(x = 0) -> exists y (x = S(y)))",
        "forall x (x + 0 = x)",
        "forall x forall y (x + S(y) = S(x + y))",
        "forall x (x * 0 = 0)",
        "forall x forall y (x * S(y) = x * y + x)",
    };
    std::vector<Formula> out;
    for (const char* t : text) out.push_back(parse_formula(t));
    return out;
  }();
  return axioms;
}

bool counted_equal(const Term& a, const Term& b, std::uint64_t* comparisons) {
  if (comparisons) ++*comparisons;
  if (a.kind() != b.kind() || a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!counted_equal(a.arg(i), b.arg(i), comparisons)) return false;
  return true;
}

bool counted_equal(const Formula& a, const Formula& b, std::uint64_t* comparisons) {
  if (!comparisons) return a == b;
  ++*comparisons;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
  case Formula::Kind::Eq:
    return counted_equal(a.lhs(), b.lhs(), comparisons) && counted_equal(a.rhs(), b.rhs(), comparisons);
  case Formula::Kind::Not:
    return counted_equal(a.operand(), b.operand(), comparisons);
  case Formula::Kind::Implies:
    return counted_equal(a.left(), b.left(), comparisons) && counted_equal(a.right(), b.right(), comparisons);
  case Formula::Kind::ForAll:
    return a.var() == b.var() && counted_equal(a.body(), b.body(), comparisons);
  default:
    return a.var() == b.var() && counted_equal(a.bound(), b.bound(), comparisons) &&
           counted_equal(a.body(), b.body(), comparisons);
  }
}

namespace {

using K = Formula::Kind;

bool is(const Formula& f, K k) { return f.kind() == k; }

// Walks `pattern` and `instance` in parallel; free occurrences of `var` in the
// pattern must line up with one common term in the instance.
class InstanceFinder {
public:
  InstanceFinder(const std::string& var, std::uint64_t* comparisons) : var_(var), comparisons_(comparisons) {}

  bool formula(const Formula& p, const Formula& c, bool var_free) {
    if (comparisons_) ++*comparisons_;
    if (p.kind() != c.kind()) return false;
    switch (p.kind()) {
    case K::Eq:
      return term(p.lhs(), c.lhs(), var_free) && term(p.rhs(), c.rhs(), var_free);
    case K::Not:
      return formula(p.operand(), c.operand(), var_free);
    case K::Implies:
      return formula(p.left(), c.left(), var_free) && formula(p.right(), c.right(), var_free);
    default:
      if (p.var() != c.var()) return false;
      if (p.is_bounded_quantifier() && !term(p.bound(), c.bound(), var_free)) return false;
      return formula(p.body(), c.body(), var_free && p.var() != var_);
    }
  }

  bool term(const Term& p, const Term& c, bool var_free) {
    if (comparisons_) ++*comparisons_;
    if (var_free && p.kind() == Term::Kind::Var && p.name() == var_) {
      if (!found_) {
        found_ = c;
        return true;
      }
      return counted_equal(*found_, c, comparisons_);
    }
    if (p.kind() != c.kind() || p.name() != c.name() || p.args().size() != c.args().size()) return false;
    for (std::size_t i = 0; i < p.args().size(); ++i)
      if (!term(p.arg(i), c.arg(i), var_free)) return false;
    return true;
  }

  const std::optional<Term>& found() const { return found_; }

private:
  const std::string& var_;
  std::uint64_t* comparisons_;
  std::optional<Term> found_;
};

// Is `after` obtained from `before` by replacing some free occurrences of t by u?
class ReplacementChecker {
public:
  ReplacementChecker(const Term& t, const Term& u, std::uint64_t* comparisons)
      : t_(t), u_(u), comparisons_(comparisons) {
    for (const auto& v : free_variables(t)) vars_.insert(v);
    for (const auto& v : free_variables(u)) vars_.insert(v);
  }

  bool formula(const Formula& a, const Formula& b) {
    if (comparisons_) ++*comparisons_;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case K::Eq:
      return term(a.lhs(), b.lhs()) && term(a.rhs(), b.rhs());
    case K::Not:
      return formula(a.operand(), b.operand());
    case K::Implies:
      return formula(a.left(), b.left()) && formula(a.right(), b.right());
    default: {
      if (a.var() != b.var()) return false;
      if (a.is_bounded_quantifier() && !term(a.bound(), b.bound())) return false;
      binders_.push_back(a.var());
      bool ok = formula(a.body(), b.body());
      binders_.pop_back();
      return ok;
    }
    }
  }

  bool term(const Term& a, const Term& b) {
    if (a == b) {
      if (comparisons_) *comparisons_ += a.size();
      return true;
    }
    if (replaceable() && counted_equal(a, t_, comparisons_) && counted_equal(b, u_, comparisons_)) return true;
    if (comparisons_) ++*comparisons_;
    if (a.kind() != b.kind() || a.name() != b.name() || a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
      if (!term(a.arg(i), b.arg(i))) return false;
    return true;
  }

private:
  bool replaceable() const {
    return std::none_of(binders_.begin(), binders_.end(), [&](const std::string& b) { return vars_.count(b) > 0; });
  }

  const Term& t_;
  const Term& u_;
  std::uint64_t* comparisons_;
  std::set<std::string> vars_;
  std::vector<std::string> binders_;
};

bool eq(const Formula& a, const Formula& b, const MatchContext& ctx) { return counted_equal(a, b, ctx.comparisons); }

std::optional<SchemaMatch> match_p1(const Formula& f, const MatchContext& ctx) {
  // A -> (B -> A)
  if (!is(f, K::Implies) || !is(f.right(), K::Implies)) return std::nullopt;
  if (!eq(f.left(), f.right().right(), ctx)) return std::nullopt;
  SchemaMatch m;
  m.formulas.emplace("A", f.left());
  m.formulas.emplace("B", f.right().left());
  return m;
}

std::optional<SchemaMatch> match_p2(const Formula& f, const MatchContext& ctx) {
  // (A -> (B -> C)) -> ((A -> B) -> (A -> C))
  if (!is(f, K::Implies)) return std::nullopt;
  const Formula& l = f.left();
  const Formula& r = f.right();
  if (!is(l, K::Implies) || !is(l.right(), K::Implies) || !is(r, K::Implies) || !is(r.left(), K::Implies) ||
      !is(r.right(), K::Implies))
    return std::nullopt;
  const Formula& a = l.left();
  const Formula& b = l.right().left();
  const Formula& c = l.right().right();
  if (!eq(r.left().left(), a, ctx) || !eq(r.left().right(), b, ctx) || !eq(r.right().left(), a, ctx) ||
      !eq(r.right().right(), c, ctx))
    return std::nullopt;
  SchemaMatch m;
  m.formulas.emplace("A", a);
  m.formulas.emplace("B", b);
  m.formulas.emplace("C", c);
  return m;
}

std::optional<SchemaMatch> match_p3(const Formula& f, const MatchContext& ctx) {
  // (!A -> !B) -> (B -> A)
  if (!is(f, K::Implies) || !is(f.left(), K::Implies) || !is(f.right(), K::Implies)) return std::nullopt;
  const Formula& l = f.left();
  if (!is(l.left(), K::Not) || !is(l.right(), K::Not)) return std::nullopt;
  const Formula& a = l.left().operand();
  const Formula& b = l.right().operand();
  if (!eq(f.right().left(), b, ctx) || !eq(f.right().right(), a, ctx)) return std::nullopt;
  SchemaMatch m;
  m.formulas.emplace("A", a);
  m.formulas.emplace("B", b);
  return m;
}

std::optional<SchemaMatch> match_q1(const Formula& f, const MatchContext& ctx) {
  // forall v A -> A[t/v], t free for v in A
  if (!is(f, K::Implies) || !is(f.left(), K::ForAll)) return std::nullopt;
  const std::string& v = f.left().var();
  const Formula& body = f.left().body();
  InstanceFinder finder(v, ctx.comparisons);
  if (!finder.formula(body, f.right(), true)) return std::nullopt;
  Term t = finder.found().value_or(Term::var(v));
  if (!is_free_for(t, v, body)) return std::nullopt;
  SchemaMatch m;
  m.formulas.emplace("A", body);
  m.terms.emplace("t", t);
  m.var = v;
  return m;
}

std::optional<SchemaMatch> match_q2(const Formula& f, const MatchContext& ctx) {
  // forall v (A -> B) -> (A -> forall v B), v not free in A
  if (!is(f, K::Implies) || !is(f.left(), K::ForAll) || !is(f.left().body(), K::Implies) ||
      !is(f.right(), K::Implies) || !is(f.right().right(), K::ForAll))
    return std::nullopt;
  const std::string& v = f.left().var();
  const Formula& a = f.left().body().left();
  const Formula& b = f.left().body().right();
  if (f.right().right().var() != v) return std::nullopt;
  if (!eq(f.right().left(), a, ctx) || !eq(f.right().right().body(), b, ctx)) return std::nullopt;
  if (occurs_free(v, a)) return std::nullopt;
  SchemaMatch m;
  m.formulas.emplace("A", a);
  m.formulas.emplace("B", b);
  m.var = v;
  return m;
}

std::optional<SchemaMatch> match_eq_refl(const Formula& f, const MatchContext& ctx) {
  if (!is(f, K::Eq) || !counted_equal(f.lhs(), f.rhs(), ctx.comparisons)) return std::nullopt;
  SchemaMatch m;
  m.terms.emplace("t", f.lhs());
  return m;
}

std::optional<SchemaMatch> match_eq_subst(const Formula& f, const MatchContext& ctx) {
  // t = u -> (A -> B), B is A with some free occurrences of t replaced by u
  if (!is(f, K::Implies) || !is(f.left(), K::Eq) || !is(f.right(), K::Implies)) return std::nullopt;
  const Term& t = f.left().lhs();
  const Term& u = f.left().rhs();
  ReplacementChecker checker(t, u, ctx.comparisons);
  if (!checker.formula(f.right().left(), f.right().right())) return std::nullopt;
  SchemaMatch m;
  m.terms.emplace("t", t);
  m.terms.emplace("u", u);
  m.formulas.emplace("A", f.right().left());
  m.formulas.emplace("B", f.right().right());
  return m;
}

std::optional<SchemaMatch> match_robinson(int index, const Formula& f, const MatchContext& ctx) {
  if (index < 1 || index > 7) return std::nullopt;
  if (!eq(f, robinson_axioms()[index - 1], ctx)) return std::nullopt;
  return SchemaMatch{};
}

std::optional<SchemaMatch> match_induction(const Formula& f, const MatchContext& ctx) {
  // A[0/v] -> (forall v (A -> A[S(v)/v]) -> forall v A)
  if (!is(f, K::Implies) || !is(f.right(), K::Implies)) return std::nullopt;
  const Formula& step = f.right().left();
  const Formula& goal = f.right().right();
  if (!is(step, K::ForAll) || !is(goal, K::ForAll) || !is(step.body(), K::Implies)) return std::nullopt;
  const std::string& v = goal.var();
  if (step.var() != v) return std::nullopt;
  const Formula& a = goal.body();
  if (!eq(step.body().left(), a, ctx)) return std::nullopt;
  if (!eq(f.left(), substitute(a, v, Term::zero()), ctx)) return std::nullopt;
  if (!eq(step.body().right(), substitute(a, v, Term::succ(Term::var(v))), ctx)) return std::nullopt;
  SchemaMatch m;
  m.formulas.emplace("A", a);
  m.var = v;
  return m;
}

std::optional<SchemaMatch> match_compute(const Formula& f, const MatchContext& ctx) {
  if (!is(f, K::Eq) || !f.lhs().is_closed() || !f.rhs().is_closed()) return std::nullopt;
  static const Theory bare = make_theory("q0");
  const TheorySpec& T = ctx.theory ? *ctx.theory : *bare;
  try {
    if (ctx.comparisons) *ctx.comparisons += f.size();
    if (eval_closed_term(T, f.lhs()) != eval_closed_term(T, f.rhs())) return std::nullopt;
  } catch (const EvalError&) {
    return std::nullopt;
  }
  SchemaMatch m;
  m.terms.emplace("t", f.lhs());
  m.terms.emplace("u", f.rhs());
  return m;
}

const Formula& need(const SchemaMatch& m, const char* key) {
  auto it = m.formulas.find(key);
  if (it == m.formulas.end()) throw std::invalid_argument(std::string("missing binding ") + key);
  return it->second;
}

const Term& need_term(const SchemaMatch& m, const char* key) {
  auto it = m.terms.find(key);
  if (it == m.terms.end()) throw std::invalid_argument(std::string("missing binding ") + key);
  return it->second;
}

Formula replace_free(const Formula& f, const std::string& v, const Term& t) {
  // Only used when t is free for v, where substitution performs no renaming.
  return substitute(f, v, t);
}

} // namespace

std::optional<SchemaMatch> match_schema(const AxiomSchema& s, const Formula& f, const MatchContext& ctx) {
  switch (s.kind) {
  case SchemaKind::P1: return match_p1(f, ctx);
  case SchemaKind::P2: return match_p2(f, ctx);
  case SchemaKind::P3: return match_p3(f, ctx);
  case SchemaKind::Q1Inst: return match_q1(f, ctx);
  case SchemaKind::Q2Dist: return match_q2(f, ctx);
  case SchemaKind::EqRefl: return match_eq_refl(f, ctx);
  case SchemaKind::EqSubst: return match_eq_subst(f, ctx);
  case SchemaKind::Robinson: return match_robinson(s.index, f, ctx);
  case SchemaKind::Induction: return match_induction(f, ctx);
  case SchemaKind::Compute: return match_compute(f, ctx);
  }
  return std::nullopt;
}

Formula instantiate_schema(const AxiomSchema& s, const SchemaMatch& m) {
  using F = Formula;
  switch (s.kind) {
  case SchemaKind::P1: {
    const auto& a = need(m, "A");
    return F::implies(a, F::implies(need(m, "B"), a));
  }
  case SchemaKind::P2: {
    const auto& a = need(m, "A");
    const auto& b = need(m, "B");
    const auto& c = need(m, "C");
    return F::implies(F::implies(a, F::implies(b, c)), F::implies(F::implies(a, b), F::implies(a, c)));
  }
  case SchemaKind::P3: {
    const auto& a = need(m, "A");
    const auto& b = need(m, "B");
    return F::implies(F::implies(F::negate(a), F::negate(b)), F::implies(b, a));
  }
  case SchemaKind::Q1Inst: {
    const auto& a = need(m, "A");
    return F::implies(F::forall(m.var, a), replace_free(a, m.var, need_term(m, "t")));
  }
  case SchemaKind::Q2Dist: {
    const auto& a = need(m, "A");
    const auto& b = need(m, "B");
    return F::implies(F::forall(m.var, F::implies(a, b)), F::implies(a, F::forall(m.var, b)));
  }
  case SchemaKind::EqRefl: {
    const auto& t = need_term(m, "t");
    return F::eq(t, t);
  }
  case SchemaKind::EqSubst:
    return F::implies(F::eq(need_term(m, "t"), need_term(m, "u")), F::implies(need(m, "A"), need(m, "B")));
  case SchemaKind::Robinson:
    return robinson_axioms().at(static_cast<std::size_t>(s.index - 1));
  case SchemaKind::Induction: {
    const auto& a = need(m, "A");
    const Term v = Term::var(m.var);
    return F::implies(substitute(a, m.var, Term::zero()),
                      F::implies(F::forall(m.var, F::implies(a, substitute(a, m.var, Term::succ(v)))),
                                 F::forall(m.var, a)));
  }
  case SchemaKind::Compute:
    return F::eq(need_term(m, "t"), need_term(m, "u"));
  }
  throw std::invalid_argument("unknown schema");
}

// ---------------------------------------------------------------------------
// Proofs

std::vector<Formula> Proof::formulas() const {
  std::vector<Formula> out;
  out.reserve(lines.size());
  for (const auto& l : lines) out.push_back(l.formula);
  return out;
}

std::size_t proof_size(std::span<const Formula> lines) {
  if (lines.empty()) return 0;
  std::size_t total = lines.size() - 1;
  for (const auto& f : lines) total += f.size();
  return total;
}

std::size_t Proof::size() const {
  if (lines.empty()) return 0;
  std::size_t total = lines.size() - 1;
  for (const auto& l : lines) total += l.formula.size();
  return total;
}

namespace {

LineCheck reject(std::string why) { return {false, std::move(why)}; }

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

} // namespace

LineCheck check_line(const TheorySpec& T, const Proof& proof, std::size_t i) {
  if (i >= proof.lines.size()) return reject("line index out of range");
  const Formula& f = proof.lines[i].formula;
  MatchContext ctx{&T, nullptr};
  return std::visit(
      Overloaded{
          [&](const AxiomRef& a) -> LineCheck {
            if (a.schema.kind == SchemaKind::Induction && !T.induction)
              return reject("induction schema not available in " + T.name);
            auto m = match_schema(a.schema, f, ctx);
            if (!m) return reject("not an instance of " + schema_name(a.schema));
            if (a.schema.kind == SchemaKind::Q1Inst && a.t && !(m->terms.at("t") == *a.t)) {
              // The recorded term must be one for which the instance holds.
              if (!(substitute(m->formulas.at("A"), m->var, *a.t) == f.right()) ||
                  !is_free_for(*a.t, m->var, m->formulas.at("A")))
                return reject("Q1 instance term does not match");
            }
            if (a.schema.kind == SchemaKind::EqRefl && a.t && !(m->terms.at("t") == *a.t))
              return reject("EQREFL term does not match");
            if (a.schema.kind == SchemaKind::EqSubst && ((a.t && !(m->terms.at("t") == *a.t)) ||
                                                         (a.u && !(m->terms.at("u") == *a.u))))
              return reject("EQSUBST terms do not match");
            return {true, {}};
          },
          [&](const TheoryAxiomRef& a) -> LineCheck {
            if (a.index >= T.extra_axioms.size()) return reject("theory axiom index out of range");
            if (!(T.extra_axioms[a.index] == f)) return reject("line differs from theory axiom");
            return {true, {}};
          },
          [&](const ModusPonens& mp) -> LineCheck {
            if (mp.minor >= i || mp.major >= i) return reject("MP cites a line that is not earlier");
            const Formula& major = proof.lines[mp.major].formula;
            if (major.kind() != Formula::Kind::Implies) return reject("MP major premise is not an implication");
            if (!(major.left() == proof.lines[mp.minor].formula)) return reject("MP antecedent mismatch");
            if (!(major.right() == f)) return reject("MP consequent mismatch");
            return {true, {}};
          },
          [&](const Generalization& g) -> LineCheck {
            if (g.premise >= i) return reject("GEN cites a line that is not earlier");
            if (f.kind() != Formula::Kind::ForAll || f.var() != g.var) return reject("GEN conclusion shape");
            if (!(f.body() == proof.lines[g.premise].formula)) return reject("GEN premise mismatch");
            return {true, {}};
          },
          [&](const ComputeStep&) -> LineCheck {
            if (!match_compute(f, ctx)) return reject("compute mismatch");
            return {true, {}};
          },
      },
      proof.lines[i].justification);
}

bool check_proof_justified(const TheorySpec& T, const Proof& proof, std::string* reason) {
  if (proof.lines.empty()) {
    if (reason) *reason = "empty proof";
    return false;
  }
  for (std::size_t i = 0; i < proof.lines.size(); ++i) {
    auto r = check_line(T, proof, i);
    if (!r.ok) {
      if (reason) *reason = "line " + std::to_string(i) + ": " + r.reason;
      return false;
    }
  }
  return true;
}

std::optional<Justification> premise_free_justification(const TheorySpec& T, const Formula& f,
                                                        std::uint64_t* comparisons) {
  MatchContext ctx{&T, comparisons};
  for (const auto& s : schemata(T)) {
    if (auto m = match_schema(s, f, ctx)) {
      if (s.kind == SchemaKind::Compute) return ComputeStep{};
      AxiomRef ref{s, std::nullopt, std::nullopt};
      if (s.kind == SchemaKind::Q1Inst || s.kind == SchemaKind::EqRefl || s.kind == SchemaKind::EqSubst)
        ref.t = m->terms.at("t");
      if (s.kind == SchemaKind::EqSubst) ref.u = m->terms.at("u");
      return ref;
    }
  }
  for (std::size_t i = 0; i < T.extra_axioms.size(); ++i)
    if (counted_equal(T.extra_axioms[i], f, comparisons)) return TheoryAxiomRef{i};
  return std::nullopt;
}

} // namespace forge
