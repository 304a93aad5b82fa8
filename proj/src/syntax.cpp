#include "forge/syntax.hpp"

#include <algorithm>
#include <array>

namespace forge {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

constexpr std::array<FunctionSymbol, 15> kFunctions{{
    {"sub", 3},  {"diag", 1}, {"len", 1},  {"cb", 1},   {"b0", 1},
    {"b1", 1},   {"prf", 2},  {"prf1", 2}, {"prf2", 2}, {"prf3", 2},
    {"prf4", 2}, {"prf5", 2}, {"prf6", 2}, {"prf7", 2}, {"prf8", 2},
}};

} // namespace

// ---------------------------------------------------------------------------
// Term

Term Term::make(Kind k, std::string name, std::vector<Term> args) {
  std::size_t size = 0;
  std::size_t h = static_cast<std::size_t>(k) * 131 + 7;
  bool closed = true;
  switch (k) {
  case Kind::Var:
    size = name.size();
    closed = false;
    break;
  case Kind::Zero:
    size = 1;
    break;
  default:
    size = 1;
    break;
  }
  h = mix(h, std::hash<std::string>{}(name));
  for (const auto& a : args) {
    size += a.size();
    h = mix(h, a.hash());
    closed = closed && a.is_closed();
  }
  return Term(std::make_shared<const Node>(Node{k, std::move(name), std::move(args), size, h, closed}));
}

Term Term::var(std::string name) { return make(Kind::Var, std::move(name), {}); }
Term Term::zero() {
  static const Term z = make(Kind::Zero, {}, {});
  return z;
}
Term Term::succ(Term t) { return make(Kind::Succ, {}, {std::move(t)}); }
Term Term::plus(Term a, Term b) { return make(Kind::Plus, {}, {std::move(a), std::move(b)}); }
Term Term::times(Term a, Term b) { return make(Kind::Times, {}, {std::move(a), std::move(b)}); }
Term Term::fn(std::string symbol, std::vector<Term> args) {
  return make(Kind::Fn, std::move(symbol), std::move(args));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!(a.arg(i) == b.arg(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::eq(Term lhs, Term rhs) {
  std::size_t size = 1 + lhs.size() + rhs.size();
  std::size_t h = mix(mix(1001, lhs.hash()), rhs.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Eq, {}, {std::move(lhs), std::move(rhs)}, {}, size, h}));
}

Formula Formula::negate(Formula f) {
  std::size_t size = 1 + f.size();
  std::size_t h = mix(2002, f.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Not, {}, {}, {std::move(f)}, size, h}));
}

Formula Formula::implies(Formula a, Formula b) {
  std::size_t size = 1 + a.size() + b.size();
  std::size_t h = mix(mix(3003, a.hash()), b.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Implies, {}, {}, {std::move(a), std::move(b)}, size, h}));
}

Formula Formula::forall(std::string var, Formula body) {
  std::size_t size = 1 + var.size() + body.size();
  std::size_t h = mix(mix(4004, std::hash<std::string>{}(var)), body.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::ForAll, std::move(var), {}, {std::move(body)}, size, h}));
}

Formula Formula::bounded_forall(std::string var, Term bound, Formula body) {
  std::size_t size = 1 + var.size() + bound.size() + body.size();
  std::size_t h = mix(mix(mix(5005, std::hash<std::string>{}(var)), bound.hash()), body.hash());
  return Formula(std::make_shared<const Node>(Node{Kind::BoundedForAll, std::move(var), {std::move(bound)},
                                                   {std::move(body)}, size, h}));
}

Formula Formula::bounded_exists(std::string var, Term bound, Formula body) {
  std::size_t size = 1 + var.size() + bound.size() + body.size();
  std::size_t h = mix(mix(mix(6006, std::hash<std::string>{}(var)), bound.hash()), body.hash());
  return Formula(std::make_shared<const Node>(Node{Kind::BoundedExists, std::move(var), {std::move(bound)},
                                                   {std::move(body)}, size, h}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
  case Formula::Kind::Eq:
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  case Formula::Kind::Not:
    return a.operand() == b.operand();
  case Formula::Kind::Implies:
    return a.left() == b.left() && a.right() == b.right();
  case Formula::Kind::ForAll:
    return a.var() == b.var() && a.body() == b.body();
  case Formula::Kind::BoundedForAll:
  case Formula::Kind::BoundedExists:
    return a.var() == b.var() && a.bound() == b.bound() && a.body() == b.body();
  }
  return false;
}

SizeMetric formula_size(const Formula& f) { return {f.size()}; }

// ---------------------------------------------------------------------------
// Function table

std::span<const FunctionSymbol> function_symbols() { return kFunctions; }

std::optional<std::size_t> function_index(std::string_view name) {
  for (std::size_t i = 0; i < kFunctions.size(); ++i)
    if (kFunctions[i].name == name) return i;
  return std::nullopt;
}

std::optional<int> function_arity(std::string_view name) {
  if (auto i = function_index(name)) return kFunctions[*i].arity;
  return std::nullopt;
}

std::string proof_predicate_symbol(int level) {
  if (level < 0 || level > kMaxTheoryLevel) throw std::out_of_range("theory level out of range");
  return level == 0 ? std::string("prf") : "prf" + std::to_string(level);
}

// ---------------------------------------------------------------------------
// Derived connectives

Formula conj(const Formula& a, const Formula& b) {
  return Formula::negate(Formula::implies(a, Formula::negate(b)));
}

Formula disj(const Formula& a, const Formula& b) { return Formula::implies(Formula::negate(a), b); }

Formula iff(const Formula& a, const Formula& b) {
  return conj(Formula::implies(a, b), Formula::implies(b, a));
}

Formula exists(const std::string& var, const Formula& body) {
  return Formula::negate(Formula::forall(var, Formula::negate(body)));
}

Formula less_equal(const Term& a, const Term& b) {
  std::set<std::string> avoid = free_variables(a);
  for (const auto& v : free_variables(b)) avoid.insert(v);
  std::string z = fresh_variable("z", avoid);
  return Formula::bounded_exists(z, b, Formula::eq(Term::plus(a, Term::var(z)), b));
}

Term numeral(std::uint64_t n) {
  Term t = Term::zero();
  for (std::uint64_t i = 0; i < n; ++i) t = Term::succ(std::move(t));
  return t;
}

Term numeral(const Natural& n) {
  if (n > Natural(1u << 24)) throw EvalError("unary numeral too large: " + to_string(n));
  return numeral(static_cast<std::uint64_t>(n));
}

Term binary_numeral(const Natural& n) {
  Term t = Term::zero();
  const std::size_t bits = bit_length(n);
  for (std::size_t i = bits; i-- > 0;)
    t = Term::fn(boost::multiprecision::bit_test(n, static_cast<unsigned>(i)) ? "b1" : "b0", {std::move(t)});
  return t;
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void collect_free(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Var) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_free(a, out);
}

void collect_free(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
    collect_free(f.lhs(), out);
    collect_free(f.rhs(), out);
    return;
  case Formula::Kind::Not:
    collect_free(f.operand(), out);
    return;
  case Formula::Kind::Implies:
    collect_free(f.left(), out);
    collect_free(f.right(), out);
    return;
  case Formula::Kind::ForAll:
  case Formula::Kind::BoundedForAll:
  case Formula::Kind::BoundedExists: {
    if (f.is_bounded_quantifier()) collect_free(f.bound(), out);
    std::set<std::string> inner;
    collect_free(f.body(), inner);
    inner.erase(f.var());
    out.insert(inner.begin(), inner.end());
    return;
  }
  }
}

void collect_all(const Term& t, std::set<std::string>& out) { collect_free(t, out); }

void collect_all(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
    collect_all(f.lhs(), out);
    collect_all(f.rhs(), out);
    return;
  case Formula::Kind::Not:
    collect_all(f.operand(), out);
    return;
  case Formula::Kind::Implies:
    collect_all(f.left(), out);
    collect_all(f.right(), out);
    return;
  default:
    out.insert(f.var());
    if (f.is_bounded_quantifier()) collect_all(f.bound(), out);
    collect_all(f.body(), out);
    return;
  }
}

bool term_mentions(const Term& t, const std::string& var) {
  if (t.is_closed()) return false;
  if (t.kind() == Term::Kind::Var) return t.name() == var;
  return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return term_mentions(a, var); });
}

} // namespace

std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  collect_free(f, out);
  return out;
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

bool occurs_free(const std::string& var, const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
    return term_mentions(f.lhs(), var) || term_mentions(f.rhs(), var);
  case Formula::Kind::Not:
    return occurs_free(var, f.operand());
  case Formula::Kind::Implies:
    return occurs_free(var, f.left()) || occurs_free(var, f.right());
  default:
    if (f.is_bounded_quantifier() && term_mentions(f.bound(), var)) return true;
    return f.var() != var && occurs_free(var, f.body());
  }
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

bool is_delta0(const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
    return true;
  case Formula::Kind::Not:
    return is_delta0(f.operand());
  case Formula::Kind::Implies:
    return is_delta0(f.left()) && is_delta0(f.right());
  case Formula::Kind::ForAll:
    return false;
  default:
    return is_delta0(f.body());
  }
}

std::string fresh_variable(const std::string& base, const std::set<std::string>& avoid) {
  std::string candidate = base;
  while (avoid.count(candidate)) candidate += '\'';
  return candidate;
}

Term substitute(const Term& t, const std::string& var, const Term& by) {
  if (!term_mentions(t, var)) return t;
  switch (t.kind()) {
  case Term::Kind::Var:
    return by;
  case Term::Kind::Zero:
    return t;
  case Term::Kind::Succ:
    return Term::succ(substitute(t.arg(0), var, by));
  case Term::Kind::Plus:
    return Term::plus(substitute(t.arg(0), var, by), substitute(t.arg(1), var, by));
  case Term::Kind::Times:
    return Term::times(substitute(t.arg(0), var, by), substitute(t.arg(1), var, by));
  case Term::Kind::Fn: {
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(substitute(a, var, by));
    return Term::fn(t.name(), std::move(args));
  }
  }
  return t;
}

namespace {

Formula rebuild_quantifier(const Formula& q, std::string var, std::optional<Term> bound, Formula body) {
  switch (q.kind()) {
  case Formula::Kind::ForAll:
    return Formula::forall(std::move(var), std::move(body));
  case Formula::Kind::BoundedForAll:
    return Formula::bounded_forall(std::move(var), std::move(*bound), std::move(body));
  default:
    return Formula::bounded_exists(std::move(var), std::move(*bound), std::move(body));
  }
}

Formula substitute_impl(const Formula& f, const std::string& var, const Term& by,
                        const std::set<std::string>& by_free) {
  if (!occurs_free(var, f)) return f;
  switch (f.kind()) {
  case Formula::Kind::Eq:
    return Formula::eq(substitute(f.lhs(), var, by), substitute(f.rhs(), var, by));
  case Formula::Kind::Not:
    return Formula::negate(substitute_impl(f.operand(), var, by, by_free));
  case Formula::Kind::Implies:
    return Formula::implies(substitute_impl(f.left(), var, by, by_free),
                            substitute_impl(f.right(), var, by, by_free));
  default: {
    std::optional<Term> bound;
    if (f.is_bounded_quantifier()) bound = substitute(f.bound(), var, by);
    if (f.var() == var) return rebuild_quantifier(f, f.var(), std::move(bound), f.body());
    if (!by_free.count(f.var()) || !occurs_free(var, f.body()))
      return rebuild_quantifier(f, f.var(), std::move(bound), substitute_impl(f.body(), var, by, by_free));
    std::set<std::string> avoid = by_free;
    for (const auto& v : free_variables(f.body())) avoid.insert(v);
    avoid.insert(var);
    std::string renamed = fresh_variable(f.var(), avoid);
    Formula body = substitute_impl(f.body(), f.var(), Term::var(renamed), {renamed});
    return rebuild_quantifier(f, renamed, std::move(bound), substitute_impl(body, var, by, by_free));
  }
  }
}

bool free_for_impl(const std::set<std::string>& t_free, const std::string& var, const Formula& f,
                   std::vector<std::string>& binders) {
  auto captured = [&] {
    for (const auto& b : binders)
      if (t_free.count(b)) return true;
    return false;
  };
  switch (f.kind()) {
  case Formula::Kind::Eq:
    if (term_mentions(f.lhs(), var) || term_mentions(f.rhs(), var)) return !captured();
    return true;
  case Formula::Kind::Not:
    return free_for_impl(t_free, var, f.operand(), binders);
  case Formula::Kind::Implies:
    return free_for_impl(t_free, var, f.left(), binders) && free_for_impl(t_free, var, f.right(), binders);
  default: {
    if (f.is_bounded_quantifier() && term_mentions(f.bound(), var) && captured()) return false;
    if (f.var() == var) return true;
    binders.push_back(f.var());
    bool ok = free_for_impl(t_free, var, f.body(), binders);
    binders.pop_back();
    return ok;
  }
  }
}

} // namespace

Formula substitute(const Formula& f, const std::string& var, const Term& by) {
  return substitute_impl(f, var, by, free_variables(by));
}

bool is_free_for(const Term& t, const std::string& var, const Formula& f) {
  std::vector<std::string> binders;
  return free_for_impl(free_variables(t), var, f, binders);
}

} // namespace forge
