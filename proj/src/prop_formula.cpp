#include "forge/propositional.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace forge {

// ---------------------------------------------------------------------------
// Formulas

PropFormula PropFormula::make(Kind k, std::uint32_t index, std::vector<PropFormula> subs) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->index = index;
  if (k == Kind::Var) n->num_vars = index + 1;
  for (const auto& s : subs) {
    n->size += s.size();
    n->num_vars = std::max(n->num_vars, s.num_vars());
  }
  n->subs = std::move(subs);
  return PropFormula(std::move(n));
}

PropFormula PropFormula::var(std::uint32_t index) { return make(Kind::Var, index, {}); }
PropFormula PropFormula::constant(bool value) { return make(Kind::Const, value ? 1 : 0, {}); }
PropFormula PropFormula::negate(PropFormula f) { return make(Kind::Not, 0, {std::move(f)}); }
PropFormula PropFormula::conj(PropFormula a, PropFormula b) { return make(Kind::And, 0, {std::move(a), std::move(b)}); }
PropFormula PropFormula::disj(PropFormula a, PropFormula b) { return make(Kind::Or, 0, {std::move(a), std::move(b)}); }
PropFormula PropFormula::implies(PropFormula a, PropFormula b) {
  return make(Kind::Implies, 0, {std::move(a), std::move(b)});
}

namespace {

template <class Get>
bool eval_with(const PropFormula& f, const Get& get) {
  switch (f.kind()) {
  case PropFormula::Kind::Var: return get(f.index());
  case PropFormula::Kind::Const: return f.value();
  case PropFormula::Kind::Not: return !eval_with(f.operand(), get);
  case PropFormula::Kind::And: return eval_with(f.left(), get) && eval_with(f.right(), get);
  case PropFormula::Kind::Or: return eval_with(f.left(), get) || eval_with(f.right(), get);
  case PropFormula::Kind::Implies: return !eval_with(f.left(), get) || eval_with(f.right(), get);
  }
  return false;
}

} // namespace

bool PropFormula::evaluate(std::uint64_t assignment) const {
  return eval_with(*this, [&](std::uint32_t i) { return i < 64 && ((assignment >> i) & 1u) != 0; });
}

bool PropFormula::evaluate(const std::vector<bool>& assignment) const {
  return eval_with(*this, [&](std::uint32_t i) { return i < assignment.size() && assignment[i]; });
}

bool operator==(const PropFormula& a, const PropFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.node_->index != b.node_->index || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.node_->subs.size(); ++i)
    if (!(a.node_->subs[i] == b.node_->subs[i])) return false;
  return true;
}

namespace {

bool is_const(const PropFormula& f, bool v) { return f.kind() == PropFormula::Kind::Const && f.value() == v; }

} // namespace

PropFormula fold_not(const PropFormula& a) {
  if (a.kind() == PropFormula::Kind::Const) return PropFormula::constant(!a.value());
  return PropFormula::negate(a);
}

PropFormula fold_and(const PropFormula& a, const PropFormula& b) {
  if (is_const(a, false) || is_const(b, false)) return PropFormula::constant(false);
  if (is_const(a, true)) return b;
  if (is_const(b, true)) return a;
  return PropFormula::conj(a, b);
}

PropFormula fold_or(const PropFormula& a, const PropFormula& b) {
  if (is_const(a, true) || is_const(b, true)) return PropFormula::constant(true);
  if (is_const(a, false)) return b;
  if (is_const(b, false)) return a;
  return PropFormula::disj(a, b);
}

PropFormula big_and(const std::vector<PropFormula>& fs) {
  PropFormula out = PropFormula::constant(true);
  for (const auto& f : fs) out = fold_and(out, f);
  return out;
}

PropFormula big_or(const std::vector<PropFormula>& fs) {
  PropFormula out = PropFormula::constant(false);
  for (const auto& f : fs) out = fold_or(out, f);
  return out;
}

PropFormula exactly_one(const std::vector<std::uint32_t>& vars) {
  std::vector<PropFormula> some;
  for (auto v : vars) some.push_back(PropFormula::var(v));
  std::vector<PropFormula> parts{big_or(some)};
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      parts.push_back(PropFormula::negate(PropFormula::conj(PropFormula::var(vars[i]), PropFormula::var(vars[j]))));
  return big_and(parts);
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class PropParser {
public:
  explicit PropParser(std::string_view s) : s_(s) {}

  PropFormula parse() {
    auto f = implication();
    skip();
    if (pos_ != s_.size()) fail("unexpected input");
    return f;
  }

private:
  PropFormula implication() {
    auto a = disjunction();
    if (eat("->")) return PropFormula::implies(a, implication());
    return a;
  }

  PropFormula disjunction() {
    auto a = conjunction();
    while (eat("|")) a = PropFormula::disj(a, conjunction());
    return a;
  }

  PropFormula conjunction() {
    auto a = unary();
    while (eat("&")) a = PropFormula::conj(a, unary());
    return a;
  }

  PropFormula unary() {
    if (eat("!") || eat("~")) return PropFormula::negate(unary());
    if (eat("(")) {
      auto f = implication();
      if (!eat(")")) fail("expected )");
      return f;
    }
    if (eat("T")) return PropFormula::constant(true);
    if (eat("F")) return PropFormula::constant(false);
    if (eat("x")) {
      std::uint32_t v = 0;
      const char* begin = s_.data() + pos_;
      auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
      if (ec != std::errc{} || end == begin) fail("expected variable index");
      pos_ += static_cast<std::size_t>(end - begin);
      return PropFormula::var(v);
    }
    fail("expected formula");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw PropParseError(what + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

int precedence(PropFormula::Kind k) {
  switch (k) {
  case PropFormula::Kind::Implies: return 1;
  case PropFormula::Kind::Or: return 2;
  case PropFormula::Kind::And: return 3;
  default: return 4;
  }
}

void print_to(const PropFormula& f, std::string& out, int context) {
  const int p = precedence(f.kind());
  const bool paren = p < context;
  if (paren) out += '(';
  switch (f.kind()) {
  case PropFormula::Kind::Var:
    out += 'x';
    out += std::to_string(f.index());
    break;
  case PropFormula::Kind::Const: out += f.value() ? 'T' : 'F'; break;
  case PropFormula::Kind::Not:
    out += '!';
    print_to(f.operand(), out, 4);
    break;
  case PropFormula::Kind::And:
    print_to(f.left(), out, 3);
    out += " & ";
    print_to(f.right(), out, 4);
    break;
  case PropFormula::Kind::Or:
    print_to(f.left(), out, 2);
    out += " | ";
    print_to(f.right(), out, 3);
    break;
  case PropFormula::Kind::Implies:
    print_to(f.left(), out, 2);
    out += " -> ";
    print_to(f.right(), out, 1);
    break;
  }
  if (paren) out += ')';
}

} // namespace

PropFormula parse_prop(std::string_view text) { return PropParser(text).parse(); }

std::string print_prop(const PropFormula& f) {
  std::string out;
  print_to(f, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Clauses

Clause make_clause(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

bool is_tautological(const Clause& c) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i].var == c[i + 1].var) return true;
  return false;
}

bool clause_satisfied(const Clause& c, std::uint64_t assignment) {
  for (const auto& l : c)
    if ((((assignment >> l.var) & 1u) != 0) == l.positive) return true;
  return false;
}

std::vector<std::size_t> ClauseSet::tautological() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < clauses.size(); ++i)
    if (is_tautological(clauses[i])) out.push_back(i);
  return out;
}

bool ClauseSet::satisfied_by(std::uint64_t assignment) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) { return clause_satisfied(c, assignment); });
}

std::string print_literal(const Literal& l) {
  return (l.positive ? "" : "-") + std::to_string(static_cast<std::uint64_t>(l.var) + 1);
}

Literal parse_literal(std::string_view token) {
  long long v = 0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || end != token.data() + token.size() || v == 0 || v > (1LL << 31) || v < -(1LL << 31))
    throw DimacsError("bad literal '" + std::string(token) + "'");
  return {static_cast<std::uint32_t>((v < 0 ? -v : v) - 1), v > 0};
}

ClauseSet parse_dimacs(std::string_view text) {
  ClauseSet cs;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::size_t declared = 0;
  std::vector<Literal> cur;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%') continue;
    if (tok == "p") {
      std::string fmt;
      long long vars = -1, clauses = -1;
      if (header || !(ls >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0)
        throw DimacsError("bad problem line");
      header = true;
      cs.num_vars = static_cast<std::uint32_t>(vars);
      declared = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!header) throw DimacsError("clause before problem line");
    do {
      if (tok == "0") {
        cs.clauses.push_back(make_clause(std::move(cur)));
        cur.clear();
        continue;
      }
      auto l = parse_literal(tok);
      if (l.var >= cs.num_vars) throw DimacsError("literal " + tok + " exceeds the declared variable count");
      cur.push_back(l);
    } while (ls >> tok);
  }
  if (!header) throw DimacsError("missing problem line");
  if (!cur.empty()) throw DimacsError("unterminated clause");
  if (cs.clauses.size() != declared) throw DimacsError("clause count does not match the problem line");
  return cs;
}

std::string print_dimacs(const ClauseSet& cs) {
  std::string out = "p cnf " + std::to_string(cs.num_vars) + " " + std::to_string(cs.clauses.size()) + "\n";
  for (const auto& c : cs.clauses) {
    for (const auto& l : c) out += print_literal(l) + " ";
    out += "0\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tseitin

namespace {

class TseitinBuilder {
public:
  TseitinBuilder(ClauseSet& cs, std::uint32_t next) : cs_(cs), next_(next) {}

  Literal encode(const PropFormula& f) {
    using K = PropFormula::Kind;
    switch (f.kind()) {
    case K::Var: return {f.index(), true};
    case K::Not: return !encode(f.operand());
    case K::Const: {
      const Literal v{fresh(), true};
      add({f.value() ? v : !v});
      return v;
    }
    default: break;
    }
    Literal a = encode(f.left());
    const Literal b = encode(f.right());
    if (f.kind() == K::Implies) a = !a;
    const Literal v{fresh(), true};
    if (f.kind() == K::And) {
      add({!v, a});
      add({!v, b});
      add({v, !a, !b});
    } else {
      add({!v, a, b});
      add({v, !a});
      add({v, !b});
    }
    return v;
  }

  void add(std::vector<Literal> lits) { cs_.clauses.push_back(make_clause(std::move(lits))); }
  std::uint32_t next() const { return next_; }

private:
  std::uint32_t fresh() { return next_++; }

  ClauseSet& cs_;
  std::uint32_t next_;
};

} // namespace

TseitinEncoding tseitin(const PropFormula& f, bool assert_true, std::uint32_t first_aux) {
  TseitinEncoding enc;
  TseitinBuilder b(enc.clauses, std::max(first_aux, f.num_vars()));
  Literal root = b.encode(f);
  if (!root.positive) {
    // A negated root gets its own variable so `root` names a variable.
    const std::uint32_t v = b.next();
    TseitinBuilder wrap(enc.clauses, v + 1);
    wrap.add({Literal{v, false}, root});
    wrap.add({Literal{v, true}, !root});
    enc.root = v;
    enc.clauses.num_vars = v + 1;
  } else {
    enc.root = root.var;
    enc.clauses.num_vars = std::max(b.next(), root.var + 1);
  }
  enc.clauses.clauses.push_back({Literal{enc.root, assert_true}});
  return enc;
}

ClauseSet tseitin_negation(const PropFormula& f) { return tseitin(f, false, f.num_vars()).clauses; }

} // namespace forge
