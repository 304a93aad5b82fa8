#include "forge/propositional.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace forge {

// ---------------------------------------------------------------------------
// Proof text

namespace {

std::size_t parse_index(const std::string& tok) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      tok.size() > 12)
    throw ResolutionFormatError("bad index '" + tok + "'");
  return static_cast<std::size_t>(std::stoull(tok));
}

std::uint32_t parse_variable(const std::string& tok) {
  const std::size_t v = parse_index(tok);
  if (v == 0 || v > (std::size_t{1} << 31)) throw ResolutionFormatError("bad variable '" + tok + "'");
  return static_cast<std::uint32_t>(v - 1);
}

Literal parse_proof_literal(const std::string& tok) {
  try {
    return parse_literal(tok);
  } catch (const DimacsError& e) {
    throw ResolutionFormatError(e.what());
  }
}

} // namespace

ResolutionProof parse_resolution_proof(std::string_view text) {
  ResolutionProof proof;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty() || toks[0] == "c") continue;
    const std::string& op = toks[0];
    auto need = [&](std::size_t n) {
      if (toks.size() != n) throw ResolutionFormatError("line " + std::to_string(lineno) + ": wrong number of fields");
    };
    if (op == "i") {
      need(2);
      proof.steps.push_back(InputStep{parse_index(toks[1])});
    } else if (op == "r") {
      need(4);
      proof.steps.push_back(ResolveStep{parse_index(toks[1]), parse_index(toks[2]), parse_variable(toks[3])});
    } else if (op == "e") {
      need(4);
      proof.steps.push_back(
          ExtendStep{parse_variable(toks[1]), parse_proof_literal(toks[2]), parse_proof_literal(toks[3])});
    } else if (op == "t") {
      if (toks.size() < 5) throw ResolutionFormatError("line " + std::to_string(lineno) + ": wrong number of fields");
      AxiomStep s{parse_index(toks[1]), parse_index(toks[2]), {}, parse_variable(toks[3])};
      for (std::size_t i = 4; i < toks.size(); ++i) s.selectors.push_back(parse_variable(toks[i]));
      proof.steps.push_back(std::move(s));
    } else {
      throw ResolutionFormatError("line " + std::to_string(lineno) + ": unknown step '" + op + "'");
    }
  }
  return proof;
}

std::string print_resolution_proof(const ResolutionProof& proof) {
  std::string out;
  auto var = [](std::uint32_t v) { return std::to_string(static_cast<std::uint64_t>(v) + 1); };
  for (const auto& s : proof.steps) {
    if (const auto* i = std::get_if<InputStep>(&s)) {
      out += "i " + std::to_string(i->index);
    } else if (const auto* r = std::get_if<ResolveStep>(&s)) {
      out += "r " + std::to_string(r->i) + " " + std::to_string(r->j) + " " + var(r->pivot);
    } else if (const auto* e = std::get_if<ExtendStep>(&s)) {
      out += "e " + var(e->var) + " " + print_literal(e->a) + " " + print_literal(e->b);
    } else {
      const auto& t = std::get<AxiomStep>(s);
      out += "t " + std::to_string(t.theorem) + " " + std::to_string(t.n) + " " + var(t.aux_base);
      for (auto v : t.selectors) out += " " + var(v);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

bool contains(const Clause& c, Literal l) { return std::binary_search(c.begin(), c.end(), l); }

Clause resolve(const Clause& pos, const Clause& neg, std::uint32_t pivot, std::uint64_t& ops) {
  Clause out;
  out.reserve(pos.size() + neg.size());
  for (const auto& l : pos)
    if (!(l.var == pivot && l.positive)) out.push_back(l);
  for (const auto& l : neg)
    if (!(l.var == pivot && !l.positive)) out.push_back(l);
  ops += pos.size() + neg.size();
  return make_clause(std::move(out));
}

PropFormula rename(const PropFormula& f, const std::vector<std::uint32_t>& to) {
  using K = PropFormula::Kind;
  switch (f.kind()) {
  case K::Var: return PropFormula::var(to.at(f.index()));
  case K::Const: return f;
  case K::Not: return PropFormula::negate(rename(f.operand(), to));
  case K::And: return PropFormula::conj(rename(f.left(), to), rename(f.right(), to));
  case K::Or: return PropFormula::disj(rename(f.left(), to), rename(f.right(), to));
  case K::Implies: return PropFormula::implies(rename(f.left(), to), rename(f.right(), to));
  }
  return f;
}

} // namespace

ResolutionCheck check_resolution_detailed(const ClauseSet& cs, const ResolutionProof& proof, bool extended,
                                          const AxiomOracle& axioms) {
  ResolutionCheck r;
  std::set<std::uint32_t> used;
  std::uint32_t top = 0; // one above every variable in use
  auto note = [&](const Clause& c) {
    for (const auto& l : c) {
      used.insert(l.var);
      top = std::max(top, l.var + 1);
    }
  };
  for (const auto& c : cs.clauses) note(c);
  auto fail = [&](std::size_t step, const std::string& why) {
    r.ok = false;
    r.reason = "step " + std::to_string(step) + ": " + why;
    return r;
  };
  for (std::size_t s = 0; s < proof.steps.size(); ++s) {
    const auto& step = proof.steps[s];
    if (const auto* in = std::get_if<InputStep>(&step)) {
      if (in->index >= cs.clauses.size()) return fail(s, "input index out of range");
      r.clauses.push_back(cs.clauses[in->index]);
      r.literal_ops += r.clauses.back().size();
    } else if (const auto* res = std::get_if<ResolveStep>(&step)) {
      if (res->i >= r.clauses.size() || res->j >= r.clauses.size()) return fail(s, "premise index out of range");
      const Clause& a = r.clauses[res->i];
      const Clause& b = r.clauses[res->j];
      const Literal p{res->pivot, true};
      r.literal_ops += a.size() + b.size();
      Clause out;
      if (contains(a, p) && contains(b, !p)) {
        out = resolve(a, b, res->pivot, r.literal_ops);
      } else if (contains(b, p) && contains(a, !p)) {
        out = resolve(b, a, res->pivot, r.literal_ops);
      } else {
        return fail(s, "pivot does not clash in the premises");
      }
      r.clauses.push_back(std::move(out));
    } else if (const auto* ext = std::get_if<ExtendStep>(&step)) {
      if (!extended) return fail(s, "extension step outside extended resolution");
      if (used.count(ext->var)) return fail(s, "extension variable is not fresh");
      if (ext->a.var == ext->var || ext->b.var == ext->var) return fail(s, "extension defined in terms of itself");
      const Literal v{ext->var, true};
      r.clauses.push_back(make_clause({!v, ext->a}));
      r.clauses.push_back(make_clause({!v, ext->b}));
      r.clauses.push_back(make_clause({v, !ext->a, !ext->b}));
      for (std::size_t k = r.clauses.size() - 3; k < r.clauses.size(); ++k) note(r.clauses[k]);
      r.literal_ops += 7;
      continue;
    } else {
      const auto& ax = std::get<AxiomStep>(step);
      if (!extended || !axioms) return fail(s, "axiom step outside an axiom-extended system");
      auto f = axioms(ax.theorem, ax.n);
      if (!f) return fail(s, "no axiom " + std::to_string(ax.theorem) + " at n = " + std::to_string(ax.n));
      if (ax.selectors.size() != f->num_vars()) return fail(s, "selector count does not match the axiom");
      if (ax.aux_base < top) return fail(s, "auxiliary variables are not fresh");
      for (auto v : ax.selectors)
        if (v >= ax.aux_base) return fail(s, "selector collides with auxiliary variables");
      auto enc = tseitin(rename(*f, ax.selectors), true, ax.aux_base);
      for (auto& c : enc.clauses.clauses) {
        r.literal_ops += c.size();
        note(c);
        r.clauses.push_back(std::move(c));
      }
      continue;
    }
    note(r.clauses.back());
  }
  if (r.clauses.empty()) return fail(0, "empty proof");
  if (!r.clauses.back().empty()) return fail(proof.steps.size() - 1, "last clause is not empty");
  r.ok = true;
  return r;
}

bool check_resolution(const ClauseSet& cs, const ResolutionProof& proof, bool extended) {
  return check_resolution_detailed(cs, proof, extended).ok;
}

// ---------------------------------------------------------------------------
// Tree-like refutation

namespace {

class TreeRefuter {
public:
  explicit TreeRefuter(const ClauseSet& cs) : cs_(cs), value_(cs.num_vars, -1), input_step_(cs.clauses.size(), -1) {}

  ResolutionProof run() {
    refute(0);
    return std::move(proof_);
  }

private:
  // Index of a proof clause falsified by the current partial assignment.
  std::size_t refute(std::uint32_t depth) {
    for (std::size_t i = 0; i < cs_.clauses.size(); ++i)
      if (falsified(cs_.clauses[i])) return input(i);
    if (depth >= cs_.num_vars) throw std::invalid_argument("clause set is satisfiable");
    const Literal pos{depth, true};
    value_[depth] = 0;
    const std::size_t c0 = refute(depth + 1);
    value_[depth] = -1;
    if (!contains(clauses_[c0], pos)) return c0;
    value_[depth] = 1;
    const std::size_t c1 = refute(depth + 1);
    value_[depth] = -1;
    if (!contains(clauses_[c1], !pos)) return c1;
    std::uint64_t ops = 0;
    proof_.steps.push_back(ResolveStep{c0, c1, depth});
    clauses_.push_back(resolve(clauses_[c0], clauses_[c1], depth, ops));
    return clauses_.size() - 1;
  }

  bool falsified(const Clause& c) const {
    for (const auto& l : c) {
      const int v = value_[l.var];
      if (v < 0 || (v == 1) == l.positive) return false;
    }
    return true;
  }

  std::size_t input(std::size_t i) {
    if (input_step_[i] < 0) {
      proof_.steps.push_back(InputStep{i});
      clauses_.push_back(cs_.clauses[i]);
      input_step_[i] = static_cast<long>(clauses_.size() - 1);
    }
    return static_cast<std::size_t>(input_step_[i]);
  }

  const ClauseSet& cs_;
  std::vector<int> value_;
  std::vector<long> input_step_;
  std::vector<Clause> clauses_;
  ResolutionProof proof_;
};

} // namespace

ResolutionProof tree_refutation(const ClauseSet& cs) {
  for (const auto& c : cs.clauses)
    for (const auto& l : c)
      if (l.var >= cs.num_vars) throw std::invalid_argument("literal exceeds the variable count");
  return TreeRefuter(cs).run();
}

// ---------------------------------------------------------------------------
// Shortest refutations

namespace {

struct BudgetOut {};

// Refutations with inputs first, then extensions, then resolutions: any
// refutation can be reordered that way without changing its length.
class RefutationEnumerator {
public:
  RefutationEnumerator(const ClauseSet& cs, bool extended, std::uint64_t max_candidates)
      : cs_(cs), extended_(extended), max_(max_candidates) {
    for (std::size_t i = 0; i < cs.clauses.size(); ++i)
      if (!is_tautological(cs.clauses[i])) usable_.push_back(i);
    for (const auto& c : cs.clauses)
      for (const auto& l : c) top_ = std::max(top_, l.var + 1);
    top_ = std::max(top_, cs.num_vars);
  }

  std::optional<ResolutionProof> run(std::size_t cap) {
    for (std::size_t d = 1; d <= cap; ++d) {
      for (std::size_t k = 1; k <= std::min(d, usable_.size()); ++k) {
        if (choose_inputs(0, k, d - k)) return proof_;
      }
    }
    return std::nullopt;
  }

  std::uint64_t candidates() const { return candidates_; }

private:
  bool choose_inputs(std::size_t from, std::size_t k, std::size_t rest) {
    if (k == 0) return extensions(rest);
    for (std::size_t i = from; i + k <= usable_.size(); ++i) {
      tick();
      push(InputStep{usable_[i]}, {cs_.clauses[usable_[i]]});
      if (choose_inputs(i + 1, k - 1, rest)) return true;
      pop(1);
    }
    return false;
  }

  bool extensions(std::size_t rest) {
    if (resolutions(rest)) return true;
    if (!extended_ || rest < 2) return false;
    const std::uint32_t v = top_ + static_cast<std::uint32_t>(ext_count_);
    const std::uint32_t vars = v;
    for (std::uint32_t x = 0; x < vars; ++x)
      for (std::uint32_t y = x; y < vars; ++y)
        for (int sx = 0; sx < 2; ++sx)
          for (int sy = 0; sy < 2; ++sy) {
            if (x == y && sx != sy) continue;
            tick();
            const Literal a{x, sx == 0}, b{y, sy == 0}, lv{v, true};
            ++ext_count_;
            push(ExtendStep{v, a, b}, {make_clause({!lv, a}), make_clause({!lv, b}), make_clause({lv, !a, !b})});
            if (extensions(rest - 1)) return true;
            pop(3);
            --ext_count_;
          }
    return false;
  }

  bool resolutions(std::size_t rest) {
    if (rest == 0) return !clauses_.empty() && clauses_.back().empty();
    for (const auto& c : clauses_)
      if (c.empty()) return false;
    for (std::size_t i = 0; i < clauses_.size(); ++i)
      for (std::size_t j = i + 1; j < clauses_.size(); ++j) {
        const Clause& a = clauses_[i];
        const Clause& b = clauses_[j];
        if (rest == 1 && (a.size() != 1 || b.size() != 1)) continue;
        std::optional<Literal> clash;
        int clashes = 0;
        for (const auto& l : a)
          if (contains(b, !l)) {
            ++clashes;
            clash = l;
          }
        if (clashes != 1) continue;
        tick();
        std::uint64_t ops = 0;
        Clause out = clash->positive ? resolve(a, b, clash->var, ops) : resolve(b, a, clash->var, ops);
        if (std::find(clauses_.begin(), clauses_.end(), out) != clauses_.end()) continue;
        push(ResolveStep{i, j, clash->var}, {std::move(out)});
        if (resolutions(rest - 1)) return true;
        pop(1);
      }
    return false;
  }

  void push(ResolutionStep s, std::vector<Clause> cs) {
    proof_.steps.push_back(std::move(s));
    for (auto& c : cs) clauses_.push_back(std::move(c));
  }

  void pop(std::size_t n) {
    proof_.steps.pop_back();
    clauses_.resize(clauses_.size() - n);
  }

  void tick() {
    if (++candidates_ > max_) throw BudgetOut{};
  }

  const ClauseSet& cs_;
  bool extended_;
  std::uint64_t max_;
  std::vector<std::size_t> usable_;
  std::uint32_t top_ = 0;
  std::size_t ext_count_ = 0;
  std::vector<Clause> clauses_;
  ResolutionProof proof_;
  std::uint64_t candidates_ = 0;
};

} // namespace

RefutationSearch shortest_refutation(const ClauseSet& cs, std::size_t cap, bool extended,
                                     std::uint64_t max_candidates) {
  RefutationSearch out;
  RefutationEnumerator e(cs, extended, max_candidates);
  try {
    out.proof = e.run(cap);
  } catch (const BudgetOut&) {
    out.exhausted = true;
  }
  out.candidates = e.candidates();
  return out;
}

} // namespace forge
