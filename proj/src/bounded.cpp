// Exact bounded proof search.
//
// A shortest proof never repeats a line and never contains a line that does
// not contribute to its conclusion, so it is a set S of distinct formulas
// with an acyclic justification structure, of size sum(|F| + 1) - 1. The
// search grows S backwards from phi: it repeatedly picks the oldest open
// goal G and tries every way to justify it.
//
//   axiom      G is premise-free.
//   GEN        G = forall v B; B joins S.
//   MP         some A with A and A -> G in S. Four exhaustive sub-cases:
//     (1) A -> G already in S;
//     (2) A already in S, A -> G joins S;
//     (3) A -> G is premise-free: A is read off the schema shapes with G
//         as consequent (finitely many, given the variable pool);
//     (4) otherwise both are new and A -> G needs its own MP, which costs at
//         least 3|A| + 2|G| + 9; A is then enumerated generically.
//
// Variables: a proof may be renamed injectively on variables that occur in
// neither phi nor the theory axioms without changing its validity, and
// renaming to single letters never grows it. So such foreign variables are
// drawn from a fixed list of single letters, introduced in list order.
//
// The search is depth-first with branch-and-bound on size: after each proof
// found the bound drops below it, so the last proof found is a shortest one.

#include "forge/bounded.hpp"

#include "forge/verifier.hpp"
#include "formula_space.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace forge {

namespace {

using detail::FormulaSpace;

struct Exhausted {};

class BackwardSearch {
public:
  BackwardSearch(const TheorySpec& T, const Formula& phi, const SearchBudget& budget)
      : T_(T), phi_(phi), budget_(budget), start_(std::chrono::steady_clock::now()) {
    known_ = all_variables(phi);
    for (const auto& v : T.axiom_variables()) known_.insert(v);
    for (char c = 'a'; c <= 'z'; ++c) {
      std::string v(1, c);
      if (!known_.count(v)) fresh_.push_back(v);
    }
    fresh_used_.assign(fresh_.size(), 0);
  }

  struct Outcome {
    std::optional<Proof> best;
    bool exhausted = false;
  };

  // Shortest proof of size <= bound, if any.
  Outcome run(std::size_t bound) {
    limit_ = bound + 1;
    if (phi_.size() + 1 > limit_) return {};
    add(phi_);
    Outcome out;
    try {
      dfs();
    } catch (const Exhausted&) {
      out.exhausted = true;
    }
    out.best = best_;
    return out;
  }

  std::uint64_t candidates() const { return candidates_; }

private:
  struct Node {
    Formula f;
    bool closed = false;
    std::vector<int> deps;
  };

  // ----- state

  int add(const Formula& f) {
    nodes_.push_back({f, false, {}});
    index_.emplace(f, static_cast<int>(nodes_.size()) - 1);
    cost_ += f.size() + 1;
    track(f, +1);
    return static_cast<int>(nodes_.size()) - 1;
  }

  void pop() {
    const Formula f = nodes_.back().f;
    track(f, -1);
    cost_ -= f.size() + 1;
    index_.erase(f);
    nodes_.pop_back();
  }

  void track(const Formula& f, int delta) {
    for (const auto& v : all_variables(f)) {
      auto it = fresh_pos_.find(v);
      if (it == fresh_pos_.end()) {
        auto pos = std::find(fresh_.begin(), fresh_.end(), v);
        if (pos == fresh_.end()) continue;
        it = fresh_pos_.emplace(v, static_cast<std::size_t>(pos - fresh_.begin())).first;
      }
      fresh_used_[it->second] += delta;
    }
  }

  std::size_t fresh_in_use() const {
    std::size_t n = 0;
    while (n < fresh_used_.size() && fresh_used_[n] > 0) ++n;
    return n;
  }

  // Foreign variables of f that are not yet in S must be the next unused
  // fresh letters, in order of first occurrence.
  bool admissible(const Formula& f) const {
    std::vector<std::string> order;
    collect_order(f, order);
    std::size_t next = fresh_in_use();
    std::set<std::string> seen;
    for (const auto& v : order) {
      if (known_.count(v) || !seen.insert(v).second) continue;
      auto it = std::find(fresh_.begin(), fresh_.end(), v);
      if (it == fresh_.end()) return false;
      const auto pos = static_cast<std::size_t>(it - fresh_.begin());
      if (fresh_used_[pos] > 0) continue;
      if (pos != next) return false;
      ++next;
    }
    return true;
  }

  static void collect_order(const Term& t, std::vector<std::string>& out) {
    if (t.kind() == Term::Kind::Var) out.push_back(t.name());
    for (const auto& a : t.args()) collect_order(a, out);
  }

  static void collect_order(const Formula& f, std::vector<std::string>& out) {
    switch (f.kind()) {
    case Formula::Kind::Eq:
      collect_order(f.lhs(), out);
      collect_order(f.rhs(), out);
      return;
    case Formula::Kind::Not:
      collect_order(f.operand(), out);
      return;
    case Formula::Kind::Implies:
      collect_order(f.left(), out);
      collect_order(f.right(), out);
      return;
    case Formula::Kind::ForAll:
      out.push_back(f.var());
      collect_order(f.body(), out);
      return;
    default:
      out.push_back(f.var());
      collect_order(f.bound(), out);
      collect_order(f.body(), out);
    }
  }

  std::vector<std::string> pool(std::size_t extra_fresh) const {
    std::vector<std::string> out(known_.begin(), known_.end());
    const std::size_t used = fresh_in_use();
    for (std::size_t i = 0; i < std::min(fresh_.size(), used + extra_fresh); ++i) out.push_back(fresh_[i]);
    return out;
  }

  bool premise_free(const Formula& f) {
    auto it = premise_free_.find(f);
    if (it != premise_free_.end()) return it->second;
    const bool ok = premise_free_justification(T_, f).has_value();
    premise_free_.emplace(f, ok);
    return ok;
  }

  bool reaches(int from, int target) const {
    if (from == target) return true;
    std::vector<int> stack{from};
    std::vector<char> seen(nodes_.size(), 0);
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      if (n == target) return true;
      if (seen[n]) continue;
      seen[n] = 1;
      for (int d : nodes_[n].deps) stack.push_back(d);
    }
    return false;
  }

  void tick() {
    ++candidates_;
    if (candidates_ > budget_.max_candidates) throw Exhausted{};
    if ((candidates_ & 1023) == 0 && std::chrono::steady_clock::now() - start_ > budget_.max_wall) throw Exhausted{};
  }

  // ----- search

  void dfs() {
    tick();
    int goal = -1;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (!nodes_[i].closed) {
        goal = static_cast<int>(i);
        break;
      }
    if (goal < 0) {
      record();
      return;
    }
    const Formula G = nodes_[goal].f;

    if (premise_free(G)) close(goal, {});

    if (G.kind() == Formula::Kind::ForAll) with_node(G.body(), [&](int b) { close(goal, {b}); });

    // MP (1): A -> G in S.
    const std::size_t n_before = nodes_.size();
    for (std::size_t j = 0; j < n_before; ++j) {
      const Formula& g = nodes_[j].f;
      if (g.kind() == Formula::Kind::Implies && g.right() == G) {
        const int major = static_cast<int>(j);
        with_node(g.left(), [&](int minor) { close(goal, {minor, major}); });
      }
    }
    // MP (2): A in S, A -> G new.
    for (std::size_t i = 0; i < n_before; ++i) {
      const Formula imp = Formula::implies(nodes_[i].f, G);
      if (index_.count(imp)) continue;
      const int minor = static_cast<int>(i);
      with_new(imp, [&](int major) { close(goal, {minor, major}); });
    }
    // MP (3): A -> G premise-free, A new.
    for (const auto& a : axiom_antecedents(G)) {
      if (index_.count(a)) continue;
      const Formula imp = Formula::implies(a, G);
      if (index_.count(imp) || !premise_free(imp)) continue;
      if (cost_ + a.size() + 1 + imp.size() + 1 > limit_) continue;
      if (!admissible(a)) continue;
      const int minor = add(a);
      const int major = add(imp);
      nodes_[major].closed = true;
      close(goal, {minor, major});
      nodes_[major].closed = false;
      pop();
      pop();
    }
    // MP (4): A and A -> G both new, A -> G not premise-free.
    for (const auto& a : generic_antecedents(G)) {
      if (index_.count(a)) continue;
      const Formula imp = Formula::implies(a, G);
      if (index_.count(imp) || premise_free(imp)) continue;
      if (cost_ + a.size() + 1 + imp.size() + 1 > limit_) continue;
      if (!admissible(a)) continue;
      const int minor = add(a);
      const int major = add(imp);
      close(goal, {minor, major});
      pop();
      pop();
    }
  }

  void close(int goal, std::vector<int> deps) {
    for (int d : deps)
      if (reaches(d, goal)) return;
    nodes_[goal].closed = true;
    nodes_[goal].deps = std::move(deps);
    dfs();
    nodes_[goal].closed = false;
    nodes_[goal].deps.clear();
  }

  // Runs body with f in S: the existing node, or a new open one if it fits.
  void with_node(const Formula& f, const std::function<void(int)>& body) {
    if (auto it = index_.find(f); it != index_.end()) {
      body(it->second);
      return;
    }
    with_new(f, body);
  }

  void with_new(const Formula& f, const std::function<void(int)>& body) {
    if (cost_ + f.size() + 1 > limit_ || !admissible(f)) return;
    const int id = add(f);
    body(id);
    pop();
  }

  void record() {
    // Post-order from the conclusion puts premises first.
    std::vector<int> order;
    std::vector<char> seen(nodes_.size(), 0);
    std::function<void(int)> visit = [&](int n) {
      if (seen[n]) return;
      seen[n] = 1;
      for (int d : nodes_[n].deps) visit(d);
      order.push_back(n);
    };
    visit(0);
    std::vector<Formula> lines;
    for (int n : order) lines.push_back(nodes_[n].f);
    auto proof = justify(T_, lines);
    if (!proof) return;
    best_ = std::move(*proof);
    limit_ = best_->size(); // only strictly shorter proofs from here on
  }

  // ----- candidates for MP (3)

  std::vector<Formula> axiom_antecedents(const Formula& G) {
    using F = Formula;
    std::vector<Formula> out;
    std::unordered_set<Formula, FormulaHash> seen;
    auto push = [&](const Formula& a) {
      if (seen.insert(a).second) out.push_back(a);
    };
    const std::size_t room = limit_ > cost_ + G.size() + 3 ? limit_ - cost_ - G.size() - 3 : 0;
    // Both A and A -> G are new: 2|A| + |G| + 3 <= remaining.
    const std::size_t max_a = room / 2;
    if (G.kind() == Formula::Kind::Implies) {
      const F& l = G.left();
      const F& r = G.right();
      push(r); // P1
      if (l.kind() == Formula::Kind::Implies && r.kind() == Formula::Kind::Implies && l.left() == r.left())
        push(F::implies(l.left(), F::implies(l.right(), r.right()))); // P2
      push(F::implies(F::negate(r), F::negate(l)));                    // P3
      if (r.kind() == Formula::Kind::ForAll)                           // Q2
        push(F::forall(r.var(), F::implies(l, r.body())));
      if (l.kind() == Formula::Kind::ForAll && r.kind() == Formula::Kind::ForAll && l.var() == r.var() &&
          l.body().kind() == Formula::Kind::Implies) // IND
        push(substitute(r.body(), r.var(), Term::zero()));
      for (const auto& [t, u] : replacement_pairs(l, r)) push(F::eq(t, u)); // EQSUBST
      if (l == r) {
        for (std::size_t s = 3; s <= max_a; ++s)
          for (const auto& e : space(max_a / 2 + 1).formulas(s))
            if (e.kind() == Formula::Kind::Eq) push(e);
      }
    }
    for (const auto& ax : T_.extra_axioms) // THAX
      if (ax.kind() == Formula::Kind::Implies && ax.right() == G) push(ax.left());
    for (const auto& a : q1_antecedents(G, max_a)) push(a); // Q1
    std::erase_if(out, [&](const Formula& a) { return a.size() > max_a; });
    return out;
  }

  // (t, u) such that `after` may be `before` with some t replaced by u: t, u
  // are the subterms at a common position on the path to the first difference.
  static std::vector<std::pair<Term, Term>> replacement_pairs(const Formula& before, const Formula& after) {
    std::vector<std::pair<Term, Term>> out;
    std::function<bool(const Term&, const Term&)> term = [&](const Term& a, const Term& b) {
      if (a == b) return false;
      out.emplace_back(a, b);
      if (a.kind() == b.kind() && a.name() == b.name() && a.args().size() == b.args().size())
        for (std::size_t i = 0; i < a.args().size(); ++i)
          if (term(a.arg(i), b.arg(i))) break;
      return true;
    };
    std::function<bool(const Formula&, const Formula&)> formula = [&](const Formula& a, const Formula& b) {
      if (a == b || a.kind() != b.kind()) return a != b;
      switch (a.kind()) {
      case Formula::Kind::Eq:
        return term(a.lhs(), b.lhs()) || term(a.rhs(), b.rhs());
      case Formula::Kind::Not:
        return formula(a.operand(), b.operand());
      case Formula::Kind::Implies:
        return formula(a.left(), b.left()) || formula(a.right(), b.right());
      case Formula::Kind::ForAll:
        return a.var() != b.var() || formula(a.body(), b.body());
      default:
        return a.var() != b.var() || term(a.bound(), b.bound()) || formula(a.body(), b.body());
      }
    };
    formula(before, after);
    return out;
  }

  // forall v B with B[t/v] = G, t free for v in B.
  std::vector<Formula> q1_antecedents(const Formula& G, std::size_t max_a) {
    std::vector<Formula> out;
    const auto vars = pool(1);
    std::vector<Term> subterms;
    collect_subterms(G, subterms);
    std::unordered_set<Term, TermHash> distinct(subterms.begin(), subterms.end());
    for (const auto& v : vars) {
      if (1 + v.size() + G.size() > max_a) continue;
      out.push_back(Formula::forall(v, G));
      const Term var = Term::var(v);
      for (const auto& t : distinct) {
        if (t == var) continue;
        const std::size_t occurrences = count_occurrences(G, t);
        if (occurrences == 0 || occurrences > 12) continue;
        for (std::uint32_t mask = 1; mask < (1u << occurrences); ++mask) {
          std::size_t counter = 0;
          Formula B = replace_occurrences(G, t, var, mask, counter);
          const Formula a = Formula::forall(v, B);
          if (a.size() > max_a) continue;
          if (!is_free_for(t, v, B) || !(substitute(B, v, t) == G)) continue;
          out.push_back(a);
        }
      }
    }
    return out;
  }

  static void collect_subterms(const Term& t, std::vector<Term>& out) {
    out.push_back(t);
    for (const auto& a : t.args()) collect_subterms(a, out);
  }

  static void collect_subterms(const Formula& f, std::vector<Term>& out) {
    switch (f.kind()) {
    case Formula::Kind::Eq:
      collect_subterms(f.lhs(), out);
      collect_subterms(f.rhs(), out);
      return;
    case Formula::Kind::Not:
      collect_subterms(f.operand(), out);
      return;
    case Formula::Kind::Implies:
      collect_subterms(f.left(), out);
      collect_subterms(f.right(), out);
      return;
    case Formula::Kind::ForAll:
      collect_subterms(f.body(), out);
      return;
    default:
      collect_subterms(f.bound(), out);
      collect_subterms(f.body(), out);
    }
  }

  static std::size_t count_occurrences(const Formula& f, const Term& t) {
    std::vector<Term> all;
    collect_subterms(f, all);
    return static_cast<std::size_t>(std::count(all.begin(), all.end(), t));
  }

  static Term replace_occurrences(const Term& s, const Term& t, const Term& v, std::uint32_t mask,
                                  std::size_t& counter) {
    if (s == t) return (mask >> counter++) & 1u ? v : s;
    if (s.args().empty()) return s;
    std::vector<Term> args;
    for (const auto& a : s.args()) args.push_back(replace_occurrences(a, t, v, mask, counter));
    switch (s.kind()) {
    case Term::Kind::Succ: return Term::succ(args[0]);
    case Term::Kind::Plus: return Term::plus(args[0], args[1]);
    case Term::Kind::Times: return Term::times(args[0], args[1]);
    default: return Term::fn(s.name(), std::move(args));
    }
  }

  static Formula replace_occurrences(const Formula& f, const Term& t, const Term& v, std::uint32_t mask,
                                     std::size_t& counter) {
    switch (f.kind()) {
    case Formula::Kind::Eq: {
      Term l = replace_occurrences(f.lhs(), t, v, mask, counter);
      Term r = replace_occurrences(f.rhs(), t, v, mask, counter);
      return Formula::eq(l, r);
    }
    case Formula::Kind::Not:
      return Formula::negate(replace_occurrences(f.operand(), t, v, mask, counter));
    case Formula::Kind::Implies: {
      Formula l = replace_occurrences(f.left(), t, v, mask, counter);
      Formula r = replace_occurrences(f.right(), t, v, mask, counter);
      return Formula::implies(l, r);
    }
    case Formula::Kind::ForAll:
      return Formula::forall(f.var(), replace_occurrences(f.body(), t, v, mask, counter));
    default: {
      Term b = replace_occurrences(f.bound(), t, v, mask, counter);
      Formula body = replace_occurrences(f.body(), t, v, mask, counter);
      return f.kind() == Formula::Kind::BoundedForAll ? Formula::bounded_forall(f.var(), b, body)
                                                      : Formula::bounded_exists(f.var(), b, body);
    }
    }
  }

  // ----- candidates for MP (4)

  std::vector<Formula> generic_antecedents(const Formula& G) {
    std::vector<Formula> out;
    const std::size_t remaining = limit_ > cost_ ? limit_ - cost_ : 0;
    // A -> G may be the consequent of a line already in S.
    for (const auto& n : nodes_) {
      const Formula& f = n.f;
      if (f.kind() == Formula::Kind::Implies && f.right().kind() == Formula::Kind::Implies && f.right().right() == G &&
          2 * f.right().left().size() + G.size() + 3 <= remaining)
        out.push_back(f.right().left());
    }
    if (remaining < 2 * G.size() + 9) return out;
    const std::size_t max_a = (remaining - 2 * G.size() - 9) / 3;
    for (std::size_t s = 3; s <= max_a; ++s)
      for (const auto& a : space(max_a / 2 + 1).formulas(s)) out.push_back(a);
    return out;
  }

  FormulaSpace& space(std::size_t extra_fresh) {
    auto vars = pool(extra_fresh);
    std::string key;
    for (const auto& v : vars) key += v + ",";
    auto it = spaces_.find(key);
    if (it == spaces_.end())
      it = spaces_.emplace(key, std::make_unique<FormulaSpace>(detail::theory_signature(T_, vars))).first;
    return *it->second;
  }

  const TheorySpec& T_;
  Formula phi_;
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::set<std::string> known_;
  std::vector<std::string> fresh_;
  std::vector<int> fresh_used_;
  std::unordered_map<std::string, std::size_t> fresh_pos_;

  std::vector<Node> nodes_;
  std::unordered_map<Formula, int, FormulaHash> index_;
  std::size_t cost_ = 0;
  std::size_t limit_ = 0;
  std::uint64_t candidates_ = 0;
  std::optional<Proof> best_;
  std::unordered_map<Formula, bool, FormulaHash> premise_free_;
  std::map<std::string, std::unique_ptr<FormulaSpace>> spaces_;
};

} // namespace

SearchResult enumerate_proofs(const TheorySpec& T, const Formula& phi, std::size_t size_bound,
                              const SearchBudget& budget) {
  const std::size_t bound = std::min(size_bound, budget.max_size);
  BackwardSearch search(T, phi, budget);
  auto outcome = search.run(bound);
  SearchResult result;
  result.candidates = search.candidates();
  if (outcome.best) {
    result.status = SearchStatus::Found;
    result.proof = std::move(outcome.best);
    result.minimal = !outcome.exhausted;
  } else if (outcome.exhausted || size_bound > budget.max_size) {
    result.status = SearchStatus::BudgetExhausted;
  } else {
    result.status = SearchStatus::None;
  }
  return result;
}

std::size_t size_power(std::size_t base, unsigned k) {
  constexpr std::size_t kSaturate = std::size_t{1} << 40;
  std::size_t v = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (base != 0 && v > kSaturate / base) return kSaturate;
    v *= base;
  }
  return v;
}

MembershipResult l_k_membership(const BoundedLanguage& L, const Formula& phi, const SearchBudget& budget) {
  MembershipResult out;
  out.size_bound = size_power(phi.size(), L.k);
  auto r = enumerate_proofs(*L.theory, phi, out.size_bound, budget);
  out.candidates = r.candidates;
  switch (r.status) {
  case SearchStatus::Found:
    out.verdict = Membership::In;
    out.witness = std::move(r.proof);
    break;
  case SearchStatus::None:
    out.verdict = Membership::Out;
    break;
  case SearchStatus::BudgetExhausted:
    out.verdict = Membership::BudgetExhausted;
    break;
  }
  return out;
}

namespace {

// Forward enumeration of line sequences, each prefix a valid proof of its
// own last line, tested with check_witness once phi is appended.
class ForwardSearch {
public:
  ForwardSearch(const TheorySpec& T, const Formula& phi, unsigned k, const WitnessSearchOptions& options)
      : T_(T), phi_(phi), k_(k), options_(options) {
    std::set<std::string> known = all_variables(phi);
    for (const auto& v : T.axiom_variables()) known.insert(v);
    std::vector<std::string> vars(known.begin(), known.end());
    for (char c = 'a'; c <= 'z' && fresh_.size() < 3; ++c) {
      std::string v(1, c);
      if (!known.count(v)) fresh_.push_back(v);
    }
    known_ = known;
    for (const auto& v : fresh_) vars.push_back(v);
    space_ = std::make_unique<detail::FormulaSpace>(detail::theory_signature(T, vars));
  }

  // 1: found, 0: none within bound, -1: ran out of candidates.
  int run(std::size_t bound) {
    bound_ = bound;
    try {
      return extend(0) ? 1 : 0;
    } catch (const detail::Signature&) {
      return -1;
    }
  }

  const std::vector<Formula>& witness() const { return lines_; }

private:
  bool extend(std::size_t used) {
    // Close with phi.
    const std::size_t with_phi = used + (lines_.empty() ? 0 : 1) + phi_.size();
    if (with_phi <= bound_) {
      lines_.push_back(phi_);
      tick();
      if (check_witness(T_, phi_, lines_, k_)) return true;
      lines_.pop_back();
    }
    // Or add another line, leaving room for phi.
    const std::size_t sep = lines_.empty() ? 0 : 1;
    if (used + sep + 3 + 1 + phi_.size() > bound_) return false;
    const std::size_t max_line = bound_ - used - sep - 1 - phi_.size();
    for (std::size_t s = 3; s <= max_line; ++s) {
      for (const auto& f : space_->formulas(s)) {
        if (f == phi_ || std::find(lines_.begin(), lines_.end(), f) != lines_.end()) continue;
        if (!canonical(f)) continue;
        lines_.push_back(f);
        tick();
        if (proof_of(T_, lines_, f) && extend(used + sep + s)) return true;
        lines_.pop_back();
      }
    }
    return false;
  }

  // Fresh letters enter the sequence in list order.
  bool canonical(const Formula& f) const {
    std::size_t next = 0;
    auto scan = [&](const Formula& g, bool check) {
      for (const auto& v : first_occurrences(g)) {
        auto it = std::find(fresh_.begin(), fresh_.end(), v);
        if (it == fresh_.end()) continue;
        const auto pos = static_cast<std::size_t>(it - fresh_.begin());
        if (pos < next) continue;
        if (check && pos != next) return false;
        next = std::max(next, pos + 1);
      }
      return true;
    };
    for (const auto& l : lines_) scan(l, false);
    return scan(f, true);
  }

  static std::vector<std::string> first_occurrences(const Formula& f) {
    std::vector<std::string> out;
    std::function<void(const Term&)> term = [&](const Term& t) {
      if (t.kind() == Term::Kind::Var && std::find(out.begin(), out.end(), t.name()) == out.end())
        out.push_back(t.name());
      for (const auto& a : t.args()) term(a);
    };
    std::function<void(const Formula&)> formula = [&](const Formula& g) {
      switch (g.kind()) {
      case Formula::Kind::Eq:
        term(g.lhs());
        term(g.rhs());
        return;
      case Formula::Kind::Not:
        formula(g.operand());
        return;
      case Formula::Kind::Implies:
        formula(g.left());
        formula(g.right());
        return;
      default:
        if (std::find(out.begin(), out.end(), g.var()) == out.end()) out.push_back(g.var());
        if (g.is_bounded_quantifier()) term(g.bound());
        formula(g.body());
      }
    };
    formula(f);
    return out;
  }

  void tick() {
    if (++candidates_ > options_.max_candidates) throw detail::Signature{};
  }

  const TheorySpec& T_;
  Formula phi_;
  unsigned k_;
  WitnessSearchOptions options_;
  std::set<std::string> known_;
  std::vector<std::string> fresh_;
  std::unique_ptr<detail::FormulaSpace> space_;
  std::vector<Formula> lines_;
  std::size_t bound_ = 0;
  std::uint64_t candidates_ = 0;

public:
  std::uint64_t candidates() const { return candidates_; }
};

} // namespace

MembershipResult l_k_membership_by_witness(const BoundedLanguage& L, const Formula& phi,
                                           const WitnessSearchOptions& options) {
  MembershipResult out;
  out.size_bound = size_power(phi.size(), L.k);
  ForwardSearch search(*L.theory, phi, L.k, options);
  const int r = search.run(std::min(out.size_bound, options.size_cap));
  out.candidates = search.candidates();
  if (r == 1) {
    out.verdict = Membership::In;
    out.witness = justify(*L.theory, search.witness());
  } else if (r == 0 && out.size_bound <= options.size_cap) {
    out.verdict = Membership::Out;
  } else {
    out.verdict = Membership::BudgetExhausted;
  }
  return out;
}

ShortestResult shortest_proof_length(const TheorySpec& T, const Formula& phi, std::size_t cap,
                                     const SearchBudget& budget) {
  ShortestResult out;
  auto r = enumerate_proofs(T, phi, cap, budget);
  if (r.status == SearchStatus::Found && r.minimal) {
    out.length = r.proof->size();
    out.proof = std::move(r.proof);
  } else {
    out.exhausted = r.status != SearchStatus::None;
  }
  return out;
}

Theory extend_with_con(const Theory& T, std::optional<std::uint64_t> m) {
  if (T->level >= kMaxTheoryLevel) throw std::invalid_argument("extension chain is at its maximum depth");
  if (!T->find_function(proof_predicate_symbol(T->level)))
    throw std::invalid_argument("theory " + T->name + " has no proof predicate to state its consistency");
  auto next = std::make_shared<TheorySpec>(*T);
  next->parent = T;
  next->level = T->level + 1;
  next->name = T->name + (m ? "+Con(" + std::to_string(*m) + ")" : "+Con");
  next->extra_axioms.push_back(m ? con_bounded(*T, *m) : con_unbounded(*T));
  install_definitional_extensions(*next);
  return next;
}

bool RegenerationReport::all_pass() const {
  std::set<Natural> codes;
  for (const auto& l : levels) {
    if (!l.previous_con_accepted || !l.previous_con_rejected_below || l.own_con_search != SearchStatus::None ||
        !l.con_instance_true)
      return false;
    codes.insert(l.con_code);
  }
  return codes.size() == levels.size();
}

RegenerationReport regeneration_demo(int depth, std::uint64_t m, const SearchBudget& budget) {
  if (depth < 1 || depth > kMaxTheoryLevel) throw std::invalid_argument("depth must be in 1..8");
  RegenerationReport report;
  report.m = m;
  Theory below = standard_theory();
  for (int i = 1; i <= depth; ++i) {
    Theory here = extend_with_con(below);
    const Formula con = here->extra_axioms.back();
    const Formula instance = con_bounded(*here, m);
    const std::vector<Formula> one_line{con};
    RegenerationLevel level{
        .theory = here->name,
        .level = here->level,
        .con = con,
        .con_code = encode_formula(con),
        .con_instance = instance,
        .con_instance_code = encode_formula(instance),
        .goedel_sentence = goedel_sentence_bounded(*here, m).sentence,
        .previous_con_accepted = proof_of(*here, one_line, con),
        .previous_con_rejected_below = !proof_of(*below, one_line, con),
        .own_con_search = enumerate_proofs(*here, instance, budget.max_size, budget).status,
        .con_instance_true = eval_delta0(*here, instance),
    };
    report.levels.push_back(std::move(level));
    below = here;
  }
  return report;
}

std::string regeneration_report_json(const RegenerationReport& report) {
  auto status = [](SearchStatus s) {
    switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::None: return "none";
    case SearchStatus::BudgetExhausted: return "budget_exhausted";
    }
    return "?";
  };
  nlohmann::ordered_json j;
  j["schema"] = "forge.regen/1";
  j["m"] = report.m;
  j["all_pass"] = report.all_pass();
  j["levels"] = nlohmann::ordered_json::array();
  for (const auto& l : report.levels) {
    nlohmann::ordered_json e;
    e["theory"] = l.theory;
    e["level"] = l.level;
    e["con"] = print_formula(l.con);
    e["con_code"] = to_string(l.con_code);
    e["con_instance"] = print_formula(l.con_instance);
    e["con_instance_size"] = l.con_instance.size();
    e["goedel_sentence_size"] = l.goedel_sentence.size();
    e["previous_con_accepted"] = l.previous_con_accepted;
    e["previous_con_rejected_below"] = l.previous_con_rejected_below;
    e["own_con_search"] = status(l.own_con_search);
    e["con_instance_true"] = l.con_instance_true;
    j["levels"].push_back(std::move(e));
  }
  return j.dump(2);
}

} // namespace forge
