#include "formula_space.hpp"

namespace forge::detail {

Signature theory_signature(const TheorySpec& T, std::vector<std::string> variables) {
  Signature sig;
  sig.variables = std::move(variables);
  for (const auto& d : T.def_extensions) sig.functions.emplace_back(d.symbol, d.arity);
  return sig;
}

void FormulaSpace::compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                                std::vector<std::vector<std::size_t>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

const std::vector<Term>& FormulaSpace::terms(std::size_t n) {
  if (auto it = terms_.find(n); it != terms_.end()) return it->second;
  std::vector<Term> out;
  if (n >= 1) {
    if (n == 1) out.push_back(Term::zero());
    for (const auto& v : sig_.variables)
      if (v.size() == n) out.push_back(Term::var(v));
    for (const auto& t : terms(n - 1)) out.push_back(Term::succ(t));
    for (std::size_t a = 1; a + 1 < n; ++a) {
      const std::size_t b = n - 1 - a;
      for (const auto& x : terms(a))
        for (const auto& y : terms(b)) out.push_back(Term::plus(x, y));
      for (const auto& x : terms(a))
        for (const auto& y : terms(b)) out.push_back(Term::times(x, y));
    }
    for (const auto& [name, arity] : sig_.functions) {
      std::vector<std::vector<std::size_t>> shapes;
      std::vector<std::size_t> cur;
      compositions(n - 1, static_cast<std::size_t>(arity), cur, shapes);
      for (const auto& shape : shapes) {
        std::vector<std::vector<Term>> choices;
        for (std::size_t s : shape) choices.push_back(terms(s));
        std::vector<std::size_t> idx(shape.size(), 0);
        bool empty = false;
        for (const auto& c : choices) empty = empty || c.empty();
        if (empty) continue;
        while (true) {
          std::vector<Term> args;
          for (std::size_t i = 0; i < idx.size(); ++i) args.push_back(choices[i][idx[i]]);
          out.push_back(Term::fn(name, std::move(args)));
          std::size_t i = 0;
          while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
          if (i == idx.size()) break;
        }
      }
    }
  }
  return terms_[n] = std::move(out);
}

const std::vector<Formula>& FormulaSpace::formulas(std::size_t n) {
  if (auto it = formulas_.find(n); it != formulas_.end()) return it->second;
  std::vector<Formula> out;
  if (n >= 3) {
    for (std::size_t a = 1; a + 1 < n; ++a)
      for (const auto& x : terms(a))
        for (const auto& y : terms(n - 1 - a)) out.push_back(Formula::eq(x, y));
    for (const auto& f : formulas(n - 1)) out.push_back(Formula::negate(f));
    for (std::size_t a = 3; a + 4 <= n; ++a)
      for (const auto& x : formulas(a))
        for (const auto& y : formulas(n - 1 - a)) out.push_back(Formula::implies(x, y));
    for (const auto& v : sig_.variables) {
      if (1 + v.size() + 3 > n) continue;
      for (const auto& b : formulas(n - 1 - v.size())) out.push_back(Formula::forall(v, b));
      if (!sig_.bounded_quantifiers) continue;
      for (std::size_t bs = 1; 1 + v.size() + bs + 3 <= n; ++bs)
        for (const auto& bound : terms(bs))
          for (const auto& b : formulas(n - 1 - v.size() - bs)) {
            out.push_back(Formula::bounded_forall(v, bound, b));
            out.push_back(Formula::bounded_exists(v, bound, b));
          }
    }
  }
  return formulas_[n] = std::move(out);
}

} // namespace forge::detail
