#include "forge/goedel.hpp"
#include "forge/propositional.hpp"

#include <map>

namespace forge {

namespace {

class Translator {
public:
  Translator(const TheorySpec& T, std::string x, unsigned n) : T_(T), x_(std::move(x)), n_(n) {}

  PropFormula run(const Formula& A) { return translate(A, true); }

private:
  PropFormula translate(const Formula& f, bool x_free) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Eq: return atom(f, x_free);
    case K::Not: return fold_not(translate(f.operand(), x_free));
    case K::Implies: return fold_or(fold_not(translate(f.left(), x_free)), translate(f.right(), x_free));
    case K::ForAll: throw TranslationError("unbounded quantifier");
    case K::BoundedForAll:
    case K::BoundedExists: break;
    }
    const bool all = f.kind() == K::BoundedForAll;
    const Term& bound = f.bound();
    const bool inner_x_free = x_free && f.var() != x_;
    std::vector<PropFormula> parts;
    if (x_free && bound.kind() == Term::Kind::Var && bound.name() == x_) {
      for (std::uint64_t y = 0; y <= n_; ++y) {
        const PropFormula in_range = at_least(y);
        const PropFormula body = with(f.var(), y, [&] { return translate(f.body(), inner_x_free); });
        parts.push_back(all ? fold_or(fold_not(in_range), body) : fold_and(in_range, body));
      }
    } else {
      const Term closed = close(bound);
      if (!free_variables(closed).empty()) throw TranslationError("quantifier bound is neither closed nor x");
      const Natural b = value(closed);
      if (b > kMaxTranslationRange) throw TranslationError("quantifier range too large to expand");
      const auto top = static_cast<std::uint64_t>(b);
      for (std::uint64_t y = 0; y <= top; ++y)
        parts.push_back(with(f.var(), y, [&] { return translate(f.body(), inner_x_free); }));
    }
    return all ? big_and(parts) : big_or(parts);
  }

  PropFormula atom(const Formula& f, bool x_free) {
    const Term l = close(f.lhs());
    const Term r = close(f.rhs());
    const bool depends = x_free && (occurs(l) || occurs(r));
    if (!depends) return PropFormula::constant(value(l) == value(r));
    std::vector<PropFormula> hits;
    for (std::uint64_t v = 0; v <= n_; ++v) {
      const Term xv = numeral(v);
      if (value(substitute(l, x_, xv)) == value(substitute(r, x_, xv)))
        hits.push_back(PropFormula::var(static_cast<std::uint32_t>(v)));
    }
    return big_or(hits);
  }

  bool occurs(const Term& t) const { return free_variables(t).count(x_) != 0; }

  // Bound variables replaced by their current values.
  Term close(const Term& t) const {
    Term out = t;
    for (const auto& [v, val] : env_) out = substitute(out, v, numeral(val));
    return out;
  }

  Natural value(const Term& t) const {
    try {
      return eval_closed_term(T_, t);
    } catch (const EvalError& e) {
      throw TranslationError(std::string("cannot evaluate term: ") + e.what());
    }
  }

  PropFormula at_least(std::uint64_t y) const {
    std::vector<PropFormula> sel;
    for (std::uint64_t v = y; v <= n_; ++v) sel.push_back(PropFormula::var(static_cast<std::uint32_t>(v)));
    return big_or(sel);
  }

  template <class Fn>
  PropFormula with(const std::string& var, std::uint64_t value, Fn&& fn) {
    const auto saved = env_;
    env_[var] = value;
    PropFormula out = fn();
    env_ = saved;
    return out;
  }

  const TheorySpec& T_;
  std::string x_;
  std::uint64_t n_;
  std::map<std::string, std::uint64_t> env_;
};

} // namespace

PropFormula translate_delta0(const TheorySpec& T, const Formula& A, const std::string& x, unsigned n) {
  if (!is_delta0(A)) throw TranslationError("formula is not Delta_0");
  for (const auto& v : free_variables(A))
    if (v != x) throw TranslationError("free variable " + v + " other than " + x);
  std::vector<std::uint32_t> selectors;
  for (unsigned v = 0; v <= n; ++v) selectors.push_back(v);
  return PropFormula::implies(exactly_one(selectors), Translator(T, x, n).run(A));
}

PropFormula translate_delta0(const Formula& A, const std::string& x, unsigned n) {
  return translate_delta0(*standard_theory(), A, x, n);
}

} // namespace forge
