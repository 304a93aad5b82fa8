// Random term and formula generator for property tests.

#pragma once

#include "forge/syntax.hpp"

#include <random>
#include <string>
#include <vector>

namespace forge::test {

class RandomAst {
public:
  explicit RandomAst(std::uint64_t seed, std::vector<std::string> vars = {"x", "y", "z", "w'"},
                     bool functions = true)
      : rng_(seed), vars_(std::move(vars)), functions_(functions) {}

  Term term(int depth) {
    const int r = pick(depth <= 0 ? 2 : (functions_ ? 7 : 5));
    switch (r) {
    case 0: return Term::zero();
    case 1: return Term::var(vars_[pick(static_cast<int>(vars_.size()))]);
    case 2: return Term::succ(term(depth - 1));
    case 3: return Term::plus(term(depth - 1), term(depth - 1));
    case 4: return Term::times(term(depth - 1), term(depth - 1));
    case 5: return Term::fn("len", {term(depth - 1)});
    default: return Term::fn("sub", {term(depth - 1), term(depth - 1), term(depth - 1)});
    }
  }

  Formula formula(int depth) {
    const int r = pick(depth <= 0 ? 1 : 6);
    const std::string v = vars_[pick(static_cast<int>(vars_.size()))];
    switch (r) {
    case 0: return Formula::eq(term(2), term(2));
    case 1: return Formula::negate(formula(depth - 1));
    case 2: return Formula::implies(formula(depth - 1), formula(depth - 1));
    case 3: return Formula::forall(v, formula(depth - 1));
    case 4: return Formula::bounded_forall(v, term(1), formula(depth - 1));
    default: return Formula::bounded_exists(v, term(1), formula(depth - 1));
    }
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
  std::vector<std::string> vars_;
  bool functions_;
};

} // namespace forge::test
