#include "forge/bounded.hpp"
#include "forge/corpus.hpp"
#include "forge/kernels.hpp"
#include "forge/verifier.hpp"

#include <doctest.h>

#include <random>

using namespace forge;

namespace {

PropFormula random_prop(std::mt19937_64& rng, int depth, std::uint32_t vars) {
  if (depth <= 0 || rng() % 4 == 0) return PropFormula::var(static_cast<std::uint32_t>(rng() % vars));
  switch (rng() % 4) {
  case 0: return PropFormula::negate(random_prop(rng, depth - 1, vars));
  case 1: return PropFormula::conj(random_prop(rng, depth - 1, vars), random_prop(rng, depth - 1, vars));
  case 2: return PropFormula::disj(random_prop(rng, depth - 1, vars), random_prop(rng, depth - 1, vars));
  default: return PropFormula::implies(random_prop(rng, depth - 1, vars), random_prop(rng, depth - 1, vars));
  }
}

} // namespace

TEST_CASE("thread count") { CHECK(kernels::thread_count() >= 1); }

TEST_CASE("falsify: serial and parallel agree") {
  std::mt19937_64 rng(201);
  for (int i = 0; i < 500; ++i) {
    const PropFormula f = random_prop(rng, 5, 2 + static_cast<std::uint32_t>(rng() % 12));
    const auto s = kernels::falsify_serial(f);
    CHECK(s == kernels::falsify_parallel(f));
    CHECK(s.has_value() != is_tautology_bruteforce(f));
    if (s) {
      CHECK_FALSE(f.evaluate(*s));
      for (std::uint64_t a = 0; a < *s; ++a) REQUIRE(f.evaluate(a));
    }
  }
  const PropFormula wide = parse_prop("x19 | !x19 | x0");
  CHECK_FALSE(kernels::falsify_parallel(wide));
}

TEST_CASE("satisfy: serial and parallel agree") {
  corpus::Rng rng(202);
  std::size_t unsat = 0;
  for (int i = 0; i < 500; ++i) {
    const ClauseSet cs = corpus::random_cnf(rng, 3 + static_cast<std::uint32_t>(rng() % 12), 5 + rng() % 40, 3);
    const auto s = kernels::satisfy_serial(cs);
    CHECK(s == kernels::satisfy_parallel(cs));
    if (s)
      CHECK(cs.satisfied_by(*s));
    else
      ++unsat;
  }
  CHECK(unsat > 10);
  CHECK_FALSE(kernels::satisfy_parallel(corpus::pigeonhole(5, 4)));
}

TEST_CASE("batch proof checking: serial and parallel agree") {
  const auto T = standard_theory();
  std::vector<Proof> proofs;
  for (std::size_t k = 1; k < 60; ++k) {
    Proof p = synthetic_mp_chain(k, 8 + k % 5);
    proofs.push_back(p);
    p.lines.back().formula = Formula::negate(p.lines.back().formula);
    proofs.push_back(p);
  }
  const auto a = kernels::check_proofs_serial(*T, proofs);
  CHECK(a == kernels::check_proofs_parallel(*T, proofs));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(static_cast<bool>(a[i]) == (i % 2 == 0));
}
