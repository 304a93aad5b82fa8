#include "forge/bounded.hpp"
#include "forge/corpus.hpp"
#include "forge/derivation.hpp"
#include "forge/goedel.hpp"
#include "forge/kernels.hpp"
#include "forge/verifier.hpp"

#include <doctest.h>

#include <random>

using namespace forge;

namespace {

const char* const kOneLine = "0. 0 = 0 ; EQREFL[t=0]\n";
const char* const kThreeLine = "0. 0 = 0 ; EQREFL[t=0]\n"
                               "1. 0 = 0 -> (0 = 0 -> 0 = 0) ; P1\n"
                               "2. 0 = 0 -> 0 = 0 ; MP 0 1\n";

std::vector<Proof> proof_corpus() {
  const auto T = standard_theory();
  std::vector<Proof> out{parse_proof(kOneLine), parse_proof(kThreeLine)};
  for (std::size_t k : {2, 5, 9}) out.push_back(synthetic_mp_chain(k, 8));
  out.push_back(double_negation_elimination(*T, parse_formula("x = S(0)")));
  out.push_back(conjunction_introduction(*T, parse_formula("0 = 0"), parse_formula("S(0) = S(0)")));
  for (const char* psi : {"x = 0", "!(x = x)", "forall<= y x (y = y)"})
    out.push_back(diagonalize(*T, parse_formula(psi)).proof);
  corpus::Rng rng(5);
  while (out.size() < 60) {
    const Formula f = corpus::random_delta0_sentence(rng, 12, 1);
    SearchBudget b;
    b.max_candidates = 20000;
    auto r = enumerate_proofs(*T, f, 20, b);
    if (r.proof) out.push_back(*r.proof);
  }
  return out;
}

} // namespace

TEST_CASE("proof_of examples") {
  const auto T = standard_theory();
  const Proof one = parse_proof(kOneLine);
  CHECK(proof_of(*T, one, parse_formula("0=0")));
  Diagnostics d;
  CHECK_FALSE(proof_of(*T, one, parse_formula("0=S(0)"), &d));
  CHECK_FALSE(d.reasons.empty());
  CHECK(proof_of(*T, parse_proof(kThreeLine), parse_formula("0=0 -> 0=0")));
}

TEST_CASE("proof_of ignores recorded justifications") {
  const auto T = standard_theory();
  const Proof p = parse_proof("0. 0 = 0 ; P1\n1. 0 = 0 -> (0 = 0 -> 0 = 0) ; QAX 3\n2. 0 = 0 -> 0 = 0 ; COMPUTE\n");
  CHECK_FALSE(check_proof_justified(*T, p));
  CHECK(proof_of(*T, p, p.conclusion()));
  const auto j = justify(*T, p.formulas());
  REQUIRE(j);
  CHECK(check_proof_justified(*T, *j));
}

TEST_CASE("proof_of rejects") {
  const auto T = standard_theory();
  // MP from a later line.
  CHECK_FALSE(proof_of(*T, parse_proof("0. 0 = 0 -> 0 = 0 ; MP 1 2\n1. 0 = 0 ; EQREFL[t=0]\n"),
                       parse_formula("0 = 0")));
  CHECK_FALSE(proof_of(*T, parse_proof("0. S(0) = 0 ; COMPUTE\n"), parse_formula("S(0) = 0")));
  CHECK_FALSE(proof_of(*T, std::span<const Formula>{}, parse_formula("0 = 0")));
  // Not an instance of any schema.
  CHECK_FALSE(proof_of(*T, parse_proof("0. x = 0 ; EQREFL[t=x]\n"), parse_formula("x = 0")));
}

TEST_CASE("check_witness examples") {
  const auto T = standard_theory();
  const Formula phi = parse_formula("0 = 0");
  CHECK(check_witness(*T, phi, parse_proof(kOneLine), 1));
  const Formula imp = parse_formula("0 = 0 -> 0 = 0");
  const Proof three = parse_proof(kThreeLine);
  REQUIRE(three.size() > imp.size());
  CHECK_FALSE(check_witness(*T, imp, three, 1));
  CHECK(check_witness(*T, imp, three, 2));
  CHECK_FALSE(check_witness(*T, parse_formula("0 = S(0)"), parse_proof("0. 0 = S(0) ; COMPUTE\n"), 3));
  CHECK(within_size_bound(9, 3, 2));
  CHECK_FALSE(within_size_bound(10, 3, 2));
  CHECK(within_size_bound(std::size_t(1) << 40, 1000, 7));
}

TEST_CASE("cost counters") {
  const auto T = standard_theory();
  const auto one = proof_of_with_cost(*T, parse_proof(kOneLine), parse_formula("0 = 0"));
  CHECK(one.accepted);
  CHECK(one.cost.pair_searches == 0);
  CHECK(one.cost.lines_scanned == 1);
  for (std::size_t k : {3, 11, 41, 101}) {
    const Proof p = synthetic_mp_chain(k, 16);
    REQUIRE(p.lines.size() == k);
    const auto v = proof_of_with_cost(*T, p, p.conclusion());
    CHECK(v.accepted);
    CHECK(v.cost.pair_searches <= k * (k - 1) / 2);
    const auto again = proof_of_with_cost(*T, p, p.conclusion());
    CHECK(again.cost.symbol_comparisons == v.cost.symbol_comparisons);
    CHECK(again.cost.pair_searches == v.cost.pair_searches);
  }
}

TEST_CASE("synthetic chains scale") {
  const auto T = standard_theory();
  std::uint64_t prev = 0;
  for (std::size_t k = 10; k <= 200; k += 10) {
    const Proof p = synthetic_mp_chain(k, 16);
    const auto v = proof_of_with_cost(*T, p, p.conclusion());
    CHECK(v.accepted);
    CHECK(v.cost.symbol_comparisons > prev);
    prev = v.cost.symbol_comparisons;
  }
}

TEST_CASE("search agrees with recorded justifications") {
  const auto T = standard_theory();
  for (const auto& p : proof_corpus()) {
    REQUIRE(check_proof_justified(*T, p));
    CHECK(proof_of(*T, p, p.conclusion()));
  }
}

TEST_CASE("soundness in the standard model") {
  const auto T = standard_theory();
  std::size_t evaluated = 0;
  for (const auto& p : proof_corpus()) {
    const Formula& phi = p.conclusion();
    if (!is_sentence(phi) || !is_delta0(phi)) continue;
    REQUIRE(proof_of(*T, p, phi));
    // Ranges over codes of diagonal sentences are too large to iterate.
    std::optional<bool> v;
    try {
      v = eval_delta0(*T, phi);
    } catch (const EvalError&) {
      continue;
    }
    ++evaluated;
    CHECK_MESSAGE(*v, print_formula(phi));
  }
  CHECK(evaluated >= 40);
}

TEST_CASE("serial and parallel batch checking agree") {
  const auto T = standard_theory();
  auto proofs = proof_corpus();
  const auto n = proofs.size();
  for (std::size_t i = 0; i < n; ++i) {
    Proof broken = proofs[i];
    broken.lines.back().formula = Formula::negate(broken.lines.back().formula);
    proofs.push_back(broken);
  }
  const auto a = kernels::check_proofs_serial(*T, proofs);
  const auto b = kernels::check_proofs_parallel(*T, proofs);
  CHECK(a == b);
  for (std::size_t i = 0; i < n; ++i) CHECK(a[i]);
}

TEST_CASE("mutation fuzz") {
  const auto T = standard_theory();
  const auto corpus = proof_corpus();
  std::mt19937_64 rng(77);
  const std::string alphabet = "0S+*=!()-> xyz.;0123456789";
  std::size_t mutations = 0, parsed = 0, accepted = 0, unsound = 0;
  while (mutations < 100000) {
    const Proof& p = corpus[rng() % corpus.size()];
    if (p.lines.size() > 12) continue;
    std::string text = print_proof(p);
    const std::size_t at = rng() % text.size();
    switch (rng() % 3) {
    case 0: text[at] = alphabet[rng() % alphabet.size()]; break;
    case 1: text.erase(at, 1); break;
    default: text.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
    }
    ++mutations;
    Proof q;
    try {
      q = parse_proof(text, T->arity_lookup());
    } catch (const std::exception&) {
      continue;
    }
    ++parsed;
    const Formula& phi = q.conclusion();
    if (!proof_of(*T, q, phi)) continue;
    ++accepted;
    if (is_sentence(phi) && is_delta0(phi)) {
      try {
        if (!eval_delta0(*T, phi)) ++unsound;
      } catch (const EvalError&) {
      }
    }
  }
  CHECK(mutations >= 100000);
  CHECK(parsed > 10000);
  CHECK(accepted > 0);
  CHECK(unsound == 0);
}

TEST_CASE("fuzzed codes decode to checkable proofs") {
  const auto T = standard_theory();
  std::mt19937_64 rng(78);
  const auto corpus = proof_corpus();
  std::size_t decoded = 0;
  for (int i = 0; i < 3000; ++i) {
    const Proof& p = corpus[rng() % corpus.size()];
    if (p.size() > 200) continue;
    Natural code = encode_proof(p);
    const std::size_t len = code_length(code);
    // Replace one base-128 digit.
    Natural scale = 1;
    const std::size_t digit = rng() % len;
    for (std::size_t d = 0; d < digit; ++d) scale *= 128;
    const Natural old = (code / scale) % 128;
    code = code - old * scale + Natural(rng() % 128) * scale;
    const auto lines = decode_proof(code);
    if (!lines) continue;
    ++decoded;
    if (lines->empty()) continue;
    const bool ok = proof_of(*T, *lines, lines->back());
    if (ok && is_sentence(lines->back()) && is_delta0(lines->back())) CHECK(eval_delta0(*T, lines->back()));
  }
  CHECK(decoded > 0);
}
