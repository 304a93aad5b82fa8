// Gödel codes, the standard-model evaluator, the arithmetized function
// symbols (sub, diag, prf, ...), and the diagonal construction.

#pragma once

#include "forge/calculus.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace forge {

// ---------------------------------------------------------------------------
// Codes
//
// A formula is written in prefix (Polish) order as a sequence of symbols, one
// base-128 digit each: the fixed connectives and constants, one digit per
// character of a variable name (initial and continuation characters use
// disjoint digit ranges so names delimit themselves), and one digit per
// function symbol. Proof lines are joined with a separator digit. No digit is
// zero, so the code is injective and its digit count equals the symbol count:
// len(code(pi)) = size(pi).

inline constexpr unsigned kCodeBase = 128;

Natural encode_term(const Term& t);
Natural encode_formula(const Formula& f);
Natural encode_proof(std::span<const Formula> lines);
Natural encode_proof(const Proof& proof);

std::optional<Term> decode_term(const Natural& code);
std::optional<Formula> decode_formula(const Natural& code);
std::optional<std::vector<Formula>> decode_proof(const Natural& code);

// Number of base-128 digits (0 for 0).
std::size_t code_length(const Natural& code);
// Largest code with at most m digits: 128^m - 1. Every proof of size <= m has
// a code no larger than this, and every code no larger has at most m digits.
Natural code_bound(std::size_t m);

// ---------------------------------------------------------------------------
// Evaluation in the standard model

struct EvalOptions {
  // Cap on the iterations of a single bounded quantifier.
  std::uint64_t max_iterations = 1u << 22;
  // Cap on the proof search backing a bounded prf-existential.
  std::uint64_t max_search_candidates = 10'000'000;
  std::size_t max_search_size = 24;
};

Natural eval_closed_term(const TheorySpec& T, const Term& t);
Natural eval_closed_term(const Term& t);

// Truth of a Δ0 sentence. Bounded quantifiers iterate up to their evaluated
// bound, except that `exists<= p B (prf_j(p, c) = S(0) & ...)` enumerates the
// proofs of decode(c) instead of all p <= B (the only candidates that can make
// the body true). Throws EvalError on open or non-Δ0 input, on unregistered
// symbols, and when a bound or a search leaves the configured caps.
bool eval_delta0(const TheorySpec& T, const Formula& f, const EvalOptions& options = {});
bool eval_delta0(const Formula& f);

// ---------------------------------------------------------------------------
// Theories

// "q0": Robinson arithmetic alone. "q": Q with the definitional extensions.
// "pa": "q" plus the induction schema.
Theory make_theory(std::string_view name);
Theory standard_theory();
// Adds sub, diag, len, cb, b0, b1 and prf<level> evaluators to T.
void install_definitional_extensions(TheorySpec& T);

// ---------------------------------------------------------------------------
// Provability and consistency formulas

enum class NumeralMode { Unary, Binary };

Term make_numeral(const Natural& n, NumeralMode mode);
// Codes are always written as binary numerals; in unary they would be
// astronomically long.
Term code_numeral(const Natural& code);

// !(0 = 0)
Formula falsum();

// exists<= p cb(m) (prf_T(p, code) = S(0) & len(p) <= m)
Formula provability_formula_bounded(const TheorySpec& T, const Term& m, const Term& code);
Formula provability_formula_bounded(const TheorySpec& T, std::uint64_t m, const Natural& code,
                                    NumeralMode mode = NumeralMode::Unary);
// exists p (prf_T(p, code) = S(0)): r.e., has no evaluator.
Formula provability_formula(const TheorySpec& T, const Term& code);

Formula con_bounded(const TheorySpec& T, std::uint64_t m, NumeralMode mode = NumeralMode::Unary);
Formula con_unbounded(const TheorySpec& T);

// ---------------------------------------------------------------------------
// Diagonalization

struct Diagonalization {
  Formula psi;         // normalized so its free variable is x
  Formula theta;       // psi[diag(x)/x]
  Natural theta_code;
  Formula sentence;    // delta = theta[code_numeral(theta_code)/x]
  Natural sentence_code;
  Formula fixed_point; // psi[code_numeral(sentence_code)/x]
  Formula equivalence; // sentence <-> fixed_point
  Proof proof;         // proof of `equivalence` in T
};

// Requires exactly one free variable in psi. Throws std::invalid_argument otherwise.
Diagonalization diagonalize(const TheorySpec& T, const Formula& psi);

// psi(x) := !Pr_T^m(x); the sentence asserts it has no T-proof of size <= m.
Formula bounded_unprovability_psi(const TheorySpec& T, std::uint64_t m, NumeralMode mode = NumeralMode::Unary);
Diagonalization goedel_sentence_bounded(const TheorySpec& T, std::uint64_t m,
                                        NumeralMode mode = NumeralMode::Unary);

} // namespace forge
