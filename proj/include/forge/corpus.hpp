// Seeded corpus generators and small reference implementations used by the
// experiment runner: a direct Delta_0 evaluator and a set-based resolution
// checker, both written independently of the main code paths.

#pragma once

#include "forge/calculus.hpp"
#include "forge/propositional.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace forge::corpus {

using Rng = std::mt19937_64;

struct Delta0Shape {
  std::size_t depth = 2;               // connective and quantifier nesting
  std::size_t term_depth = 2;          // term nesting
  std::uint64_t max_closed_bound = 3;  // closed quantifier bounds are numerals up to this
  std::vector<std::string> free;       // free variables allowed (and used as bounds)
};

// Delta_0 formula over 0, S, +, * whose free variables are among shape.free.
Formula random_delta0(Rng& rng, const Delta0Shape& shape);
// Delta_0 sentence of at most max_size symbols.
Formula random_delta0_sentence(Rng& rng, std::size_t max_size, std::size_t depth = 2);
// Delta_0 formula in which x occurs free and is the only free variable.
Formula random_delta0_in_x(Rng& rng, std::size_t depth = 2);

// Every formula of size min_size..max_size over the variables, without
// function symbols, in enumeration order.
std::vector<Formula> small_formulas(const std::vector<std::string>& vars, std::size_t min_size, std::size_t max_size);

// Shapes psi(x) with one free variable for the fixed-point engine; the
// bounded-provability shapes are added by the caller.
std::vector<Formula> psi_shapes();

// Random CNF with clause widths 1..max_width.
ClauseSet random_cnf(Rng& rng, std::uint32_t vars, std::size_t clauses, std::size_t max_width);
// Pigeonhole clauses: `pigeons` pigeons, `holes` holes; variable p*holes+h.
ClauseSet pigeonhole(std::uint32_t pigeons, std::uint32_t holes);

// Direct recursive truth in the standard model; supports 0, S, +, * only.
// Throws std::invalid_argument on function symbols or unbounded quantifiers.
bool reference_eval(const Formula& sentence);

// Independent resolution checker over sets of DIMACS integers; same
// semantics as check_resolution without axiom steps.
bool reference_check_resolution(const ClauseSet& cs, const ResolutionProof& proof, bool extended);

// Random single-site mutation of a proof.
ResolutionProof mutate(Rng& rng, const ResolutionProof& proof, std::size_t input_count);

} // namespace forge::corpus
