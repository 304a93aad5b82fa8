// Brute-force kernels in two variants: a plain serial reference and an
// OpenMP-parallel version. Both return the same answers; the parallel ones
// report the least witness so results do not depend on scheduling.
//
// Thread count: FORGE_THREADS if set, else the OpenMP default.

#pragma once

#include "forge/calculus.hpp"
#include "forge/propositional.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace forge::kernels {

int thread_count();

// Least assignment falsifying f, over its num_vars() variables.
std::optional<std::uint64_t> falsify_serial(const PropFormula& f);
std::optional<std::uint64_t> falsify_parallel(const PropFormula& f);

// Least assignment satisfying every clause.
std::optional<std::uint64_t> satisfy_serial(const ClauseSet& cs);
std::optional<std::uint64_t> satisfy_parallel(const ClauseSet& cs);

// proof_of for each proof against its own conclusion.
std::vector<char> check_proofs_serial(const TheorySpec& T, const std::vector<Proof>& proofs);
std::vector<char> check_proofs_parallel(const TheorySpec& T, const std::vector<Proof>& proofs);

} // namespace forge::kernels
