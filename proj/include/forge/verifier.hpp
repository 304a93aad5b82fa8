// The checking relation ProofOf(T, pi, phi) by search over schemata and
// preceding lines, its cost-instrumented variant, and the witness relation
// R(phi, pi) := size(pi) <= size(phi)^k and ProofOf(T, pi, phi).

#pragma once

#include "forge/calculus.hpp"

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace forge {

struct CostReport {
  std::uint64_t lines_scanned = 0;
  std::uint64_t pair_searches = 0;      // (minor, major) candidates tested for MP
  std::uint64_t symbol_comparisons = 0; // AST nodes visited by all equality tests
  std::chrono::nanoseconds wall_time{0};
};

// Reject reasons, one per failing line, plus a final-formula mismatch if any.
struct Diagnostics {
  std::vector<std::string> reasons;
};

bool proof_of(const TheorySpec& T, std::span<const Formula> lines, const Formula& phi,
              Diagnostics* diagnostics = nullptr);
bool proof_of(const TheorySpec& T, const Proof& proof, const Formula& phi, Diagnostics* diagnostics = nullptr);

struct CostedVerdict {
  bool accepted = false;
  CostReport cost;
};

CostedVerdict proof_of_with_cost(const TheorySpec& T, std::span<const Formula> lines, const Formula& phi,
                                 Diagnostics* diagnostics = nullptr);
CostedVerdict proof_of_with_cost(const TheorySpec& T, const Proof& proof, const Formula& phi,
                                 Diagnostics* diagnostics = nullptr);

// size(pi) <= size(phi)^k, computed without overflow.
bool within_size_bound(std::size_t proof_size, std::size_t formula_size, unsigned k);
bool check_witness(const TheorySpec& T, const Formula& phi, const Proof& proof, unsigned k);
bool check_witness(const TheorySpec& T, const Formula& phi, std::span<const Formula> lines, unsigned k);

// Finds a justification for every line by the same search proof_of performs.
// nullopt if some line has none.
std::optional<Proof> justify(const TheorySpec& T, std::span<const Formula> lines);

// A valid proof with k lines whose largest line has about m symbols:
//   0. e_0 ; EQREFL     2i-1. e_0 -> (e_i -> e_0) ; P1     2i. e_i -> e_0 ; MP 0 2i-1
// where each e_i is a closed equation t_i = t_i.
Proof synthetic_mp_chain(std::size_t k, std::size_t m);

} // namespace forge
