// Bounded proof search: the languages L_k, exact shortest-proof search,
// theory extension by consistency statements, and the regeneration chain.

#pragma once

#include "forge/goedel.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace forge {

// Desk-scale caps: proofs longer than this many symbols are never searched.
inline constexpr std::size_t kDeskSizeCap = 24;
inline constexpr std::uint64_t kDeskCandidateCap = 10'000'000;

struct SearchBudget {
  std::uint64_t max_candidates = kDeskCandidateCap;
  std::chrono::milliseconds max_wall{120'000};
  std::size_t max_size = kDeskSizeCap;
};

enum class SearchStatus { Found, None, BudgetExhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<Proof> proof;
  bool minimal = false; // proof is a shortest one (the budget did not run out first)
  std::uint64_t candidates = 0;
};

// Exhaustive search for a proof of phi of size <= size_bound. Found returns
// a proof of minimal size (the first reached in a deterministic order); None
// certifies that no proof of size <= size_bound exists. A bound above
// budget.max_size is searched up to max_size and, failing that, reported as
// BudgetExhausted.
SearchResult enumerate_proofs(const TheorySpec& T, const Formula& phi, std::size_t size_bound,
                              const SearchBudget& budget = {});

struct BoundedLanguage {
  Theory theory;
  unsigned k = 1;
};

enum class Membership { In, Out, BudgetExhausted };

struct MembershipResult {
  Membership verdict = Membership::Out;
  std::optional<Proof> witness;
  std::size_t size_bound = 0; // size(phi)^k, saturated
  std::uint64_t candidates = 0;
};

std::size_t size_power(std::size_t base, unsigned k);

MembershipResult l_k_membership(const BoundedLanguage& L, const Formula& phi, const SearchBudget& budget = {});

// Independent path: enumerate formula sequences of total size <= min(size(phi)^k, cap)
// in size order and test each with check_witness. Only practical for tiny caps.
struct WitnessSearchOptions {
  std::size_t size_cap = 12;
  std::uint64_t max_candidates = 20'000'000;
};
MembershipResult l_k_membership_by_witness(const BoundedLanguage& L, const Formula& phi,
                                           const WitnessSearchOptions& options = {});

struct ShortestResult {
  std::optional<std::size_t> length; // nullopt: exceeds cap (or budget, see exhausted)
  bool exhausted = false;
  std::optional<Proof> proof;
};
ShortestResult shortest_proof_length(const TheorySpec& T, const Formula& phi, std::size_t cap,
                                     const SearchBudget& budget = {});

// T' = T + Con_T, with Con_T unbounded (axiom only) or the instance Con_T(m).
// T' is one level above T and gets its own proof predicate symbol.
Theory extend_with_con(const Theory& T, std::optional<std::uint64_t> m = std::nullopt);

struct RegenerationLevel {
  std::string theory;
  int level = 0;
  Formula con;                 // the axiom added at this level (Con of the level below)
  Natural con_code;
  Formula con_instance;        // this level's own Con_T(m)
  Natural con_instance_code;
  Formula goedel_sentence;     // delta(m) for this level
  bool previous_con_accepted = false; // one-line THAX proof of `con` checks here
  bool previous_con_rejected_below = false; // and not one level down
  SearchStatus own_con_search = SearchStatus::None; // proofs of con_instance within the desk cap
  bool con_instance_true = false; // eval_delta0(con_instance)
};

struct RegenerationReport {
  std::uint64_t m = 0;
  std::vector<RegenerationLevel> levels;
  bool all_pass() const;
};

RegenerationReport regeneration_demo(int depth, std::uint64_t m = 2, const SearchBudget& budget = {});
std::string regeneration_report_json(const RegenerationReport& report);

} // namespace forge
