// Propositional layer: formulas, clause sets, resolution and extended
// resolution checking, Tseitin clausification, proof-system handles with
// proof-length measurement, the bounded translation of Delta_0 formulas, and
// the p-simulation harness.

#pragma once

#include "forge/calculus.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace forge {

// ---------------------------------------------------------------------------
// Formulas

class PropFormula {
public:
  enum class Kind : std::uint8_t { Var, Const, Not, And, Or, Implies };

  static PropFormula var(std::uint32_t index);
  static PropFormula constant(bool value);
  static PropFormula negate(PropFormula f);
  static PropFormula conj(PropFormula a, PropFormula b);
  static PropFormula disj(PropFormula a, PropFormula b);
  static PropFormula implies(PropFormula a, PropFormula b);

  Kind kind() const { return node_->kind; }
  std::uint32_t index() const { return node_->index; }
  bool value() const { return node_->index != 0; }
  const PropFormula& operand() const { return node_->subs[0]; }
  const PropFormula& left() const { return node_->subs[0]; }
  const PropFormula& right() const { return node_->subs[1]; }

  // Number of nodes.
  std::size_t size() const { return node_->size; }
  // One more than the largest variable index, 0 for constant formulas.
  std::uint32_t num_vars() const { return node_->num_vars; }

  // Variable i reads bit i of the assignment.
  bool evaluate(std::uint64_t assignment) const;
  bool evaluate(const std::vector<bool>& assignment) const;

  friend bool operator==(const PropFormula& a, const PropFormula& b);

private:
  struct Node {
    Kind kind;
    std::uint32_t index = 0; // Var: variable; Const: 0 or 1
    std::vector<PropFormula> subs;
    std::size_t size = 1;
    std::uint32_t num_vars = 0;
  };
  explicit PropFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static PropFormula make(Kind k, std::uint32_t index, std::vector<PropFormula> subs);

  std::shared_ptr<const Node> node_;
};

// Constant-folding constructors.
PropFormula fold_not(const PropFormula& a);
PropFormula fold_and(const PropFormula& a, const PropFormula& b);
PropFormula fold_or(const PropFormula& a, const PropFormula& b);
PropFormula big_and(const std::vector<PropFormula>& fs);
PropFormula big_or(const std::vector<PropFormula>& fs);
// At least one and at most one of the given variables is true.
PropFormula exactly_one(const std::vector<std::uint32_t>& vars);

struct PropParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grammar: implication (right associative) over disjunction over conjunction
// over unary. Atoms: x<i>, T, F, (..). Negation: ! or ~. Operators: & | ->.
PropFormula parse_prop(std::string_view text);
std::string print_prop(const PropFormula& f);

// ---------------------------------------------------------------------------
// Clauses

struct Literal {
  std::uint32_t var = 0;
  bool positive = true;

  Literal operator!() const { return {var, !positive}; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Sorted, without duplicate literals.
using Clause = std::vector<Literal>;

Clause make_clause(std::vector<Literal> lits);
bool is_tautological(const Clause& c);
bool clause_satisfied(const Clause& c, std::uint64_t assignment);

struct ClauseSet {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;

  // Indices of tautological clauses (permitted, reported).
  std::vector<std::size_t> tautological() const;
  bool satisfied_by(std::uint64_t assignment) const;
};

struct DimacsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ClauseSet parse_dimacs(std::string_view text);
std::string print_dimacs(const ClauseSet& cs);

// DIMACS spelling: variable v is written v + 1, negated with a minus sign.
std::string print_literal(const Literal& l);
Literal parse_literal(std::string_view token);

// ---------------------------------------------------------------------------
// Resolution

struct InputStep {
  std::size_t index = 0; // clause of the input set
};
struct ResolveStep {
  std::size_t i = 0, j = 0; // earlier clauses of the proof
  std::uint32_t pivot = 0;
};
// v <-> (a & b): adds the clauses (!v | a), (!v | b), (v | !a | !b) in that order.
struct ExtendStep {
  std::uint32_t var = 0;
  Literal a, b;
};
// Tseitin clauses of an available axiom formula, with its variable i renamed
// to selectors[i] and its own auxiliary variables numbered from aux_base.
struct AxiomStep {
  std::size_t theorem = 0;
  std::size_t n = 0;
  std::vector<std::uint32_t> selectors;
  std::uint32_t aux_base = 0;
};

using ResolutionStep = std::variant<InputStep, ResolveStep, ExtendStep, AxiomStep>;

// Proof text, one step per line, `c` lines and blank lines ignored:
//   i <idx>           input clause idx (0-based)
//   r <i> <j> <var>   resolve proof clauses i and j (0-based) on a DIMACS variable
//   e <var> <a> <b>   extension variable and two DIMACS literals
//   t <thm> <n> <aux> <sel0> .. <seln>   axiom instance (DIMACS variables)
// Proof clauses are numbered in order; `e` adds three, `t` adds as many as
// the instance has, every other step one.
struct ResolutionProof {
  std::vector<ResolutionStep> steps;
};

struct ResolutionFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ResolutionProof parse_resolution_proof(std::string_view text);
std::string print_resolution_proof(const ResolutionProof& proof);

// Availability of axiom formulas for `t` steps: the formula for (theorem, n),
// or nullopt if no such axiom exists.
using AxiomOracle = std::function<std::optional<PropFormula>(std::size_t theorem, std::size_t n)>;

struct ResolutionCheck {
  bool ok = false;
  std::string reason;
  std::vector<Clause> clauses;    // derived so far
  std::uint64_t literal_ops = 0; // work counter
};

ResolutionCheck check_resolution_detailed(const ClauseSet& cs, const ResolutionProof& proof, bool extended,
                                          const AxiomOracle& axioms = {});
bool check_resolution(const ClauseSet& cs, const ResolutionProof& proof, bool extended);

// Tree-like refutation by complete branching in variable order. Throws
// std::invalid_argument if cs is satisfiable.
ResolutionProof tree_refutation(const ClauseSet& cs);

struct RefutationSearch {
  std::optional<ResolutionProof> proof; // a refutation with the fewest steps
  bool exhausted = false;               // budget ran out before the cap was covered
  std::uint64_t candidates = 0;
};

// Canonical enumeration of refutations with at most `cap` steps. Extension
// steps are tried only when extended is set.
RefutationSearch shortest_refutation(const ClauseSet& cs, std::size_t cap, bool extended,
                                     std::uint64_t max_candidates = 5'000'000);

// ---------------------------------------------------------------------------
// Tseitin

struct TseitinEncoding {
  ClauseSet clauses;
  std::uint32_t root = 0;
};

// Variables of f keep their indices; subformula variables start at first_aux.
// The root is asserted true or false by a unit clause.
TseitinEncoding tseitin(const PropFormula& f, bool assert_true, std::uint32_t first_aux);
// Clauses satisfiable iff f is not a tautology.
ClauseSet tseitin_negation(const PropFormula& f);

// ---------------------------------------------------------------------------
// Tautologies

inline constexpr std::uint32_t kMaxTruthTableVars = 24;

struct TooManyVariables : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

bool is_tautology_bruteforce(const PropFormula& f, std::uint32_t max_vars = kMaxTruthTableVars);
std::optional<std::uint64_t> falsifying_assignment(const PropFormula& f,
                                                   std::uint32_t max_vars = kMaxTruthTableVars);
bool is_satisfiable_bruteforce(const ClauseSet& cs, std::uint32_t max_vars = kMaxTruthTableVars);

// ---------------------------------------------------------------------------
// Proof systems

struct SpMeasure {
  std::optional<std::size_t> size; // nullopt: exceeds the cap
  bool exhausted = false;          // the search budget ran out first
  std::string proof;
};

struct ProofSystem {
  std::string name;
  std::function<bool(std::string_view proof, const PropFormula& alpha)> verify;
  std::function<std::size_t(std::string_view proof)> size;
  std::function<SpMeasure(const PropFormula& alpha, std::size_t cap)> shortest;
};

// Total: malformed input yields false.
bool taut_proof_check(const ProofSystem& P, std::string_view proof, const PropFormula& alpha);
SpMeasure measure_s_p(const ProofSystem& P, const PropFormula& alpha, std::size_t cap);

// Rows `<bits> 1` for every assignment in increasing order, variable 0 first.
// Size: rows times (num_vars + 1).
ProofSystem truth_table_system();
// Proofs refute tseitin_negation(alpha); size is the number of steps.
ProofSystem resolution_system();
ProofSystem extended_resolution_system();
// Extended resolution plus `t` steps citing formulas supplied by the oracle.
ProofSystem axiom_extended_system(std::string name, AxiomOracle axioms);

std::string truth_table_proof(const PropFormula& alpha);

using ProofTranslator = std::function<std::string(std::string_view proof, const PropFormula& alpha)>;

ProofTranslator identity_translator();
// Truth-table proof to a tree-like resolution refutation of the Tseitin clauses.
ProofTranslator truth_table_to_resolution();
ProofTranslator drop_last_step(ProofTranslator inner);

struct PSimItem {
  bool source_valid = false;
  bool accepted = false;
  std::size_t original_size = 0;
  std::size_t translated_size = 0;
  std::string reason;
};

struct PSimReport {
  std::vector<PSimItem> items;
  bool all_accepted = false;
  std::optional<double> growth_exponent; // log-log slope of translated vs original size
};

// P simulates Q on the corpus of (alpha, Q-proof) pairs.
PSimReport p_simulation_check(const ProofSystem& P, const ProofSystem& Q, const ProofTranslator& translator,
                              const std::vector<std::pair<PropFormula, std::string>>& corpus);

// ---------------------------------------------------------------------------
// Translation of Delta_0 formulas

struct TranslationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Quantifier ranges above this are rejected.
inline constexpr std::uint64_t kMaxTranslationRange = 4096;

// ||A||^n := exactly_one(x_0..x_n) -> expansion, where selector x_v (variable
// v) stands for "x = v". Requires A in Delta_0 with no free variable other
// than x, every quantifier bound closed or exactly x.
PropFormula translate_delta0(const TheorySpec& T, const Formula& A, const std::string& x, unsigned n);
PropFormula translate_delta0(const Formula& A, const std::string& x, unsigned n);

} // namespace forge
