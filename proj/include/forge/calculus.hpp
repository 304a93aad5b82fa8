// Hilbert-style calculus for arithmetic: theories, axiom schemata with
// polynomial-time matchers, proofs as justified line sequences, and the
// line-oriented proof file format.

#pragma once

#include "forge/syntax.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace forge {

class TheorySpec;

using FunctionEvaluator = std::function<Natural(const TheorySpec&, std::span<const Natural>)>;

struct DefinitionalExtension {
  std::string symbol;
  int arity = 0;
  FunctionEvaluator evaluate;
  std::string defining_axiom;
};

// A theory: Q (always), optionally the induction schema, closed extra axioms,
// and definitional function symbols with trusted evaluators. Extensions keep
// a pointer to the theory they extend; `level` counts extension steps and
// selects the proof predicate symbol prf<level>.
class TheorySpec {
public:
  std::string name;
  int level = 0;
  bool induction = false;
  std::vector<Formula> extra_axioms;
  std::vector<DefinitionalExtension> def_extensions;
  std::shared_ptr<const TheorySpec> parent;

  const DefinitionalExtension* find_function(std::string_view symbol) const;
  ArityLookup arity_lookup() const;
  // The theory at the given level of the extension chain (this or an ancestor).
  const TheorySpec& at_level(int level) const;
  // Variables mentioned by the Robinson axioms and the extra axioms.
  std::set<std::string> axiom_variables() const;
};

using Theory = std::shared_ptr<const TheorySpec>;

enum class SchemaKind : std::uint8_t { P1, P2, P3, Q1Inst, Q2Dist, EqRefl, EqSubst, Robinson, Induction, Compute };

struct AxiomSchema {
  SchemaKind kind;
  int index = 0; // Robinson axiom number 1..7
  friend bool operator==(const AxiomSchema&, const AxiomSchema&) = default;
};

std::string schema_name(const AxiomSchema& s);
// Every schema a line may be checked against in theory T.
std::vector<AxiomSchema> schemata(const TheorySpec& T);

// Bindings produced by a successful match. Formula metavariables are "A",
// "B", "C"; term metavariables "t", "u"; `var` is the quantified variable.
struct SchemaMatch {
  std::map<std::string, Formula> formulas;
  std::map<std::string, Term> terms;
  std::string var;
};

struct MatchContext {
  const TheorySpec* theory = nullptr; // needed for Compute
  std::uint64_t* comparisons = nullptr;
};

std::optional<SchemaMatch> match_schema(const AxiomSchema& s, const Formula& f, const MatchContext& ctx = {});
// Rebuilds the instance from its bindings; inverse of match_schema.
Formula instantiate_schema(const AxiomSchema& s, const SchemaMatch& m);

// The seven axioms of Robinson arithmetic, in order.
const std::vector<Formula>& robinson_axioms();

// Structural equality that charges one unit per node visited.
bool counted_equal(const Formula& a, const Formula& b, std::uint64_t* comparisons);
bool counted_equal(const Term& a, const Term& b, std::uint64_t* comparisons);

// ---------------------------------------------------------------------------
// Proofs

struct AxiomRef {
  AxiomSchema schema;
  std::optional<Term> t; // Q1 instance term, EqRefl term, EqSubst left side
  std::optional<Term> u; // EqSubst right side
};
struct TheoryAxiomRef {
  std::size_t index;
};
struct ModusPonens {
  std::size_t minor; // line holding A
  std::size_t major; // line holding A -> B
};
struct Generalization {
  std::size_t premise;
  std::string var;
};
struct ComputeStep {};

using Justification = std::variant<AxiomRef, TheoryAxiomRef, ModusPonens, Generalization, ComputeStep>;

struct ProofLine {
  Formula formula;
  Justification justification;
};

struct Proof {
  std::vector<ProofLine> lines;

  const Formula& conclusion() const { return lines.back().formula; }
  std::vector<Formula> formulas() const;
  // Sum of line sizes plus one separator between consecutive lines.
  std::size_t size() const;
};

std::size_t proof_size(std::span<const Formula> lines);

struct LineCheck {
  bool ok = false;
  std::string reason;
};

// Checks the justification recorded on line i (the fast path; the verifier's
// proof_of ignores recorded justifications and searches instead).
LineCheck check_line(const TheorySpec& T, const Proof& proof, std::size_t i);
bool check_proof_justified(const TheorySpec& T, const Proof& proof, std::string* reason = nullptr);

// The first premise-free justification of f in T (schema instance, Robinson
// axiom, extra axiom, or Compute), trying schemata in schemata(T) order.
std::optional<Justification> premise_free_justification(const TheorySpec& T, const Formula& f,
                                                        std::uint64_t* comparisons = nullptr);

// ---------------------------------------------------------------------------
// Proof files: one line per ProofLine, "<idx>. <formula> ; <justification>".

class ProofFormatError : public std::runtime_error {
public:
  ProofFormatError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

std::string print_justification(const Justification& j);
std::string print_proof(const Proof& proof);
Proof parse_proof(std::string_view text);
Proof parse_proof(std::string_view text, const ArityLookup& functions);

} // namespace forge
