// Abstract syntax of first-order arithmetic over {0, S, +, *, =} with
// definitional function symbols, plus parsing, printing and substitution.

#pragma once

#include "forge/natural.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

class Term {
public:
  enum class Kind : std::uint8_t { Var, Zero, Succ, Plus, Times, Fn };

  static Term var(std::string name);
  static Term zero();
  static Term succ(Term t);
  static Term plus(Term a, Term b);
  static Term times(Term a, Term b);
  static Term fn(std::string symbol, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  // Variable name for Var, symbol for Fn, empty otherwise.
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  // Symbol count: one per operator/constant/function symbol, one per
  // character of a variable name.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }
  bool is_closed() const { return node_->closed; }
  bool same_node(const Term& o) const { return node_ == o.node_; }

  friend bool operator==(const Term& a, const Term& b);

private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::size_t size;
    std::size_t hash;
    bool closed;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Kind k, std::string name, std::vector<Term> args);

  std::shared_ptr<const Node> node_;
};

class Formula {
public:
  enum class Kind : std::uint8_t { Eq, Not, Implies, ForAll, BoundedForAll, BoundedExists };

  static Formula eq(Term lhs, Term rhs);
  static Formula negate(Formula f);
  static Formula implies(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula bounded_forall(std::string var, Term bound, Formula body);
  static Formula bounded_exists(std::string var, Term bound, Formula body);

  Kind kind() const { return node_->kind; }
  bool is_quantifier() const {
    return kind() == Kind::ForAll || kind() == Kind::BoundedForAll || kind() == Kind::BoundedExists;
  }
  bool is_bounded_quantifier() const {
    return kind() == Kind::BoundedForAll || kind() == Kind::BoundedExists;
  }

  // Eq
  const Term& lhs() const { return node_->terms[0]; }
  const Term& rhs() const { return node_->terms[1]; }
  // Bounded quantifiers
  const Term& bound() const { return node_->terms[0]; }
  // Quantifiers
  const std::string& var() const { return node_->var; }
  const Formula& body() const { return node_->subs[0]; }
  // Not: operand is left(); Implies: left() -> right()
  const Formula& left() const { return node_->subs[0]; }
  const Formula& right() const { return node_->subs[1]; }
  const Formula& operand() const { return node_->subs[0]; }

  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }
  bool same_node(const Formula& o) const { return node_ == o.node_; }

  friend bool operator==(const Formula& a, const Formula& b);

private:
  struct Node {
    Kind kind;
    std::string var;
    std::vector<Term> terms;
    std::vector<Formula> subs;
    std::size_t size;
    std::size_t hash;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

struct SizeMetric {
  std::size_t symbol_count = 0;
  friend bool operator==(const SizeMetric&, const SizeMetric&) = default;
};

SizeMetric formula_size(const Formula& f);

// ---------------------------------------------------------------------------
// Function symbols of the extended language. The table is frozen: Gödel codes
// assign each symbol a fixed digit by its position here.

struct FunctionSymbol {
  std::string_view name;
  int arity;
};

std::span<const FunctionSymbol> function_symbols();
std::optional<std::size_t> function_index(std::string_view name);
std::optional<int> function_arity(std::string_view name);

// Maximum depth of the consistency-extension chain; level j uses prf<j>.
inline constexpr int kMaxTheoryLevel = 8;
std::string proof_predicate_symbol(int level);

// Returns the arity of a known function symbol, or nullopt if unknown.
using ArityLookup = std::function<std::optional<int>(std::string_view)>;

// ---------------------------------------------------------------------------
// Derived connectives. These never appear in ASTs as separate nodes.

Formula conj(const Formula& a, const Formula& b);   // !(a -> !b)
Formula disj(const Formula& a, const Formula& b);   // !a -> b
Formula iff(const Formula& a, const Formula& b);    // (a -> b) & (b -> a)
Formula exists(const std::string& var, const Formula& body);  // !forall v !body
Formula less_equal(const Term& a, const Term& b);   // exists<= z b (a + z = b)

Term numeral(std::uint64_t n);
Term numeral(const Natural& n);
// b0(t) = 2t, b1(t) = 2t+1; 0 is "0". Size is bit_length(n) + 1.
Term binary_numeral(const Natural& n);

// ---------------------------------------------------------------------------
// Variables and substitution.

std::set<std::string> free_variables(const Term& t);
std::set<std::string> free_variables(const Formula& f);
// All variable names occurring anywhere, bound or free.
std::set<std::string> all_variables(const Formula& f);
bool occurs_free(const std::string& var, const Formula& f);
bool is_sentence(const Formula& f);
// No unbounded ForAll anywhere.
bool is_delta0(const Formula& f);

// name, name', name'', ... first one not in `avoid`.
std::string fresh_variable(const std::string& base, const std::set<std::string>& avoid);

Term substitute(const Term& t, const std::string& var, const Term& by);
// Capture-avoiding: bound variables that would capture a free variable of
// `by` are renamed with the minimal number of primes.
Formula substitute(const Formula& f, const std::string& var, const Term& by);

// True iff no free occurrence of `var` in f lies within the scope of a
// binder of a variable free in `t`; then substitution needs no renaming.
bool is_free_for(const Term& t, const std::string& var, const Formula& f);

// ---------------------------------------------------------------------------
// Concrete syntax.

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

Formula parse_formula(std::string_view text);
Formula parse_formula(std::string_view text, const ArityLookup& functions);
Term parse_term(std::string_view text);
Term parse_term(std::string_view text, const ArityLookup& functions);

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);

} // namespace forge
