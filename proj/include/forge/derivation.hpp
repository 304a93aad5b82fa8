// Derivations from hypotheses with deduction-theorem discharge, and the small
// propositional lemmas built on them.

#pragma once

#include "forge/calculus.hpp"

#include <cstddef>
#include <vector>

namespace forge {

class Derivation {
public:
  explicit Derivation(const TheorySpec& T) : theory_(&T) {}

  std::size_t hypothesis(const Formula& h);
  // A premise-free line; throws std::invalid_argument if no schema or axiom applies.
  std::size_t axiom(const Formula& f);
  std::size_t mp(std::size_t minor, std::size_t major);
  // Appends a hypothesis-free proof; returns the index of its last line.
  // Throws std::invalid_argument on GEN lines.
  std::size_t include(const Proof& proof);

  // Every line phi becomes a block ending in H -> phi, where H is the formula
  // of hypothesis line `hyp`. Other hypotheses remain hypotheses. Returns the
  // new index of each old line.
  std::vector<std::size_t> discharge(std::size_t hyp);
  // Same, for every hypothesis line whose formula is h.
  std::vector<std::size_t> discharge(const Formula& h);

  const Formula& formula(std::size_t i) const { return lines_.at(i).formula; }
  std::size_t size() const { return lines_.size(); }
  // Throws std::logic_error while hypotheses remain.
  Proof to_proof() const;

private:
  enum class Kind { Hyp, Axiom, MP };
  struct Line {
    Formula formula;
    Kind kind;
    Justification justification; // Axiom lines
    std::size_t minor = 0, major = 0;
  };
  std::size_t push(Line line);

  const TheorySpec* theory_;
  std::vector<Line> lines_;
};

// Shifts indices of `piece` and appends it; returns the offset of its first line.
std::size_t append_proof(Proof& into, const Proof& piece);

// !!z -> z
Proof double_negation_elimination(const TheorySpec& T, const Formula& z);
// x -> (y -> conj(x, y))
Proof conjunction_introduction(const TheorySpec& T, const Formula& x, const Formula& y);

} // namespace forge
