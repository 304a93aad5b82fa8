// Enumeration of all terms and formulas of an exact size over a fixed
// variable pool and function signature.

#pragma once

#include "forge/calculus.hpp"

#include <map>
#include <string>
#include <vector>

namespace forge::detail {

struct Signature {
  std::vector<std::string> variables;
  std::vector<std::pair<std::string, int>> functions;
  bool bounded_quantifiers = true;
};

Signature theory_signature(const TheorySpec& T, std::vector<std::string> variables);

class FormulaSpace {
public:
  explicit FormulaSpace(Signature sig) : sig_(std::move(sig)) {}

  const std::vector<Term>& terms(std::size_t n);
  const std::vector<Formula>& formulas(std::size_t n);
  const Signature& signature() const { return sig_; }

private:
  void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out);

  Signature sig_;
  std::map<std::size_t, std::vector<Term>> terms_;
  std::map<std::size_t, std::vector<Formula>> formulas_;
};

} // namespace forge::detail
