#include "forge/verifier.hpp"

namespace forge {

namespace {

struct Search {
  const TheorySpec& T;
  std::span<const Formula> lines;
  CostReport* cost;
  std::uint64_t* comparisons;

  std::optional<Justification> line(std::size_t i) {
    if (cost) ++cost->lines_scanned;
    const Formula& f = lines[i];
    if (auto j = premise_free_justification(T, f, comparisons)) return j;
    for (std::size_t major = 0; major < i; ++major) {
      const Formula& g = lines[major];
      if (comparisons) ++*comparisons;
      if (g.kind() != Formula::Kind::Implies || !counted_equal(g.right(), f, comparisons)) continue;
      for (std::size_t minor = 0; minor < i; ++minor) {
        if (cost) ++cost->pair_searches;
        if (counted_equal(lines[minor], g.left(), comparisons)) return ModusPonens{minor, major};
      }
    }
    if (f.kind() == Formula::Kind::ForAll) {
      for (std::size_t premise = 0; premise < i; ++premise)
        if (counted_equal(lines[premise], f.body(), comparisons)) return Generalization{premise, f.var()};
    }
    return std::nullopt;
  }
};

bool run(const TheorySpec& T, std::span<const Formula> lines, const Formula& phi, Diagnostics* diagnostics,
         CostReport* cost) {
  if (lines.empty()) {
    if (diagnostics) diagnostics->reasons.push_back("empty proof");
    return false;
  }
  Search search{T, lines, cost, cost ? &cost->symbol_comparisons : nullptr};
  bool ok = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!search.line(i)) {
      ok = false;
      if (!diagnostics) break;
      diagnostics->reasons.push_back("line " + std::to_string(i) + ": no axiom, MP or GEN justification");
    }
  }
  if (!counted_equal(lines.back(), phi, search.comparisons)) {
    if (diagnostics) diagnostics->reasons.push_back("last line is not the claimed formula");
    ok = false;
  }
  return ok;
}

} // namespace

bool proof_of(const TheorySpec& T, std::span<const Formula> lines, const Formula& phi, Diagnostics* diagnostics) {
  return run(T, lines, phi, diagnostics, nullptr);
}

bool proof_of(const TheorySpec& T, const Proof& proof, const Formula& phi, Diagnostics* diagnostics) {
  auto fs = proof.formulas();
  return proof_of(T, fs, phi, diagnostics);
}

CostedVerdict proof_of_with_cost(const TheorySpec& T, std::span<const Formula> lines, const Formula& phi,
                                 Diagnostics* diagnostics) {
  CostedVerdict out;
  const auto start = std::chrono::steady_clock::now();
  out.accepted = run(T, lines, phi, diagnostics, &out.cost);
  out.cost.wall_time = std::chrono::steady_clock::now() - start;
  return out;
}

CostedVerdict proof_of_with_cost(const TheorySpec& T, const Proof& proof, const Formula& phi,
                                 Diagnostics* diagnostics) {
  auto fs = proof.formulas();
  return proof_of_with_cost(T, fs, phi, diagnostics);
}

bool within_size_bound(std::size_t proof_size, std::size_t formula_size, unsigned k) {
  Natural bound = 1;
  for (unsigned i = 0; i < k; ++i) {
    bound *= formula_size;
    if (bound >= proof_size) return true;
  }
  return bound >= proof_size;
}

bool check_witness(const TheorySpec& T, const Formula& phi, std::span<const Formula> lines, unsigned k) {
  return within_size_bound(proof_size(lines), phi.size(), k) && proof_of(T, lines, phi);
}

bool check_witness(const TheorySpec& T, const Formula& phi, const Proof& proof, unsigned k) {
  auto fs = proof.formulas();
  return check_witness(T, phi, fs, k);
}

std::optional<Proof> justify(const TheorySpec& T, std::span<const Formula> lines) {
  Search search{T, lines, nullptr, nullptr};
  Proof out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto j = search.line(i);
    if (!j) return std::nullopt;
    out.lines.push_back({lines[i], *j});
  }
  return out;
}

Proof synthetic_mp_chain(std::size_t k, std::size_t m) {
  // Largest line is e_0 -> (e_i -> e_0), of size 3|e| + 2 with |e| = 2|t| + 1.
  const std::size_t e_size = m > 11 ? (m - 2) / 3 : 3;
  const std::size_t t_size = std::max<std::size_t>(1, (e_size - 1) / 2);
  // t_i = S^a(0) + S^b(0) with a + b + 3 = t_size, varying a; tiny sizes fall back to S^n(0).
  auto make_t = [&](std::size_t i) {
    if (t_size < 3) return numeral(static_cast<std::uint64_t>(t_size - 1));
    const std::size_t span = t_size - 2;
    const std::size_t a = i % span;
    return Term::plus(numeral(static_cast<std::uint64_t>(a)), numeral(static_cast<std::uint64_t>(span - 1 - a)));
  };
  auto e = [&](std::size_t i) {
    Term t = make_t(i);
    return Formula::eq(t, t);
  };
  Proof p;
  const Formula e0 = e(0);
  p.lines.push_back({e0, AxiomRef{{SchemaKind::EqRefl}, e0.lhs(), std::nullopt}});
  for (std::size_t i = 1; p.lines.size() < k; ++i) {
    const Formula ei = e(i);
    const Formula step = Formula::implies(ei, e0);
    p.lines.push_back({Formula::implies(e0, step), AxiomRef{{SchemaKind::P1}, std::nullopt, std::nullopt}});
    if (p.lines.size() == k) break;
    p.lines.push_back({step, ModusPonens{0, p.lines.size() - 1}});
  }
  return p;
}

} // namespace forge
