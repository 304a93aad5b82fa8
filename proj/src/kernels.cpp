#include "forge/kernels.hpp"

#include "forge/verifier.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace forge::kernels {

int thread_count() {
  if (const char* env = std::getenv("FORGE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// Postfix program evaluated on 64 assignments at once.
struct Program {
  struct Op {
    PropFormula::Kind kind;
    std::uint32_t index;
  };
  std::vector<Op> ops;
  std::size_t depth = 0;

  explicit Program(const PropFormula& f) {
    std::size_t cur = 0;
    emit(f, cur);
  }

  void emit(const PropFormula& f, std::size_t& cur) {
    using K = PropFormula::Kind;
    switch (f.kind()) {
    case K::Var:
    case K::Const:
      ops.push_back({f.kind(), f.index()});
      depth = std::max(depth, ++cur);
      return;
    case K::Not:
      emit(f.operand(), cur);
      ops.push_back({K::Not, 0});
      return;
    default:
      emit(f.left(), cur);
      emit(f.right(), cur);
      ops.push_back({f.kind(), 0});
      --cur;
    }
  }

  // Bit j of the result is the value at assignment base + j.
  std::uint64_t run(std::uint64_t base, std::vector<std::uint64_t>& stack) const {
    static constexpr std::uint64_t kLow[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                              0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    using K = PropFormula::Kind;
    std::size_t sp = 0;
    for (const auto& op : ops) {
      switch (op.kind) {
      case K::Var:
        stack[sp++] = op.index < 6 ? kLow[op.index] : (((base >> op.index) & 1u) ? ~0ull : 0ull);
        break;
      case K::Const: stack[sp++] = op.index ? ~0ull : 0ull; break;
      case K::Not: stack[sp - 1] = ~stack[sp - 1]; break;
      case K::And:
        --sp;
        stack[sp - 1] &= stack[sp];
        break;
      case K::Or:
        --sp;
        stack[sp - 1] |= stack[sp];
        break;
      case K::Implies:
        --sp;
        stack[sp - 1] = ~stack[sp - 1] | stack[sp];
        break;
      }
    }
    return stack[0];
  }
};

std::uint64_t lane_mask(std::uint32_t n) { return n >= 6 ? ~0ull : ((1ull << (1u << n)) - 1); }

std::uint64_t first_zero(std::uint64_t word, std::uint64_t mask) {
  const std::uint64_t z = ~word & mask;
  return z ? static_cast<std::uint64_t>(__builtin_ctzll(z)) : kNone;
}

void check_width(std::uint32_t n) {
  if (n > 40) throw TooManyVariables("brute force over " + std::to_string(n) + " variables");
}

} // namespace

std::optional<std::uint64_t> falsify_serial(const PropFormula& f) {
  const std::uint32_t n = f.num_vars();
  check_width(n);
  const std::uint64_t rows = 1ull << n;
  for (std::uint64_t a = 0; a < rows; ++a)
    if (!f.evaluate(a)) return a;
  return std::nullopt;
}

std::optional<std::uint64_t> falsify_parallel(const PropFormula& f) {
  const std::uint32_t n = f.num_vars();
  check_width(n);
  const Program prog(f);
  const std::uint64_t mask = lane_mask(n);
  const std::int64_t blocks = n >= 6 ? static_cast<std::int64_t>(1ull << (n - 6)) : 1;
  std::uint64_t best = kNone;
#pragma omp parallel num_threads(thread_count())
  {
    std::vector<std::uint64_t> stack(prog.depth + 1);
    std::uint64_t local = kNone;
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::uint64_t base = static_cast<std::uint64_t>(b) << 6;
      if (base >= local) continue;
      const std::uint64_t z = first_zero(prog.run(base, stack), mask);
      if (z != kNone) local = std::min(local, base + z);
    }
#pragma omp critical
    best = std::min(best, local);
  }
  if (best == kNone) return std::nullopt;
  return best;
}

std::optional<std::uint64_t> satisfy_serial(const ClauseSet& cs) {
  check_width(cs.num_vars);
  const std::uint64_t rows = 1ull << cs.num_vars;
  for (std::uint64_t a = 0; a < rows; ++a)
    if (cs.satisfied_by(a)) return a;
  return std::nullopt;
}

std::optional<std::uint64_t> satisfy_parallel(const ClauseSet& cs) {
  const std::uint32_t n = cs.num_vars;
  check_width(n);
  for (const auto& c : cs.clauses)
    for (const auto& l : c)
      if (l.var >= n) throw std::invalid_argument("literal exceeds the variable count");
  // Clause c is falsified on the lanes where every literal is false.
  static constexpr std::uint64_t kLow[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                            0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  const std::uint64_t mask = lane_mask(n);
  const std::int64_t blocks = n >= 6 ? static_cast<std::int64_t>(1ull << (n - 6)) : 1;
  std::uint64_t best = kNone;
#pragma omp parallel num_threads(thread_count())
  {
    std::uint64_t local = kNone;
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::uint64_t base = static_cast<std::uint64_t>(b) << 6;
      if (base >= local) continue;
      std::uint64_t sat = mask;
      for (const auto& c : cs.clauses) {
        std::uint64_t some = 0;
        for (const auto& l : c) {
          const std::uint64_t v = l.var < 6 ? kLow[l.var] : (((base >> l.var) & 1u) ? ~0ull : 0ull);
          some |= l.positive ? v : ~v;
        }
        sat &= some;
        if (!sat) break;
      }
      if (sat) local = std::min(local, base + static_cast<std::uint64_t>(__builtin_ctzll(sat)));
    }
#pragma omp critical
    best = std::min(best, local);
  }
  if (best == kNone) return std::nullopt;
  return best;
}

std::vector<char> check_proofs_serial(const TheorySpec& T, const std::vector<Proof>& proofs) {
  std::vector<char> out(proofs.size(), 0);
  for (std::size_t i = 0; i < proofs.size(); ++i)
    out[i] = !proofs[i].lines.empty() && proof_of(T, proofs[i], proofs[i].conclusion());
  return out;
}

std::vector<char> check_proofs_parallel(const TheorySpec& T, const std::vector<Proof>& proofs) {
  std::vector<char> out(proofs.size(), 0);
  const auto n = static_cast<std::int64_t>(proofs.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& p = proofs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = !p.lines.empty() && proof_of(T, p, p.conclusion());
  }
  return out;
}

} // namespace forge::kernels
