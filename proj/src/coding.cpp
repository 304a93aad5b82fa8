#include "forge/goedel.hpp"

#include <algorithm>

namespace forge {

namespace {

enum Digit : unsigned {
  kZero = 1, kSucc = 2, kPlus = 3, kTimes = 4, kEq = 5, kNot = 6, kImplies = 7,
  kForAll = 8, kBForAll = 9, kBExists = 10, kSeparator = 11,
  kVarFirst = 12,      // 'a'..'z' -> 12..37
  kVarLetter = 38,     // continuation 'a'..'z' -> 38..63
  kVarDigit = 64,      // continuation '0'..'9' -> 64..73
  kVarPrime = 74,      // continuation '\''
  kFunction = 75,
};

using Digits = std::vector<unsigned>;

void put_var(Digits& out, const std::string& name) {
  out.push_back(kVarFirst + static_cast<unsigned>(name[0] - 'a'));
  for (std::size_t i = 1; i < name.size(); ++i) {
    const char c = name[i];
    if (c >= 'a' && c <= 'z') out.push_back(kVarLetter + static_cast<unsigned>(c - 'a'));
    else if (c >= '0' && c <= '9') out.push_back(kVarDigit + static_cast<unsigned>(c - '0'));
    else out.push_back(kVarPrime);
  }
}

void put(Digits& out, const Term& t) {
  switch (t.kind()) {
  case Term::Kind::Var: put_var(out, t.name()); return;
  case Term::Kind::Zero: out.push_back(kZero); return;
  case Term::Kind::Succ: out.push_back(kSucc); break;
  case Term::Kind::Plus: out.push_back(kPlus); break;
  case Term::Kind::Times: out.push_back(kTimes); break;
  case Term::Kind::Fn: {
    auto idx = function_index(t.name());
    if (!idx) throw std::invalid_argument("function symbol outside the code table: " + t.name());
    out.push_back(kFunction + static_cast<unsigned>(*idx));
    break;
  }
  }
  for (const auto& a : t.args()) put(out, a);
}

void put(Digits& out, const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
    out.push_back(kEq);
    put(out, f.lhs());
    put(out, f.rhs());
    return;
  case Formula::Kind::Not:
    out.push_back(kNot);
    put(out, f.operand());
    return;
  case Formula::Kind::Implies:
    out.push_back(kImplies);
    put(out, f.left());
    put(out, f.right());
    return;
  case Formula::Kind::ForAll:
    out.push_back(kForAll);
    put_var(out, f.var());
    put(out, f.body());
    return;
  case Formula::Kind::BoundedForAll:
  case Formula::Kind::BoundedExists:
    out.push_back(f.kind() == Formula::Kind::BoundedForAll ? kBForAll : kBExists);
    put_var(out, f.var());
    put(out, f.bound());
    put(out, f.body());
    return;
  }
}

Natural from_digits(const Digits& d) {
  Natural n = 0;
  for (unsigned x : d) {
    n <<= 7;
    n |= x;
  }
  return n;
}

std::optional<Digits> to_digits(Natural n) {
  Digits d;
  while (n != 0) {
    const unsigned x = static_cast<unsigned>(n & 127u);
    if (x == 0) return std::nullopt;
    d.push_back(x);
    n >>= 7;
  }
  std::reverse(d.begin(), d.end());
  return d;
}

class Reader {
public:
  explicit Reader(const Digits& d) : d_(d) {}
  bool done() const { return pos_ == d_.size(); }
  bool at(unsigned x) const { return pos_ < d_.size() && d_[pos_] == x; }
  void skip() { ++pos_; }

  std::optional<std::string> var() {
    if (pos_ >= d_.size() || d_[pos_] < kVarFirst || d_[pos_] >= kVarLetter) return std::nullopt;
    std::string name(1, static_cast<char>('a' + (d_[pos_++] - kVarFirst)));
    while (pos_ < d_.size() && d_[pos_] >= kVarLetter && d_[pos_] <= kVarPrime) {
      const unsigned x = d_[pos_++];
      if (x < kVarDigit) name += static_cast<char>('a' + (x - kVarLetter));
      else if (x < kVarPrime) name += static_cast<char>('0' + (x - kVarDigit));
      else name += '\'';
    }
    return name;
  }

  std::optional<Term> term(int depth = 0) {
    if (pos_ >= d_.size() || depth > kMaxDepth) return std::nullopt;
    const unsigned x = d_[pos_];
    if (x >= kVarFirst && x < kVarLetter) {
      auto v = var();
      return Term::var(*v);
    }
    ++pos_;
    switch (x) {
    case kZero: return Term::zero();
    case kSucc: {
      auto a = term(depth + 1);
      if (!a) return std::nullopt;
      return Term::succ(*a);
    }
    case kPlus:
    case kTimes: {
      auto a = term(depth + 1);
      if (!a) return std::nullopt;
      auto b = term(depth + 1);
      if (!b) return std::nullopt;
      return x == kPlus ? Term::plus(*a, *b) : Term::times(*a, *b);
    }
    default: break;
    }
    const auto table = function_symbols();
    if (x < kFunction || x - kFunction >= table.size()) return std::nullopt;
    const auto& sym = table[x - kFunction];
    std::vector<Term> args;
    for (int i = 0; i < sym.arity; ++i) {
      auto a = term(depth + 1);
      if (!a) return std::nullopt;
      args.push_back(*a);
    }
    return Term::fn(std::string(sym.name), std::move(args));
  }

  std::optional<Formula> formula(int depth = 0) {
    if (pos_ >= d_.size() || depth > kMaxDepth) return std::nullopt;
    const unsigned x = d_[pos_++];
    switch (x) {
    case kEq: {
      auto a = term(depth + 1);
      if (!a) return std::nullopt;
      auto b = term(depth + 1);
      if (!b) return std::nullopt;
      return Formula::eq(*a, *b);
    }
    case kNot: {
      auto a = formula(depth + 1);
      if (!a) return std::nullopt;
      return Formula::negate(*a);
    }
    case kImplies: {
      auto a = formula(depth + 1);
      if (!a) return std::nullopt;
      auto b = formula(depth + 1);
      if (!b) return std::nullopt;
      return Formula::implies(*a, *b);
    }
    case kForAll: {
      auto v = var();
      if (!v) return std::nullopt;
      auto b = formula(depth + 1);
      if (!b) return std::nullopt;
      return Formula::forall(*v, *b);
    }
    case kBForAll:
    case kBExists: {
      auto v = var();
      if (!v) return std::nullopt;
      auto bound = term(depth + 1);
      if (!bound) return std::nullopt;
      auto b = formula(depth + 1);
      if (!b) return std::nullopt;
      return x == kBForAll ? Formula::bounded_forall(*v, *bound, *b) : Formula::bounded_exists(*v, *bound, *b);
    }
    default:
      return std::nullopt;
    }
  }

private:
  static constexpr int kMaxDepth = 20000;
  const Digits& d_;
  std::size_t pos_ = 0;
};

} // namespace

Natural encode_term(const Term& t) {
  Digits d;
  put(d, t);
  return from_digits(d);
}

Natural encode_formula(const Formula& f) {
  Digits d;
  put(d, f);
  return from_digits(d);
}

Natural encode_proof(std::span<const Formula> lines) {
  Digits d;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) d.push_back(kSeparator);
    put(d, lines[i]);
  }
  return from_digits(d);
}

Natural encode_proof(const Proof& proof) {
  auto fs = proof.formulas();
  return encode_proof(fs);
}

std::optional<Term> decode_term(const Natural& code) {
  auto d = to_digits(code);
  if (!d || d->empty()) return std::nullopt;
  Reader r(*d);
  auto t = r.term();
  if (!t || !r.done()) return std::nullopt;
  return t;
}

std::optional<Formula> decode_formula(const Natural& code) {
  auto d = to_digits(code);
  if (!d || d->empty()) return std::nullopt;
  Reader r(*d);
  auto f = r.formula();
  if (!f || !r.done()) return std::nullopt;
  return f;
}

std::optional<std::vector<Formula>> decode_proof(const Natural& code) {
  auto d = to_digits(code);
  if (!d || d->empty()) return std::nullopt;
  Reader r(*d);
  std::vector<Formula> lines;
  while (true) {
    auto f = r.formula();
    if (!f) return std::nullopt;
    lines.push_back(*f);
    if (r.done()) break;
    if (!r.at(kSeparator)) return std::nullopt;
    r.skip();
  }
  return lines;
}

std::size_t code_length(const Natural& code) { return (bit_length(code) + 6) / 7; }

Natural code_bound(std::size_t m) {
  if (m > kMaxValueBits / 7) throw EvalError("code bound exceeds the value-size limit");
  return (Natural(1) << (7 * m)) - 1;
}

} // namespace forge
