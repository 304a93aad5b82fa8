// Recursive-descent parser and canonical printer for the concrete grammar.
//
//   formula  := implies ('<->' formula)?
//   implies  := disj ('->' implies)?
//   disj     := conj ('|' conj)*
//   conj     := unary ('&' unary)*
//   unary    := '!' unary | quant | atom
//   quant    := ('forall' | 'exists') ident unary
//             | ('forall<=' | 'exists<=') ident primary unary
//   atom     := '(' formula ')' | term ('=' | '<=') term
//   term     := product ('+' product)*
//   product  := primary ('*' primary)*
//   primary  := '0' | 'S' '(' term ')' | ident '(' term (',' term)* ')' | ident | '(' term ')'

#include "forge/syntax.hpp"

#include <cctype>
#include <sstream>

namespace forge {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

enum class Tok {
  Zero, Succ, Plus, Times, Eq, Le, Not, Arrow, Iff, And, Or, LParen, RParen, Comma,
  ForAll, Exists, BForAll, BExists, Ident, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= '0' && s[j] <= '9') || s[j] == '\''))
        ++j;
      std::string word(s.substr(i, j - i));
      i = j;
      if (word == "forall" || word == "exists") {
        if (starts("<=")) {
          i += 2;
          out.push_back({word == "forall" ? Tok::BForAll : Tok::BExists, word + "<=", at});
        } else {
          out.push_back({word == "forall" ? Tok::ForAll : Tok::Exists, word, at});
        }
      } else {
        out.push_back({Tok::Ident, std::move(word), at});
      }
      continue;
    }
    if (starts("<->")) {
      out.push_back({Tok::Iff, "<->", at});
      i += 3;
    } else if (starts("->")) {
      out.push_back({Tok::Arrow, "->", at});
      i += 2;
    } else if (starts("<=")) {
      out.push_back({Tok::Le, "<=", at});
      i += 2;
    } else {
      Tok k;
      switch (c) {
      case '0': k = Tok::Zero; break;
      case 'S': k = Tok::Succ; break;
      case '+': k = Tok::Plus; break;
      case '*': k = Tok::Times; break;
      case '=': k = Tok::Eq; break;
      case '!': k = Tok::Not; break;
      case '&': k = Tok::And; break;
      case '|': k = Tok::Or; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", at);
      }
      if (c == '0' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))
        throw ParseError("numeric literals other than 0 are not part of the language", at);
      out.push_back({k, std::string(1, c), at});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
public:
  Parser(std::string_view text, const ArityLookup& functions) : tokens_(tokenize(text)), functions_(functions) {}

  Formula formula_to_end() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term_to_end() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& advance() { return tokens_[pos_++]; }

  void expect(Tok k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what, peek().pos);
    ++pos_;
  }

  std::string ident() {
    if (!at(Tok::Ident)) throw ParseError("expected identifier", peek().pos);
    return advance().text;
  }

  Formula formula() {
    Formula a = implication();
    if (at(Tok::Iff)) {
      advance();
      Formula b = formula();
      return iff(a, b);
    }
    return a;
  }

  Formula implication() {
    Formula a = disjunction();
    if (at(Tok::Arrow)) {
      advance();
      return Formula::implies(a, implication());
    }
    return a;
  }

  Formula disjunction() {
    Formula a = conjunction();
    while (at(Tok::Or)) {
      advance();
      a = disj(a, conjunction());
    }
    return a;
  }

  Formula conjunction() {
    Formula a = unary();
    while (at(Tok::And)) {
      advance();
      a = conj(a, unary());
    }
    return a;
  }

  Formula unary() {
    switch (peek().kind) {
    case Tok::Not:
      advance();
      return Formula::negate(unary());
    case Tok::ForAll: {
      advance();
      std::string v = ident();
      return Formula::forall(v, unary());
    }
    case Tok::Exists: {
      advance();
      std::string v = ident();
      return exists(v, unary());
    }
    case Tok::BForAll:
    case Tok::BExists: {
      const bool universal = advance().kind == Tok::BForAll;
      std::string v = ident();
      Term bound = bound_primary();
      Formula body = unary();
      return universal ? Formula::bounded_forall(v, bound, body) : Formula::bounded_exists(v, bound, body);
    }
    default:
      return atom();
    }
  }

  Formula atom() {
    if (at(Tok::LParen)) {
      // Either a parenthesized formula or an equation whose left side
      // starts with a parenthesized term. Try the equation first.
      const std::size_t save = pos_;
      try {
        return equation();
      } catch (const ParseError&) {
        pos_ = save;
      }
      advance();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return equation();
  }

  Formula equation() {
    Term l = term();
    if (at(Tok::Eq)) {
      advance();
      return Formula::eq(l, term());
    }
    if (at(Tok::Le)) {
      advance();
      return less_equal(l, term());
    }
    throw ParseError("expected '=' or '<='", peek().pos);
  }

  // A variable bound may be followed directly by a parenthesized body, so an
  // identifier here is a call only if it names a known function symbol.
  Term bound_primary() {
    if (at(Tok::Ident) && !functions_(peek().text)) return Term::var(advance().text);
    return primary();
  }

  Term term() {
    Term a = product();
    while (at(Tok::Plus)) {
      advance();
      a = Term::plus(a, product());
    }
    return a;
  }

  Term product() {
    Term a = primary();
    while (at(Tok::Times)) {
      advance();
      a = Term::times(a, primary());
    }
    return a;
  }

  Term primary() {
    const Token& t = peek();
    switch (t.kind) {
    case Tok::Zero:
      advance();
      return Term::zero();
    case Tok::Succ: {
      advance();
      expect(Tok::LParen, "'(' after S");
      Term inner = term();
      expect(Tok::RParen, "')'");
      return Term::succ(inner);
    }
    case Tok::LParen: {
      advance();
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    case Tok::Ident: {
      const std::size_t at_pos = t.pos;
      std::string name = advance().text;
      if (!at(Tok::LParen)) return Term::var(std::move(name));
      advance();
      std::vector<Term> args;
      args.push_back(term());
      while (at(Tok::Comma)) {
        advance();
        args.push_back(term());
      }
      expect(Tok::RParen, "')'");
      auto arity = functions_(name);
      if (!arity) throw ParseError("unknown function symbol '" + name + "'", at_pos);
      if (*arity != static_cast<int>(args.size()))
        throw ParseError("arity mismatch for '" + name + "': expected " + std::to_string(*arity) + ", got " +
                             std::to_string(args.size()),
                         at_pos);
      return Term::fn(std::move(name), std::move(args));
    }
    default:
      throw ParseError("expected term", t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const ArityLookup& functions_;
};

const ArityLookup& default_lookup() {
  static const ArityLookup lookup = [](std::string_view n) { return function_arity(n); };
  return lookup;
}

// ---------------------------------------------------------------------------
// Printing

void print(std::ostream& os, const Term& t, int level);

// Quantifier bounds. A variable spelled like a function symbol would be read
// back as a call when the body opens with '(', so it gets parentheses too.
void print_primary(std::ostream& os, const Term& t) {
  if (t.kind() == Term::Kind::Plus || t.kind() == Term::Kind::Times ||
      (t.kind() == Term::Kind::Var && function_arity(t.name()))) {
    os << '(';
    print(os, t, 0);
    os << ')';
  } else {
    print(os, t, 2);
  }
}

// level 0: sum, 1: product, 2: primary
void print(std::ostream& os, const Term& t, int level) {
  switch (t.kind()) {
  case Term::Kind::Var:
    os << t.name();
    return;
  case Term::Kind::Zero:
    os << '0';
    return;
  case Term::Kind::Succ:
    os << "S(";
    print(os, t.arg(0), 0);
    os << ')';
    return;
  case Term::Kind::Fn:
    os << t.name() << '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) os << ", ";
      print(os, t.arg(i), 0);
    }
    os << ')';
    return;
  case Term::Kind::Plus:
    if (level > 0) os << '(';
    print(os, t.arg(0), 0);
    os << " + ";
    print(os, t.arg(1), 1);
    if (level > 0) os << ')';
    return;
  case Term::Kind::Times:
    if (level > 1) os << '(';
    print(os, t.arg(0), 1);
    os << " * ";
    print(os, t.arg(1), 2);
    if (level > 1) os << ')';
    return;
  }
}

void print(std::ostream& os, const Formula& f);

// Operand of '!' or body of a quantifier.
void print_unary_operand(std::ostream& os, const Formula& f) {
  if (f.kind() == Formula::Kind::Not || f.is_quantifier()) {
    print(os, f);
  } else {
    os << '(';
    print(os, f);
    os << ')';
  }
}

void print(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::Eq:
    print(os, f.lhs(), 0);
    os << " = ";
    print(os, f.rhs(), 0);
    return;
  case Formula::Kind::Not:
    os << '!';
    print_unary_operand(os, f.operand());
    return;
  case Formula::Kind::Implies: {
    auto side = [&](const Formula& g) {
      if (g.kind() == Formula::Kind::Implies) {
        os << '(';
        print(os, g);
        os << ')';
      } else {
        print(os, g);
      }
    };
    side(f.left());
    os << " -> ";
    side(f.right());
    return;
  }
  case Formula::Kind::ForAll:
    os << "forall " << f.var() << ' ';
    print_unary_operand(os, f.body());
    return;
  case Formula::Kind::BoundedForAll:
  case Formula::Kind::BoundedExists:
    os << (f.kind() == Formula::Kind::BoundedForAll ? "forall<= " : "exists<= ") << f.var() << ' ';
    print_primary(os, f.bound());
    os << ' ';
    print_unary_operand(os, f.body());
    return;
  }
}

} // namespace

Formula parse_formula(std::string_view text) { return parse_formula(text, default_lookup()); }

Formula parse_formula(std::string_view text, const ArityLookup& functions) {
  return Parser(text, functions).formula_to_end();
}

Term parse_term(std::string_view text) { return parse_term(text, default_lookup()); }

Term parse_term(std::string_view text, const ArityLookup& functions) {
  return Parser(text, functions).term_to_end();
}

std::string print_term(const Term& t) {
  std::ostringstream os;
  print(os, t, 0);
  return os.str();
}

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print(os, f);
  return os.str();
}

} // namespace forge
