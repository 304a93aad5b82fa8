#include "forge/calculus.hpp"

#include <charconv>
#include <sstream>

namespace forge {

ProofFormatError::ProofFormatError(const std::string& message, std::size_t line)
    : std::runtime_error("proof line " + std::to_string(line) + ": " + message), line_(line) {}

std::string print_justification(const Justification& j) {
  if (const auto* a = std::get_if<AxiomRef>(&j)) {
    std::string out = schema_name(a->schema);
    if (a->t || a->u) {
      out += '[';
      if (a->t) out += "t=" + print_term(*a->t);
      if (a->u) out += (a->t ? ",u=" : "u=") + print_term(*a->u);
      out += ']';
    }
    return out;
  }
  if (const auto* t = std::get_if<TheoryAxiomRef>(&j)) return "THAX " + std::to_string(t->index);
  if (const auto* mp = std::get_if<ModusPonens>(&j))
    return "MP " + std::to_string(mp->minor) + " " + std::to_string(mp->major);
  if (const auto* g = std::get_if<Generalization>(&j)) return "GEN " + std::to_string(g->premise) + " " + g->var;
  return "COMPUTE";
}

std::string print_proof(const Proof& proof) {
  std::ostringstream os;
  for (std::size_t i = 0; i < proof.lines.size(); ++i)
    os << i << ". " << print_formula(proof.lines[i].formula) << " ; "
       << print_justification(proof.lines[i].justification) << '\n';
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t number(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ProofFormatError("expected a line index, got '" + std::string(s) + "'", line);
  return v;
}

// "[t=..,u=..]": the terms may contain commas, so split on ",u=".
void parse_bracket(std::string_view body, AxiomRef& ref, const ArityLookup& functions, std::size_t line) {
  auto parse = [&](std::string_view text) {
    try {
      return parse_term(trim(text), functions);
    } catch (const ParseError& e) {
      throw ProofFormatError(e.what(), line);
    }
  };
  std::string_view t_part, u_part;
  if (body.starts_with("t=")) {
    auto split = body.find(",u=");
    t_part = body.substr(2, split == std::string_view::npos ? std::string_view::npos : split - 2);
    if (split != std::string_view::npos) u_part = body.substr(split + 3);
  } else if (body.starts_with("u=")) {
    u_part = body.substr(2);
  } else {
    throw ProofFormatError("malformed justification arguments", line);
  }
  if (!t_part.empty()) ref.t = parse(t_part);
  if (!u_part.empty()) ref.u = parse(u_part);
}

Justification parse_justification(std::string_view text, const ArityLookup& functions, std::size_t line) {
  text = trim(text);
  std::string_view head = text;
  std::string_view bracket;
  if (auto lb = text.find('['); lb != std::string_view::npos) {
    if (text.back() != ']') throw ProofFormatError("unterminated '['", line);
    head = text.substr(0, lb);
    bracket = text.substr(lb + 1, text.size() - lb - 2);
  }
  auto w = words(head);
  if (w.empty()) throw ProofFormatError("missing justification", line);
  const std::string_view rule = w[0];
  auto want = [&](std::size_t n) {
    if (w.size() != n) throw ProofFormatError("wrong number of arguments for " + std::string(rule), line);
  };
  auto axiom = [&](SchemaKind k, int index = 0) -> Justification {
    AxiomRef ref{{k, index}, std::nullopt, std::nullopt};
    if (!bracket.empty()) parse_bracket(bracket, ref, functions, line);
    return ref;
  };
  if (rule == "P1") return want(1), axiom(SchemaKind::P1);
  if (rule == "P2") return want(1), axiom(SchemaKind::P2);
  if (rule == "P3") return want(1), axiom(SchemaKind::P3);
  if (rule == "Q1") return want(1), axiom(SchemaKind::Q1Inst);
  if (rule == "Q2") return want(1), axiom(SchemaKind::Q2Dist);
  if (rule == "EQREFL") return want(1), axiom(SchemaKind::EqRefl);
  if (rule == "EQSUBST") return want(1), axiom(SchemaKind::EqSubst);
  if (rule == "IND") return want(1), axiom(SchemaKind::Induction);
  if (rule == "COMPUTE") return want(1), Justification{ComputeStep{}};
  if (rule == "QAX") {
    want(2);
    const auto n = number(w[1], line);
    if (n < 1 || n > 7) throw ProofFormatError("QAX index must be 1..7", line);
    return axiom(SchemaKind::Robinson, static_cast<int>(n));
  }
  if (rule == "THAX") return want(2), Justification{TheoryAxiomRef{number(w[1], line)}};
  if (rule == "MP") return want(3), Justification{ModusPonens{number(w[1], line), number(w[2], line)}};
  if (rule == "GEN") return want(3), Justification{Generalization{number(w[1], line), std::string(w[2])}};
  throw ProofFormatError("unknown justification '" + std::string(rule) + "'", line);
}

} // namespace

Proof parse_proof(std::string_view text) {
  static const ArityLookup lookup = [](std::string_view n) { return function_arity(n); };
  return parse_proof(text, lookup);
}

Proof parse_proof(std::string_view text, const ArityLookup& functions) {
  Proof proof;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto dot = line.find(". ");
    if (dot == std::string_view::npos) throw ProofFormatError("expected '<index>. '", line_no);
    if (number(trim(line.substr(0, dot)), line_no) != proof.lines.size())
      throw ProofFormatError("line indices must count up from 0", line_no);
    line.remove_prefix(dot + 2);
    auto semi = line.rfind(';');
    if (semi == std::string_view::npos) throw ProofFormatError("missing ';' before justification", line_no);
    Formula f = [&] {
      try {
        return parse_formula(trim(line.substr(0, semi)), functions);
      } catch (const ParseError& e) {
        throw ProofFormatError(e.what(), line_no);
      }
    }();
    proof.lines.push_back({f, parse_justification(line.substr(semi + 1), functions, line_no)});
  }
  if (proof.lines.empty()) throw ProofFormatError("proof has no lines", line_no);
  return proof;
}

} // namespace forge
