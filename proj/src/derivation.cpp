#include "forge/derivation.hpp"

#include <stdexcept>

namespace forge {

namespace {

AxiomRef schema(SchemaKind k) { return AxiomRef{{k}, std::nullopt, std::nullopt}; }

} // namespace

std::size_t Derivation::push(Line line) {
  lines_.push_back(std::move(line));
  return lines_.size() - 1;
}

std::size_t Derivation::hypothesis(const Formula& h) { return push({h, Kind::Hyp, ComputeStep{}}); }

std::size_t Derivation::axiom(const Formula& f) {
  auto j = premise_free_justification(*theory_, f);
  if (!j) throw std::invalid_argument("not an axiom: " + print_formula(f));
  return push({f, Kind::Axiom, *j});
}

std::size_t Derivation::mp(std::size_t minor, std::size_t major) {
  const Formula& g = lines_.at(major).formula;
  if (g.kind() != Formula::Kind::Implies || !(g.left() == lines_.at(minor).formula))
    throw std::invalid_argument("modus ponens premises do not fit");
  return push({g.right(), Kind::MP, ComputeStep{}, minor, major});
}

std::size_t Derivation::include(const Proof& proof) {
  const std::size_t base = lines_.size();
  for (const auto& l : proof.lines) {
    if (const auto* m = std::get_if<ModusPonens>(&l.justification)) {
      mp(base + m->minor, base + m->major);
    } else if (std::holds_alternative<Generalization>(l.justification)) {
      throw std::invalid_argument("generalization inside a derivation");
    } else {
      push({l.formula, Kind::Axiom, l.justification});
    }
  }
  return lines_.size() - 1;
}

std::vector<std::size_t> Derivation::discharge(std::size_t hyp) { return discharge(Formula(lines_.at(hyp).formula)); }

std::vector<std::size_t> Derivation::discharge(const Formula& h) {
  using F = Formula;
  std::vector<Line> out;
  std::vector<std::size_t> where(lines_.size());
  auto emit = [&](Line l) {
    out.push_back(std::move(l));
    return out.size() - 1;
  };
  auto emit_mp = [&](std::size_t minor, std::size_t major) {
    return emit({out[major].formula.right(), Kind::MP, ComputeStep{}, minor, major});
  };
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    const Line& l = lines_[i];
    const Formula& f = l.formula;
    if (l.kind == Kind::Hyp && f == h) {
      // h -> h
      const F hh = F::implies(h, h);
      auto a = emit({F::implies(h, F::implies(hh, h)), Kind::Axiom, schema(SchemaKind::P1)});
      auto b = emit({F::implies(F::implies(h, F::implies(hh, h)), F::implies(F::implies(h, hh), hh)), Kind::Axiom,
                     schema(SchemaKind::P2)});
      auto c = emit_mp(a, b);
      auto d = emit({F::implies(h, hh), Kind::Axiom, schema(SchemaKind::P1)});
      where[i] = emit_mp(d, c);
    } else if (l.kind == Kind::MP) {
      const Formula& a = lines_[l.minor].formula;
      const F p2 = F::implies(F::implies(h, F::implies(a, f)), F::implies(F::implies(h, a), F::implies(h, f)));
      auto s = emit({p2, Kind::Axiom, schema(SchemaKind::P2)});
      auto t = emit_mp(where[l.major], s);
      where[i] = emit_mp(where[l.minor], t);
    } else {
      auto s = emit(l);
      auto t = emit({F::implies(f, F::implies(h, f)), Kind::Axiom, schema(SchemaKind::P1)});
      where[i] = emit_mp(s, t);
    }
  }
  lines_ = std::move(out);
  return where;
}

Proof Derivation::to_proof() const {
  Proof p;
  for (const auto& l : lines_) {
    switch (l.kind) {
    case Kind::Hyp:
      throw std::logic_error("derivation still has hypotheses");
    case Kind::Axiom:
      p.lines.push_back({l.formula, l.justification});
      break;
    case Kind::MP:
      p.lines.push_back({l.formula, ModusPonens{l.minor, l.major}});
      break;
    }
  }
  return p;
}

std::size_t append_proof(Proof& into, const Proof& piece) {
  const std::size_t base = into.lines.size();
  for (const auto& l : piece.lines) {
    ProofLine copy = l;
    if (auto* m = std::get_if<ModusPonens>(&copy.justification)) {
      m->minor += base;
      m->major += base;
    } else if (auto* g = std::get_if<Generalization>(&copy.justification)) {
      g->premise += base;
    }
    into.lines.push_back(std::move(copy));
  }
  return base;
}

Proof double_negation_elimination(const TheorySpec& T, const Formula& z) {
  using F = Formula;
  const F nz = F::negate(z);
  const F nnz = F::negate(nz);
  const F nnnz = F::negate(nnz);
  const F nnnnz = F::negate(nnnz);
  Derivation d(T);
  auto h = d.hypothesis(nnz);
  auto a = d.axiom(F::implies(nnz, F::implies(nnnnz, nnz)));
  auto b = d.mp(h, a);
  auto c = d.axiom(F::implies(d.formula(b), F::implies(nz, nnnz)));
  auto e = d.mp(b, c);
  auto f = d.axiom(F::implies(d.formula(e), F::implies(nnz, z)));
  auto g = d.mp(e, f);
  d.mp(h, g);
  d.discharge(h);
  return d.to_proof();
}

Proof conjunction_introduction(const TheorySpec& T, const Formula& x, const Formula& y) {
  using F = Formula;
  const F x_not_y = F::implies(x, F::negate(y));
  const F nn = F::negate(F::negate(x_not_y));
  Derivation d(T);
  auto hx = d.hypothesis(x);
  auto hn = d.hypothesis(nn);
  auto dne = d.include(double_negation_elimination(T, x_not_y));
  auto imp = d.mp(hn, dne);
  d.mp(hx, imp);
  d.discharge(hn);
  const std::size_t ny = d.size() - 1; // nn -> !y
  auto p3 = d.axiom(F::implies(d.formula(ny), F::implies(y, F::negate(x_not_y))));
  d.mp(ny, p3);
  d.discharge(x);
  return d.to_proof();
}

} // namespace forge
