#include "col/intlogic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "col/error.hpp"
#include "col/semantics.hpp"

namespace col {

IntFormula IntFormula::Atom(std::string name) {
  return IntFormula(std::make_shared<const Node>(Node{Kind::kAtom, std::move(name), {}}));
}
IntFormula IntFormula::Bottom() {
  return IntFormula(std::make_shared<const Node>(Node{Kind::kBottom, {}, {}}));
}
IntFormula IntFormula::Not(IntFormula a) {
  return IntFormula(std::make_shared<const Node>(Node{Kind::kNot, {}, {std::move(a)}}));
}
IntFormula IntFormula::And(IntFormula a, IntFormula b) {
  return IntFormula(std::make_shared<const Node>(Node{Kind::kAnd, {}, {std::move(a), std::move(b)}}));
}
IntFormula IntFormula::Or(IntFormula a, IntFormula b) {
  return IntFormula(std::make_shared<const Node>(Node{Kind::kOr, {}, {std::move(a), std::move(b)}}));
}
IntFormula IntFormula::Impl(IntFormula a, IntFormula b) {
  return IntFormula(std::make_shared<const Node>(Node{Kind::kImpl, {}, {std::move(a), std::move(b)}}));
}

bool operator==(const IntFormula& a, const IntFormula& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.node_->children == b.node_->children;
}

namespace {

IntFormula FromFormula(const Formula& f) {
  switch (f.op()) {
    case Op::kElementaryAtom:
      if (f.arity() != 0) throw BuildError("intuitionistic atoms take no arguments: " + Print(f));
      return IntFormula::Atom(f.name());
    case Op::kBottom:
      return IntFormula::Bottom();
    case Op::kNeg:
      return IntFormula::Not(FromFormula(f.child(0)));
    case Op::kParAnd:
      return IntFormula::And(FromFormula(f.child(0)), FromFormula(f.child(1)));
    case Op::kParOr:
      return IntFormula::Or(FromFormula(f.child(0)), FromFormula(f.child(1)));
    case Op::kParImpl:
      return IntFormula::Impl(FromFormula(f.child(0)), FromFormula(f.child(1)));
    default:
      throw BuildError("operator " + std::string(OpName(f.op())) +
                       " is outside the intuitionistic sub-grammar");
  }
}

Formula ToSyntax(const IntFormula& f) {
  using K = IntFormula::Kind;
  switch (f.kind()) {
    case K::kAtom: return Formula::Elementary(f.name());
    case K::kBottom: return Formula::Bottom();
    case K::kNot: return Formula::Neg(ToSyntax(f.left()));
    case K::kAnd: return Formula::ParAnd(ToSyntax(f.left()), ToSyntax(f.right()));
    case K::kOr: return Formula::ParOr(ToSyntax(f.left()), ToSyntax(f.right()));
    case K::kImpl: return Formula::ParImpl(ToSyntax(f.left()), ToSyntax(f.right()));
  }
  return Formula::Bottom();
}

void CollectAtoms(const IntFormula& f, std::set<std::string>& out) {
  using K = IntFormula::Kind;
  switch (f.kind()) {
    case K::kAtom: out.insert(f.name()); break;
    case K::kBottom: break;
    case K::kNot: CollectAtoms(f.left(), out); break;
    default:
      CollectAtoms(f.left(), out);
      CollectAtoms(f.right(), out);
  }
}

// G4ip. Negation is read as implication into bottom.
using K = IntFormula::Kind;

IntFormula Desugar(const IntFormula& f) {
  switch (f.kind()) {
    case K::kAtom:
    case K::kBottom: return f;
    case K::kNot: return IntFormula::Impl(Desugar(f.left()), IntFormula::Bottom());
    case K::kAnd: return IntFormula::And(Desugar(f.left()), Desugar(f.right()));
    case K::kOr: return IntFormula::Or(Desugar(f.left()), Desugar(f.right()));
    case K::kImpl: return IntFormula::Impl(Desugar(f.left()), Desugar(f.right()));
  }
  return f;
}

bool Contains(const std::vector<IntFormula>& g, const IntFormula& f) {
  return std::find(g.begin(), g.end(), f) != g.end();
}

std::vector<IntFormula> Without(const std::vector<IntFormula>& g, std::size_t i) {
  std::vector<IntFormula> out;
  out.reserve(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    if (j != i) out.push_back(g[j]);
  return out;
}

bool Prove(std::vector<IntFormula> g, const IntFormula& c) {
  // Axioms.
  for (const auto& h : g) {
    if (h.kind() == K::kBottom) return true;
    if (h.kind() == K::kAtom && c.kind() == K::kAtom && h.name() == c.name()) return true;
  }
  // Invertible left rules.
  for (std::size_t i = 0; i < g.size(); ++i) {
    const IntFormula h = g[i];
    if (h.kind() == K::kAnd) {
      auto rest = Without(g, i);
      rest.push_back(h.left());
      rest.push_back(h.right());
      return Prove(std::move(rest), c);
    }
    if (h.kind() == K::kOr) {
      auto a = Without(g, i);
      auto b = a;
      a.push_back(h.left());
      b.push_back(h.right());
      return Prove(std::move(a), c) && Prove(std::move(b), c);
    }
    if (h.kind() != K::kImpl) continue;
    const IntFormula& ante = h.left();
    const IntFormula& cons = h.right();
    if (ante.kind() == K::kAtom && Contains(g, ante)) {
      auto rest = Without(g, i);
      rest.push_back(cons);
      return Prove(std::move(rest), c);
    }
    if (ante.kind() == K::kBottom) return Prove(Without(g, i), c);
    if (ante.kind() == K::kAnd) {
      auto rest = Without(g, i);
      rest.push_back(IntFormula::Impl(ante.left(), IntFormula::Impl(ante.right(), cons)));
      return Prove(std::move(rest), c);
    }
    if (ante.kind() == K::kOr) {
      auto rest = Without(g, i);
      rest.push_back(IntFormula::Impl(ante.left(), cons));
      rest.push_back(IntFormula::Impl(ante.right(), cons));
      return Prove(std::move(rest), c);
    }
  }
  // Invertible right rules.
  if (c.kind() == K::kAnd) return Prove(g, c.left()) && Prove(g, c.right());
  if (c.kind() == K::kImpl) {
    g.push_back(c.left());
    return Prove(std::move(g), c.right());
  }
  // Non-invertible rules.
  if (c.kind() == K::kOr && (Prove(g, c.left()) || Prove(g, c.right()))) return true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const IntFormula h = g[i];
    if (h.kind() != K::kImpl || h.left().kind() != K::kImpl) continue;
    const IntFormula& a = h.left().left();
    const IntFormula& b = h.left().right();
    const IntFormula& d = h.right();
    auto first = Without(g, i);
    first.push_back(IntFormula::Impl(b, d));
    if (!Prove(std::move(first), IntFormula::Impl(a, b))) continue;
    auto second = Without(g, i);
    second.push_back(d);
    if (Prove(std::move(second), c)) return true;
  }
  return false;
}

Formula Translate(const IntFormula& f, AtomMode atoms) {
  switch (f.kind()) {
    case K::kAtom: {
      if (atoms == AtomMode::kElementary) return Formula::Elementary(f.name());
      std::string upper = f.name();
      upper[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(upper[0])));
      return Formula::General(upper);
    }
    case K::kBottom: return Formula::Bottom();
    case K::kNot: return Formula::Unary(Op::kBrefute, Translate(f.left(), atoms));
    case K::kAnd: return Formula::ChoAnd(Translate(f.left(), atoms), Translate(f.right(), atoms));
    case K::kOr: return Formula::ChoOr(Translate(f.left(), atoms), Translate(f.right(), atoms));
    case K::kImpl: return Formula::Brimpl(Translate(f.left(), atoms), Translate(f.right(), atoms));
  }
  return Formula::Bottom();
}

}  // namespace

IntFormula ParseInt(std::string_view text) { return FromFormula(Parse(text)); }

std::string PrintInt(const IntFormula& f) { return Print(ToSyntax(f)); }

std::set<std::string> IntAtoms(const IntFormula& f) {
  std::set<std::string> out;
  CollectAtoms(f, out);
  return out;
}

std::vector<IntFormula> LoadIntCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<IntFormula> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(ParseInt(line));
    } catch (const Error& e) {
      throw Error(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

bool IntProve(const IntFormula& f) { return Prove({}, Desugar(f)); }

Formula TranslateInt(const IntFormula& f, AtomMode atoms) { return Translate(f, atoms); }

std::vector<Interpretation> ElementaryFamily(const std::set<std::string>& atoms) {
  const std::vector<std::string> names(atoms.begin(), atoms.end());
  if (names.size() > 16) throw LimitExceeded("too many atoms for an exhaustive family");
  std::vector<Interpretation> family;
  for (std::uint32_t bits = 0; bits < (1u << names.size()); ++bits) {
    Interpretation interp(1);
    for (std::size_t i = 0; i < names.size(); ++i) interp.SetPredicate(names[i], 0, {((bits >> i) & 1u) != 0});
    family.push_back(std::move(interp));
  }
  return family;
}

std::string_view AuditClassName(AuditClass c) {
  switch (c) {
    case AuditClass::kConsistent: return "consistent";
    case AuditClass::kSeparationWitness: return "separation-witness";
    case AuditClass::kAnomaly: return "ANOMALY";
    case AuditClass::kInconclusive: return "inconclusive";
  }
  return "?";
}

AuditRow AuditFormula(const IntFormula& f, const AuditOptions& options) {
  AuditRow row;
  row.formula = PrintInt(f);
  row.provable = IntProve(f);
  const bool general = !options.family.empty();
  const Formula translated = TranslateInt(f, general ? AtomMode::kGeneral : AtomMode::kElementary);
  const std::vector<Interpretation> family = general ? options.family : ElementaryFamily(IntAtoms(f));
  for (std::uint32_t b = 0; b <= options.max_budget; ++b) {
    row.budget = b;
    try {
      if (SolveUniform(translated, family, Budget{b}, options.limits).winnable) {
        row.winnable = true;
        break;
      }
      row.winnable = false;
    } catch (const LimitExceeded& e) {
      row.winnable.reset();
      row.note = e.what();
      break;
    }
  }
  if (!row.winnable) row.classification = AuditClass::kInconclusive;
  else if (*row.winnable) row.classification = row.provable ? AuditClass::kConsistent : AuditClass::kSeparationWitness;
  else row.classification = row.provable ? AuditClass::kAnomaly : AuditClass::kConsistent;
  return row;
}

std::vector<AuditRow> Audit(std::span<const IntFormula> corpus, const AuditOptions& options) {
  std::vector<AuditRow> rows;
  rows.reserve(corpus.size());
  for (const auto& f : corpus) rows.push_back(AuditFormula(f, options));
  return rows;
}

std::string AuditReportText(std::span<const AuditRow> rows) {
  std::ostringstream out;
  out << "formula\tprovable\twinnable\tbudget\tclassification\n";
  for (const auto& r : rows) {
    out << r.formula << '\t' << (r.provable ? "true" : "false") << '\t'
        << (r.winnable ? (*r.winnable ? "true" : "false") : "?") << '\t' << r.budget << '\t'
        << AuditClassName(r.classification) << '\n';
  }
  return out.str();
}

}  // namespace col
