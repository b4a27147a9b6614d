#include "col/formula.hpp"

#include <cassert>
#include <sstream>

#include "col/error.hpp"

namespace col {

Term Term::Variable(std::string name) {
  Term t;
  t.kind = Kind::kVariable;
  t.name = std::move(name);
  return t;
}

Term Term::Numeral(std::uint32_t value) {
  Term t;
  t.kind = Kind::kNumeral;
  t.value = value;
  return t;
}

Term Term::Application(std::string name, std::vector<Term> args) {
  Term t;
  t.kind = Kind::kApplication;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

bool IsUnary(Op op) {
  return op == Op::kNeg || op == Op::kBrec || op == Op::kCorec ||
         op == Op::kBrefute;
}

bool IsBinary(Op op) {
  switch (op) {
    case Op::kParAnd:
    case Op::kParOr:
    case Op::kParImpl:
    case Op::kChoAnd:
    case Op::kChoOr:
    case Op::kBrimpl:
      return true;
    default:
      return false;
  }
}

bool IsQuantifier(Op op) {
  return op == Op::kBlindAll || op == Op::kBlindEx || op == Op::kChoAll ||
         op == Op::kChoEx;
}

bool IsAtomic(Op op) {
  return op == Op::kElementaryAtom || op == Op::kGeneralAtom ||
         op == Op::kEquality || op == Op::kTop || op == Op::kBottom;
}

std::string_view OpName(Op op) {
  switch (op) {
    case Op::kElementaryAtom: return "elem";
    case Op::kGeneralAtom: return "gen";
    case Op::kEquality: return "equality";
    case Op::kTop: return "top";
    case Op::kBottom: return "bot";
    case Op::kNeg: return "neg";
    case Op::kParAnd: return "parAnd";
    case Op::kParOr: return "parOr";
    case Op::kParImpl: return "parImpl";
    case Op::kChoAnd: return "choAnd";
    case Op::kChoOr: return "choOr";
    case Op::kBlindAll: return "blindAll";
    case Op::kBlindEx: return "blindEx";
    case Op::kChoAll: return "choAll";
    case Op::kChoEx: return "choEx";
    case Op::kBrec: return "brec";
    case Op::kCorec: return "corec";
    case Op::kBrimpl: return "brimpl";
    case Op::kBrefute: return "brefute";
  }
  return "?";
}

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> children;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::Elementary(std::string name, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(
      Node{Op::kElementaryAtom, std::move(name), std::move(args), {}}));
}

Formula Formula::General(std::string name, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(
      Node{Op::kGeneralAtom, std::move(name), std::move(args), {}}));
}

Formula Formula::Equality(Term lhs, Term rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Op::kEquality, "", {std::move(lhs), std::move(rhs)}, {}}));
}

Formula Formula::Top() {
  static const Formula top(std::make_shared<const Node>(Node{Op::kTop, "", {}, {}}));
  return top;
}

Formula Formula::Bottom() {
  static const Formula bottom(
      std::make_shared<const Node>(Node{Op::kBottom, "", {}, {}}));
  return bottom;
}

Formula Formula::Unary(Op op, Formula operand) {
  assert(IsUnary(op));
  return Formula(std::make_shared<const Node>(
      Node{op, "", {}, {std::move(operand)}}));
}

Formula Formula::Binary(Op op, Formula lhs, Formula rhs) {
  assert(IsBinary(op));
  return Formula(std::make_shared<const Node>(
      Node{op, "", {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::Quantifier(Op op, std::string variable, Formula body) {
  assert(IsQuantifier(op));
  return Formula(std::make_shared<const Node>(
      Node{op, std::move(variable), {}, {std::move(body)}}));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
std::size_t Formula::arity() const { return node_->children.size(); }
const Formula& Formula::child(std::size_t i) const {
  return node_->children.at(i);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.name == y.name && x.terms == y.terms &&
         x.children == y.children;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength; larger binds tighter.
constexpr int kImplLevel = 1;
constexpr int kOrLevel = 2;
constexpr int kAndLevel = 3;
constexpr int kUnaryLevel = 4;

int Level(Op op) {
  switch (op) {
    case Op::kParImpl:
    case Op::kBrimpl:
      return kImplLevel;
    case Op::kParOr:
    case Op::kChoOr:
      return kOrLevel;
    case Op::kParAnd:
    case Op::kChoAnd:
      return kAndLevel;
    default:
      return kUnaryLevel;
  }
}

struct Symbols {
  std::string_view neg, brec, corec, brefute;
  std::string_view par_and, par_or, par_impl, cho_and, cho_or, brimpl;
  std::string_view all, ex, chall, chex, dot, top, bottom;
};

constexpr Symbols kAsciiSymbols{"~",   "$",     "@",       "o~",   " /\\ ",
                                " \\/ ", " -> ", " & ",   " | ",    " o-> ",
                                "all ", "ex ",  "chall ", "chex ", " . ",
                                "T",   "F"};

constexpr Symbols kUnicodeSymbols{"¬",  "⫰",  "⫯",  "◦¬", " ∧ ", " ∨ ",
                                  " → ", " ⊓ ", " ⊔ ", " ◦– ", "∀",  "∃",
                                  "⊓",  "⊔",  "",   "⊤",  "⊥"};

class Printer {
 public:
  explicit Printer(const Symbols& s) : s_(s) {}

  void Emit(const Formula& f, int context, bool open_right) {
    const Op op = f.op();
    if (IsAtomic(op)) {
      EmitAtom(f);
      return;
    }
    if (IsQuantifier(op)) {
      if (!open_right) out_ << '(';
      switch (op) {
        case Op::kBlindAll: out_ << s_.all; break;
        case Op::kBlindEx: out_ << s_.ex; break;
        case Op::kChoAll: out_ << s_.chall; break;
        default: out_ << s_.chex; break;
      }
      out_ << f.name() << s_.dot;
      if (s_.dot.empty()) {
        // Unicode display form wraps the body instead of using a dot.
        out_ << '(';
        Emit(f.child(0), kImplLevel, true);
        out_ << ')';
      } else {
        Emit(f.child(0), kImplLevel, true);
      }
      if (!open_right) out_ << ')';
      return;
    }
    if (IsUnary(op)) {
      switch (op) {
        case Op::kNeg: out_ << s_.neg; break;
        case Op::kBrec: out_ << s_.brec; break;
        case Op::kCorec: out_ << s_.corec; break;
        default: out_ << s_.brefute; break;
      }
      Emit(f.child(0), kUnaryLevel, open_right);
      return;
    }
    const int level = Level(op);
    const bool parens = level < context;
    if (parens) out_ << '(';
    const bool right_assoc = level == kImplLevel;
    Emit(f.child(0), right_assoc ? level + 1 : level, false);
    switch (op) {
      case Op::kParAnd: out_ << s_.par_and; break;
      case Op::kParOr: out_ << s_.par_or; break;
      case Op::kParImpl: out_ << s_.par_impl; break;
      case Op::kChoAnd: out_ << s_.cho_and; break;
      case Op::kChoOr: out_ << s_.cho_or; break;
      default: out_ << s_.brimpl; break;
    }
    Emit(f.child(1), right_assoc ? level : level + 1, parens || open_right);
    if (parens) out_ << ')';
  }

  std::string str() const { return out_.str(); }

 private:
  void EmitAtom(const Formula& f) {
    switch (f.op()) {
      case Op::kTop: out_ << s_.top; return;
      case Op::kBottom: out_ << s_.bottom; return;
      case Op::kEquality:
        out_ << Print(f.terms()[0]) << " = " << Print(f.terms()[1]);
        return;
      default:
        break;
    }
    out_ << f.name();
    if (!f.terms().empty()) EmitArgs(f.terms());
  }

  void EmitArgs(const std::vector<Term>& args) {
    out_ << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out_ << ", ";
      out_ << Print(args[i]);
    }
    out_ << ')';
  }

  const Symbols& s_;
  std::ostringstream out_;
};

}  // namespace

std::string Print(const Term& t) {
  switch (t.kind) {
    case Term::Kind::kVariable: return t.name;
    case Term::Kind::kNumeral: return std::to_string(t.value);
    case Term::Kind::kApplication: break;
  }
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += Print(t.args[i]);
  }
  return out + ")";
}

std::string Print(const Formula& f, Notation notation) {
  Printer p(notation == Notation::kAscii ? kAsciiSymbols : kUnicodeSymbols);
  p.Emit(f, kImplLevel, true);
  return p.str();
}

// ---------------------------------------------------------------------------
// Substitution and free variables

namespace {

Term SubstituteTerm(const Term& t, std::string_view variable,
                    std::uint32_t value) {
  switch (t.kind) {
    case Term::Kind::kVariable:
      return t.name == variable ? Term::Numeral(value) : t;
    case Term::Kind::kNumeral:
      return t;
    case Term::Kind::kApplication: {
      std::vector<Term> args;
      args.reserve(t.args.size());
      for (const Term& a : t.args) args.push_back(SubstituteTerm(a, variable, value));
      return Term::Application(t.name, std::move(args));
    }
  }
  return t;
}

bool MentionsVariable(const Term& t, std::string_view variable) {
  if (t.kind == Term::Kind::kVariable) return t.name == variable;
  for (const Term& a : t.args)
    if (MentionsVariable(a, variable)) return true;
  return false;
}

void CollectTermVariables(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::kVariable) out.insert(t.name);
  for (const Term& a : t.args) CollectTermVariables(a, out);
}

void CollectFree(const Formula& f, std::set<std::string>& bound,
                 std::set<std::string>& out) {
  if (IsAtomic(f.op())) {
    std::set<std::string> vars;
    for (const Term& t : f.terms()) CollectTermVariables(t, vars);
    for (const auto& v : vars)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (IsQuantifier(f.op())) {
    const bool fresh = bound.insert(f.name()).second;
    CollectFree(f.child(0), bound, out);
    if (fresh) bound.erase(f.name());
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) CollectFree(f.child(i), bound, out);
}

// Returns f unchanged (sharing structure) when the variable does not occur.
Formula SubstituteImpl(const Formula& f, std::string_view variable,
                       std::uint32_t value, bool& changed) {
  if (IsAtomic(f.op())) {
    bool hit = false;
    for (const Term& t : f.terms()) hit = hit || MentionsVariable(t, variable);
    if (!hit) return f;
    changed = true;
    std::vector<Term> terms;
    for (const Term& t : f.terms()) terms.push_back(SubstituteTerm(t, variable, value));
    if (f.op() == Op::kEquality) return Formula::Equality(terms[0], terms[1]);
    if (f.op() == Op::kGeneralAtom) return Formula::General(f.name(), std::move(terms));
    return Formula::Elementary(f.name(), std::move(terms));
  }
  if (IsQuantifier(f.op())) {
    if (f.name() == variable) return f;  // shadowed: not free below
    bool inner = false;
    Formula body = SubstituteImpl(f.child(0), variable, value, inner);
    if (!inner) return f;
    changed = true;
    return Formula::Quantifier(f.op(), f.name(), std::move(body));
  }
  if (IsUnary(f.op())) {
    bool inner = false;
    Formula c = SubstituteImpl(f.child(0), variable, value, inner);
    if (!inner) return f;
    changed = true;
    return Formula::Unary(f.op(), std::move(c));
  }
  bool l = false, r = false;
  Formula a = SubstituteImpl(f.child(0), variable, value, l);
  Formula b = SubstituteImpl(f.child(1), variable, value, r);
  if (!l && !r) return f;
  changed = true;
  return Formula::Binary(f.op(), std::move(a), std::move(b));
}

}  // namespace

Formula Substitute(const Formula& f, std::string_view variable,
                   std::uint32_t value, std::uint32_t universe) {
  if (value >= universe) {
    throw BuildError("numeral " + std::to_string(value) +
                     " is outside the universe {0.." +
                     std::to_string(universe == 0 ? 0 : universe - 1) + "}");
  }
  bool changed = false;
  return SubstituteImpl(f, variable, value, changed);
}

std::set<std::string> FreeVariables(const Formula& f) {
  std::set<std::string> bound, out;
  CollectFree(f, bound, out);
  return out;
}

}  // namespace col
