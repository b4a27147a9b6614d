#ifndef COL_FORMULA_HPP
#define COL_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace col {

// A term denotes an element of the finite universe {0..N-1}.
struct Term {
  enum class Kind : std::uint8_t { kVariable, kNumeral, kApplication };

  Kind kind = Kind::kNumeral;
  std::string name;         // variable or function name
  std::uint32_t value = 0;  // numeral value
  std::vector<Term> args;   // application arguments

  static Term Variable(std::string name);
  static Term Numeral(std::uint32_t value);
  static Term Application(std::string name, std::vector<Term> args);

  friend bool operator==(const Term&, const Term&) = default;
};

// Operator inventory. Atoms and constants are leaves; the rest are the
// fourteen operators ~ /\ \/ -> all ex & | chall chex $ @ o-> o~.
enum class Op : std::uint8_t {
  kElementaryAtom,
  kGeneralAtom,
  kEquality,
  kTop,
  kBottom,
  kNeg,
  kParAnd,
  kParOr,
  kParImpl,
  kChoAnd,
  kChoOr,
  kBlindAll,
  kBlindEx,
  kChoAll,
  kChoEx,
  kBrec,
  kCorec,
  kBrimpl,
  kBrefute,
};

bool IsUnary(Op op);
bool IsBinary(Op op);
bool IsQuantifier(Op op);
bool IsAtomic(Op op);
// Stable lowercase identifier, e.g. "parOr", "choAll".
std::string_view OpName(Op op);

// Immutable formula value. Copies share structure.
class Formula {
 public:
  static Formula Elementary(std::string name, std::vector<Term> args = {});
  static Formula General(std::string name, std::vector<Term> args = {});
  static Formula Equality(Term lhs, Term rhs);
  static Formula Top();
  static Formula Bottom();
  static Formula Unary(Op op, Formula operand);
  static Formula Binary(Op op, Formula lhs, Formula rhs);
  static Formula Quantifier(Op op, std::string variable, Formula body);

  static Formula Neg(Formula f) { return Unary(Op::kNeg, std::move(f)); }
  static Formula ParAnd(Formula a, Formula b) {
    return Binary(Op::kParAnd, std::move(a), std::move(b));
  }
  static Formula ParOr(Formula a, Formula b) {
    return Binary(Op::kParOr, std::move(a), std::move(b));
  }
  static Formula ParImpl(Formula a, Formula b) {
    return Binary(Op::kParImpl, std::move(a), std::move(b));
  }
  static Formula ChoAnd(Formula a, Formula b) {
    return Binary(Op::kChoAnd, std::move(a), std::move(b));
  }
  static Formula ChoOr(Formula a, Formula b) {
    return Binary(Op::kChoOr, std::move(a), std::move(b));
  }
  static Formula Brimpl(Formula a, Formula b) {
    return Binary(Op::kBrimpl, std::move(a), std::move(b));
  }

  Op op() const;
  // Atom name, or the bound variable of a quantifier.
  const std::string& name() const;
  // Atom arguments; for kEquality exactly the two sides.
  const std::vector<Term>& terms() const;
  std::size_t arity() const;
  const Formula& child(std::size_t i) const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

enum class Notation { kAscii, kUnicode };

// Minimal-parenthesis rendering. kAscii is the canonical, re-parseable form.
std::string Print(const Formula& f, Notation notation = Notation::kAscii);
std::string Print(const Term& t);

// Parses the ASCII grammar. Throws SyntaxError.
Formula Parse(std::string_view text);

// Replaces free occurrences of `variable` by the numeral `value`.
// Throws BuildError if value >= universe.
Formula Substitute(const Formula& f, std::string_view variable,
                   std::uint32_t value, std::uint32_t universe);

std::set<std::string> FreeVariables(const Formula& f);

}  // namespace col

#endif  // COL_FORMULA_HPP
