// Recursive-descent parser for the ASCII formula grammar.
//
//   impl    := disj (('->' | 'o->') impl)?
//   disj    := conj (('\/' | '|') conj)*
//   conj    := unary (('/\' | '&') unary)*
//   unary   := ('~' | '$' | '@' | 'o~') unary | quant | primary
//   quant   := ('all' | 'ex' | 'chall' | 'chex') var '.' impl
//   primary := '(' impl ')' | 'T' | 'F' | Upper args? | term ('=' term)?
//
// A lowercase name not followed by '=' is an elementary atom.

#include <cctype>
#include <vector>

#include "col/error.hpp"
#include "col/formula.hpp"

namespace col {
namespace {

enum class Tok {
  kEnd,
  kLParen,
  kRParen,
  kComma,
  kDot,
  kEquals,
  kNeg,
  kBrec,
  kCorec,
  kBrefute,
  kParAnd,
  kParOr,
  kParImpl,
  kChoAnd,
  kChoOr,
  kBrimpl,
  kLower,
  kUpper,
  kNumber,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool IsReserved(const std::string& word) {
  return word == "all" || word == "ex" || word == "chall" || word == "chex";
}

std::vector<Token> Lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l = line, col = column;
    auto push = [&](Tok kind, std::size_t len) {
      out.push_back({kind, std::string(src.substr(i, len)), l, col});
      advance(len);
    };
    // "o->" and "o~" win over an identifier spelled "o".
    if (starts("o->")) { push(Tok::kBrimpl, 3); continue; }
    if (starts("o~")) { push(Tok::kBrefute, 2); continue; }
    if (starts("/\\")) { push(Tok::kParAnd, 2); continue; }
    if (starts("\\/")) { push(Tok::kParOr, 2); continue; }
    if (starts("->")) { push(Tok::kParImpl, 2); continue; }
    switch (c) {
      case '(': push(Tok::kLParen, 1); continue;
      case ')': push(Tok::kRParen, 1); continue;
      case ',': push(Tok::kComma, 1); continue;
      case '.': push(Tok::kDot, 1); continue;
      case '=': push(Tok::kEquals, 1); continue;
      case '~': push(Tok::kNeg, 1); continue;
      case '$': push(Tok::kBrec, 1); continue;
      case '@': push(Tok::kCorec, 1); continue;
      case '&': push(Tok::kChoAnd, 1); continue;
      case '|': push(Tok::kChoOr, 1); continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
      push(Tok::kNumber, n);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (i + n < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_'))
        ++n;
      push(std::isupper(static_cast<unsigned char>(c)) ? Tok::kUpper : Tok::kLower, n);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", l, col);
  }
  out.push_back({Tok::kEnd, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(Lex(src)) {}

  Formula ParseAll() {
    Formula f = ParseImpl();
    if (Peek().kind != Tok::kEnd) Fail("unexpected '" + Peek().text + "'");
    return f;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    return t;
  }
  bool Accept(Tok kind) {
    if (Peek().kind != kind) return false;
    Next();
    return true;
  }
  [[noreturn]] void Fail(const std::string& what) const {
    const Token& t = Peek();
    throw SyntaxError(t.kind == Tok::kEnd ? what + " at end of input" : what,
                      t.line, t.column);
  }
  [[noreturn]] void FailAt(const Token& t, const std::string& what) const {
    throw SyntaxError(what, t.line, t.column);
  }
  void Expect(Tok kind, const char* what) {
    if (!Accept(kind)) Fail(std::string("expected ") + what);
  }

  Formula ParseImpl() {
    Formula lhs = ParseDisj();
    if (Accept(Tok::kParImpl)) return Formula::Binary(Op::kParImpl, lhs, ParseImpl());
    if (Accept(Tok::kBrimpl)) return Formula::Binary(Op::kBrimpl, lhs, ParseImpl());
    return lhs;
  }

  Formula ParseDisj() {
    Formula f = ParseConj();
    for (;;) {
      if (Accept(Tok::kParOr)) {
        f = Formula::Binary(Op::kParOr, f, ParseConj());
      } else if (Accept(Tok::kChoOr)) {
        f = Formula::Binary(Op::kChoOr, f, ParseConj());
      } else {
        return f;
      }
    }
  }

  Formula ParseConj() {
    Formula f = ParseUnary();
    for (;;) {
      if (Accept(Tok::kParAnd)) {
        f = Formula::Binary(Op::kParAnd, f, ParseUnary());
      } else if (Accept(Tok::kChoAnd)) {
        f = Formula::Binary(Op::kChoAnd, f, ParseUnary());
      } else {
        return f;
      }
    }
  }

  Formula ParseUnary() {
    switch (Peek().kind) {
      case Tok::kNeg: Next(); return Formula::Unary(Op::kNeg, ParseUnary());
      case Tok::kBrec: Next(); return Formula::Unary(Op::kBrec, ParseUnary());
      case Tok::kCorec: Next(); return Formula::Unary(Op::kCorec, ParseUnary());
      case Tok::kBrefute: Next(); return Formula::Unary(Op::kBrefute, ParseUnary());
      default: break;
    }
    if (Peek().kind == Tok::kLower && IsReserved(Peek().text)) return ParseQuantifier();
    return ParsePrimary();
  }

  Formula ParseQuantifier() {
    const Token kw = Next();
    Op op = Op::kBlindAll;
    if (kw.text == "ex") op = Op::kBlindEx;
    if (kw.text == "chall") op = Op::kChoAll;
    if (kw.text == "chex") op = Op::kChoEx;
    const Token& var = Peek();
    if (var.kind == Tok::kUpper) {
      FailAt(var, "cannot quantify uppercase name '" + var.text +
                      "' (variables are lowercase)");
    }
    if (var.kind != Tok::kLower || IsReserved(var.text)) Fail("expected variable after '" + kw.text + "'");
    Next();
    for (const auto& b : bound_) {
      if (b == var.text) FailAt(var, "variable '" + var.text + "' is already bound");
    }
    Expect(Tok::kDot, "'.'");
    bound_.push_back(var.text);
    Formula body = ParseImpl();
    bound_.pop_back();
    return Formula::Quantifier(op, var.text, std::move(body));
  }

  bool IsBound(const std::string& name) const {
    for (const auto& b : bound_)
      if (b == name) return true;
    return false;
  }

  std::vector<Term> ParseArgs() {
    std::vector<Term> args;
    Expect(Tok::kLParen, "'('");
    if (Peek().kind == Tok::kRParen) Fail("empty argument list");
    do {
      args.push_back(ParseTerm());
    } while (Accept(Tok::kComma));
    Expect(Tok::kRParen, "')'");
    return args;
  }

  Term ParseTerm() {
    const Token t = Peek();
    switch (t.kind) {
      case Tok::kNumber:
        Next();
        return Term::Numeral(static_cast<std::uint32_t>(std::stoul(t.text)));
      case Tok::kUpper:
        FailAt(t, "uppercase name '" + t.text + "' cannot be a term");
      case Tok::kLower:
        if (IsReserved(t.text)) Fail("unexpected '" + t.text + "'");
        Next();
        if (Peek().kind == Tok::kLParen) return Term::Application(t.text, ParseArgs());
        if (!IsBound(t.text)) FailAt(t, "unbound variable '" + t.text + "'");
        return Term::Variable(t.text);
      default:
        Fail("expected term");
    }
  }

  Formula ParsePrimary() {
    const Token t = Peek();
    switch (t.kind) {
      case Tok::kLParen: {
        Next();
        Formula f = ParseImpl();
        Expect(Tok::kRParen, "')'");
        return f;
      }
      case Tok::kUpper: {
        Next();
        if (t.text == "T") return Formula::Top();
        if (t.text == "F") return Formula::Bottom();
        std::vector<Term> args;
        if (Peek().kind == Tok::kLParen) args = ParseArgs();
        if (Peek().kind == Tok::kEquals) FailAt(t, "general atom '" + t.text + "' cannot be a term");
        return Formula::General(t.text, std::move(args));
      }
      case Tok::kNumber: {
        Term lhs = ParseTerm();
        Expect(Tok::kEquals, "'=' after numeral");
        return Formula::Equality(std::move(lhs), ParseTerm());
      }
      case Tok::kLower: {
        // Either an elementary atom or the left side of an equation.
        if (Peek(1).kind == Tok::kEquals ||
            (Peek(1).kind == Tok::kLParen && EquationFollowsArgs())) {
          Term lhs = ParseTerm();
          Expect(Tok::kEquals, "'='");
          return Formula::Equality(std::move(lhs), ParseTerm());
        }
        Next();
        std::vector<Term> args;
        if (Peek().kind == Tok::kLParen) args = ParseArgs();
        return Formula::Elementary(t.text, std::move(args));
      }
      case Tok::kEnd:
        Fail("expected a formula");
      default:
        Fail("unexpected '" + t.text + "'");
    }
  }

  // Looks past a balanced argument list starting at Peek(1).
  bool EquationFollowsArgs() const {
    int depth = 0;
    for (std::size_t k = pos_ + 1; k < tokens_.size(); ++k) {
      if (tokens_[k].kind == Tok::kLParen) ++depth;
      if (tokens_[k].kind == Tok::kRParen && --depth == 0) {
        return k + 1 < tokens_.size() && tokens_[k + 1].kind == Tok::kEquals;
      }
      if (tokens_[k].kind == Tok::kEnd) return false;
    }
    return false;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

Formula Parse(std::string_view text) { return Parser(text).ParseAll(); }

}  // namespace col
