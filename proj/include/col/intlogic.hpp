#ifndef COL_INTLOGIC_HPP
#define COL_INTLOGIC_HPP

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "col/formula.hpp"
#include "col/interpretation.hpp"
#include "col/solver.hpp"

namespace col {

// Propositional intuitionistic formula.
class IntFormula {
 public:
  enum class Kind : std::uint8_t { kAtom, kBottom, kNot, kAnd, kOr, kImpl };

  static IntFormula Atom(std::string name);
  static IntFormula Bottom();
  static IntFormula Not(IntFormula a);
  static IntFormula And(IntFormula a, IntFormula b);
  static IntFormula Or(IntFormula a, IntFormula b);
  static IntFormula Impl(IntFormula a, IntFormula b);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const IntFormula& left() const { return node_->children[0]; }
  const IntFormula& right() const { return node_->children[1]; }

  friend bool operator==(const IntFormula& a, const IntFormula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<IntFormula> children;
  };
  explicit IntFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Sub-grammar of Parse: lowercase 0-ary atoms, F, ~, /\, \/, ->.
IntFormula ParseInt(std::string_view text);
std::string PrintInt(const IntFormula& f);
std::set<std::string> IntAtoms(const IntFormula& f);

// One formula per line; blank lines and lines starting with '#' skipped.
std::vector<IntFormula> LoadIntCorpus(const std::string& path);

// Decides provability in the contraction-free sequent calculus G4ip.
bool IntProve(const IntFormula& f);

enum class AtomMode : std::uint8_t { kGeneral, kElementary };

// -> to o->, /\ to &, \/ to |, ~ to o~, bottom to F. Atoms become general
// (uppercased) or stay elementary.
Formula TranslateInt(const IntFormula& f, AtomMode atoms = AtomMode::kGeneral);

// Every truth assignment to `atoms` as a universe-1 interpretation of
// 0-ary predicates, in binary counting order.
std::vector<Interpretation> ElementaryFamily(const std::set<std::string>& atoms);

enum class AuditClass : std::uint8_t { kConsistent, kSeparationWitness, kAnomaly, kInconclusive };
std::string_view AuditClassName(AuditClass c);

struct AuditOptions {
  std::uint32_t max_budget = 2;
  SolveLimits limits;
  // When non-empty, used for every row with general-atom translation;
  // otherwise each row gets ElementaryFamily of its atoms.
  std::vector<Interpretation> family;
};

struct AuditRow {
  std::string formula;
  bool provable = false;
  // nullopt when a limit was hit.
  std::optional<bool> winnable;
  // Smallest winning budget, or the largest budget tried.
  std::uint32_t budget = 0;
  AuditClass classification = AuditClass::kConsistent;
  std::string note;
};

// Classification: provable and uniformly winnable at some budget, or
// unprovable and not winnable within the budgets tried, is consistent;
// unprovable but winnable is a separation witness; provable but refuted at
// every budget tried is an anomaly; a limit hit is inconclusive.
AuditRow AuditFormula(const IntFormula& f, const AuditOptions& options = {});
std::vector<AuditRow> Audit(std::span<const IntFormula> corpus, const AuditOptions& options = {});

// Tab-separated: formula, provable, winnable, budget, classification.
std::string AuditReportText(std::span<const AuditRow> rows);

}  // namespace col

#endif  // COL_INTLOGIC_HPP
