// One line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "col/error.hpp"
#include "col/intlogic.hpp"
#include "col/semantics.hpp"
#include "col/solver.hpp"
#include "col/strategies.hpp"
#include "support/kripke.hpp"
#include "support/testkit.hpp"

using namespace col;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string FixturePath(const std::string& name) { return std::string(COL_FIXTURE_DIR) + "/" + name + ".json"; }

std::vector<Interpretation> Family(std::initializer_list<const char*> names) {
  std::vector<Interpretation> out;
  for (const char* n : names) out.push_back(LoadInterpretationFile(FixturePath(n)));
  return out;
}

// Compares boolean outcomes against expectations and names the mismatches.
struct Table {
  int total = 0, wrong = 0;
  std::string misses;
  void Expect(const std::string& name, bool got, bool want) {
    ++total;
    if (got == want) return;
    ++wrong;
    misses += " [" + name + " got " + (got ? "winnable" : "not winnable") + "]";
  }
  Outcome Done() const {
    return {wrong == 0, std::to_string(total - wrong) + "/" + std::to_string(total) + " outcomes exact" + misses};
  }
};

bool Uniform(const std::string& text, const std::vector<Interpretation>& family) {
  return SolveUniform(Parse(text), family, Budget{1}).winnable;
}

Outcome Fig1Suite() {
  const auto start = std::chrono::steady_clock::now();
  const Game g = TreeGame(LoadTreeFile(FixturePath("fig1")));
  const bool winnable = Solve(g).winnable;
  const VerifyResult r = VerifyStrategy(g, *Fig1Strategy(g));
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << "winnable=" << winnable << " fig1 strategy holds=" << r.holds << " positions=" << r.positions_checked
    << " time=" << ms << "ms";
  return {winnable && r.holds && ms <= 1000.0, d.str()};
}

Outcome Fig2Suite() {
  const Interpretation succ = LoadInterpretationFile(FixturePath("succ"));
  const Game g = Build(Parse("chall x . chex y . y = succ(x)"), succ);
  const Verdict v = Solve(g);
  if (!v.winnable) return {false, "successor game not winnable"};
  int exact = 0;
  for (std::uint32_t x = 0; x < succ.universe(); ++x) {
    const Run run{{Player::kEnvironment, std::to_string(x)}};
    const auto answer = v.strategy->Act(g, PlayRun(g, run).final_state, run);
    const std::uint32_t want = succ.Function("succ", std::vector<std::uint32_t>{x});
    exact += answer && *answer == std::to_string(want);
  }
  return {exact == static_cast<int>(succ.universe()),
          "answers equal to the table: " + std::to_string(exact) + "/" + std::to_string(succ.universe())};
}

Outcome OracleEquivalence() {
  const auto samples = testkit::RandomGames(2024, 260, 3, 64);
  int compared = 0, disagreements = 0, skipped = 0;
  for (const auto& s : samples) {
    try {
      const bool oracle = SolveOracle(s.game).winnable;
      ++compared;
      disagreements += Solve(s.game).winnable != oracle;
    } catch (const LimitExceeded&) {
      ++skipped;
    }
  }
  std::ostringstream d;
  d << "compared=" << compared << " disagreements=" << disagreements << " skipped (oracle limit)=" << skipped;
  return {compared >= 200 && disagreements == 0, d.str()};
}

Outcome Identities() {
  const auto samples = testkit::RandomGames(77, 120, 3, 400);
  int failures = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Game& g = samples[i].game;
    const Game& h = samples[(i + 1) % samples.size()].game;
    failures += !BehaviorallyEqual(OpNeg(OpNeg(g)), g);
    failures += !BehaviorallyEqual(OpNeg(OpChoice(Junction::kConj, g, h)),
                                   OpChoice(Junction::kDisj, OpNeg(g), OpNeg(h)));
    failures += !BehaviorallyEqual(OpNeg(OpChoice(Junction::kDisj, g, h)),
                                   OpChoice(Junction::kConj, OpNeg(g), OpNeg(h)));
  }
  const auto small = testkit::RandomGames(31, 60, 2, 60);
  int monotone_failures = 0;
  for (const auto& s : small) {
    bool previous = true;
    for (std::uint32_t k = 0; k <= 2; ++k) {
      const bool now = Solve(OpBrec(Junction::kConj, s.game, Budget{k})).winnable;
      monotone_failures += now && !previous;
      previous = now;
    }
  }
  std::ostringstream d;
  d << "identity games=" << samples.size() << " failures=" << failures << "; monotonicity games=" << small.size()
    << " failures=" << monotone_failures;
  return {failures == 0 && monotone_failures == 0, d.str()};
}

Outcome ExcludedMiddle() {
  std::vector<Interpretation> elementary;
  for (bool value : {true, false}) {
    Interpretation in(1);
    in.SetPredicate("p", 0, {value});
    elementary.push_back(in);
  }
  const auto general = Family({"em_general_1", "em_general_2", "em_general_3"});
  Table t;
  t.Expect("~p \\/ p", Uniform("~p \\/ p", elementary), true);
  t.Expect("~P \\/ P", Uniform("~P \\/ P", general), true);
  t.Expect("~p | p", Uniform("~p | p", elementary), false);
  t.Expect("~P | P", Uniform("~P | P", general), false);
  t.Expect("(~p /\\ ~p) \\/ p", Uniform("(~p /\\ ~p) \\/ p", elementary), true);
  t.Expect("(~P /\\ ~P) \\/ P", Uniform("(~P /\\ ~P) \\/ P", general), false);
  return t.Done();
}

Outcome Quantifiers() {
  const std::vector<Interpretation> parity = Family({"parity"});
  const auto tables = Family({"p2_00", "p2_01", "p2_10", "p2_11"});
  Table t;
  t.Expect("chall even|odd", Uniform("chall x . even(x) | odd(x)", parity), true);
  t.Expect("all even|odd", Uniform("all x . even(x) | odd(x)", parity), false);
  t.Expect("parity implication",
           Uniform("all x . (even(x) | odd(x)) -> chall y . even(plus(x,y)) | odd(plus(x,y))", parity), true);
  t.Expect("ex all", Uniform("ex x . all y . p(x) \\/ ~p(y)", tables), true);
  t.Expect("chex chall", Uniform("chex x . chall y . p(x) \\/ ~p(y)", tables), false);
  t.Expect("all ex", Uniform("all y . ex x . p(x) \\/ ~p(y)", tables), true);
  return t.Done();
}

Outcome CopycatSuite() {
  const auto samples = testkit::StaticGames(404, 50, 3, 150);
  int verified = 0, failures = 0;
  for (const auto& s : samples) {
    const Game g = Build(Formula::ParOr(Formula::Neg(s.formula), s.formula), s.interp, BuildOptions{s.budget, 200'000});
    if (VerifyStrategy(g, *Copycat(g)).holds) ++verified;
    else ++failures;
  }
  std::ostringstream d;
  d << "~A \\/ A for " << samples.size() << " generated recurrence-free A over single-mover trees: verified="
    << verified << " failures=" << failures;
  return {verified >= 50 && failures == 0, d.str()};
}

Outcome Blass() {
  const std::string text = "(a /\\ b) \\/ (c /\\ d) -> (a \\/ c) /\\ (b \\/ d)";
  const auto elementary = ElementaryFamily({"a", "b", "c", "d"});
  const bool e = SolveUniform(Parse(text), elementary, Budget{1}).winnable;
  const auto general = Family({"blass_general_1", "blass_general_2", "blass_general_3", "blass_general_4"});
  const bool g = SolveUniform(Parse("(A /\\ B) \\/ (C /\\ D) -> (A \\/ C) /\\ (B \\/ D)"), general, Budget{1}).winnable;
  std::ostringstream d;
  d << "elementary family of " << elementary.size() << ": winnable=" << e << "; general family of " << general.size()
    << ": winnable=" << g;
  return {e && g, d.str()};
}

Outcome Grandmother() {
  const Game g = Build(GrandmotherFormula(), LoadInterpretationFile(FixturePath("family")));
  const VerifyResult r = VerifyStrategy(g, *GrandmotherStrategy(g));
  return {r.holds, "holds=" + std::to_string(r.holds) + " positions=" + std::to_string(r.positions_checked)};
}

Outcome Intuitionistic() {
  testkit::Rng rng(1234);
  int disagreements = 0;
  for (int i = 0; i < 600; ++i) {
    const IntFormula f = kripke::RandomInt(rng, 1 + static_cast<int>(testkit::Pick(rng, 4)));
    disagreements += IntProve(f) == kripke::HasSmallCountermodel(f);
  }
  const auto rows = Audit(LoadIntCorpus(std::string(COL_TEST_DATA) + "/int_corpus.txt"));
  int anomalies = 0;
  for (const auto& r : rows) anomalies += r.classification == AuditClass::kAnomaly;
  const bool peirce = IntProve(ParseInt("((a -> b) -> a) -> a"));
  const bool em = IntProve(ParseInt("a \\/ ~a"));
  const IntFormula separating = ParseInt(
      "(~p -> a \\/ b) /\\ (~q -> c \\/ d) /\\ ~(p /\\ q) -> (~p -> a) \\/ (~p -> b) \\/ (~q -> c) \\/ (~q -> d)");
  const bool separating_provable = IntProve(separating);
  const AuditRow row = AuditFormula(separating);
  const bool row_ok = row.classification == AuditClass::kSeparationWitness ||
                      row.classification == AuditClass::kInconclusive;
  std::ostringstream d;
  d << "kripke formulas=600 disagreements=" << disagreements << "; corpus rows=" << rows.size()
    << " anomalies=" << anomalies << "; peirce provable=" << peirce << " excluded middle provable=" << em
    << "; separating formula provable=" << separating_provable << " audit=" << AuditClassName(row.classification)
    << " at budget " << row.budget;
  if (!row.note.empty()) d << " (" << row.note << ")";
  return {disagreements == 0 && rows.size() == 30 && anomalies == 0 && !peirce && !em && !separating_provable && row_ok,
          d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Fig 1 suite", Fig1Suite},
      {"Fig 2 suite", Fig2Suite},
      {"oracle equivalence", OracleEquivalence},
      {"algebraic identities", Identities},
      {"excluded middle table", ExcludedMiddle},
      {"quantifier table", Quantifiers},
      {"copycat", CopycatSuite},
      {"Blass principle", Blass},
      {"grandmother reduction", Grandmother},
      {"intuitionistic audit", Intuitionistic},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL") << ": "
              << o.detail << std::endl;
  }
  return failures;
}
