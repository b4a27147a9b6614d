#include "doctest.h"

#include <map>
#include <utility>

#include "col/error.hpp"
#include "col/semantics.hpp"
#include "col/solver.hpp"
#include "col/strategies.hpp"
#include "support/testkit.hpp"

using namespace col;

namespace {

std::string FixturePath(const std::string& name) { return std::string(COL_FIXTURE_DIR) + "/" + name + ".json"; }

// Every machine move in component k repeats an environment move made
// earlier in the other component, and each one is used at most once.
bool MirrorsEarlierMoves(const Run& run) {
  std::map<std::pair<char, std::string>, int> pending;
  for (const auto& m : run) {
    const char side = m.label[0];
    const std::string rest = m.label.substr(2);
    if (m.by == Player::kEnvironment) {
      ++pending[{side == '0' ? '1' : '0', rest}];
    } else if (--pending[{side, rest}] < 0) {
      return false;
    }
  }
  return true;
}

Interpretation SmallFamily() {
  Interpretation in(3);
  const std::vector<std::uint32_t> father{1, 2, 0}, mother{2, 0, 1};
  std::vector<std::uint32_t> nainai(3);
  for (std::uint32_t x = 0; x < 3; ++x) nainai[x] = mother[father[x]];
  in.SetFunction("father", 1, father);
  in.SetFunction("mother", 1, mother);
  in.SetFunction("nainai", 1, nainai);
  return in;
}

}  // namespace

TEST_CASE("Fig 1 strategy") {
  const Game g = TreeGame(Fig1Tree());
  const auto st = Fig1Strategy(g);
  CHECK(VerifyStrategy(g, *st).holds);
  CHECK(st->Act(g, g.initial(), {}) == std::optional<std::string>("α"));

  const Run beta_first{{Player::kEnvironment, "β"}};
  StateId s = PlayRun(g, beta_first).final_state;
  const auto reply = st->Act(g, s, beta_first);
  REQUIRE(reply.has_value());
  CHECK(*reply == "α");
  s = g.Apply(s, Player::kMachine, *reply);
  CHECK(g.StopWinner(s) == Player::kMachine);

  const Run gamma{{Player::kMachine, "α"}, {Player::kEnvironment, "γ"}};
  CHECK(st->Act(g, PlayRun(g, gamma).final_state, gamma) == std::optional<std::string>("β"));

  int runs = 0;
  testkit::ForEachRun(g, *st, [&](const Run& run, StateId end) {
    INFO(RenderRun(run));
    CHECK(g.StopWinner(end) == Player::kMachine);
    ++runs;
  });
  CHECK(runs > 3);
}

TEST_CASE("scripted strategies reject other games") {
  const Game fig2 = TreeGame(LoadTreeFile(FixturePath("fig2")));
  CHECK_THROWS_AS(Fig1Strategy(fig2), ShapeMismatch);
  CHECK_THROWS_AS(Copycat(fig2), ShapeMismatch);
  CHECK_THROWS_AS(GrandmotherStrategy(fig2), ShapeMismatch);
  CHECK_THROWS_AS(GrandmotherStrategy(TreeGame(Fig1Tree())), ShapeMismatch);
  CHECK_THROWS_AS(StrategyByName("nope", fig2), Error);
  CHECK_THROWS_AS(StrategyByName("extracted", OpNeg(TreeGame(Fig1Tree()))), Error);
}

TEST_CASE("copycat on fixed games") {
  const Game fig1 = TreeGame(Fig1Tree());
  const Game em = OpParallel(Junction::kDisj, OpNeg(fig1), fig1);
  CHECK(VerifyStrategy(em, *Copycat(em)).holds);
  const Game top = TreeGame(GameTree{Player::kMachine, {}});
  const Game trivial = OpParallel(Junction::kDisj, OpNeg(top), top);
  CHECK(VerifyStrategy(trivial, *Copycat(trivial)).holds);
  const Game em1 = Build(Parse("~P \\/ P"), LoadInterpretationFile(FixturePath("fig1_interp")));
  CHECK(VerifyStrategy(em1, *Copycat(em1)).holds);
}

TEST_CASE("copycat on 50 generated static games") {
  const auto samples = testkit::StaticGames(404, 50, 3, 150);
  for (const auto& s : samples) {
    const Formula em = Formula::ParOr(Formula::Neg(s.formula), s.formula);
    INFO(Print(em));
    Game g;
    try {
      g = Build(em, s.interp, BuildOptions{s.budget, 200'000});
    } catch (const LimitExceeded&) {
      continue;
    }
    const auto cc = Copycat(g);
    CHECK(VerifyStrategy(g, *cc).holds);
    bool mirrored = true;
    try {
      testkit::ForEachRun(g, *cc, [&](const Run& run, StateId) { mirrored = mirrored && MirrorsEarlierMoves(run); },
                          200'000);
    } catch (const LimitExceeded&) {
    }
    CHECK(mirrored);
  }
}

TEST_CASE("grandmother reduction") {
  const Formula f = GrandmotherFormula();
  const Game g = Build(f, LoadInterpretationFile(FixturePath("family")));
  const auto st = GrandmotherStrategy(g);
  CHECK(VerifyStrategy(g, *st).holds);
  // An environment that never asks gets no answer, and loses.
  CHECK_FALSE(st->Act(g, g.initial(), {}).has_value());
  CHECK(g.StopWinner(g.initial()) == Player::kMachine);

  const Run asked{{Player::kEnvironment, "1.4"}};
  CHECK(st->Act(g, PlayRun(g, asked).final_state, asked) == std::optional<std::string>("0.0.4"));
}

TEST_CASE("grandmother against every environment on three individuals") {
  const Game g = Build(GrandmotherFormula(), SmallFamily());
  const auto st = GrandmotherStrategy(g);
  std::size_t runs = 0, lying = 0;
  testkit::ForEachRun(g, *st, [&](const Run& run, StateId end) {
    INFO(RenderRun(run));
    CHECK(g.StopWinner(end) == Player::kMachine);
    ++runs;
    for (const auto& m : run)
      if (m.by == Player::kEnvironment && m.label.rfind("0.", 0) == 0) ++lying;
  });
  CHECK(runs >= 30);
  CHECK(lying > 0);
}

TEST_CASE("grandmother fails when nainai is not the composite") {
  const Game g = Build(GrandmotherFormula(), LoadInterpretationFile(FixturePath("family_inconsistent")));
  const VerifyResult r = VerifyStrategy(g, *GrandmotherStrategy(g));
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample.has_value());
  CHECK(PlayRun(g, *r.counterexample).outcome == Player::kEnvironment);
}

TEST_CASE("strategy names") {
  const Game fig1 = TreeGame(Fig1Tree());
  for (const auto& name : StrategyNames()) {
    if (name == "copycat" || name == "grandmother") continue;
    CHECK(StrategyByName(name, fig1)->name() == name);
  }
}
