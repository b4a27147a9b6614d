#include "doctest.h"

#include <vector>

#include "json.hpp"

#include "col/error.hpp"
#include "col/intlogic.hpp"
#include "col/semantics.hpp"
#include "col/solver.hpp"
#include "col/strategies.hpp"
#include "support/testkit.hpp"

using namespace col;

namespace {

std::string FixturePath(const std::string& name) { return std::string(COL_FIXTURE_DIR) + "/" + name + ".json"; }

Game Leaf(Player w) { return TreeGame(GameTree{w, {}}); }

std::vector<Interpretation> LoadFamily(std::initializer_list<const char*> names) {
  std::vector<Interpretation> out;
  for (const char* n : names) out.push_back(LoadInterpretationFile(FixturePath(n)));
  return out;
}

bool Uniform(const std::string& text, const std::vector<Interpretation>& family, std::uint32_t budget = 1) {
  return SolveUniform(Parse(text), family, Budget{budget}).winnable;
}

}  // namespace

TEST_CASE("leaves and simple trees") {
  CHECK(Solve(Leaf(Player::kMachine)).winnable);
  CHECK_FALSE(Solve(Leaf(Player::kEnvironment)).winnable);
  const Game fig1 = TreeGame(Fig1Tree());
  const Verdict v = Solve(fig1);
  CHECK(v.winnable);
  CHECK(VerifyStrategy(fig1, *v.strategy).holds);
  CHECK(SolveOracle(fig1).winnable);
  const VerifyResult wait = VerifyStrategy(fig1, WaitStrategy());
  CHECK_FALSE(wait.holds);
  REQUIRE(wait.counterexample.has_value());
  CHECK(wait.counterexample->empty());
}

TEST_CASE("Fig 2 answers are the successor table") {
  const Interpretation succ = LoadInterpretationFile(FixturePath("succ"));
  const Game g = Build(Parse("chall x . chex y . y = succ(x)"), succ);
  const Verdict v = Solve(g);
  REQUIRE(v.winnable);
  CHECK_FALSE(v.strategy->Act(g, g.initial(), {}).has_value());
  for (std::uint32_t x = 0; x < 4; ++x) {
    const Run run{{Player::kEnvironment, std::to_string(x)}};
    const auto answer = v.strategy->Act(g, PlayRun(g, run).final_state, run);
    REQUIRE(answer.has_value());
    CHECK(*answer == std::to_string(succ.Function("succ", std::vector<std::uint32_t>{x})));
  }
}

TEST_CASE("solver agrees with the oracle and brute force on generated games") {
  const auto samples = testkit::RandomGames(2024, 260, 3, 64);
  int compared = 0, too_large = 0, brute_checked = 0;
  for (const auto& s : samples) {
    INFO(Print(s.formula));
    const Verdict v = Solve(s.game);
    Verdict o;
    try {
      o = SolveOracle(s.game);
    } catch (const LimitExceeded&) {
      ++too_large;
      continue;
    }
    ++compared;
    CHECK(v.winnable == o.winnable);
    if (const auto brute = testkit::BruteWinnable(s.game)) {
      CHECK(v.winnable == *brute);
      ++brute_checked;
    }
    if (v.winnable) {
      CHECK(VerifyStrategy(s.game, *v.strategy).holds);
    } else {
      REQUIRE(v.witness.has_value());
      CHECK(PlayRun(s.game, *v.witness).outcome == Player::kEnvironment);
    }
  }
  MESSAGE("compared " << compared << ", oracle limit hit " << too_large << ", brute-forced " << brute_checked);
  CHECK(compared >= 200);
  CHECK(brute_checked >= 100);
}

TEST_CASE("choice and parallel decomposition on generated games") {
  const auto samples = testkit::RandomGames(5, 120, 2, 200);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Game& a = samples[i].game;
    const Game& b = samples[(i + 7) % samples.size()].game;
    const bool wa = Solve(a).winnable, wb = Solve(b).winnable;
    INFO(Print(samples[i].formula));
    CHECK(Solve(OpChoice(Junction::kConj, a, b)).winnable == (wa && wb));
    CHECK(Solve(OpChoice(Junction::kDisj, a, b)).winnable == (wa || wb));
    CHECK(Solve(OpParallel(Junction::kConj, a, b)).winnable == (wa && wb));
    if (wa || wb) CHECK(Solve(OpParallel(Junction::kDisj, a, b)).winnable);
  }
}

TEST_CASE("excluded middle in uniform mode") {
  const auto elementary = LoadFamily({"p2_00", "p2_11"});
  std::vector<Interpretation> p_family;
  for (bool value : {true, false}) {
    Interpretation in(1);
    in.SetPredicate("p", 0, {value});
    p_family.push_back(in);
  }
  CHECK(Uniform("~p \\/ p", p_family));
  CHECK_FALSE(Uniform("~p | p", p_family));
  CHECK(Uniform("(~p /\\ ~p) \\/ p", p_family));
  const auto general = LoadFamily({"em_general_1", "em_general_2", "em_general_3"});
  CHECK(Uniform("~P \\/ P", general));
  CHECK_FALSE(Uniform("~P | P", general));
  CHECK_FALSE(Uniform("(~P /\\ ~P) \\/ P", general));
  CHECK(elementary.size() == 2);
}

TEST_CASE("quantifier table") {
  const Interpretation parity = LoadInterpretationFile(FixturePath("parity"));
  const std::vector<Interpretation> one{parity};
  CHECK(Uniform("chall x . even(x) | odd(x)", one));
  CHECK_FALSE(Uniform("all x . even(x) | odd(x)", one));
  CHECK(Uniform("all x . (even(x) | odd(x)) -> chall y . even(plus(x,y)) | odd(plus(x,y))", one));
  const auto tables = LoadFamily({"p2_00", "p2_01", "p2_10", "p2_11"});
  CHECK(Uniform("ex x . all y . p(x) \\/ ~p(y)", tables));
  CHECK_FALSE(Uniform("chex x . chall y . p(x) \\/ ~p(y)", tables));
  CHECK(Uniform("all y . ex x . p(x) \\/ ~p(y)", tables));
}

TEST_CASE("uniform mode relates to pointwise solving") {
  testkit::Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    const Formula f = testkit::RandomGameFormula(rng, 2);
    std::vector<Interpretation> family;
    for (int k = 0; k < 3; ++k) family.push_back(testkit::RandomInterpretation(rng, 2));
    const BuildOptions options{Budget{1}, 2000};
    std::vector<Game> games;
    try {
      for (const auto& in : family) games.push_back(Build(f, in, options));
    } catch (const Error&) {
      continue;
    }
    INFO(Print(f));
    const Verdict single = SolveUniform(f, std::span(family).first(1), Budget{1});
    CHECK(single.winnable == Solve(games[0]).winnable);
    const Verdict all = SolveUniform(f, family, Budget{1});
    if (all.winnable) {
      for (const auto& g : games) {
        CHECK(Solve(g).winnable);
        CHECK(VerifyStrategy(g, *all.strategy).holds);
      }
    }
  }
}

TEST_CASE("uniform strategy is one strategy for every member") {
  const auto family = LoadFamily({"blass_general_1", "blass_general_2", "blass_general_3", "blass_general_4"});
  const Formula blass = Parse("(A /\\ B) \\/ (C /\\ D) -> (A \\/ C) /\\ (B \\/ D)");
  const Verdict v = SolveUniform(blass, family, Budget{1});
  REQUIRE(v.winnable);
  CHECK(v.mode == SolveMode::kUniform);
  for (const auto& in : family) CHECK(VerifyStrategy(Build(blass, in), *v.strategy).holds);
}

TEST_CASE("uniform errors") {
  Interpretation a(2), b(3);
  a.SetPredicate("p", 0, {true});
  b.SetPredicate("p", 0, {true});
  const std::vector<Interpretation> mixed{a, b};
  CHECK_THROWS_AS(SolveUniform(Parse("p"), mixed, Budget{1}), Error);
  CHECK_THROWS_AS(SolveUniform(Parse("p"), {}, Budget{1}), Error);
}

TEST_CASE("state limit") {
  const Interpretation parity = LoadInterpretationFile(FixturePath("parity"));
  SolveLimits tight;
  tight.max_states = 10;
  const Game g = Build(Parse("chall x . chall y . even(plus(x,y)) | odd(plus(x,y))"), parity);
  CHECK_THROWS_AS(Solve(g, tight), LimitExceeded);
  CHECK_THROWS_AS(Build(Parse("chall x . chall y . even(plus(x,y)) | odd(plus(x,y))"), parity, BuildOptions{Budget{1}, 10}),
                  LimitExceeded);
}

TEST_CASE("strategy export and verdict JSON") {
  const Game fig1 = TreeGame(Fig1Tree());
  const Verdict v = Solve(fig1);
  const auto table = ExportStrategy(fig1, *v.strategy);
  REQUIRE_FALSE(table.empty());
  CHECK(table.front().state == RenderRun({}));
  CHECK(table.front().action == std::optional<std::string>("α"));
  const auto j = nlohmann::json::parse(VerdictToJsonText(v));
  CHECK(j["winnable"] == true);
  CHECK(j.contains("strategy"));
}

TEST_CASE("delay tolerance check") {
  CHECK_FALSE(CheckDelayTolerance(TreeGame(Fig1Tree()), 1).has_value());
  for (const auto& s : testkit::RandomGames(9, 30, 2, 200)) CHECK_FALSE(CheckDelayTolerance(s.game, 1).has_value());
}
