#ifndef COL_SOLVER_HPP
#define COL_SOLVER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "col/formula.hpp"
#include "col/game.hpp"
#include "col/interpretation.hpp"
#include "col/semantics.hpp"

namespace col {

// A deterministic machine policy. Given the play so far it either waits
// (nullopt) or names a machine move legal at `state`.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual std::optional<std::string> Act(const Game& game, StateId state,
                                         const Run& history) const = 0;
  // Act() depends only on (state, ContextKey(...)). Lets verification
  // memoize; the default keys on the full history.
  virtual std::string ContextKey(const Game& game, StateId state,
                                 const Run& history) const;
};

// State-indexed policy; unmapped states wait.
class PolicyStrategy : public Strategy {
 public:
  explicit PolicyStrategy(std::string name = "extracted") : name_(std::move(name)) {}

  void Set(StateId s, std::string move) { moves_[s.index] = std::move(move); }
  const std::unordered_map<std::uint32_t, std::string>& moves() const { return moves_; }

  std::string name() const override { return name_; }
  std::optional<std::string> Act(const Game& game, StateId state,
                                 const Run& history) const override;
  std::string ContextKey(const Game&, StateId, const Run&) const override { return {}; }

 private:
  std::string name_;
  std::unordered_map<std::uint32_t, std::string> moves_;
};

// Never moves.
class WaitStrategy : public Strategy {
 public:
  std::string name() const override { return "wait"; }
  std::optional<std::string> Act(const Game&, StateId, const Run&) const override {
    return std::nullopt;
  }
  std::string ContextKey(const Game&, StateId, const Run&) const override { return {}; }
};

struct SolveLimits {
  std::size_t max_states = 1'000'000;
  // Oracle: reachable-state cutoff and cap on enumerated strategies.
  std::size_t max_oracle_states = 64;
  std::size_t max_oracle_strategies = 2'000'000;
};

enum class SolveMode : std::uint8_t { kPerInterpretation, kUniform };
std::string_view SolveModeName(SolveMode m);

struct StrategyEntry {
  std::string state;                  // canonical move-history string
  std::optional<std::string> action;  // nullopt = wait
};

struct Verdict {
  bool winnable = false;
  std::shared_ptr<const Strategy> strategy;
  std::size_t states_explored = 0;
  std::optional<Budget> budget;
  SolveMode mode = SolveMode::kPerInterpretation;
  std::optional<Run> witness;
  // Actions at the positions reachable under the strategy.
  std::vector<StrategyEntry> strategy_table;
};

// Backward induction:
//   W(s) = [every environment move n: W(s.n)] and
//          [stopWinner(s) = machine or some machine move m: W(s.m)].
// Extraction waits at machine-won positions and otherwise plays the least
// witnessing move. Throws LimitExceeded when the game is larger than
// limits.max_states.
Verdict Solve(const Game& game, const SolveLimits& limits = {});

// W evaluated at every state (not only those reachable from the start).
std::vector<bool> WinningRegion(const Game& game);

// Plays into the winning region whenever a machine move reaches it and the
// current stop winner is the environment; waits otherwise. Coincides with
// Solve's extraction on winnable games.
std::shared_ptr<PolicyStrategy> BestEffortStrategy(const Game& game);

// Independent brute force over positional machine strategies and every
// environment behavior of the run model. Tiny games only.
Verdict SolveOracle(const Game& game, const SolveLimits& limits = {});

// One strategy over observation histories that wins build(f, I) for every
// I in the family. Members must share universe and signature.
Verdict SolveUniform(const Formula& f, std::span<const Interpretation> family,
                     Budget budget, const SolveLimits& limits = {});
// Same search over prebuilt member games.
Verdict SolveUniformGames(std::span<const Game> members,
                          const SolveLimits& limits = {});

struct VerifyResult {
  bool holds = false;
  std::optional<Run> counterexample;
  std::size_t positions_checked = 0;
};

// Checks the strategy against every environment behavior: at each step the
// environment may stop or make any legal move, and when both act it decides
// who goes first. Throws IllegalMove if the strategy plays an illegal move
// and LimitExceeded past limits.max_states positions.
VerifyResult VerifyStrategy(const Game& game, const Strategy& strategy,
                            const SolveLimits& limits = {});

std::vector<StrategyEntry> ExportStrategy(const Game& game, const Strategy& strategy,
                                          std::size_t max_entries = 1'000'000);

// Delay-tolerance spot check: in sampled runs, swap adjacent moves by
// opposite players and compare outcomes. Returns a description of the first
// discrepancy, or nullopt.
std::optional<std::string> CheckDelayTolerance(const Game& game, std::uint64_t seed,
                                               std::size_t samples = 200);

// {winnable, mode, budget, statesExplored, strategy?, witness?}
std::string VerdictToJsonText(const Verdict& v, int indent = -1);

}  // namespace col

#endif  // COL_SOLVER_HPP
