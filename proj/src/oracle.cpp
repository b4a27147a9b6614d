// Brute-force winnability: enumerate positional machine strategies (only on
// positions they can reach) and, for each, every run the environment can
// produce under the stepwise run model. Shares nothing with Solve().

#include <functional>

#include "col/error.hpp"
#include "col/solver.hpp"

namespace col {
namespace {

constexpr int kUnassigned = -2;
constexpr int kWait = -1;

class Oracle {
 public:
  Oracle(const Game& g, const SolveLimits& limits) : g_(g), limits_(limits) {
    choice_.assign(g.size(), kUnassigned);
    machine_edges_.resize(g.size());
    for (std::uint32_t s = 0; s < g.size(); ++s) {
      for (const auto& e : g.Edges(StateId{s}))
        if (e.mover == Player::kMachine) machine_edges_[s].push_back(e);
    }
  }

  bool Search() {
    const auto open = FirstUnassigned();
    if (!open) {
      if (++strategies_ > limits_.max_oracle_strategies) {
        throw LimitExceeded("oracle exceeded " + std::to_string(limits_.max_oracle_strategies) +
                            " strategies");
      }
      Run run;
      std::optional<Run> losing;
      const bool wins = AllRunsWin(g_.initial(), run, losing);
      if (!wins && !first_losing_run_) first_losing_run_ = losing;
      return wins;
    }
    const std::uint32_t s = *open;
    const int options = static_cast<int>(machine_edges_[s].size());
    for (int a = kWait; a < options; ++a) {
      choice_[s] = a;
      if (Search()) return true;
    }
    choice_[s] = kUnassigned;
    return false;
  }

  std::shared_ptr<PolicyStrategy> Policy() const {
    auto p = std::make_shared<PolicyStrategy>("oracle");
    for (std::uint32_t s = 0; s < g_.size(); ++s) {
      if (choice_[s] >= 0) p->Set(StateId{s}, g_.Label(machine_edges_[s][choice_[s]].label));
    }
    return p;
  }

  const std::optional<Run>& first_losing_run() const { return first_losing_run_; }
  std::size_t strategies() const { return strategies_; }

 private:
  // Depth-first over positions reachable under the partial strategy; the
  // first one without an assigned action.
  std::optional<std::uint32_t> FirstUnassigned() const {
    std::vector<bool> seen(g_.size(), false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::uint32_t s = stack.back();
      stack.pop_back();
      if (choice_[s] == kUnassigned) return s;
      std::vector<std::uint32_t> next;
      if (choice_[s] >= 0) next.push_back(machine_edges_[s][choice_[s]].to.index);
      for (const auto& e : g_.Edges(StateId{s}))
        if (e.mover == Player::kEnvironment) next.push_back(e.to.index);
      for (auto it = next.rbegin(); it != next.rend(); ++it) {
        if (!seen[*it]) {
          seen[*it] = true;
          stack.push_back(*it);
        }
      }
    }
    return std::nullopt;
  }

  // Every continuation the environment can force: stop (only ends the play
  // when the machine also waits), any environment move, and either order
  // when both act.
  bool AllRunsWin(StateId s, Run& run, std::optional<Run>& losing) const {
    const int a = choice_[s.index];
    if (a == kWait && g_.StopWinner(s) != Player::kMachine) {
      losing = run;
      return false;
    }
    if (a >= 0) {
      const auto& e = machine_edges_[s.index][a];
      run.push_back({Player::kMachine, g_.Label(e.label)});
      const bool ok = AllRunsWin(e.to, run, losing);
      run.pop_back();
      if (!ok) return false;
    }
    for (const auto& e : g_.Edges(s)) {
      if (e.mover != Player::kEnvironment) continue;
      run.push_back({Player::kEnvironment, g_.Label(e.label)});
      const bool ok = AllRunsWin(e.to, run, losing);
      run.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  const Game& g_;
  const SolveLimits& limits_;
  std::vector<int> choice_;
  std::vector<std::vector<Game::Edge>> machine_edges_;
  std::size_t strategies_ = 0;
  std::optional<Run> first_losing_run_;
};

}  // namespace

Verdict SolveOracle(const Game& game, const SolveLimits& limits) {
  if (game.size() > limits.max_oracle_states) {
    throw LimitExceeded("game has " + std::to_string(game.size()) +
                        " states, above the oracle limit of " +
                        std::to_string(limits.max_oracle_states));
  }
  Oracle oracle(game, limits);
  Verdict v;
  v.mode = SolveMode::kPerInterpretation;
  v.winnable = oracle.Search();
  v.states_explored = oracle.strategies();
  if (v.winnable) {
    v.strategy = oracle.Policy();
    v.strategy_table = ExportStrategy(game, *v.strategy);
  } else {
    v.witness = oracle.first_losing_run();
  }
  return v;
}

}  // namespace col
