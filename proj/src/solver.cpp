#include "col/solver.hpp"

#include <deque>
#include <random>
#include <unordered_set>

#include "json.hpp"

#include "col/error.hpp"

namespace col {

std::string_view SolveModeName(SolveMode m) {
  return m == SolveMode::kUniform ? "uniform" : "per-interpretation";
}

std::string Strategy::ContextKey(const Game&, StateId, const Run& history) const {
  return RenderRun(history);
}

std::optional<std::string> PolicyStrategy::Act(const Game&, StateId state,
                                                const Run&) const {
  auto it = moves_.find(state.index);
  if (it == moves_.end()) return std::nullopt;
  return it->second;
}

namespace {

class BackwardInduction {
 public:
  BackwardInduction(const Game& g) : g_(g), memo_(g.size(), kUnknown) {}

  bool Won(StateId s) {
    auto& m = memo_[s.index];
    if (m != kUnknown) return m == kTrue;
    ++explored_;
    bool ok = true;
    for (const auto& e : g_.Edges(s)) {
      if (e.mover == Player::kEnvironment && !Won(e.to)) {
        ok = false;
        break;
      }
    }
    if (ok && g_.StopWinner(s) != Player::kMachine) ok = WitnessMove(s).has_value();
    memo_[s.index] = ok ? kTrue : kFalse;
    return ok;
  }

  // Least machine move (edges are label-sorted) into a won position.
  std::optional<Game::Edge> WitnessMove(StateId s) {
    for (const auto& e : g_.Edges(s)) {
      if (e.mover == Player::kMachine && Won(e.to)) return e;
    }
    return std::nullopt;
  }

  std::size_t explored() const { return explored_; }

 private:
  static constexpr std::int8_t kUnknown = -1, kFalse = 0, kTrue = 1;
  const Game& g_;
  std::vector<std::int8_t> memo_;
  std::size_t explored_ = 0;
};

constexpr std::size_t kMaxTableEntries = 100'000;

}  // namespace

Verdict Solve(const Game& game, const SolveLimits& limits) {
  if (game.size() > limits.max_states) {
    throw LimitExceeded("game has " + std::to_string(game.size()) +
                        " states, above the limit of " + std::to_string(limits.max_states));
  }
  BackwardInduction w(game);
  Verdict v;
  v.mode = SolveMode::kPerInterpretation;
  v.winnable = w.Won(game.initial());
  if (v.winnable) {
    auto policy = std::make_shared<PolicyStrategy>("extracted");
    // Walk the positions reachable under the extracted policy.
    std::vector<bool> seen(game.size(), false);
    std::vector<StateId> stack{game.initial()};
    seen[0] = true;
    while (!stack.empty()) {
      const StateId s = stack.back();
      stack.pop_back();
      auto push = [&](StateId t) {
        if (!seen[t.index]) {
          seen[t.index] = true;
          stack.push_back(t);
        }
      };
      if (game.StopWinner(s) != Player::kMachine) {
        const auto e = w.WitnessMove(s);
        policy->Set(s, game.Label(e->label));
        push(e->to);
      }
      for (const auto& e : game.Edges(s))
        if (e.mover == Player::kEnvironment) push(e.to);
    }
    v.strategy = policy;
    v.strategy_table = ExportStrategy(game, *policy, kMaxTableEntries);
  } else {
    // Principal losing line: the environment enters a lost position when it
    // can; otherwise the machine's least move is followed.
    Run run;
    StateId s = game.initial();
    for (;;) {
      std::optional<Game::Edge> next;
      for (const auto& e : game.Edges(s)) {
        if (e.mover == Player::kEnvironment && !w.Won(e.to)) {
          next = e;
          break;
        }
      }
      if (!next) {
        for (const auto& e : game.Edges(s)) {
          if (e.mover == Player::kMachine) {
            next = e;
            break;
          }
        }
      }
      if (!next) break;
      run.push_back({next->mover, game.Label(next->label)});
      s = next->to;
    }
    v.witness = std::move(run);
  }
  v.states_explored = w.explored();
  return v;
}

std::vector<bool> WinningRegion(const Game& game) {
  BackwardInduction w(game);
  std::vector<bool> out(game.size());
  for (std::uint32_t s = 0; s < game.size(); ++s) out[s] = w.Won(StateId{s});
  return out;
}

std::shared_ptr<PolicyStrategy> BestEffortStrategy(const Game& game) {
  BackwardInduction w(game);
  auto policy = std::make_shared<PolicyStrategy>("best-effort");
  for (std::uint32_t s = 0; s < game.size(); ++s) {
    const StateId id{s};
    if (game.StopWinner(id) == Player::kMachine) continue;
    if (const auto e = w.WitnessMove(id)) policy->Set(id, game.Label(e->label));
  }
  return policy;
}

VerifyResult VerifyStrategy(const Game& game, const Strategy& strategy,
                            const SolveLimits& limits) {
  struct Verifier {
    const Game& g;
    const Strategy& st;
    std::size_t cap;
    std::unordered_map<std::string, bool> memo;
    Run history;
    std::optional<Run> counter;
    std::size_t checked = 0;

    bool Good(StateId s) {
      const std::string key = std::to_string(s.index) + "|" + st.ContextKey(g, s, history);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      if (++checked > cap) {
        throw LimitExceeded("strategy verification exceeded " + std::to_string(cap) + " positions");
      }
      const auto act = st.Act(g, s, history);
      std::optional<StateId> machine_next;
      if (act) {
        machine_next = g.Successor(s, Player::kMachine, *act);
        if (!machine_next) {
          throw IllegalMove("strategy '" + st.name() + "' plays illegal move " + *act +
                            " after [" + RenderRun(history) + "]");
        }
      }
      bool ok = true;
      if (!act && g.StopWinner(s) != Player::kMachine) {
        counter = history;  // both parties stop here
        ok = false;
      }
      if (ok && act) {
        history.push_back({Player::kMachine, *act});
        ok = Good(*machine_next);
        if (ok) history.pop_back();
      }
      if (ok) {
        for (const auto& e : g.Edges(s)) {
          if (e.mover != Player::kEnvironment) continue;
          history.push_back({Player::kEnvironment, g.Label(e.label)});
          ok = Good(e.to);
          if (!ok) break;
          history.pop_back();
        }
      }
      memo.emplace(key, ok);
      return ok;
    }
  };
  Verifier v{game, strategy, limits.max_states, {}, {}, {}, 0};
  VerifyResult r;
  r.holds = v.Good(game.initial());
  r.counterexample = std::move(v.counter);
  r.positions_checked = v.checked;
  return r;
}

std::vector<StrategyEntry> ExportStrategy(const Game& game, const Strategy& strategy,
                                          std::size_t max_entries) {
  std::vector<StrategyEntry> out;
  std::unordered_set<std::string> seen;
  std::deque<std::pair<StateId, Run>> queue{{game.initial(), {}}};
  seen.insert("0|" + strategy.ContextKey(game, game.initial(), {}));
  while (!queue.empty() && out.size() < max_entries) {
    auto [s, hist] = std::move(queue.front());
    queue.pop_front();
    const auto act = strategy.Act(game, s, hist);
    out.push_back({RenderRun(hist), act});
    auto visit = [&](Player p, const std::string& label) {
      const auto t = game.Successor(s, p, label);
      if (!t) throw IllegalMove("strategy '" + strategy.name() + "' plays illegal move " + label);
      Run next = hist;
      next.push_back({p, label});
      if (seen.insert(std::to_string(t->index) + "|" + strategy.ContextKey(game, *t, next)).second)
        queue.emplace_back(*t, std::move(next));
    };
    if (act) visit(Player::kMachine, *act);
    for (const auto& e : game.Edges(s))
      if (e.mover == Player::kEnvironment) visit(Player::kEnvironment, game.Label(e.label));
  }
  return out;
}

std::optional<std::string> CheckDelayTolerance(const Game& game, std::uint64_t seed,
                                               std::size_t samples) {
  std::mt19937_64 rng(seed);
  auto play = [&](const Run& run) -> std::optional<Player> {
    StateId s = game.initial();
    for (const auto& m : run) {
      auto next = game.Successor(s, m.by, m.label);
      if (!next) return std::nullopt;
      s = *next;
    }
    return game.StopWinner(s);
  };
  for (std::size_t k = 0; k < samples; ++k) {
    Run run;
    StateId s = game.initial();
    for (;;) {
      const auto edges = game.Edges(s);
      if (edges.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, edges.size());
      const std::size_t i = pick(rng);
      if (i == edges.size()) break;  // both stop
      run.push_back({edges[i].mover, game.Label(edges[i].label)});
      s = edges[i].to;
    }
    const Player outcome = game.StopWinner(s);
    for (std::size_t i = 0; i + 1 < run.size(); ++i) {
      if (run[i].by == run[i + 1].by) continue;
      Run swapped = run;
      std::swap(swapped[i], swapped[i + 1]);
      const auto other = play(swapped);
      if (other && *other != outcome) {
        return "outcome of [" + RenderRun(run) + "] changes when steps " + std::to_string(i + 1) +
               " and " + std::to_string(i + 2) + " are swapped";
      }
    }
  }
  return std::nullopt;
}

std::string VerdictToJsonText(const Verdict& v, int indent) {
  nlohmann::json j;
  j["winnable"] = v.winnable;
  j["mode"] = std::string(SolveModeName(v.mode));
  j["budget"] = v.budget ? nlohmann::json(v.budget->max_splits) : nlohmann::json(nullptr);
  j["statesExplored"] = v.states_explored;
  if (v.winnable) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& e : v.strategy_table)
      table.push_back({{"state", e.state}, {"action", e.action ? nlohmann::json(*e.action) : nlohmann::json(nullptr)}});
    j["strategy"] = std::move(table);
  }
  if (v.witness) {
    nlohmann::json run = nlohmann::json::array();
    for (const auto& m : *v.witness)
      run.push_back({{"by", std::string(PlayerCode(m.by))}, {"label", m.label}});
    j["witness"] = std::move(run);
  }
  return j.dump(indent);
}

}  // namespace col
