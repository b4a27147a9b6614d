// Winnability with the interpretation hidden from the machine.
//
// Members whose games have identical move structure are merged first (their
// stop winners are conjoined); the remaining groups are searched jointly.
// A joint position holds one state per group, or kDead for groups the
// observed history has ruled out. The machine may only play moves legal in
// every live group; an environment move legal in any live group kills the
// groups where it is illegal.

#include <algorithm>
#include <deque>

#include "col/error.hpp"
#include "col/solver.hpp"

namespace col {
namespace {

constexpr std::uint32_t kDead = 0xffffffffu;
using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

bool SameLayout(const Game& a, const Game& b) {
  if (a.size() != b.size()) return false;
  for (std::uint32_t s = 0; s < a.size(); ++s) {
    const auto ea = a.Edges(StateId{s});
    const auto eb = b.Edges(StateId{s});
    if (ea.size() != eb.size()) return false;
    for (std::size_t i = 0; i < ea.size(); ++i) {
      if (ea[i].mover != eb[i].mover || ea[i].to != eb[i].to ||
          a.Label(ea[i].label) != b.Label(eb[i].label))
        return false;
    }
  }
  return true;
}

// Copy of g whose stop winner is the machine only where every game in
// `group` has the machine winning.
Game Conjoin(std::span<const Game* const> group) {
  const Game& g = *group.front();
  GameBuilder b;
  std::vector<std::uint32_t> labels(g.label_count());
  for (std::uint32_t i = 0; i < labels.size(); ++i) labels[i] = b.Intern(g.Label(i));
  for (std::uint32_t s = 0; s < g.size(); ++s) {
    bool all = true;
    for (const Game* m : group) all = all && m->StopWinner(StateId{s}) == Player::kMachine;
    b.AddState(all ? Player::kMachine : Player::kEnvironment);
  }
  for (std::uint32_t s = 0; s < g.size(); ++s)
    for (const auto& e : g.Edges(StateId{s})) b.AddEdge(StateId{s}, e.mover, labels[e.label], e.to);
  return std::move(b).Finish();
}

std::string KeyText(const Key& k) {
  std::string out;
  for (auto x : k) {
    out += x == kDead ? std::string("x") : std::to_string(x);
    out += ',';
  }
  return out;
}

class JointSearch {
 public:
  JointSearch(std::shared_ptr<const std::vector<Game>> groups, std::size_t max_positions)
      : groups_(std::move(groups)), cap_(max_positions) {}

  const std::vector<Game>& groups() const { return *groups_; }

  Key Initial() const { return Key(groups_->size(), 0); }

  bool StopWon(const Key& k) const {
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] != kDead && (*groups_)[i].StopWinner(StateId{k[i]}) != Player::kMachine) return false;
    return true;
  }

  std::size_t FirstLive(const Key& k) const {
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] != kDead) return i;
    return k.size();
  }

  // Machine moves legal in every live group, in label order.
  std::vector<std::pair<std::string, Key>> MachineMoves(const Key& k) const {
    std::vector<std::pair<std::string, Key>> out;
    const std::size_t lead = FirstLive(k);
    const Game& g = (*groups_)[lead];
    for (const auto& e : g.Edges(StateId{k[lead]})) {
      if (e.mover != Player::kMachine) continue;
      const std::string& label = g.Label(e.label);
      Key next = k;
      bool legal = true;
      for (std::size_t i = 0; i < k.size() && legal; ++i) {
        if (k[i] == kDead) continue;
        auto t = (*groups_)[i].Successor(StateId{k[i]}, Player::kMachine, label);
        if (!t) legal = false;
        else next[i] = t->index;
      }
      if (legal) out.emplace_back(label, std::move(next));
    }
    return out;
  }

  // Environment moves legal in some live group, in label order.
  std::vector<std::pair<std::string, Key>> EnvironmentMoves(const Key& k) const {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == kDead) continue;
      const Game& g = (*groups_)[i];
      for (const auto& e : g.Edges(StateId{k[i]}))
        if (e.mover == Player::kEnvironment) labels.push_back(g.Label(e.label));
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::vector<std::pair<std::string, Key>> out;
    for (auto& label : labels) {
      Key next = k;
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] == kDead) continue;
        auto t = (*groups_)[i].Successor(StateId{k[i]}, Player::kEnvironment, label);
        next[i] = t ? t->index : kDead;
      }
      out.emplace_back(std::move(label), std::move(next));
    }
    return out;
  }

  bool Won(const Key& k) {
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    if (memo_.size() >= cap_) {
      throw LimitExceeded("uniform search exceeded " + std::to_string(cap_) + " joint positions");
    }
    bool ok = true;
    for (const auto& [label, next] : EnvironmentMoves(k)) {
      if (!Won(next)) {
        ok = false;
        break;
      }
    }
    if (ok && !StopWon(k)) ok = Witness(k).has_value();
    memo_.emplace(k, ok);
    return ok;
  }

  std::optional<std::pair<std::string, Key>> Witness(const Key& k) {
    for (auto& mv : MachineMoves(k))
      if (Won(mv.second)) return mv;
    return std::nullopt;
  }

  std::size_t explored() const { return memo_.size(); }

 private:
  std::shared_ptr<const std::vector<Game>> groups_;
  std::size_t cap_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

// History-driven strategy: replays the observed moves in every group and
// looks the joint position up.
class UniformStrategy : public Strategy {
 public:
  explicit UniformStrategy(std::shared_ptr<const std::vector<Game>> groups)
      : groups_(std::move(groups)) {}

  void Set(const Key& k, std::string move) { moves_[k] = std::move(move); }

  std::string name() const override { return "uniform"; }

  std::optional<std::string> Act(const Game&, StateId, const Run& history) const override {
    auto it = moves_.find(Locate(history));
    if (it == moves_.end()) return std::nullopt;
    return it->second;
  }

  std::string ContextKey(const Game&, StateId, const Run& history) const override {
    return KeyText(Locate(history));
  }

 private:
  Key Locate(const Run& history) const {
    Key k(groups_->size(), 0);
    for (const auto& m : history) {
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] == kDead) continue;
        auto t = (*groups_)[i].Successor(StateId{k[i]}, m.by, m.label);
        k[i] = t ? t->index : kDead;
      }
    }
    return k;
  }

  std::shared_ptr<const std::vector<Game>> groups_;
  std::unordered_map<Key, std::string, KeyHash> moves_;
};

}  // namespace

Verdict SolveUniformGames(std::span<const Game> members, const SolveLimits& limits) {
  if (members.empty()) throw BuildError("empty interpretation family");
  std::vector<std::vector<const Game*>> grouped;
  for (const Game& m : members) {
    bool placed = false;
    for (auto& g : grouped) {
      if (SameLayout(*g.front(), m)) {
        g.push_back(&m);
        placed = true;
        break;
      }
    }
    if (!placed) grouped.push_back({&m});
  }
  auto groups = std::make_shared<std::vector<Game>>();
  for (const auto& g : grouped) groups->push_back(Conjoin(g));

  if (groups->size() == 1) {
    // Identical structure everywhere: nothing the machine observes depends
    // on the member, and state ids coincide across members.
    Verdict v = Solve(groups->front(), limits);
    v.mode = SolveMode::kUniform;
    return v;
  }

  JointSearch search(groups, limits.max_states);
  Verdict v;
  v.mode = SolveMode::kUniform;
  const Key root = search.Initial();
  v.winnable = search.Won(root);
  if (v.winnable) {
    auto strategy = std::make_shared<UniformStrategy>(groups);
    std::unordered_map<Key, bool, KeyHash> seen{{root, true}};
    std::deque<std::pair<Key, Run>> queue{{root, {}}};
    while (!queue.empty()) {
      auto [k, hist] = std::move(queue.front());
      queue.pop_front();
      std::optional<std::string> action;
      auto push = [&](Player by, const std::string& label, Key next) {
        if (!seen.emplace(next, true).second) return;
        Run h = hist;
        h.push_back({by, label});
        queue.emplace_back(std::move(next), std::move(h));
      };
      if (!search.StopWon(k)) {
        auto mv = search.Witness(k);
        strategy->Set(k, mv->first);
        action = mv->first;
        push(Player::kMachine, mv->first, mv->second);
      }
      for (auto& [label, next] : search.EnvironmentMoves(k)) push(Player::kEnvironment, label, next);
      if (v.strategy_table.size() < 100'000) v.strategy_table.push_back({RenderRun(hist), action});
    }
    v.strategy = strategy;
  } else {
    Run run;
    Key k = root;
    for (;;) {
      std::optional<std::pair<std::string, Key>> next;
      Player by = Player::kEnvironment;
      for (auto& mv : search.EnvironmentMoves(k)) {
        if (!search.Won(mv.second)) {
          next = std::move(mv);
          break;
        }
      }
      if (!next) {
        auto moves = search.MachineMoves(k);
        if (!moves.empty()) {
          next = std::move(moves.front());
          by = Player::kMachine;
        }
      }
      if (!next) break;
      run.push_back({by, next->first});
      k = std::move(next->second);
    }
    v.witness = std::move(run);
  }
  v.states_explored = search.explored();
  return v;
}

Verdict SolveUniform(const Formula& f, std::span<const Interpretation> family, Budget budget,
                     const SolveLimits& limits) {
  if (family.empty()) throw BuildError("empty interpretation family");
  const auto signature = family.front().Signature();
  for (const auto& member : family) {
    if (member.universe() != family.front().universe() || member.Signature() != signature)
      throw BuildError("inconsistent family signatures");
  }
  BuildOptions options{budget, limits.max_states};
  std::vector<Game> games;
  games.reserve(family.size());
  for (const auto& member : family) games.push_back(Build(f, member, options));
  Verdict v = SolveUniformGames(games, limits);
  v.budget = budget;
  return v;
}

}  // namespace col
