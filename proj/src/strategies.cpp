#include "col/strategies.hpp"

#include <map>
#include <set>

#include "col/error.hpp"

namespace col {
namespace {

const std::string kAlpha = "α";
const std::string kBeta = "β";
const std::string kGamma = "γ";

GameTree Leaf(Player w) { return GameTree{w, {}}; }

GameTree Node(Player w, std::vector<GameTree::Edge> moves) { return GameTree{w, std::move(moves)}; }

constexpr Player T = Player::kMachine;
constexpr Player F = Player::kEnvironment;

std::optional<std::string> LegalOrNothing(const Game& game, StateId state, std::string label) {
  if (!game.Successor(state, Player::kMachine, label)) return std::nullopt;
  return label;
}

class Fig1Script : public Strategy {
 public:
  std::string name() const override { return "fig1"; }

  std::optional<std::string> Act(const Game& game, StateId state, const Run& history) const override {
    bool played_alpha = false, played_beta = false, saw_gamma = false;
    for (const auto& m : history) {
      if (m.by == Player::kMachine && m.label == kAlpha) played_alpha = true;
      if (m.by == Player::kMachine && m.label == kBeta) played_beta = true;
      if (m.by == Player::kEnvironment && m.label == kGamma) saw_gamma = true;
    }
    if (!played_alpha) return LegalOrNothing(game, state, kAlpha);
    if (saw_gamma && !played_beta) return LegalOrNothing(game, state, kBeta);
    return std::nullopt;
  }
};

// Component histories of a parallel play, prefixes stripped.
struct Split {
  std::vector<Move> left, right;
};

Split SplitHistory(const Run& history) {
  Split s;
  for (const auto& m : history) {
    if (m.label.starts_with("0.")) s.left.push_back({m.by, m.label.substr(2)});
    else if (m.label.starts_with("1.")) s.right.push_back({m.by, m.label.substr(2)});
  }
  return s;
}

std::vector<std::string> Labels(const std::vector<Move>& moves, Player by) {
  std::vector<std::string> out;
  for (const auto& m : moves)
    if (m.by == by) out.push_back(m.label);
  return out;
}

class CopycatStrategy : public Strategy {
 public:
  std::string name() const override { return "copycat"; }

  // The machine's moves in each component replay, in order, the
  // environment's moves in the other one. The next unreplayed move is
  // mirrored, left-to-right first.
  std::optional<std::string> Act(const Game& game, StateId state, const Run& history) const override {
    const Split s = SplitHistory(history);
    const auto env_left = Labels(s.left, Player::kEnvironment);
    const auto env_right = Labels(s.right, Player::kEnvironment);
    const auto copied_right = Labels(s.right, Player::kMachine).size();
    const auto copied_left = Labels(s.left, Player::kMachine).size();
    if (copied_right < env_left.size()) {
      if (auto m = LegalOrNothing(game, state, "1." + env_left[copied_right])) return m;
    }
    if (copied_left < env_right.size()) {
      if (auto m = LegalOrNothing(game, state, "0." + env_right[copied_left])) return m;
    }
    return std::nullopt;
  }

  std::string ContextKey(const Game&, StateId, const Run& history) const override {
    const Split s = SplitHistory(history);
    std::string key;
    for (const auto& m : s.left) key += std::string(PlayerCode(m.by)) + m.label + ",";
    key += "|";
    for (const auto& m : s.right) key += std::string(PlayerCode(m.by)) + m.label + ",";
    return key;
  }
};

// Moves of one component at a product state, prefix stripped.
std::map<std::pair<std::string, Player>, StateId> Projection(const Game& g, StateId s, std::string_view prefix) {
  std::map<std::pair<std::string, Player>, StateId> out;
  for (const auto& e : g.Edges(s)) {
    const std::string& label = g.Label(e.label);
    if (label.starts_with(prefix)) out.emplace(std::make_pair(label.substr(prefix.size()), e.mover), e.to);
  }
  return out;
}

// Walks the left component (right held at its start) against the right
// component (left held at its start).
void CheckMirror(const Game& g, StateId left, StateId right, std::set<std::pair<std::uint32_t, std::uint32_t>>& seen,
                 const std::string& path) {
  if (!seen.insert({left.index, right.index}).second) return;
  const auto l = Projection(g, left, "0.");
  const auto r = Projection(g, right, "1.");
  if (l.size() != r.size()) {
    throw ShapeMismatch("copycat: components differ after [" + path + "]");
  }
  for (const auto& [move, to] : l) {
    const auto& [label, mover] = move;
    auto it = r.find({label, Opposite(mover)});
    if (it == r.end()) {
      throw ShapeMismatch("copycat: move " + label + " is not mirrored after [" + path + "]");
    }
    CheckMirror(g, to, it->second, seen, path.empty() ? label : path + "," + label);
  }
}

class GrandmotherScript : public Strategy {
 public:
  std::string name() const override { return "grandmother"; }

  std::optional<std::string> Act(const Game& game, StateId state, const Run& history) const override {
    std::optional<std::string> question, asked_father, father_answer, asked_mother, mother_answer, answered;
    for (const auto& m : history) {
      const bool env = m.by == Player::kEnvironment;
      if (m.label.starts_with("1.")) (env ? question : answered) = m.label.substr(2);
      else if (m.label.starts_with("0.0.")) (env ? father_answer : asked_father) = m.label.substr(4);
      else if (m.label.starts_with("0.1.")) (env ? mother_answer : asked_mother) = m.label.substr(4);
    }
    if (!question) return std::nullopt;
    if (!asked_father) return LegalOrNothing(game, state, "0.0." + *question);
    if (!father_answer) return std::nullopt;
    if (!asked_mother) return LegalOrNothing(game, state, "0.1." + *father_answer);
    if (!mother_answer) return std::nullopt;
    if (!answered) return LegalOrNothing(game, state, "1." + *mother_answer);
    return std::nullopt;
  }
};

}  // namespace

GameTree Fig1Tree() {
  return Node(F, {
      {T, kAlpha, Node(T, {
          {F, kBeta, Leaf(T)},
          {F, kGamma, Node(F, {{T, kBeta, Leaf(T)}, {T, kGamma, Leaf(F)}})},
      })},
      {F, kBeta, Node(T, {{T, kAlpha, Leaf(T)}})},
      {F, kGamma, Node(F, {
          {T, kAlpha, Node(F, {{T, kBeta, Leaf(T)}, {T, kGamma, Leaf(F)}})},
          {T, kBeta, Node(T, {{T, kAlpha, Leaf(T)}})},
          {T, kGamma, Node(F, {{T, kAlpha, Leaf(F)}})},
      })},
  });
}

std::shared_ptr<Strategy> Fig1Strategy(const Game& game) {
  if (auto diff = FindBehavioralDifference(game, TreeGame(Fig1Tree()))) {
    throw ShapeMismatch("fig1 strategy does not apply: " + *diff);
  }
  return std::make_shared<Fig1Script>();
}

std::shared_ptr<Strategy> Copycat(const Game& game) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& e : game.Edges(game.initial())) {
    const std::string& label = game.Label(e.label);
    if (!label.starts_with("0.") && !label.starts_with("1.")) {
      throw ShapeMismatch("copycat: move " + label + " is not a parallel component move");
    }
  }
  CheckMirror(game, game.initial(), game.initial(), seen, "");
  return std::make_shared<CopycatStrategy>();
}

Formula GrandmotherFormula() {
  return Parse(
      "(chall x . chex y . y = father(x)) /\\ (chall x . chex y . y = mother(x)) -> "
      "chall x . chex y . y = nainai(x)");
}

std::shared_ptr<Strategy> GrandmotherStrategy(const Game& game) {
  const StateId root = game.initial();
  std::set<std::string> machine, environment;
  for (const auto& m : game.LegalMoves(root, Player::kMachine)) machine.insert(m);
  for (const auto& m : game.LegalMoves(root, Player::kEnvironment)) environment.insert(m);
  const std::size_t n = environment.size();
  bool ok = n > 0 && machine.size() == 2 * n;
  for (std::size_t i = 0; ok && i < n; ++i) {
    const std::string v = std::to_string(i);
    ok = environment.count("1." + v) && machine.count("0.0." + v) && machine.count("0.1." + v);
  }
  if (!ok) throw ShapeMismatch("grandmother strategy does not apply to this game");
  return std::make_shared<GrandmotherScript>();
}

std::vector<std::string> StrategyNames() {
  return {"extracted", "best-effort", "wait", "fig1", "copycat", "grandmother"};
}

std::shared_ptr<const Strategy> StrategyByName(const std::string& name, const Game& game,
                                               const SolveLimits& limits) {
  if (name == "extracted") {
    Verdict v = Solve(game, limits);
    if (!v.winnable) throw Error("game is not winnable; there is no extracted strategy");
    return v.strategy;
  }
  if (name == "best-effort") return BestEffortStrategy(game);
  if (name == "wait") return std::make_shared<WaitStrategy>();
  if (name == "fig1") return Fig1Strategy(game);
  if (name == "copycat") return Copycat(game);
  if (name == "grandmother") return GrandmotherStrategy(game);
  throw Error("unknown strategy '" + name + "'");
}

}  // namespace col
