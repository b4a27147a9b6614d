#ifndef COL_GAME_HPP
#define COL_GAME_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace col {

enum class Player : std::uint8_t { kMachine, kEnvironment };

constexpr Player Opposite(Player p) {
  return p == Player::kMachine ? Player::kEnvironment : Player::kMachine;
}

// "T" for the machine, "F" for the environment.
std::string_view PlayerCode(Player p);
// Inverse of PlayerCode. Throws BuildError on anything else.
Player PlayerFromCode(std::string_view code);

struct StateId {
  std::uint32_t index = 0;
  friend auto operator<=>(StateId, StateId) = default;
};

struct Move {
  Player by;
  std::string label;
  friend bool operator==(const Move&, const Move&) = default;
};

using Run = std::vector<Move>;

// "T:α,F:γ"; the empty run renders as "".
std::string RenderRun(const Run& run);

// Explicit finite acyclic game: every state reachable from state 0, edges
// unique per (mover, label) and sorted by mover then label text.
class Game {
 public:
  struct Edge {
    Player mover;
    std::uint32_t label;
    StateId to;
  };

  Game() = default;

  StateId initial() const { return StateId{0}; }
  std::size_t size() const { return winners_.size(); }

  Player StopWinner(StateId s) const { return winners_[s.index]; }
  std::span<const Edge> Edges(StateId s) const {
    return {edges_.data() + offsets_[s.index],
            edges_.data() + offsets_[s.index + 1]};
  }
  bool HasMoves(StateId s, Player p) const;
  std::vector<std::string> LegalMoves(StateId s, Player p) const;
  std::optional<StateId> Successor(StateId s, Player p,
                                   std::string_view label) const;
  // Throws IllegalMove.
  StateId Apply(StateId s, Player p, std::string_view label) const;

  const std::string& Label(std::uint32_t id) const { return labels_[id]; }
  std::size_t label_count() const { return labels_.size(); }

  // Length of the longest run from s. Strictly decreases along every move.
  std::uint32_t Rank(StateId s) const { return ranks_[s.index]; }
  std::uint32_t Depth() const { return ranks_.empty() ? 0 : ranks_[0]; }

  // Shortest, then lexicographically least, history reaching each state.
  const std::vector<Run>& CanonicalHistories() const;

 private:
  friend class GameBuilder;

  std::vector<Player> winners_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::uint32_t> ranks_;
  mutable std::vector<Run> histories_;
};

// Incremental construction. State 0 is the initial state.
class GameBuilder {
 public:
  explicit GameBuilder(std::size_t max_states = 0) : max_states_(max_states) {}

  StateId AddState(Player winner);
  std::uint32_t Intern(std::string_view label);
  void AddEdge(StateId from, Player mover, std::uint32_t label, StateId to);
  void AddEdge(StateId from, Player mover, std::string_view label, StateId to) {
    AddEdge(from, mover, Intern(label), to);
  }
  std::size_t size() const { return winners_.size(); }

  // Sorts edges and computes ranks. Throws BuildError on duplicate
  // (mover, label) pairs, unreachable states, or cycles.
  Game Finish() &&;

 private:
  std::size_t max_states_;
  std::vector<Player> winners_;
  std::vector<std::vector<Game::Edge>> out_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> label_ids_;
};

// Explicit tree in the interchange format.
struct GameTree {
  struct Edge;
  Player winner = Player::kMachine;
  std::vector<Edge> moves;
};

struct GameTree::Edge {
  Player by;
  std::string label;
  GameTree to;
};

std::size_t TreeDepth(const GameTree& t);
std::size_t TreeLeaves(const GameTree& t);
std::size_t TreeNodes(const GameTree& t);

// Checks the tree invariants; throws BuildError naming the offending node.
GameTree ValidateTree(GameTree t);
// Parses and validates the interchange text {"winner", "moves": [...]}.
GameTree TreeFromJsonText(std::string_view text);
GameTree LoadTreeFile(const std::string& path);
std::string TreeToJsonText(const GameTree& t, int indent = -1);

Game TreeGame(const GameTree& t);
// Unfolds the reachable structure of g into a tree.
GameTree ExportTree(const Game& g);

struct RunResult {
  StateId final_state;
  Player outcome;
};

// Folds Apply over the run. Throws IllegalMove naming the offending step.
RunResult PlayRun(const Game& g, const Run& run);

// Compares two games state-by-state from their initial states: same stop
// winners and the same (mover, label) moves everywhere. Returns a
// description of the first difference, or nullopt when equal.
std::optional<std::string> FindBehavioralDifference(const Game& a,
                                                    const Game& b);
inline bool BehaviorallyEqual(const Game& a, const Game& b) {
  return !FindBehavioralDifference(a, b).has_value();
}

}  // namespace col

template <>
struct std::hash<col::StateId> {
  std::size_t operator()(col::StateId s) const noexcept {
    return std::hash<std::uint32_t>()(s.index);
  }
};

#endif  // COL_GAME_HPP
