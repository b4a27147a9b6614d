#include "col/game.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "col/error.hpp"

namespace col {

std::string_view PlayerCode(Player p) {
  return p == Player::kMachine ? "T" : "F";
}

Player PlayerFromCode(std::string_view code) {
  if (code == "T") return Player::kMachine;
  if (code == "F") return Player::kEnvironment;
  throw BuildError("player must be \"T\" or \"F\", got \"" + std::string(code) + "\"");
}

std::string RenderRun(const Run& run) {
  std::string out;
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (i) out += ',';
    out += PlayerCode(run[i].by);
    out += ':';
    out += run[i].label;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Game

bool Game::HasMoves(StateId s, Player p) const {
  for (const Edge& e : Edges(s))
    if (e.mover == p) return true;
  return false;
}

std::vector<std::string> Game::LegalMoves(StateId s, Player p) const {
  std::vector<std::string> out;
  for (const Edge& e : Edges(s))
    if (e.mover == p) out.push_back(labels_[e.label]);
  return out;
}

std::optional<StateId> Game::Successor(StateId s, Player p,
                                       std::string_view label) const {
  for (const Edge& e : Edges(s)) {
    if (e.mover == p && labels_[e.label] == label) return e.to;
  }
  return std::nullopt;
}

StateId Game::Apply(StateId s, Player p, std::string_view label) const {
  if (auto next = Successor(s, p, label)) return *next;
  throw IllegalMove("move " + std::string(PlayerCode(p)) + ":" +
                    std::string(label) + " is not legal here");
}

const std::vector<Run>& Game::CanonicalHistories() const {
  if (!histories_.empty() || winners_.empty()) return histories_;
  std::vector<Run> hist(size());
  std::vector<bool> seen(size(), false);
  std::deque<StateId> queue{initial()};
  seen[0] = true;
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (const Edge& e : Edges(s)) {
      if (seen[e.to.index]) continue;
      seen[e.to.index] = true;
      hist[e.to.index] = hist[s.index];
      hist[e.to.index].push_back({e.mover, labels_[e.label]});
      queue.push_back(e.to);
    }
  }
  histories_ = std::move(hist);
  return histories_;
}

// ---------------------------------------------------------------------------
// GameBuilder

StateId GameBuilder::AddState(Player winner) {
  if (max_states_ != 0 && winners_.size() >= max_states_) {
    throw LimitExceeded("game construction exceeded " +
                        std::to_string(max_states_) + " states");
  }
  winners_.push_back(winner);
  out_.emplace_back();
  return StateId{static_cast<std::uint32_t>(winners_.size() - 1)};
}

std::uint32_t GameBuilder::Intern(std::string_view label) {
  auto it = label_ids_.find(std::string(label));
  if (it != label_ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(labels_.size());
  labels_.emplace_back(label);
  label_ids_.emplace(labels_.back(), id);
  return id;
}

void GameBuilder::AddEdge(StateId from, Player mover, std::uint32_t label,
                          StateId to) {
  out_[from.index].push_back({mover, label, to});
}

Game GameBuilder::Finish() && {
  Game g;
  const std::size_t n = winners_.size();
  if (n == 0) throw BuildError("game has no states");
  g.offsets_.reserve(n + 1);
  g.offsets_.push_back(0);
  std::size_t total = 0;
  for (const auto& v : out_) total += v.size();
  g.edges_.reserve(total);
  for (std::size_t s = 0; s < n; ++s) {
    auto& v = out_[s];
    std::sort(v.begin(), v.end(), [&](const Game::Edge& a, const Game::Edge& b) {
      if (a.mover != b.mover) return a.mover < b.mover;
      return labels_[a.label] < labels_[b.label];
    });
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i].mover == v[i - 1].mover && v[i].label == v[i - 1].label) {
        throw BuildError("duplicate move " + std::string(PlayerCode(v[i].mover)) +
                         ":" + labels_[v[i].label] + " at state " + std::to_string(s));
      }
    }
    g.edges_.insert(g.edges_.end(), v.begin(), v.end());
    g.offsets_.push_back(static_cast<std::uint32_t>(g.edges_.size()));
    std::vector<Game::Edge>().swap(v);
  }
  g.winners_ = std::move(winners_);
  g.labels_ = std::move(labels_);

  // Ranks by iterative post-order DFS; a grey node on the stack is a cycle.
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> color(n, kWhite);
  g.ranks_.assign(n, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{0, 0}};
  color[0] = kGrey;
  while (!stack.empty()) {
    auto& [s, next] = stack.back();
    const std::uint32_t end = g.offsets_[s + 1];
    const std::uint32_t i = g.offsets_[s] + next;
    if (i < end) {
      ++next;
      const std::uint32_t t = g.edges_[i].to.index;
      if (color[t] == kGrey) throw BuildError("game graph has a cycle");
      if (color[t] == kWhite) {
        color[t] = kGrey;
        stack.emplace_back(t, 0);
      }
      continue;
    }
    std::uint32_t rank = 0;
    for (std::uint32_t k = g.offsets_[s]; k < end; ++k)
      rank = std::max(rank, g.ranks_[g.edges_[k].to.index] + 1);
    g.ranks_[s] = rank;
    color[s] = kBlack;
    stack.pop_back();
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] != kBlack) throw BuildError("state " + std::to_string(s) + " is unreachable");
  }
  return g;
}

// ---------------------------------------------------------------------------
// Trees

std::size_t TreeDepth(const GameTree& t) {
  std::size_t d = 0;
  for (const auto& e : t.moves) d = std::max(d, TreeDepth(e.to) + 1);
  return d;
}

std::size_t TreeLeaves(const GameTree& t) {
  if (t.moves.empty()) return 1;
  std::size_t n = 0;
  for (const auto& e : t.moves) n += TreeLeaves(e.to);
  return n;
}

std::size_t TreeNodes(const GameTree& t) {
  std::size_t n = 1;
  for (const auto& e : t.moves) n += TreeNodes(e.to);
  return n;
}

namespace {

void CheckTree(const GameTree& t, const std::string& path) {
  std::set<std::pair<Player, std::string>> seen;
  for (const auto& e : t.moves) {
    if (!seen.emplace(e.by, e.label).second) {
      throw BuildError("duplicate move " + std::string(PlayerCode(e.by)) + ":" +
                       e.label + " at node [" + path + "]");
    }
    std::string child = path;
    if (!child.empty()) child += ',';
    child += std::string(PlayerCode(e.by)) + ":" + e.label;
    CheckTree(e.to, child);
  }
}

constexpr int kMaxTreeNesting = 4096;

GameTree TreeFromJson(const nlohmann::json& j, int depth) {
  if (depth > kMaxTreeNesting) throw BuildError("tree nesting exceeds " + std::to_string(kMaxTreeNesting));
  if (!j.is_object()) throw BuildError("tree node must be an object");
  if (!j.contains("winner") || !j["winner"].is_string())
    throw BuildError("tree node lacks a \"winner\" string");
  GameTree t;
  t.winner = PlayerFromCode(j["winner"].get<std::string>());
  if (j.contains("moves")) {
    const auto& moves = j["moves"];
    if (!moves.is_array()) throw BuildError("\"moves\" must be an array");
    for (const auto& m : moves) {
      if (!m.is_object() || !m.contains("by") || !m.contains("label") || !m.contains("to"))
        throw BuildError("move must be an object with \"by\", \"label\", \"to\"");
      if (!m["by"].is_string() || !m["label"].is_string())
        throw BuildError("move \"by\" and \"label\" must be strings");
      t.moves.push_back({PlayerFromCode(m["by"].get<std::string>()),
                         m["label"].get<std::string>(), TreeFromJson(m["to"], depth + 1)});
    }
  }
  return t;
}

nlohmann::json TreeToJson(const GameTree& t) {
  nlohmann::json j;
  j["winner"] = std::string(PlayerCode(t.winner));
  j["moves"] = nlohmann::json::array();
  for (const auto& e : t.moves) {
    j["moves"].push_back({{"by", std::string(PlayerCode(e.by))},
                          {"label", e.label},
                          {"to", TreeToJson(e.to)}});
  }
  return j;
}

StateId AddTree(GameBuilder& b, const GameTree& t) {
  const StateId id = b.AddState(t.winner);
  for (const auto& e : t.moves) {
    const StateId child = AddTree(b, e.to);
    b.AddEdge(id, e.by, e.label, child);
  }
  return id;
}

GameTree Unfold(const Game& g, StateId s) {
  GameTree t;
  t.winner = g.StopWinner(s);
  for (const auto& e : g.Edges(s)) t.moves.push_back({e.mover, g.Label(e.label), Unfold(g, e.to)});
  return t;
}

}  // namespace

GameTree ValidateTree(GameTree t) {
  CheckTree(t, "");
  return t;
}

GameTree TreeFromJsonText(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BuildError(std::string("malformed tree: ") + e.what());
  }
  return ValidateTree(TreeFromJson(j, 0));
}

GameTree LoadTreeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BuildError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return TreeFromJsonText(ss.str());
}

std::string TreeToJsonText(const GameTree& t, int indent) {
  return TreeToJson(t).dump(indent);
}

Game TreeGame(const GameTree& t) {
  GameBuilder b;
  AddTree(b, t);
  return std::move(b).Finish();
}

GameTree ExportTree(const Game& g) { return Unfold(g, g.initial()); }

RunResult PlayRun(const Game& g, const Run& run) {
  StateId s = g.initial();
  for (std::size_t i = 0; i < run.size(); ++i) {
    auto next = g.Successor(s, run[i].by, run[i].label);
    if (!next) {
      throw IllegalMove("step " + std::to_string(i + 1) + " (" +
                        std::string(PlayerCode(run[i].by)) + ":" + run[i].label +
                        ") is illegal after [" +
                        RenderRun(Run(run.begin(), run.begin() + i)) + "]");
    }
    s = *next;
  }
  return {s, g.StopWinner(s)};
}

std::optional<std::string> FindBehavioralDifference(const Game& a,
                                                    const Game& b) {
  struct PairHash {
    std::size_t operator()(const std::pair<std::uint32_t, std::uint32_t>& p) const {
      return (static_cast<std::size_t>(p.first) << 32) ^ p.second;
    }
  };
  std::unordered_map<std::pair<std::uint32_t, std::uint32_t>, bool, PairHash> done;
  std::vector<std::tuple<StateId, StateId, Run>> stack{{a.initial(), b.initial(), {}}};
  while (!stack.empty()) {
    auto [x, y, hist] = std::move(stack.back());
    stack.pop_back();
    if (!done.emplace(std::make_pair(x.index, y.index), true).second) continue;
    const std::string where = "after [" + RenderRun(hist) + "]";
    if (a.StopWinner(x) != b.StopWinner(y)) return "stop winners differ " + where;
    auto ex = a.Edges(x);
    auto ey = b.Edges(y);
    if (ex.size() != ey.size()) return "move sets differ " + where;
    for (std::size_t i = 0; i < ex.size(); ++i) {
      if (ex[i].mover != ey[i].mover || a.Label(ex[i].label) != b.Label(ey[i].label))
        return "move sets differ " + where;
      Run next = hist;
      next.push_back({ex[i].mover, a.Label(ex[i].label)});
      stack.emplace_back(ex[i].to, ey[i].to, std::move(next));
    }
  }
  return std::nullopt;
}

}  // namespace col
