#ifndef COL_SESSION_HPP
#define COL_SESSION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "json.hpp"

#include "col/game.hpp"
#include "col/solver.hpp"

namespace col {

// What a session is created from. Either a formula (with an optional
// interpretation) or a tree fixture.
struct SessionSpec {
  std::optional<std::string> formula;
  // Inline interpretation object, or a fixture name / file path.
  std::optional<nlohmann::json> interp;
  std::optional<std::string> fixture;
  std::uint32_t budget = 1;
  std::optional<std::string> strategy;
};

struct SessionConfig {
  // Directory searched for "<name>.json" when a fixture or interpretation
  // is given by name.
  std::string fixture_dir = "fixtures";
  SolveLimits limits;
};

// A human playing the environment against a machine strategy.
class Session {
 public:
  // Builds the game, picks the strategy and lets the machine move first.
  Session(std::string id, SessionSpec spec, const SessionConfig& config);

  // Applies the human move, then machine moves until the strategy waits.
  // Throws IllegalMove (session unchanged) or Error when already finished.
  void Move(const std::string& label);
  // Ends the play; the winner is the current stop winner.
  void Stop();

  const std::string& id() const { return id_; }
  const SessionSpec& spec() const { return spec_; }
  const Game& game() const { return *game_; }
  StateId state() const { return state_; }
  const Run& history() const { return history_; }
  bool finished() const { return finished_; }
  bool machine_winnable() const { return machine_winnable_; }
  bool best_effort() const { return best_effort_; }
  const Strategy& strategy() const { return *strategy_; }

  // {id, stateLabel, legalHumanMoves, history, stopWinnerNow, status,
  //  winner?, machineWinnable, bestEffort, strategy, outline}
  nlohmann::json View() const;

  // Persistence: spec plus the recorded history and status.
  nlohmann::json Save() const;
  static Session Restore(const nlohmann::json& saved, const SessionConfig& config);

 private:
  void MachineTurn();

  std::string id_;
  SessionSpec spec_;
  std::shared_ptr<const Game> game_;
  std::shared_ptr<const Strategy> strategy_;
  nlohmann::json outline_;
  StateId state_;
  Run history_;
  bool finished_ = false;
  bool machine_winnable_ = false;
  bool best_effort_ = false;
};

SessionSpec SessionSpecFromJson(const nlohmann::json& j);
nlohmann::json SessionSpecToJson(const SessionSpec& spec);

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// Transport-independent session API. Every public method is thread-safe.
//   POST   /sessions              {formula|fixture, interp?, budget?, strategy?}
//   GET    /sessions/{id}
//   POST   /sessions/{id}/moves   {label} | {stop: true}
//   DELETE /sessions/{id}
// Errors are {error} bodies with status 400, 404 or 409.
class SessionStore {
 public:
  explicit SessionStore(SessionConfig config = {}, std::string persist_path = "");

  ApiResponse Handle(const std::string& method, const std::string& path, const std::string& body);

  ApiResponse Create(const nlohmann::json& request);
  ApiResponse Get(const std::string& id);
  ApiResponse Step(const std::string& id, const nlohmann::json& request);
  ApiResponse Remove(const std::string& id);

  std::size_t size() const;

 private:
  void Persist() const;
  void Load();

  SessionConfig config_;
  std::string persist_path_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace col

#endif  // COL_SESSION_HPP
