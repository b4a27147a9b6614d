#include "col/session.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "col/error.hpp"
#include "col/formula.hpp"
#include "col/interpretation.hpp"
#include "col/semantics.hpp"
#include "col/strategies.hpp"

namespace col {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string Resolve(const std::string& name, const SessionConfig& config) {
  if (fs::exists(name) && fs::is_regular_file(name)) return name;
  const fs::path candidate = fs::path(config.fixture_dir) / (name + ".json");
  if (fs::exists(candidate)) return candidate.string();
  throw Error("no fixture or file named '" + name + "'");
}

Interpretation ResolveInterpretation(const json& j, const SessionConfig& config) {
  if (j.is_object()) return InterpretationFromJsonText(j.dump());
  if (j.is_string()) return LoadInterpretationFile(Resolve(j.get<std::string>(), config));
  throw Error("interp must be an object or a fixture name");
}

// Operator structure for nested display. `address` is the move prefix of
// the component, when it is fixed.
json Outline(const Formula& f, const std::optional<std::string>& address) {
  json node{{"op", std::string(OpName(f.op()))}, {"text", Print(f)}};
  node["address"] = address ? json(*address) : json(nullptr);
  json children = json::array();
  const auto sub = [&](const char* prefix) -> std::optional<std::string> {
    if (!address) return std::nullopt;
    return *address + prefix;
  };
  switch (f.op()) {
    case Op::kParAnd:
    case Op::kParOr:
    case Op::kParImpl:
    case Op::kBrimpl:
      children.push_back(Outline(f.child(0), sub("0.")));
      children.push_back(Outline(f.child(1), sub("1.")));
      break;
    case Op::kBrefute:
      children.push_back(Outline(f.child(0), sub("0.")));
      break;
    case Op::kNeg:
      children.push_back(Outline(f.child(0), address));
      break;
    case Op::kChoAnd:
    case Op::kChoOr:
    case Op::kBrec:
    case Op::kCorec:
      // Components are selected or copied during play.
      for (std::size_t i = 0; i < (IsBinary(f.op()) ? 2u : 1u); ++i)
        children.push_back(Outline(f.child(i), std::nullopt));
      break;
    default:
      if (IsQuantifier(f.op())) {
        const bool blind = f.op() == Op::kBlindAll || f.op() == Op::kBlindEx;
        children.push_back(Outline(f.child(0), blind ? address : std::nullopt));
      }
  }
  node["children"] = std::move(children);
  return node;
}

json RunToJson(const Run& run) {
  json out = json::array();
  for (const auto& m : run) out.push_back({{"by", std::string(PlayerCode(m.by))}, {"label", m.label}});
  return out;
}

Run RunFromJson(const json& j) {
  Run run;
  for (const auto& m : j) run.push_back({PlayerFromCode(m.at("by").get<std::string>()), m.at("label").get<std::string>()});
  return run;
}

ApiResponse Fail(int status, const std::string& message) { return {status, json{{"error", message}}}; }

}  // namespace

SessionSpec SessionSpecFromJson(const json& j) {
  if (!j.is_object()) throw Error("request body must be an object");
  SessionSpec spec;
  if (j.contains("formula") && !j["formula"].is_null()) spec.formula = j["formula"].get<std::string>();
  if (j.contains("fixture") && !j["fixture"].is_null()) spec.fixture = j["fixture"].get<std::string>();
  if (j.contains("interp") && !j["interp"].is_null()) spec.interp = j["interp"];
  if (j.contains("budget") && !j["budget"].is_null()) {
    const auto b = j["budget"].get<std::int64_t>();
    if (b < 0) throw Error("budget must be non-negative");
    spec.budget = static_cast<std::uint32_t>(b);
  }
  if (j.contains("strategy") && !j["strategy"].is_null()) spec.strategy = j["strategy"].get<std::string>();
  if (spec.formula.has_value() == spec.fixture.has_value()) throw Error("give exactly one of formula or fixture");
  return spec;
}

json SessionSpecToJson(const SessionSpec& spec) {
  json j{{"budget", spec.budget}};
  j["formula"] = spec.formula ? json(*spec.formula) : json(nullptr);
  j["fixture"] = spec.fixture ? json(*spec.fixture) : json(nullptr);
  j["interp"] = spec.interp ? *spec.interp : json(nullptr);
  j["strategy"] = spec.strategy ? json(*spec.strategy) : json(nullptr);
  return j;
}

Session::Session(std::string id, SessionSpec spec, const SessionConfig& config)
    : id_(std::move(id)), spec_(std::move(spec)) {
  if (spec_.fixture) {
    game_ = std::make_shared<const Game>(TreeGame(LoadTreeFile(Resolve(*spec_.fixture, config))));
    outline_ = {{"op", "tree"}, {"text", *spec_.fixture}, {"address", ""}, {"children", json::array()}};
  } else if (spec_.formula) {
    const Formula f = Parse(*spec_.formula);
    const Interpretation interp = spec_.interp ? ResolveInterpretation(*spec_.interp, config) : Interpretation(1);
    game_ = std::make_shared<const Game>(Build(f, interp, BuildOptions{Budget{spec_.budget}, config.limits.max_states}));
    outline_ = Outline(f, std::string());
  } else {
    throw Error("give exactly one of formula or fixture");
  }
  const Verdict verdict = Solve(*game_, config.limits);
  machine_winnable_ = verdict.winnable;
  if (spec_.strategy) {
    strategy_ = StrategyByName(*spec_.strategy, *game_, config.limits);
  } else if (verdict.winnable) {
    strategy_ = verdict.strategy;
  } else {
    strategy_ = BestEffortStrategy(*game_);
    best_effort_ = true;
  }
  state_ = game_->initial();
  MachineTurn();
}

void Session::MachineTurn() {
  while (auto act = strategy_->Act(*game_, state_, history_)) {
    state_ = game_->Apply(state_, Player::kMachine, *act);
    history_.push_back({Player::kMachine, *act});
  }
}

void Session::Move(const std::string& label) {
  if (finished_) throw Error("session is finished");
  state_ = game_->Apply(state_, Player::kEnvironment, label);
  history_.push_back({Player::kEnvironment, label});
  MachineTurn();
}

void Session::Stop() {
  if (finished_) throw Error("session is finished");
  finished_ = true;
}

json Session::View() const {
  json j;
  j["id"] = id_;
  j["stateLabel"] = RenderRun(history_);
  j["legalHumanMoves"] = finished_ ? json::array() : json(game_->LegalMoves(state_, Player::kEnvironment));
  j["history"] = RunToJson(history_);
  j["stopWinnerNow"] = std::string(PlayerCode(game_->StopWinner(state_)));
  j["status"] = finished_ ? "finished" : "open";
  j["winner"] = finished_ ? json(std::string(PlayerCode(game_->StopWinner(state_)))) : json(nullptr);
  j["machineWinnable"] = machine_winnable_;
  j["bestEffort"] = best_effort_;
  j["strategy"] = strategy_->name();
  j["outline"] = outline_;
  return j;
}

json Session::Save() const {
  return {{"id", id_}, {"spec", SessionSpecToJson(spec_)}, {"history", RunToJson(history_)}, {"finished", finished_}};
}

Session Session::Restore(const json& saved, const SessionConfig& config) {
  Session s(saved.at("id").get<std::string>(), SessionSpecFromJson(saved.at("spec")), config);
  s.history_ = RunFromJson(saved.at("history"));
  s.state_ = PlayRun(*s.game_, s.history_).final_state;
  s.finished_ = saved.at("finished").get<bool>();
  return s;
}

SessionStore::SessionStore(SessionConfig config, std::string persist_path)
    : config_(std::move(config)), persist_path_(std::move(persist_path)) {
  if (!persist_path_.empty() && fs::exists(persist_path_)) Load();
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

ApiResponse SessionStore::Create(const json& request) {
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = std::to_string(next_id_++);
  }
  std::shared_ptr<Session> session;
  try {
    session = std::make_shared<Session>(id, SessionSpecFromJson(request), config_);
  } catch (const json::exception& e) {
    return Fail(400, e.what());
  } catch (const Error& e) {
    return Fail(400, e.what());
  }
  std::lock_guard lock(mu_);
  sessions_[id] = session;
  Persist();
  return {200, session->View()};
}

ApiResponse SessionStore::Get(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return Fail(404, "no session " + id);
  return {200, it->second->View()};
}

ApiResponse SessionStore::Step(const std::string& id, const json& request) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return Fail(404, "no session " + id);
  Session& s = *it->second;
  if (s.finished()) return Fail(409, "session " + id + " is finished");
  try {
    if (request.is_object() && request.contains("stop") && request["stop"] == true) {
      s.Stop();
    } else if (request.is_object() && request.contains("label") && request["label"].is_string()) {
      s.Move(request["label"].get<std::string>());
    } else {
      return Fail(400, "expected {label} or {stop: true}");
    }
  } catch (const Error& e) {
    return Fail(400, e.what());
  }
  Persist();
  return {200, s.View()};
}

ApiResponse SessionStore::Remove(const std::string& id) {
  std::lock_guard lock(mu_);
  if (sessions_.erase(id) == 0) return Fail(404, "no session " + id);
  Persist();
  return {200, json{{"deleted", id}}};
}

ApiResponse SessionStore::Handle(const std::string& method, const std::string& path, const std::string& body) {
  std::vector<std::string> parts;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '/');)
    if (!part.empty()) parts.push_back(part);
  if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) return Fail(404, "no route " + path);

  json request;
  if (method == "POST") {
    request = json::parse(body.empty() ? "{}" : body, nullptr, false);
    if (request.is_discarded()) return Fail(400, "request body is not valid JSON");
  }
  if (parts.size() == 1) {
    if (method == "POST") return Create(request);
    return Fail(404, "no route " + method + " " + path);
  }
  const std::string& id = parts[1];
  if (parts.size() == 2) {
    if (method == "GET") return Get(id);
    if (method == "DELETE") return Remove(id);
    return Fail(404, "no route " + method + " " + path);
  }
  if (parts[2] == "moves" && method == "POST") return Step(id, request);
  return Fail(404, "no route " + method + " " + path);
}

void SessionStore::Persist() const {
  if (persist_path_.empty()) return;
  json j{{"nextId", next_id_}, {"sessions", json::array()}};
  for (const auto& [id, s] : sessions_) j["sessions"].push_back(s->Save());
  const std::string tmp = persist_path_ + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2);
  }
  fs::rename(tmp, persist_path_);
}

void SessionStore::Load() {
  std::ifstream in(persist_path_);
  const json j = json::parse(in);
  next_id_ = j.at("nextId").get<std::uint64_t>();
  for (const auto& saved : j.at("sessions")) {
    auto s = std::make_shared<Session>(Session::Restore(saved, config_));
    sessions_[s->id()] = s;
  }
}

}  // namespace col
