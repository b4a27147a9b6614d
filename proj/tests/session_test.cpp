#include "doctest.h"

#include <chrono>
#include <filesystem>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "col/error.hpp"
#include "col/server.hpp"
#include "col/session.hpp"

using namespace col;
using nlohmann::json;

namespace {

SessionConfig Config() {
  SessionConfig c;
  c.fixture_dir = COL_FIXTURE_DIR;
  return c;
}

json Labels(const json& history) {
  json out = json::array();
  for (const auto& m : history) out.push_back(m["by"].get<std::string>() + ":" + m["label"].get<std::string>());
  return out;
}

}  // namespace

TEST_CASE("Fig 1 session") {
  SessionSpec spec;
  spec.fixture = "fig1";
  Session s("1", spec, Config());
  json v = s.View();
  CHECK(v["machineWinnable"] == true);
  CHECK(v["bestEffort"] == false);
  CHECK(Labels(v["history"]) == json{"T:α"});
  CHECK(v["legalHumanMoves"] == json{"β", "γ"});

  s.Move("γ");
  v = s.View();
  CHECK(Labels(v["history"]) == json{"T:α", "F:γ", "T:β"});
  CHECK(v["status"] == "open");
  CHECK(v["stopWinnerNow"] == "T");
  CHECK(v["stateLabel"] == RenderRun(s.history()));

  const RunResult replay = PlayRun(s.game(), s.history());
  CHECK(replay.final_state == s.state());
  CHECK(replay.outcome == s.game().StopWinner(s.state()));

  s.Stop();
  v = s.View();
  CHECK(v["status"] == "finished");
  CHECK(v["winner"] == "T");
  CHECK(v["legalHumanMoves"].empty());
  CHECK_THROWS_AS(s.Move("β"), Error);
}

TEST_CASE("illegal moves leave the session unchanged") {
  SessionSpec spec;
  spec.fixture = "fig1";
  spec.strategy = "fig1";
  Session s("1", spec, Config());
  const json before = s.View();
  CHECK_THROWS_AS(s.Move("δ"), IllegalMove);
  CHECK(s.View() == before);
}

TEST_CASE("unwinnable games get a best-effort machine") {
  SessionSpec spec;
  spec.formula = "~p | p";
  spec.interp = json::parse(R"({"universe":1,"predicates":{"p/0":[true]}})");
  Session s("1", spec, Config());
  CHECK(s.View()["machineWinnable"] == true);

  SessionSpec lost;
  lost.formula = "chall x . even(x) & odd(x)";
  lost.interp = "parity";
  Session l("2", lost, Config());
  const json v = l.View();
  CHECK(v["machineWinnable"] == false);
  CHECK(v["bestEffort"] == true);
  CHECK(v["strategy"] == "best-effort");
}

TEST_CASE("copycat session mirrors every human move") {
  SessionSpec spec;
  spec.formula = "~P \\/ P";
  spec.interp = "fig1_interp";
  spec.strategy = "copycat";
  Session s("1", spec, Config());
  CHECK(s.View()["history"].empty());
  s.Move("1.β");
  CHECK(Labels(s.View()["history"]) == json{"F:1.β", "T:0.β"});
  s.Move("0.α");
  CHECK(Labels(s.View()["history"]) == json{"F:1.β", "T:0.β", "F:0.α", "T:1.α"});
  const json outline = s.View()["outline"];
  CHECK(outline["op"] == "parOr");
  CHECK(outline["children"][0]["address"] == "0.");
  CHECK(outline["children"][1]["address"] == "1.");
}

TEST_CASE("store routes and status codes") {
  SessionStore store(Config());
  auto created = store.Handle("POST", "/sessions", R"({"fixture":"fig1"})");
  REQUIRE(created.status == 200);
  const std::string id = created.body["id"];
  CHECK(store.Handle("GET", "/sessions/" + id, "").status == 200);
  CHECK(store.Handle("GET", "/sessions/999", "").status == 404);
  CHECK(store.Handle("GET", "/nothing", "").status == 404);
  CHECK(store.Handle("POST", "/sessions", "{not json").status == 400);
  CHECK(store.Handle("POST", "/sessions", R"({"formula":"(("})").status == 400);
  CHECK(store.Handle("POST", "/sessions", R"({"formula":"p","fixture":"fig1"})").status == 400);
  CHECK(store.Handle("POST", "/sessions", R"({"formula":"P"})").status == 400);

  const auto illegal = store.Handle("POST", "/sessions/" + id + "/moves", R"({"label":"δ"})");
  CHECK(illegal.status == 400);
  CHECK(illegal.body.contains("error"));
  CHECK(store.Handle("GET", "/sessions/" + id, "").body["history"].size() == 1);

  CHECK(store.Handle("POST", "/sessions/" + id + "/moves", R"({"label":"γ"})").status == 200);
  const auto stopped = store.Handle("POST", "/sessions/" + id + "/moves", R"({"stop":true})");
  CHECK(stopped.status == 200);
  CHECK(stopped.body["winner"] == "T");
  CHECK(store.Handle("POST", "/sessions/" + id + "/moves", R"({"label":"β"})").status == 409);
  CHECK(store.Handle("DELETE", "/sessions/" + id, "").status == 200);
  CHECK(store.Handle("DELETE", "/sessions/" + id, "").status == 404);
  CHECK(store.size() == 0);
}

TEST_CASE("persistence reproduces sessions") {
  const auto path = (std::filesystem::temp_directory_path() / "col_sessions_test.json").string();
  std::filesystem::remove(path);
  json before;
  std::string id;
  {
    SessionStore store(Config(), path);
    id = store.Handle("POST", "/sessions", R"({"fixture":"fig1"})").body["id"];
    store.Handle("POST", "/sessions/" + id + "/moves", R"({"label":"γ"})");
    store.Handle("POST", "/sessions", R"j({"formula":"chall x . chex y . y = succ(x)","interp":"succ"})j");
    before = store.Handle("GET", "/sessions/" + id, "").body;
  }
  SessionStore reloaded(Config(), path);
  CHECK(reloaded.size() == 2);
  CHECK(reloaded.Handle("GET", "/sessions/" + id, "").body == before);
  const auto next = reloaded.Handle("POST", "/sessions", R"({"fixture":"fig1"})").body["id"];
  CHECK(next == "3");
  std::filesystem::remove(path);
}

TEST_CASE("HTTP API") {
  SessionStore store(Config());
  HttpServer server(store);
  const int port = server.Bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { server.ListenAfterBind(); });
  for (int i = 0; i < 100 && !server.running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/sessions", R"({"fixture":"fig1"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 200);
  const json view = json::parse(created->body);
  const std::string id = view["id"];
  CHECK(view["legalHumanMoves"] == json{"β", "γ"});

  auto got = client.Get("/sessions/" + id);
  REQUIRE(got);
  CHECK(got->status == 200);
  CHECK(json::parse(got->body)["stateLabel"] == view["stateLabel"]);

  auto moved = client.Post("/sessions/" + id + "/moves", R"({"label":"γ"})", "application/json");
  REQUIRE(moved);
  CHECK(Labels(json::parse(moved->body)["history"]) == json{"T:α", "F:γ", "T:β"});

  auto bad = client.Post("/sessions/" + id + "/moves", R"({"label":"δ"})", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  CHECK(json::parse(bad->body).contains("error"));

  auto stop = client.Post("/sessions/" + id + "/moves", R"({"stop":true})", "application/json");
  REQUIRE(stop);
  CHECK(json::parse(stop->body)["status"] == "finished");
  auto late = client.Post("/sessions/" + id + "/moves", R"({"label":"β"})", "application/json");
  REQUIRE(late);
  CHECK(late->status == 409);

  auto missing = client.Get("/sessions/404");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto removed = client.Delete("/sessions/" + id);
  REQUIRE(removed);
  CHECK(removed->status == 200);
  auto gone = client.Get("/sessions/" + id);
  REQUIRE(gone);
  CHECK(gone->status == 404);

  auto preflight = client.Options("/sessions");
  REQUIRE(preflight);
  CHECK(preflight->status == 204);
  CHECK(preflight->get_header_value("Access-Control-Allow-Origin") == "*");

  server.Stop();
  loop.join();
}
