// col: command-line front end.
//
// Exit codes: 0 success, 1 usage/syntax/build error, 2 limit exceeded,
// 3 false verdict where one was asserted (or a failed verification,
// or an audit anomaly).

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "col/error.hpp"
#include "col/formula.hpp"
#include "col/intlogic.hpp"
#include "col/semantics.hpp"
#include "col/server.hpp"
#include "col/session.hpp"
#include "col/solver.hpp"
#include "col/strategies.hpp"

#ifndef COL_DEFAULT_FIXTURE_DIR
#define COL_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace {

using namespace col;
namespace fs = std::filesystem;

struct Options {
  std::string formula;
  std::string file;
  std::string interp;
  std::vector<std::string> family;
  std::string fixture;
  std::string fixtures_dir;
  std::string strategy;
  std::uint32_t budget = 1;
  std::uint32_t max_budget = 2;
  std::size_t max_states = 1'000'000;
  bool json = false;
  bool expect_winnable = false;
  bool force = false;
  bool elementary = false;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string persist;
};

std::string FixtureDir(const Options& o) {
  if (!o.fixtures_dir.empty()) return o.fixtures_dir;
  if (const char* env = std::getenv("COL_FIXTURES")) return env;
  if (fs::exists("fixtures")) return "fixtures";
  return COL_DEFAULT_FIXTURE_DIR;
}

std::string ResolveFile(const std::string& name, const Options& o) {
  if (fs::exists(name)) return name;
  const fs::path candidate = fs::path(FixtureDir(o)) / (name + ".json");
  if (fs::exists(candidate)) return candidate.string();
  throw Error("no such file or fixture: " + name);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string FormulaText(const Options& o) {
  if (!o.formula.empty() && !o.file.empty()) throw Error("give --formula or --file, not both");
  if (!o.formula.empty()) return o.formula;
  if (!o.file.empty()) return ReadFile(o.file);
  throw Error("a formula is required (--formula or --file)");
}

SolveLimits Limits(const Options& o) {
  SolveLimits l;
  l.max_states = o.max_states;
  return l;
}

// The game named by --fixture, or built from the formula and --interp.
// `from_tree` reports whether it came from an explicit tree.
Game LoadGame(const Options& o, bool& from_tree) {
  from_tree = !o.fixture.empty();
  if (from_tree) return TreeGame(LoadTreeFile(ResolveFile(o.fixture, o)));
  const Formula f = Parse(FormulaText(o));
  const Interpretation interp =
      o.interp.empty() ? Interpretation(1) : LoadInterpretationFile(ResolveFile(o.interp, o));
  return Build(f, interp, BuildOptions{Budget{o.budget}, o.max_states});
}

void PrintVerdict(const Verdict& v, bool json) {
  if (json) {
    std::cout << VerdictToJsonText(v) << "\n";
    return;
  }
  std::cout << "winnable: " << (v.winnable ? "true" : "false") << "\n"
            << "mode: " << SolveModeName(v.mode) << "\n";
  if (v.budget) std::cout << "budget: " << v.budget->max_splits << "\n";
  std::cout << "states explored: " << v.states_explored << "\n";
  if (v.winnable) {
    std::cout << "strategy:\n";
    for (const auto& e : v.strategy_table) {
      std::cout << "  [" << e.state << "] -> " << (e.action ? *e.action : "wait") << "\n";
    }
  }
  if (v.witness) std::cout << "witness: [" << RenderRun(*v.witness) << "]\n";
}

int CmdParse(const Options& o) {
  const Formula f = Parse(FormulaText(o));
  if (o.json) {
    nlohmann::json j{{"formula", Print(f)}, {"unicode", Print(f, Notation::kUnicode)}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << Print(f) << "\n";
  }
  return 0;
}

int CmdSolve(const Options& o) {
  bool from_tree = false;
  const Game g = LoadGame(o, from_tree);
  if (from_tree && !o.force) {
    if (auto problem = CheckDelayTolerance(g, 1)) {
      std::cerr << "col: refusing to solve: the tree is not delay-tolerant (" << *problem
                << "); use --force to solve anyway\n";
      return 1;
    }
  }
  Verdict v = Solve(g, Limits(o));
  if (!from_tree) v.budget = Budget{o.budget};
  PrintVerdict(v, o.json);
  return o.expect_winnable && !v.winnable ? 3 : 0;
}

int CmdUniform(const Options& o) {
  if (o.family.empty()) throw Error("--family is required");
  std::vector<Interpretation> family;
  for (const auto& name : o.family) family.push_back(LoadInterpretationFile(ResolveFile(name, o)));
  const Verdict v = SolveUniform(Parse(FormulaText(o)), family, Budget{o.budget}, Limits(o));
  PrintVerdict(v, o.json);
  return o.expect_winnable && !v.winnable ? 3 : 0;
}

int CmdVerify(const Options& o) {
  bool from_tree = false;
  const Game g = LoadGame(o, from_tree);
  const std::string name = o.strategy.empty() ? "extracted" : o.strategy;
  const auto strategy = StrategyByName(name, g, Limits(o));
  const VerifyResult r = VerifyStrategy(g, *strategy, Limits(o));
  if (o.json) {
    nlohmann::json j{{"strategy", name}, {"holds", r.holds}, {"positionsChecked", r.positions_checked}};
    if (r.counterexample) j["counterexample"] = RenderRun(*r.counterexample);
    if (r.holds) {
      nlohmann::json table = nlohmann::json::array();
      for (const auto& e : ExportStrategy(g, *strategy)) {
        table.push_back({{"state", e.state}, {"action", e.action ? nlohmann::json(*e.action) : nlohmann::json(nullptr)}});
      }
      j["table"] = std::move(table);
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "strategy " << name << ": " << (r.holds ? "holds" : "fails") << " (" << r.positions_checked
              << " positions)\n";
    if (r.counterexample) std::cout << "counterexample: [" << RenderRun(*r.counterexample) << "] then both stop\n";
  }
  return r.holds ? 0 : 3;
}

int CmdTranslate(const Options& o) {
  const IntFormula f = ParseInt(FormulaText(o));
  std::cout << Print(TranslateInt(f, o.elementary ? AtomMode::kElementary : AtomMode::kGeneral)) << "\n";
  return 0;
}

int CmdAudit(const Options& o) {
  std::vector<IntFormula> corpus;
  if (!o.file.empty()) corpus = LoadIntCorpus(o.file);
  else corpus.push_back(ParseInt(FormulaText(o)));
  AuditOptions options;
  options.max_budget = o.max_budget;
  options.limits = Limits(o);
  for (const auto& name : o.family) options.family.push_back(LoadInterpretationFile(ResolveFile(name, o)));
  const auto rows = Audit(corpus, options);
  if (o.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      j.push_back({{"formula", r.formula},
                   {"provable", r.provable},
                   {"winnable", r.winnable ? nlohmann::json(*r.winnable) : nlohmann::json(nullptr)},
                   {"budget", r.budget},
                   {"classification", std::string(AuditClassName(r.classification))}});
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << AuditReportText(rows);
  }
  for (const auto& r : rows)
    if (r.classification == AuditClass::kAnomaly) return 3;
  return 0;
}

void PrintSession(const Session& s) {
  const auto view = s.View();
  std::cout << "history: [" << view["stateLabel"].get<std::string>() << "]\n"
            << "stop winner now: " << view["stopWinnerNow"].get<std::string>() << "\n";
  if (s.finished()) {
    std::cout << "finished; winner " << view["winner"].get<std::string>() << "\n";
    return;
  }
  std::cout << "your moves:";
  for (const auto& m : view["legalHumanMoves"]) std::cout << " " << m.get<std::string>();
  std::cout << "   (or 'stop')\n";
}

int CmdPlay(const Options& o) {
  SessionSpec spec;
  if (!o.fixture.empty()) {
    spec.fixture = o.fixture;
  } else {
    spec.formula = FormulaText(o);
    if (!o.interp.empty()) spec.interp = o.interp;
  }
  spec.budget = o.budget;
  if (!o.strategy.empty()) spec.strategy = o.strategy;
  SessionConfig config{FixtureDir(o), Limits(o)};
  Session s("play", spec, config);
  std::cout << "you play the environment; the machine uses strategy '" << s.strategy().name() << "'"
            << (s.best_effort() ? " (best effort: the game is not machine-winnable)" : "") << "\n";
  PrintSession(s);
  std::string line;
  while (!s.finished() && std::cout << "> " << std::flush && std::getline(std::cin, line)) {
    if (line.empty()) continue;
    try {
      if (line == "stop") s.Stop();
      else s.Move(line);
    } catch (const IllegalMove& e) {
      std::cout << "illegal: " << e.what() << "\n";
      continue;
    }
    PrintSession(s);
  }
  return 0;
}

HttpServer* g_server = nullptr;

int CmdServe(const Options& o) {
  SessionStore store(SessionConfig{FixtureDir(o), Limits(o)}, o.persist);
  HttpServer server(store);
  const int port = server.Bind(o.host, o.port);
  if (port < 0) throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->Stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->Stop();
  });
  std::cerr << "col: serving on http://" << o.host << ":" << port << "\n";
  server.ListenAfterBind();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-semantics engine for computability logic"};
  app.require_subcommand(1);
  Options o;

  auto formula_flags = [&](CLI::App* c) {
    c->add_option("--formula", o.formula, "Formula text");
    c->add_option("--file", o.file, "File holding the formula (audit: the corpus)");
  };
  auto game_flags = [&](CLI::App* c) {
    formula_flags(c);
    c->add_option("--interp", o.interp, "Interpretation file or fixture name");
    c->add_option("--fixture", o.fixture, "Tree fixture name or file instead of a formula");
    c->add_option("--budget", o.budget, "Splits allowed per recurrence occurrence")->capture_default_str();
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--max-states", o.max_states, "State limit")->capture_default_str();
    c->add_option("--fixtures-dir", o.fixtures_dir, "Directory searched for fixture names");
    c->add_flag("--json", o.json, "Structured output");
  };

  auto* parse = app.add_subcommand("parse", "Parse and print a formula");
  formula_flags(parse);
  parse->add_flag("--json", o.json, "Structured output");

  auto* solve = app.add_subcommand("solve", "Decide winnability for one interpretation");
  game_flags(solve);
  common(solve);
  solve->add_flag("--expect-winnable", o.expect_winnable, "Exit 3 unless winnable");
  solve->add_flag("--force", o.force, "Skip the delay-tolerance check on trees");

  auto* uniform = app.add_subcommand("uniform", "Decide winnability with the interpretation hidden");
  formula_flags(uniform);
  uniform->add_option("--family", o.family, "Interpretation files or fixture names")->delimiter(',');
  uniform->add_option("--budget", o.budget, "Splits allowed per recurrence occurrence")->capture_default_str();
  common(uniform);
  uniform->add_flag("--expect-winnable", o.expect_winnable, "Exit 3 unless winnable");

  auto* verify = app.add_subcommand("verify", "Check a named strategy against every environment behavior");
  game_flags(verify);
  common(verify);
  verify->add_option("--strategy", o.strategy, "extracted, best-effort, wait, fig1, copycat, grandmother");

  auto* translate = app.add_subcommand("translate", "Translate an intuitionistic formula");
  formula_flags(translate);
  translate->add_flag("--elementary", o.elementary, "Keep atoms elementary");

  auto* audit = app.add_subcommand("audit", "Compare intuitionistic provability with uniform winnability");
  formula_flags(audit);
  audit->add_option("--budget", o.max_budget, "Largest budget tried")->capture_default_str();
  audit->add_option("--family", o.family, "General-atom family (default: all elementary assignments)")
      ->delimiter(',');
  common(audit);

  auto* play = app.add_subcommand("play", "Play the environment in the terminal");
  game_flags(play);
  common(play);
  play->add_option("--strategy", o.strategy, "Machine strategy (default: extracted or best effort)");

  auto* serve = app.add_subcommand("serve", "Serve the HTTP session API");
  common(serve);
  serve->add_option("--host", o.host, "Bind address")->capture_default_str();
  serve->add_option("--port", o.port, "Port")->capture_default_str();
  serve->add_option("--persist", o.persist, "Session persistence file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*parse) return CmdParse(o);
    if (*solve) return CmdSolve(o);
    if (*uniform) return CmdUniform(o);
    if (*verify) return CmdVerify(o);
    if (*translate) return CmdTranslate(o);
    if (*audit) return CmdAudit(o);
    if (*play) return CmdPlay(o);
    if (*serve) return CmdServe(o);
  } catch (const LimitExceeded& e) {
    std::cerr << "col: limit exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "col: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
