#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "col/error.hpp"
#include "col/formula.hpp"
#include "col/game.hpp"
#include "col/interpretation.hpp"
#include "col/intlogic.hpp"
#include "col/semantics.hpp"
#include "col/solver.hpp"
#include "col/strategies.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace col;

namespace {

py::object FromJson(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

std::string ToJsonText(const py::object& value) {
  return py::module_::import("json").attr("dumps")(value).cast<std::string>();
}

// A dict, JSON text, or a path to a JSON file.
std::string JsonArgument(const py::object& value) {
  if (py::isinstance<py::str>(value)) {
    const std::string s = value.cast<std::string>();
    if (!s.empty() && (s[0] == '{' || s[0] == '[')) return s;
    if (!std::filesystem::is_regular_file(s)) throw Error("no such file: " + s);
    std::ifstream in(s);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  return ToJsonText(value);
}

Interpretation InterpretationArgument(const py::object& value) {
  if (value.is_none()) return Interpretation(1);
  return InterpretationFromJsonText(JsonArgument(value));
}

Game GameArgument(const std::optional<std::string>& formula, const py::object& interp, const py::object& tree,
                  std::uint32_t budget, std::size_t max_states) {
  if (formula.has_value() == !tree.is_none()) throw Error("give exactly one of formula or tree");
  if (formula) return Build(Parse(*formula), InterpretationArgument(interp), BuildOptions{Budget{budget}, max_states});
  return TreeGame(TreeFromJsonText(JsonArgument(tree)));
}

SolveLimits Limits(std::size_t max_states) {
  SolveLimits limits;
  limits.max_states = max_states;
  return limits;
}

py::object RunObject(const Run& run) {
  py::list out;
  for (const auto& m : run) {
    py::dict d;
    d["by"] = std::string(PlayerCode(m.by));
    d["label"] = m.label;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(colengine, m) {
  m.doc() = "Game semantics engine: formulas, games, solving, strategies and the intuitionistic audit.";

  // Translators run newest first, so the subclass is registered last.
  auto& error = py::register_exception<Error>(m, "ColError", PyExc_ValueError);
  py::register_exception<LimitExceeded>(m, "LimitExceeded", error.ptr());

  m.def(
      "parse",
      [](const std::string& text, bool unicode) {
        return Print(Parse(text), unicode ? Notation::kUnicode : Notation::kAscii);
      },
      py::arg("text"), py::arg("unicode") = false, "Parse and print in canonical form.");

  m.def(
      "solve",
      [](std::optional<std::string> formula, py::object interp, py::object tree, std::uint32_t budget,
         std::size_t max_states) {
        const Game g = GameArgument(formula, interp, tree, budget, max_states);
        Verdict v = Solve(g, Limits(max_states));
        if (formula) v.budget = Budget{budget};
        return FromJson(VerdictToJsonText(v));
      },
      py::arg("formula") = py::none(), py::arg("interp") = py::none(), py::arg("tree") = py::none(),
      py::arg("budget") = 1, py::arg("max_states") = 1'000'000, "Decide machine winnability.");

  m.def(
      "uniform",
      [](const std::string& formula, const std::vector<py::object>& family, std::uint32_t budget,
         std::size_t max_states) {
        std::vector<Interpretation> members;
        for (const auto& f : family) members.push_back(InterpretationArgument(f));
        return FromJson(VerdictToJsonText(SolveUniform(Parse(formula), members, Budget{budget}, Limits(max_states))));
      },
      py::arg("formula"), py::arg("family"), py::arg("budget") = 1, py::arg("max_states") = 1'000'000,
      "Decide winnability by one strategy for every member of the family.");

  m.def(
      "verify",
      [](const std::string& strategy, std::optional<std::string> formula, py::object interp, py::object tree,
         std::uint32_t budget, std::size_t max_states) {
        const Game g = GameArgument(formula, interp, tree, budget, max_states);
        const VerifyResult r = VerifyStrategy(g, *StrategyByName(strategy, g, Limits(max_states)), Limits(max_states));
        py::dict out;
        out["holds"] = r.holds;
        out["counterexample"] = r.counterexample ? RunObject(*r.counterexample) : py::none();
        out["positions"] = r.positions_checked;
        return out;
      },
      py::arg("strategy"), py::arg("formula") = py::none(), py::arg("interp") = py::none(),
      py::arg("tree") = py::none(), py::arg("budget") = 1, py::arg("max_states") = 1'000'000,
      "Check a named strategy against every environment behavior.");

  m.def("strategy_names", &StrategyNames);

  m.def(
      "int_prove", [](const std::string& text) { return IntProve(ParseInt(text)); }, py::arg("text"),
      "Intuitionistic provability of a propositional formula.");

  m.def(
      "translate",
      [](const std::string& text, bool elementary) {
        return Print(TranslateInt(ParseInt(text), elementary ? AtomMode::kElementary : AtomMode::kGeneral));
      },
      py::arg("text"), py::arg("elementary") = false);

  m.def(
      "audit",
      [](const std::vector<std::string>& formulas, std::uint32_t max_budget, std::size_t max_states) {
        std::vector<IntFormula> corpus;
        for (const auto& f : formulas) corpus.push_back(ParseInt(f));
        AuditOptions options;
        options.max_budget = max_budget;
        options.limits.max_states = max_states;
        py::list out;
        for (const auto& r : Audit(corpus, options)) {
          py::dict d;
          d["formula"] = r.formula;
          d["provable"] = r.provable;
          d["winnable"] = r.winnable ? py::cast(*r.winnable) : py::none();
          d["budget"] = r.budget;
          d["classification"] = std::string(AuditClassName(r.classification));
          out.append(d);
        }
        return out;
      },
      py::arg("formulas"), py::arg("max_budget") = 2, py::arg("max_states") = 1'000'000);
}
