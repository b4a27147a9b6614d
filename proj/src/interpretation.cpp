#include "col/interpretation.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "col/error.hpp"

namespace col {

using nlohmann::json;

std::string SymbolKey(std::string_view name, std::size_t arity) {
  return std::string(name) + "/" + std::to_string(arity);
}

namespace {

std::pair<std::string, std::uint32_t> SplitKey(const std::string& key) {
  const auto slash = key.rfind('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == key.size())
    throw BuildError("symbol key \"" + key + "\" must look like name/arity");
  std::uint32_t arity = 0;
  for (char c : key.substr(slash + 1)) {
    if (c < '0' || c > '9') throw BuildError("bad arity in \"" + key + "\"");
    arity = arity * 10 + static_cast<std::uint32_t>(c - '0');
  }
  return {key.substr(0, slash), arity};
}

bool IsLower(const std::string& name) { return !name.empty() && std::islower(static_cast<unsigned char>(name[0])); }
bool IsUpper(const std::string& name) { return !name.empty() && std::isupper(static_cast<unsigned char>(name[0])); }

}  // namespace

std::size_t Interpretation::TableSize(std::uint32_t arity) const {
  std::size_t n = 1;
  for (std::uint32_t i = 0; i < arity; ++i) n *= universe_;
  return n;
}

std::size_t Interpretation::Offset(std::span<const std::uint32_t> args) const {
  std::size_t off = 0;
  for (std::uint32_t a : args) {
    if (a >= universe_) throw BuildError("argument " + std::to_string(a) + " outside the universe");
    off = off * universe_ + a;
  }
  return off;
}

void Interpretation::SetPredicate(const std::string& name, std::uint32_t arity,
                                  std::vector<bool> table) {
  if (!IsLower(name)) throw BuildError("predicate \"" + name + "\" must be lowercase");
  if (table.size() != TableSize(arity))
    throw BuildError("predicate " + SymbolKey(name, arity) + " needs " +
                     std::to_string(TableSize(arity)) + " entries");
  predicates_[SymbolKey(name, arity)] = std::move(table);
}

void Interpretation::SetFunction(const std::string& name, std::uint32_t arity,
                                 std::vector<std::uint32_t> table) {
  if (!IsLower(name)) throw BuildError("function \"" + name + "\" must be lowercase");
  if (table.size() != TableSize(arity))
    throw BuildError("function " + SymbolKey(name, arity) + " needs " +
                     std::to_string(TableSize(arity)) + " entries");
  for (std::uint32_t v : table) {
    if (v >= universe_)
      throw BuildError("function " + SymbolKey(name, arity) + " value " + std::to_string(v) +
                       " outside the universe");
  }
  functions_[SymbolKey(name, arity)] = std::move(table);
}

void Interpretation::SetGames(const std::string& name, std::uint32_t arity,
                              std::vector<GameTree> templates) {
  if (!IsUpper(name)) throw BuildError("general atom \"" + name + "\" must be uppercase");
  if (templates.size() != TableSize(arity))
    throw BuildError("games " + SymbolKey(name, arity) + " needs " +
                     std::to_string(TableSize(arity)) + " trees");
  for (auto& t : templates) t = ValidateTree(std::move(t));
  games_[SymbolKey(name, arity)] = std::move(templates);
}

bool Interpretation::HasPredicate(const std::string& name, std::size_t arity) const {
  return predicates_.count(SymbolKey(name, arity)) > 0;
}
bool Interpretation::HasFunction(const std::string& name, std::size_t arity) const {
  return functions_.count(SymbolKey(name, arity)) > 0;
}
bool Interpretation::HasGames(const std::string& name, std::size_t arity) const {
  return games_.count(SymbolKey(name, arity)) > 0;
}

bool Interpretation::Predicate(const std::string& name,
                               std::span<const std::uint32_t> args) const {
  auto it = predicates_.find(SymbolKey(name, args.size()));
  if (it == predicates_.end())
    throw BuildError("undeclared predicate " + SymbolKey(name, args.size()));
  return it->second[Offset(args)];
}

std::uint32_t Interpretation::Function(const std::string& name,
                                       std::span<const std::uint32_t> args) const {
  auto it = functions_.find(SymbolKey(name, args.size()));
  if (it == functions_.end())
    throw BuildError("undeclared function " + SymbolKey(name, args.size()));
  return it->second[Offset(args)];
}

const GameTree& Interpretation::GeneralGame(const std::string& name,
                                            std::span<const std::uint32_t> args) const {
  auto it = games_.find(SymbolKey(name, args.size()));
  if (it == games_.end())
    throw BuildError("undeclared general atom " + SymbolKey(name, args.size()));
  return it->second[Offset(args)];
}

std::vector<std::string> Interpretation::Signature() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : predicates_) out.push_back("p:" + k);
  for (const auto& [k, v] : functions_) out.push_back("f:" + k);
  for (const auto& [k, v] : games_) out.push_back("g:" + k);
  return out;
}

Interpretation InterpretationFromJsonText(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw BuildError(std::string("malformed interpretation: ") + e.what());
  }
  if (!j.is_object() || !j.contains("universe") || !j["universe"].is_number_unsigned())
    throw BuildError("interpretation needs a positive integer \"universe\"");
  const auto n = j["universe"].get<std::uint32_t>();
  if (n == 0) throw BuildError("universe must be at least 1");
  Interpretation interp(n);
  try {
    if (j.contains("predicates")) {
      for (const auto& [key, table] : j["predicates"].items()) {
        auto [name, arity] = SplitKey(key);
        interp.SetPredicate(name, arity, table.get<std::vector<bool>>());
      }
    }
    if (j.contains("functions")) {
      for (const auto& [key, table] : j["functions"].items()) {
        auto [name, arity] = SplitKey(key);
        interp.SetFunction(name, arity, table.get<std::vector<std::uint32_t>>());
      }
    }
    if (j.contains("games")) {
      for (const auto& [key, trees] : j["games"].items()) {
        auto [name, arity] = SplitKey(key);
        std::vector<GameTree> templates;
        for (const auto& t : trees) templates.push_back(TreeFromJsonText(t.dump()));
        interp.SetGames(name, arity, std::move(templates));
      }
    }
  } catch (const json::exception& e) {
    throw BuildError(std::string("malformed table: ") + e.what());
  }
  if (j.contains("compose")) {
    for (const auto& [key, parts] : j["compose"].items()) {
      const auto outer = parts.at(0).get<std::string>();
      const auto inner = parts.at(1).get<std::string>();
      for (const auto* k : {&key, &outer, &inner}) {
        if (!interp.functions().count(*k) || SplitKey(*k).second != 1)
          throw BuildError("compose entry names unknown unary function " + *k);
      }
      const auto& h = interp.functions().at(key);
      const auto& g = interp.functions().at(outer);
      const auto& f = interp.functions().at(inner);
      for (std::uint32_t x = 0; x < n; ++x) {
        if (h[x] != g[f[x]]) {
          throw BuildError(key + " disagrees with " + outer + " after " + inner + " at " +
                           std::to_string(x));
        }
      }
    }
  }
  return interp;
}

Interpretation LoadInterpretationFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BuildError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return InterpretationFromJsonText(ss.str());
}

std::string InterpretationToJsonText(const Interpretation& interp, int indent) {
  json j;
  j["universe"] = interp.universe();
  j["predicates"] = json::object();
  for (const auto& [k, v] : interp.predicates()) j["predicates"][k] = v;
  j["functions"] = json::object();
  for (const auto& [k, v] : interp.functions()) j["functions"][k] = v;
  j["games"] = json::object();
  for (const auto& [k, v] : interp.games()) {
    json arr = json::array();
    for (const auto& t : v) arr.push_back(json::parse(TreeToJsonText(t)));
    j["games"][k] = arr;
  }
  return j.dump(indent);
}

}  // namespace col
