#ifndef COL_INTERPRETATION_HPP
#define COL_INTERPRETATION_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "col/game.hpp"

namespace col {

// Finite universe {0..N-1} plus total tables for every declared symbol.
// Keys are "name/arity"; tables are in row-major argument-tuple order.
class Interpretation {
 public:
  Interpretation() = default;
  explicit Interpretation(std::uint32_t universe) : universe_(universe) {}

  std::uint32_t universe() const { return universe_; }

  void SetPredicate(const std::string& name, std::uint32_t arity,
                    std::vector<bool> table);
  void SetFunction(const std::string& name, std::uint32_t arity,
                   std::vector<std::uint32_t> table);
  void SetGames(const std::string& name, std::uint32_t arity,
                std::vector<GameTree> templates);

  bool HasPredicate(const std::string& name, std::size_t arity) const;
  bool HasFunction(const std::string& name, std::size_t arity) const;
  bool HasGames(const std::string& name, std::size_t arity) const;

  // Lookups throw BuildError on undeclared symbols or bad arguments.
  bool Predicate(const std::string& name,
                 std::span<const std::uint32_t> args) const;
  std::uint32_t Function(const std::string& name,
                         std::span<const std::uint32_t> args) const;
  const GameTree& GeneralGame(const std::string& name,
                              std::span<const std::uint32_t> args) const;

  // Declared "name/arity" keys, sorted, with a kind prefix ("p:", "f:", "g:").
  std::vector<std::string> Signature() const;

  const std::map<std::string, std::vector<bool>>& predicates() const { return predicates_; }
  const std::map<std::string, std::vector<std::uint32_t>>& functions() const { return functions_; }
  const std::map<std::string, std::vector<GameTree>>& games() const { return games_; }

 private:
  std::size_t Offset(std::span<const std::uint32_t> args) const;
  std::size_t TableSize(std::uint32_t arity) const;

  std::uint32_t universe_ = 1;
  std::map<std::string, std::vector<bool>> predicates_;
  std::map<std::string, std::vector<std::uint32_t>> functions_;
  std::map<std::string, std::vector<GameTree>> games_;
};

std::string SymbolKey(std::string_view name, std::size_t arity);

// Interchange text:
//   {"universe": N, "predicates": {"p/1": [...]}, "functions": {"f/1": [...]},
//    "games": {"P/0": [<tree>]}, "compose": {"h/1": ["g/1", "f/1"]}}
// The optional "compose" entries assert h(x) = g(f(x)) and are checked here.
Interpretation InterpretationFromJsonText(std::string_view text);
Interpretation LoadInterpretationFile(const std::string& path);
std::string InterpretationToJsonText(const Interpretation& interp, int indent = -1);

}  // namespace col

#endif  // COL_INTERPRETATION_HPP
