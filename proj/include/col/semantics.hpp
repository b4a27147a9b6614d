#ifndef COL_SEMANTICS_HPP
#define COL_SEMANTICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "col/formula.hpp"
#include "col/game.hpp"
#include "col/interpretation.hpp"

namespace col {

// Cap on position splits, per recurrence occurrence.
struct Budget {
  std::uint32_t max_splits = 1;
};

// Which side of a dual pair: conj/all/rec versus disj/ex/corec.
enum class Junction : std::uint8_t { kConj, kDisj };

struct BuildOptions {
  Budget budget;
  // Upper bound on states of any single constructed game; 0 = unbounded.
  std::size_t max_states = 1'000'000;
};

// Swaps movers and stop winners everywhere.
Game OpNeg(const Game& g);

// Choice over operands: the choosing player (environment for kConj,
// machine for kDisj) picks operand i with move "i" and loses if it never
// chooses.
Game OpChoice(Junction kind, std::span<const Game> operands,
              std::size_t max_states = 0);
Game OpChoice(Junction kind, const Game& left, const Game& right,
              std::size_t max_states = 0);

// Choice quantifier: a fan over body[var := i] for i in the universe.
Game OpChoiceQuant(Junction kind, const std::string& variable,
                   const Formula& body, const Interpretation& interp,
                   const BuildOptions& options);

// Parallel play; moves are addressed "0.m" (left) and "1.m" (right).
Game OpParallel(Junction kind, const Game& left, const Game& right,
                std::size_t max_states = 0);

// Blind combination of unistructural instances: the shared move structure,
// won by the machine when all (kConj) or some (kDisj) instances are won.
// Throws BuildError naming the first divergent position.
Game OpBlind(Junction kind, std::span<const Game> instances,
             std::size_t max_states = 0);
Game OpBlindQuant(Junction kind, const std::string& variable,
                  const Formula& body, const Interpretation& interp,
                  const BuildOptions& options);

// Branching recurrence (kConj) or corecurrence (kDisj). Sessions live at
// bitstring addresses; the root address renders as "ε". Moves are
// "split:w" (environment for recurrence, machine for corecurrence) and
// "w.m" for a move m of the session at w. Any live session can be split
// while the budget lasts.
Game OpBrec(Junction kind, const Game& inner, Budget budget,
            std::size_t max_states = 0);

// Compiles a closed formula. Throws BuildError on undeclared symbols, arity
// mismatch, free variables, or blind-quantifier instances that diverge.
Game Build(const Formula& f, const Interpretation& interp,
           const BuildOptions& options = {});

// Session address rendering: "" -> "ε".
std::string RenderAddress(std::string_view bits);

}  // namespace col

#endif  // COL_SEMANTICS_HPP
