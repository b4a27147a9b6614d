#ifndef COL_STRATEGIES_HPP
#define COL_STRATEGIES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "col/formula.hpp"
#include "col/game.hpp"
#include "col/solver.hpp"

namespace col {

// The depth-3 example tree with the root environment-won: the machine can
// move α, the environment β or γ.
GameTree Fig1Tree();

// Play α; play β once the environment has played γ. Throws ShapeMismatch
// unless `game` is the Fig1Tree() game.
std::shared_ptr<Strategy> Fig1Strategy(const Game& game);

// Mirror strategy for ~A \/ A, defined on histories. The machine's moves in
// each component replay, in order, the environment's moves in the other
// component, one per step. Throws ShapeMismatch when the components are not
// move-for-move negations of each other.
std::shared_ptr<Strategy> Copycat(const Game& game);

// The reduction
//   (chall x . chex y . y = father(x)) /\ (chall x . chex y . y = mother(x))
//     -> chall x . chex y . y = nainai(x)
// Waits for the question a in the consequent, asks a of the first
// antecedent conjunct, asks the answer b of the second, and returns the
// answer c to the consequent.
std::shared_ptr<Strategy> GrandmotherStrategy(const Game& game);
Formula GrandmotherFormula();

// Names accepted by --strategy.
std::vector<std::string> StrategyNames();
// "extracted" (Solve's), "best-effort", "wait", "fig1", "copycat",
// "grandmother". Throws Error for unknown names, ShapeMismatch when a
// scripted strategy does not apply.
std::shared_ptr<const Strategy> StrategyByName(const std::string& name, const Game& game,
                                               const SolveLimits& limits = {});

}  // namespace col

#endif  // COL_STRATEGIES_HPP
