#ifndef COL_TESTS_KRIPKE_HPP
#define COL_TESTS_KRIPKE_HPP

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "col/intlogic.hpp"
#include "support/testkit.hpp"

namespace kripke {

using namespace col;

// Kripke countermodel search over every rooted partial order with at most
// three worlds: one world, two- and three-element chains, and the V.
struct Frame {
  int worlds;
  // le[u][v]: u is below or equal to v.
  std::array<std::array<bool, 3>, 3> le{};
};

inline std::vector<Frame> Frames() {
  auto make = [](int n, std::vector<std::pair<int, int>> edges) {
    Frame f{n, {}};
    for (int i = 0; i < n; ++i) f.le[i][i] = true;
    for (auto [u, v] : edges) f.le[u][v] = true;
    return f;
  };
  return {make(1, {}), make(2, {{0, 1}}), make(3, {{0, 1}, {1, 2}, {0, 2}}), make(3, {{0, 1}, {0, 2}})};
}

inline bool Forces(const Frame& fr, const std::map<std::string, unsigned>& val, int w, const IntFormula& f) {
  using K = IntFormula::Kind;
  switch (f.kind()) {
    case K::kAtom: return (val.at(f.name()) >> w) & 1u;
    case K::kBottom: return false;
    case K::kAnd: return Forces(fr, val, w, f.left()) && Forces(fr, val, w, f.right());
    case K::kOr: return Forces(fr, val, w, f.left()) || Forces(fr, val, w, f.right());
    case K::kNot:
      for (int v = 0; v < fr.worlds; ++v)
        if (fr.le[w][v] && Forces(fr, val, v, f.left())) return false;
      return true;
    case K::kImpl:
      for (int v = 0; v < fr.worlds; ++v)
        if (fr.le[w][v] && Forces(fr, val, v, f.left()) && !Forces(fr, val, v, f.right())) return false;
      return true;
  }
  return false;
}

inline bool UpClosed(const Frame& fr, unsigned set) {
  for (int u = 0; u < fr.worlds; ++u)
    for (int v = 0; v < fr.worlds; ++v)
      if (fr.le[u][v] && ((set >> u) & 1u) && !((set >> v) & 1u)) return false;
  return true;
}

inline bool HasSmallCountermodel(const IntFormula& f) {
  const auto atoms = IntAtoms(f);
  const std::vector<std::string> names(atoms.begin(), atoms.end());
  for (const Frame& fr : Frames()) {
    std::vector<unsigned> sets;
    for (unsigned s = 0; s < (1u << fr.worlds); ++s)
      if (UpClosed(fr, s)) sets.push_back(s);
    std::map<std::string, unsigned> val;
    std::function<bool(std::size_t)> search = [&](std::size_t i) {
      if (i == names.size()) return !Forces(fr, val, 0, f);
      for (unsigned s : sets) {
        val[names[i]] = s;
        if (search(i + 1)) return true;
      }
      return false;
    };
    if (search(0)) return true;
  }
  return false;
}

inline IntFormula RandomInt(testkit::Rng& rng, int depth) {
  static const std::array<const char*, 3> kAtoms{"a", "b", "c"};
  if (depth <= 0 || testkit::Pick(rng, 4) == 0) {
    if (testkit::Pick(rng, 8) == 0) return IntFormula::Bottom();
    return IntFormula::Atom(kAtoms[testkit::Pick(rng, kAtoms.size())]);
  }
  switch (testkit::Pick(rng, 5)) {
    case 0: return IntFormula::Not(RandomInt(rng, depth - 1));
    case 1: return IntFormula::And(RandomInt(rng, depth - 1), RandomInt(rng, depth - 1));
    case 2: return IntFormula::Or(RandomInt(rng, depth - 1), RandomInt(rng, depth - 1));
    default: return IntFormula::Impl(RandomInt(rng, depth - 1), RandomInt(rng, depth - 1));
  }
}

}  // namespace kripke

#endif  // COL_TESTS_KRIPKE_HPP
