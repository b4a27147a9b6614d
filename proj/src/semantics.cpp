#include "col/semantics.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "col/error.hpp"

namespace col {
namespace {

template <typename T>
struct VectorHash {
  std::size_t operator()(const std::vector<T>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const T& x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

Game Leaf(Player winner) {
  GameBuilder b;
  b.AddState(winner);
  return std::move(b).Finish();
}

// Copies g into b with every label prefixed. Returns g's initial state in b.
StateId Embed(GameBuilder& b, const Game& g, const std::string& prefix) {
  const auto base = static_cast<std::uint32_t>(b.size());
  std::vector<std::uint32_t> labels(g.label_count());
  for (std::uint32_t i = 0; i < labels.size(); ++i) labels[i] = b.Intern(prefix + g.Label(i));
  for (std::uint32_t s = 0; s < g.size(); ++s) b.AddState(g.StopWinner(StateId{s}));
  for (std::uint32_t s = 0; s < g.size(); ++s) {
    for (const auto& e : g.Edges(StateId{s}))
      b.AddEdge(StateId{base + s}, e.mover, labels[e.label], StateId{base + e.to.index});
  }
  return StateId{base};
}

std::vector<std::uint32_t> PrefixedLabels(GameBuilder& b, const Game& g,
                                          const std::string& prefix) {
  std::vector<std::uint32_t> out(g.label_count());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = b.Intern(prefix + g.Label(i));
  return out;
}

std::uint32_t EvalTerm(const Term& t, const Interpretation& interp) {
  switch (t.kind) {
    case Term::Kind::kVariable:
      throw BuildError("free variable '" + t.name + "'");
    case Term::Kind::kNumeral:
      if (t.value >= interp.universe())
        throw BuildError("numeral " + std::to_string(t.value) + " outside the universe");
      return t.value;
    case Term::Kind::kApplication: {
      std::vector<std::uint32_t> args;
      for (const Term& a : t.args) args.push_back(EvalTerm(a, interp));
      if (!interp.HasFunction(t.name, args.size())) {
        throw BuildError("undeclared function " + SymbolKey(t.name, args.size()));
      }
      return interp.Function(t.name, args);
    }
  }
  return 0;
}

std::vector<std::uint32_t> EvalArgs(const Formula& f, const Interpretation& interp) {
  std::vector<std::uint32_t> args;
  for (const Term& t : f.terms()) args.push_back(EvalTerm(t, interp));
  return args;
}

// Bitstring address packed with a sentinel bit: "" -> 1, "0" -> 2, "1" -> 3.
std::uint32_t PackAddress(const std::string& bits) {
  std::uint32_t code = 1;
  for (char c : bits) code = (code << 1) | (c == '1' ? 1u : 0u);
  return code;
}

std::string UnpackAddress(std::uint32_t code) {
  std::string bits;
  while (code > 1) {
    bits.push_back((code & 1u) ? '1' : '0');
    code >>= 1;
  }
  std::reverse(bits.begin(), bits.end());
  return bits;
}

Game BuildImpl(const Formula& f, const Interpretation& interp, const BuildOptions& opt);

std::vector<Game> Instances(const std::string& variable, const Formula& body,
                            const Interpretation& interp, const BuildOptions& opt) {
  std::vector<Game> out;
  out.reserve(interp.universe());
  for (std::uint32_t i = 0; i < interp.universe(); ++i) {
    out.push_back(BuildImpl(Substitute(body, variable, i, interp.universe()), interp, opt));
  }
  return out;
}

Game BuildImpl(const Formula& f, const Interpretation& interp, const BuildOptions& opt) {
  const auto bool_leaf = [](bool v) { return Leaf(v ? Player::kMachine : Player::kEnvironment); };
  switch (f.op()) {
    case Op::kTop:
      return Leaf(Player::kMachine);
    case Op::kBottom:
      return Leaf(Player::kEnvironment);
    case Op::kEquality:
      return bool_leaf(EvalTerm(f.terms()[0], interp) == EvalTerm(f.terms()[1], interp));
    case Op::kElementaryAtom: {
      const auto args = EvalArgs(f, interp);
      if (!interp.HasPredicate(f.name(), args.size()))
        throw BuildError("undeclared predicate " + SymbolKey(f.name(), args.size()));
      return bool_leaf(interp.Predicate(f.name(), args));
    }
    case Op::kGeneralAtom: {
      const auto args = EvalArgs(f, interp);
      if (!interp.HasGames(f.name(), args.size()))
        throw BuildError("undeclared general atom " + SymbolKey(f.name(), args.size()));
      return TreeGame(interp.GeneralGame(f.name(), args));
    }
    case Op::kNeg:
      return OpNeg(BuildImpl(f.child(0), interp, opt));
    case Op::kParAnd:
    case Op::kParOr:
      return OpParallel(f.op() == Op::kParAnd ? Junction::kConj : Junction::kDisj,
                        BuildImpl(f.child(0), interp, opt), BuildImpl(f.child(1), interp, opt),
                        opt.max_states);
    case Op::kParImpl:
      return OpParallel(Junction::kDisj, OpNeg(BuildImpl(f.child(0), interp, opt)),
                        BuildImpl(f.child(1), interp, opt), opt.max_states);
    case Op::kChoAnd:
    case Op::kChoOr:
      return OpChoice(f.op() == Op::kChoAnd ? Junction::kConj : Junction::kDisj,
                      BuildImpl(f.child(0), interp, opt), BuildImpl(f.child(1), interp, opt),
                      opt.max_states);
    case Op::kChoAll:
    case Op::kChoEx:
      return OpChoiceQuant(f.op() == Op::kChoAll ? Junction::kConj : Junction::kDisj, f.name(),
                           f.child(0), interp, opt);
    case Op::kBlindAll:
    case Op::kBlindEx:
      return OpBlindQuant(f.op() == Op::kBlindAll ? Junction::kConj : Junction::kDisj, f.name(),
                          f.child(0), interp, opt);
    case Op::kBrec:
    case Op::kCorec:
      return OpBrec(f.op() == Op::kBrec ? Junction::kConj : Junction::kDisj,
                    BuildImpl(f.child(0), interp, opt), opt.budget, opt.max_states);
    case Op::kBrimpl:
    case Op::kBrefute: {
      const Game antecedent =
          OpNeg(OpBrec(Junction::kConj, BuildImpl(f.child(0), interp, opt), opt.budget,
                       opt.max_states));
      const Game consequent = f.op() == Op::kBrimpl ? BuildImpl(f.child(1), interp, opt)
                                                    : Leaf(Player::kEnvironment);
      return OpParallel(Junction::kDisj, antecedent, consequent, opt.max_states);
    }
  }
  throw BuildError("unknown operator");
}

}  // namespace

std::string RenderAddress(std::string_view bits) {
  return bits.empty() ? std::string("ε") : std::string(bits);
}

Game OpNeg(const Game& g) {
  GameBuilder b;
  std::vector<std::uint32_t> labels(g.label_count());
  for (std::uint32_t i = 0; i < labels.size(); ++i) labels[i] = b.Intern(g.Label(i));
  for (std::uint32_t s = 0; s < g.size(); ++s) b.AddState(Opposite(g.StopWinner(StateId{s})));
  for (std::uint32_t s = 0; s < g.size(); ++s) {
    for (const auto& e : g.Edges(StateId{s}))
      b.AddEdge(StateId{s}, Opposite(e.mover), labels[e.label], e.to);
  }
  return std::move(b).Finish();
}

Game OpChoice(Junction kind, std::span<const Game> operands, std::size_t max_states) {
  std::size_t total = 1;
  for (const Game& g : operands) total += g.size();
  if (max_states != 0 && total > max_states)
    throw LimitExceeded("game construction exceeded " + std::to_string(max_states) + " states");
  // The chooser loses if it never chooses.
  const Player chooser = kind == Junction::kConj ? Player::kEnvironment : Player::kMachine;
  GameBuilder b;
  const StateId root = b.AddState(Opposite(chooser));
  for (std::size_t i = 0; i < operands.size(); ++i) {
    const StateId child = Embed(b, operands[i], "");
    b.AddEdge(root, chooser, std::to_string(i), child);
  }
  return std::move(b).Finish();
}

Game OpChoice(Junction kind, const Game& left, const Game& right, std::size_t max_states) {
  const Game operands[] = {left, right};
  return OpChoice(kind, operands, max_states);
}

Game OpChoiceQuant(Junction kind, const std::string& variable, const Formula& body,
                   const Interpretation& interp, const BuildOptions& options) {
  const auto instances = Instances(variable, body, interp, options);
  return OpChoice(kind, instances, options.max_states);
}

Game OpParallel(Junction kind, const Game& left, const Game& right, std::size_t max_states) {
  GameBuilder b(max_states);
  const auto left_labels = PrefixedLabels(b, left, "0.");
  const auto right_labels = PrefixedLabels(b, right, "1.");
  std::unordered_map<std::uint64_t, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId l, StateId r) {
    const std::uint64_t key = (static_cast<std::uint64_t>(l.index) << 32) | r.index;
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const bool lw = left.StopWinner(l) == Player::kMachine;
    const bool rw = right.StopWinner(r) == Player::kMachine;
    const bool won = kind == Junction::kConj ? (lw && rw) : (lw || rw);
    const StateId id = b.AddState(won ? Player::kMachine : Player::kEnvironment);
    ids.emplace(key, id);
    queue.emplace_back(l, r);
    return id;
  };
  intern(left.initial(), right.initial());
  while (!queue.empty()) {
    const auto [l, r] = queue.front();
    queue.pop_front();
    const StateId from = ids.at((static_cast<std::uint64_t>(l.index) << 32) | r.index);
    for (const auto& e : left.Edges(l)) b.AddEdge(from, e.mover, left_labels[e.label], intern(e.to, r));
    for (const auto& e : right.Edges(r)) b.AddEdge(from, e.mover, right_labels[e.label], intern(l, e.to));
  }
  return std::move(b).Finish();
}

Game OpBlind(Junction kind, std::span<const Game> instances, std::size_t max_states) {
  if (instances.empty()) throw BuildError("blind quantifier over an empty universe");
  if (instances.size() == 1) return instances[0];
  GameBuilder b(max_states);
  const Game& first = instances[0];
  std::vector<std::uint32_t> labels(first.label_count());
  for (std::uint32_t i = 0; i < labels.size(); ++i) labels[i] = b.Intern(first.Label(i));

  using Key = std::vector<std::uint32_t>;
  std::unordered_map<Key, StateId, VectorHash<std::uint32_t>> ids;
  std::vector<std::pair<std::uint32_t, Move>> parent;  // for error messages
  std::deque<Key> queue;
  auto intern = [&](Key key, std::uint32_t from, Move via) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    bool all = true, any = false;
    for (std::size_t i = 0; i < key.size(); ++i) {
      const bool won = instances[i].StopWinner(StateId{key[i]}) == Player::kMachine;
      all = all && won;
      any = any || won;
    }
    const StateId id = b.AddState((kind == Junction::kConj ? all : any) ? Player::kMachine
                                                                        : Player::kEnvironment);
    ids.emplace(key, id);
    parent.emplace_back(from, std::move(via));
    queue.push_back(std::move(key));
    return id;
  };
  auto history = [&](std::uint32_t id) {
    Run run;
    while (id != 0) {
      run.push_back(parent[id].second);
      id = parent[id].first;
    }
    std::reverse(run.begin(), run.end());
    return run;
  };

  intern(Key(instances.size(), 0), 0, Move{});
  while (!queue.empty()) {
    const Key key = std::move(queue.front());
    queue.pop_front();
    const StateId from = ids.at(key);
    const auto base = first.Edges(StateId{key[0]});
    for (std::size_t i = 1; i < instances.size(); ++i) {
      const auto other = instances[i].Edges(StateId{key[i]});
      bool same = other.size() == base.size();
      for (std::size_t k = 0; same && k < base.size(); ++k) {
        same = other[k].mover == base[k].mover &&
               instances[i].Label(other[k].label) == first.Label(base[k].label);
      }
      if (!same) {
        throw BuildError("blind quantifier instances 0 and " + std::to_string(i) +
                         " are not unistructural after [" + RenderRun(history(from.index)) + "]");
      }
    }
    for (std::size_t k = 0; k < base.size(); ++k) {
      Key next(key.size());
      for (std::size_t i = 0; i < instances.size(); ++i)
        next[i] = instances[i].Edges(StateId{key[i]})[k].to.index;
      const StateId to = intern(std::move(next), from.index,
                                Move{base[k].mover, first.Label(base[k].label)});
      b.AddEdge(from, base[k].mover, labels[base[k].label], to);
    }
  }
  return std::move(b).Finish();
}

Game OpBlindQuant(Junction kind, const std::string& variable, const Formula& body,
                  const Interpretation& interp, const BuildOptions& options) {
  const auto instances = Instances(variable, body, interp, options);
  return OpBlind(kind, instances, options.max_states);
}

Game OpBrec(Junction kind, const Game& inner, Budget budget, std::size_t max_states) {
  if (budget.max_splits > 24) throw BuildError("recurrence budget above 24 is not supported");
  const Player splitter = kind == Junction::kConj ? Player::kEnvironment : Player::kMachine;
  GameBuilder b(max_states);

  // A position is the list of live sessions (packed address, inner state)
  // sorted by address text.
  using Key = std::vector<std::uint64_t>;
  auto address = [](std::uint64_t entry) { return static_cast<std::uint32_t>(entry >> 32); };
  auto state = [](std::uint64_t entry) { return StateId{static_cast<std::uint32_t>(entry)}; };
  auto entry = [](std::uint32_t addr, StateId s) {
    return (static_cast<std::uint64_t>(addr) << 32) | s.index;
  };
  auto sorted = [&](Key k) {
    std::sort(k.begin(), k.end(), [&](std::uint64_t x, std::uint64_t y) {
      return UnpackAddress(address(x)) < UnpackAddress(address(y));
    });
    return k;
  };

  std::unordered_map<Key, StateId, VectorHash<std::uint64_t>> ids;
  std::deque<Key> queue;
  auto intern = [&](Key key) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    bool all = true, any = false;
    for (std::uint64_t e : key) {
      const bool won = inner.StopWinner(state(e)) == Player::kMachine;
      all = all && won;
      any = any || won;
    }
    const StateId id = b.AddState((kind == Junction::kConj ? all : any) ? Player::kMachine
                                                                        : Player::kEnvironment);
    ids.emplace(key, id);
    queue.push_back(std::move(key));
    return id;
  };

  intern(Key{entry(PackAddress(""), inner.initial())});
  while (!queue.empty()) {
    const Key key = std::move(queue.front());
    queue.pop_front();
    const StateId from = ids.at(key);
    const std::uint32_t splits = static_cast<std::uint32_t>(key.size() - 1);
    for (std::size_t i = 0; i < key.size(); ++i) {
      const std::string bits = UnpackAddress(address(key[i]));
      const std::string rendered = RenderAddress(bits);
      if (splits < budget.max_splits) {
        Key next = key;
        next[i] = entry(PackAddress(bits + "0"), state(key[i]));
        next.push_back(entry(PackAddress(bits + "1"), state(key[i])));
        b.AddEdge(from, splitter, "split:" + rendered, intern(sorted(std::move(next))));
      }
      for (const auto& e : inner.Edges(state(key[i]))) {
        Key next = key;
        next[i] = entry(address(key[i]), e.to);
        b.AddEdge(from, e.mover, rendered + "." + inner.Label(e.label), intern(std::move(next)));
      }
    }
  }
  return std::move(b).Finish();
}

Game Build(const Formula& f, const Interpretation& interp, const BuildOptions& options) {
  const auto free = FreeVariables(f);
  if (!free.empty()) throw BuildError("formula is not closed: free variable '" + *free.begin() + "'");
  return BuildImpl(f, interp, options);
}

}  // namespace col
