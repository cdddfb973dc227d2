#include "inqmc/semantics.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace inqmc {

// ── Term denotation (public, name-based) ────────────────────────────────────

int denote_term(const InfoModel& m, int world, const Assignment& g,
                const Term& t) {
  if (t.is_variable()) {
    const int* v = g.find(t.name());
    if (v == nullptr) throw EvalError("unbound variable: " + t.name());
    if (*v < 0 || *v >= m.domain_size())
      throw EvalError("assignment maps " + t.name() + " outside the domain");
    return *v;
  }
  const int fn = m.signature.function_index(t.name());
  if (fn < 0) throw EvalError("unknown function symbol: " + t.name());
  if (m.signature.functions()[fn].arity != static_cast<int>(t.args().size()))
    throw EvalError("arity mismatch for " + t.name());
  std::vector<int> args;
  args.reserve(t.args().size());
  for (const Term& arg : t.args())
    args.push_back(denote_term(m, world, g, arg));
  return m.function_value(world, fn, args);
}

// ── Evaluator internals ─────────────────────────────────────────────────────

namespace {

struct CompiledTerm {
  bool is_variable = false;
  int index = -1;  // variable slot or function index
  std::vector<CompiledTerm> args;
};

struct PlanNode {
  FormulaKind kind{};
  int pred = -1;                    // Atom
  std::vector<CompiledTerm> terms;  // Atom args or the two equality sides
  int child0 = -1, child1 = -1;
  int var_slot = -1;  // quantifiers
  bool classical = false;
  std::vector<int> free_slots;          // sorted
  std::vector<std::uint64_t> weights;   // packing weights, empty if unpackable
  bool packable = true;
};

struct MemoKey {
  std::uint32_t node;
  StateMask mask;
  std::uint64_t env;
  bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const {
    std::uint64_t h = k.mask * 0x9e3779b97f4a7c15ull;
    h ^= (k.env + 0x517cc1b727220a95ull) + (h << 6) + (h >> 2);
    h ^= (static_cast<std::uint64_t>(k.node) * 0xff51afd7ed558ccdull) + (h << 6);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

struct SupportEvaluator::Impl {
  const InfoModel& model;
  Formula root;  // keeps the shared nodes alive
  EvalOptions opts;

  std::vector<PlanNode> nodes;
  int root_node = -1;
  std::vector<std::string> slot_names;
  std::vector<int> env;  // current values per slot, -1 = unset
  std::uint64_t steps = 0;

  std::unordered_map<MemoKey, bool, MemoHash> memo;
  std::unordered_map<MemoKey, StateMask, MemoHash> truth_sets;

  Impl(const InfoModel& m, const Formula& f, EvalOptions o)
      : model(m), root(f), opts(o) {
    std::map<std::string, int> slots;
    root_node = compile(f, slots);
    env.assign(slot_names.size(), -1);
    if (opts.cache) {
      memo.reserve(1 << 12);
      truth_sets.reserve(1 << 8);
    }
  }

  int slot_for(const std::string& name, std::map<std::string, int>& slots) {
    auto it = slots.find(name);
    if (it != slots.end()) return it->second;
    int slot = static_cast<int>(slot_names.size());
    slot_names.push_back(name);
    slots.emplace(name, slot);
    return slot;
  }

  CompiledTerm compile_term(const Term& t, std::map<std::string, int>& slots,
                            std::vector<int>& free_slots) {
    CompiledTerm ct;
    if (t.is_variable()) {
      ct.is_variable = true;
      ct.index = slot_for(t.name(), slots);
      free_slots.push_back(ct.index);
      return ct;
    }
    ct.index = model.signature.function_index(t.name());
    if (ct.index < 0)
      throw EvalError("unknown function symbol: " + t.name());
    if (model.signature.functions()[ct.index].arity !=
        static_cast<int>(t.args().size()))
      throw EvalError("arity mismatch for " + t.name());
    for (const Term& arg : t.args())
      ct.args.push_back(compile_term(arg, slots, free_slots));
    return ct;
  }

  // Post-order compilation. Structurally shared subtrees (same node pointer)
  // compile once and share cache entries.
  std::map<const void*, int> seen;
  int compile(const Formula& f, std::map<std::string, int>& slots) {
    auto it = seen.find(f.id());
    if (it != seen.end()) return it->second;

    PlanNode node;
    node.kind = f.kind();
    std::vector<int> free_slots;
    switch (f.kind()) {
      case FormulaKind::Atom: {
        node.pred = model.signature.predicate_index(f.predicate());
        if (node.pred < 0)
          throw EvalError("unknown predicate symbol: " + f.predicate());
        if (model.signature.predicates()[node.pred].arity !=
            static_cast<int>(f.terms().size()))
          throw EvalError("arity mismatch for " + f.predicate());
        for (const Term& t : f.terms())
          node.terms.push_back(compile_term(t, slots, free_slots));
        node.classical = true;
        break;
      }
      case FormulaKind::Equals: {
        node.terms.push_back(compile_term(f.terms()[0], slots, free_slots));
        node.terms.push_back(compile_term(f.terms()[1], slots, free_slots));
        node.classical = true;
        break;
      }
      case FormulaKind::Bottom:
        node.classical = true;
        break;
      case FormulaKind::And:
      case FormulaKind::InqDisj:
      case FormulaKind::Implies: {
        node.child0 = compile(f.left(), slots);
        node.child1 = compile(f.right(), slots);
        free_slots = nodes[node.child0].free_slots;
        free_slots.insert(free_slots.end(), nodes[node.child1].free_slots.begin(),
                          nodes[node.child1].free_slots.end());
        node.classical = f.kind() != FormulaKind::InqDisj &&
                         nodes[node.child0].classical &&
                         nodes[node.child1].classical;
        break;
      }
      case FormulaKind::Forall:
      case FormulaKind::InqExists: {
        node.var_slot = slot_for(f.var(), slots);
        node.child0 = compile(f.body(), slots);
        free_slots = nodes[node.child0].free_slots;
        std::erase(free_slots, node.var_slot);
        node.classical = f.kind() == FormulaKind::Forall &&
                         nodes[node.child0].classical;
        break;
      }
    }
    std::sort(free_slots.begin(), free_slots.end());
    free_slots.erase(std::unique(free_slots.begin(), free_slots.end()),
                     free_slots.end());
    node.free_slots = std::move(free_slots);

    // Mixed-radix packing of the relevant assignment values; nodes whose
    // environment cannot fit 64 bits are evaluated uncached.
    const std::uint64_t nd = static_cast<std::uint64_t>(model.domain_size());
    std::uint64_t weight = 1;
    for (std::size_t i = 0; i < node.free_slots.size(); ++i) {
      node.weights.push_back(weight);
      if (weight > std::numeric_limits<std::uint64_t>::max() / nd) {
        node.packable = false;
        node.weights.clear();
        break;
      }
      weight *= nd;
    }

    int id = static_cast<int>(nodes.size());
    nodes.push_back(std::move(node));
    seen.emplace(f.id(), id);
    return id;
  }

  void step() {
    if (++steps > opts.budget)
      throw BudgetError("evaluation budget exceeded", steps, opts.budget);
  }

  std::uint64_t packed_env(const PlanNode& n) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < n.free_slots.size(); ++i)
      key += n.weights[i] * static_cast<std::uint64_t>(env[n.free_slots[i]]);
    return key;
  }

  int denote(const CompiledTerm& t, int world) {
    if (t.is_variable) {
      int v = env[t.index];
      if (v < 0) throw EvalError("unbound variable: " + slot_names[t.index]);
      return v;
    }
    if (t.args.empty()) return model.interp[world].functions[t.index][0];
    std::vector<int> args;
    args.reserve(t.args.size());
    for (const CompiledTerm& arg : t.args) args.push_back(denote(arg, world));
    return model.function_value(world, t.index, args);
  }

  bool atom_true_at(const PlanNode& n, int world) {
    if (n.kind == FormulaKind::Equals)
      return model.eqrel[world].same(denote(n.terms[0], world),
                                     denote(n.terms[1], world));
    if (n.terms.empty())
      return model.interp[world].predicates[n.pred][0] != 0;
    std::vector<int> args;
    args.reserve(n.terms.size());
    for (const CompiledTerm& t : n.terms) args.push_back(denote(t, world));
    return model.predicate_holds(world, n.pred, args);
  }

  // Truth at a single world. Sound for classical nodes by
  // truth-conditionality; used only to build truth-sets.
  bool world_true(int id, int world) {
    step();
    const PlanNode& n = nodes[id];
    switch (n.kind) {
      case FormulaKind::Atom:
      case FormulaKind::Equals:
        return atom_true_at(n, world);
      case FormulaKind::Bottom:
        return false;
      case FormulaKind::And:
        return world_true(n.child0, world) && world_true(n.child1, world);
      case FormulaKind::Implies:
        return !world_true(n.child0, world) || world_true(n.child1, world);
      case FormulaKind::Forall: {
        const int saved = env[n.var_slot];
        bool all = true;
        for (int d = 0; d < model.domain_size() && all; ++d) {
          env[n.var_slot] = d;
          all = world_true(n.child0, world);
        }
        env[n.var_slot] = saved;
        return all;
      }
      case FormulaKind::InqDisj:
      case FormulaKind::InqExists:
        throw EvalError("internal: truth-set of a non-classical node");
    }
    return false;
  }

  StateMask truth_set(int id) {
    const PlanNode& n = nodes[id];
    const bool cacheable = opts.cache && n.packable;
    MemoKey key{static_cast<std::uint32_t>(id), 0, cacheable ? packed_env(n) : 0};
    if (cacheable) {
      auto it = truth_sets.find(key);
      if (it != truth_sets.end()) return it->second;
    }
    StateMask ts = 0;
    for (int w = 0; w < model.world_count(); ++w)
      if (world_true(id, w)) ts |= StateMask{1} << w;
    if (cacheable) truth_sets.emplace(key, ts);
    return ts;
  }

  bool eval(int id, StateMask s) {
    step();
    if (s == 0) return true;  // the empty state supports every formula
    const PlanNode& n = nodes[id];

    if (opts.classical_shortcut && n.classical &&
        n.kind != FormulaKind::Bottom) {
      StateMask ts = truth_set(id);
      return (ts & s) == s;
    }

    const bool cacheable = opts.cache && n.packable;
    MemoKey key{static_cast<std::uint32_t>(id), s,
                cacheable ? packed_env(n) : 0};
    if (cacheable) {
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }

    bool verdict = false;
    switch (n.kind) {
      case FormulaKind::Atom:
      case FormulaKind::Equals: {
        verdict = true;
        for (int w = 0; w < model.world_count() && verdict; ++w)
          if (s & (StateMask{1} << w)) {
            step();
            verdict = atom_true_at(n, w);
          }
        break;
      }
      case FormulaKind::Bottom:
        verdict = false;  // s != 0 here
        break;
      case FormulaKind::And:
        verdict = eval(n.child0, s) && eval(n.child1, s);
        break;
      case FormulaKind::InqDisj:
        verdict = eval(n.child0, s) || eval(n.child1, s);
        break;
      case FormulaKind::Implies: {
        if (opts.implication_shortcut && nodes[n.child0].classical) {
          // For a classical antecedent, only substates of s within its
          // truth-set can support it; by persistency of the consequent the
          // largest such substate decides.
          StateMask ts = truth_set(n.child0);
          verdict = eval(n.child1, s & ts);
          break;
        }
        verdict = true;
        for (StateMask t = s;; t = (t - 1) & s) {
          step();
          if (eval(n.child0, t) && !eval(n.child1, t)) {
            verdict = false;
            break;
          }
          if (t == 0) break;
        }
        break;
      }
      case FormulaKind::Forall: {
        const int saved = env[n.var_slot];
        verdict = true;
        for (int d = 0; d < model.domain_size() && verdict; ++d) {
          env[n.var_slot] = d;
          verdict = eval(n.child0, s);
        }
        env[n.var_slot] = saved;
        break;
      }
      case FormulaKind::InqExists: {
        const int saved = env[n.var_slot];
        verdict = false;
        for (int d = 0; d < model.domain_size() && !verdict; ++d) {
          env[n.var_slot] = d;
          verdict = eval(n.child0, s);
        }
        env[n.var_slot] = saved;
        break;
      }
    }
    if (cacheable) memo.emplace(key, verdict);
    return verdict;
  }
};

// ── SupportEvaluator ────────────────────────────────────────────────────────

SupportEvaluator::SupportEvaluator(const InfoModel& m, const Formula& f,
                                   EvalOptions opts)
    : impl_(std::make_unique<Impl>(m, f, opts)) {}

SupportEvaluator::~SupportEvaluator() = default;
SupportEvaluator::SupportEvaluator(SupportEvaluator&&) noexcept = default;
SupportEvaluator& SupportEvaluator::operator=(SupportEvaluator&&) noexcept =
    default;

bool SupportEvaluator::supports(StateMask s, const Assignment& g) {
  if ((s & impl_->model.full_state()) != s)
    throw EvalError("state refers to worlds outside the model");
  std::fill(impl_->env.begin(), impl_->env.end(), -1);
  for (const auto& [name, value] : g.values) {
    for (std::size_t slot = 0; slot < impl_->slot_names.size(); ++slot) {
      if (impl_->slot_names[slot] == name) {
        if (value < 0 || value >= impl_->model.domain_size())
          throw EvalError("assignment maps " + name + " outside the domain");
        impl_->env[slot] = value;
      }
    }
  }
  return impl_->eval(impl_->root_node, s);
}

std::uint64_t SupportEvaluator::steps() const { return impl_->steps; }

// ── Free functions ──────────────────────────────────────────────────────────

bool supports(const InfoModel& m, StateMask s, const Assignment& g,
              const Formula& f, const EvalOptions& opts) {
  SupportEvaluator eval(m, f, opts);
  return eval.supports(s, g);
}

bool truth_at(const InfoModel& m, int world, const Assignment& g,
              const Formula& f, const EvalOptions& opts) {
  if (world < 0 || world >= m.world_count())
    throw EvalError("world index out of range");
  SupportEvaluator eval(m, f, opts);
  return eval.truth_at(world, g);
}

bool check_truth_conditional(const InfoModel& m, const Assignment& g,
                             const Formula& f, const EvalOptions& opts) {
  SupportEvaluator eval(m, f, opts);
  StateMask truths = 0;
  for (int w = 0; w < m.world_count(); ++w)
    if (eval.truth_at(w, g)) truths |= StateMask{1} << w;
  const StateMask full = m.full_state();
  for (StateMask s = 0; s <= full; ++s) {
    if (eval.supports(s, g) != ((truths & s) == s)) return false;
    if (s == full) break;
  }
  return true;
}

}  // namespace inqmc
