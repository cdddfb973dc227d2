// Deterministic random corpus for property tests: small models (optionally
// with non-discrete equivalence relations) and formulas over a fixed
// signature. All generation is seeded; reruns are identical.

#ifndef INQMC_TESTS_CORPUS_HPP
#define INQMC_TESTS_CORPUS_HPP

#include <random>
#include <string>
#include <vector>

#include "inqmc/enumerate.hpp"
#include "inqmc/model.hpp"
#include "inqmc/semantics.hpp"
#include "inqmc/syntax.hpp"

namespace inqmc::tests {

// P(1), Q(0), constant c, unary f (both non-rigid).
inline Signature corpus_signature() {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_predicate("Q", 0);
  sig.add_function("c", 0, /*rigid=*/false);
  sig.add_function("f", 1, /*rigid=*/false);
  return sig;
}

inline int rand_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Partition random_partition(std::mt19937& rng, int n) {
  std::vector<int> rgs(n, 0);
  int max_block = 0;
  for (int i = 1; i < n; ++i) {
    rgs[i] = rand_int(rng, 0, max_block + 1);
    max_block = std::max(max_block, rgs[i]);
  }
  return Partition::from_rgs(rgs);
}

// Random valid model. Predicate extensions are unions of orbit classes;
// function values stay inside the class fixed by the first tuple of each
// orbit, so congruence holds by construction. Rigid symbols factor through
// the join of all world partitions. With uniform_eqrel, one partition is
// shared by every world (so any state supports the rigidity premise).
inline InfoModel random_model(std::mt19937& rng, const Signature& sig,
                              int max_worlds, int max_domain, bool id_only,
                              bool uniform_eqrel = false) {
  InfoModel m;
  m.signature = sig;
  const int nw = rand_int(rng, 1, max_worlds);
  const int nd = rand_int(rng, 1, max_domain);
  for (int w = 0; w < nw; ++w) m.world_names.push_back("w" + std::to_string(w));
  for (int d = 0; d < nd; ++d) m.domain_names.push_back("d" + std::to_string(d));
  const Partition shared = random_partition(rng, nd);
  for (int w = 0; w < nw; ++w)
    m.eqrel.push_back(id_only ? Partition::discrete(nd)
                     : uniform_eqrel ? shared
                                     : random_partition(rng, nd));

  // Join of all local partitions: same block iff connected through any world.
  std::vector<int> join(nd);
  for (int d = 0; d < nd; ++d) join[d] = d;
  auto root = [&](int d) {
    while (join[d] != d) d = join[d] = join[join[d]];
    return d;
  };
  for (const Partition& eq : m.eqrel)
    for (int d = 0; d < nd; ++d)
      for (int e = d + 1; e < nd; ++e)
        if (eq.same(d, e)) join[root(e)] = root(d);

  m.interp.resize(nw);
  for (int w = 0; w < nw; ++w) {
    const Partition& eq = m.eqrel[w];
    for (const auto& pred : sig.predicates()) {
      const std::size_t rows = tuple_count(nd, pred.arity);
      std::vector<std::uint8_t> table(rows, 0);
      // Choose per orbit: canonical tuple decides for its whole class.
      for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> tuple = tuple_at(row, nd, pred.arity);
        std::vector<int> canon = tuple;
        for (int& v : canon) v = eq.block_of(v);
        const std::size_t canon_row = tuple_index(canon, nd);
        table[row] = canon_row == row ? static_cast<std::uint8_t>(rand_int(rng, 0, 1))
                                      : table[canon_row];
      }
      m.interp[w].predicates.push_back(std::move(table));
    }
    for (const auto& fn : sig.functions()) {
      const std::size_t rows = tuple_count(nd, fn.arity);
      std::vector<int> table(rows, 0);
      for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> tuple = tuple_at(row, nd, fn.arity);
        if (fn.rigid) {
          std::vector<int> canon = tuple;
          for (int& v : canon) v = root(v);
          const std::size_t canon_row = tuple_index(canon, nd);
          table[row] = canon_row == row ? rand_int(rng, 0, nd - 1)
                                        : table[canon_row];
          continue;
        }
        std::vector<int> canon = tuple;
        for (int& v : canon) v = eq.block_of(v);
        const std::size_t canon_row = tuple_index(canon, nd);
        if (canon_row == row) {
          table[row] = rand_int(rng, 0, nd - 1);
        } else {
          // Any member of the target's block keeps congruence.
          const int target_block = eq.block_of(table[canon_row]);
          std::vector<int> members;
          for (int d = 0; d < nd; ++d)
            if (eq.block_of(d) == target_block) members.push_back(d);
          table[row] = members[rand_int(rng, 0, static_cast<int>(members.size()) - 1)];
        }
      }
      m.interp[w].functions.push_back(std::move(table));
    }
  }
  // Rigid symbols: copy world 0's table everywhere.
  for (std::size_t f = 0; f < sig.functions().size(); ++f)
    if (sig.functions()[f].rigid)
      for (int w = 1; w < nw; ++w)
        m.interp[w].functions[f] = m.interp[0].functions[f];
  return m;
}

inline Term random_term(std::mt19937& rng, const Signature& sig,
                        const std::vector<std::string>& vars, int depth) {
  if (depth > 0 && rand_int(rng, 0, 2) == 0) {
    for (const auto& fn : sig.functions())
      if (fn.arity == 1)
        return Term::apply(fn.name, {random_term(rng, sig, vars, depth - 1)});
  }
  std::vector<Term> leaves;
  for (const auto& v : vars) leaves.push_back(Term::variable(v));
  for (const auto& fn : sig.functions())
    if (fn.arity == 0) leaves.push_back(Term::constant(fn.name));
  return leaves[rand_int(rng, 0, static_cast<int>(leaves.size()) - 1)];
}

// Random formula over the signature; every free variable comes from `vars`.
// With classical_only false, inquisitive operators appear with real weight.
inline Formula random_formula(std::mt19937& rng, const Signature& sig,
                              std::vector<std::string> vars, int depth,
                              bool classical_only) {
  const int leaf_roll = rand_int(rng, 0, 3);
  if (depth == 0 || leaf_roll == 0) {
    switch (rand_int(rng, 0, 3)) {
      case 0: {
        for (const auto& pred : sig.predicates()) {
          if (pred.arity == 0 && rand_int(rng, 0, 1) == 0)
            return Formula::atom(pred.name, {});
          if (pred.arity == 1)
            return Formula::atom(pred.name, {random_term(rng, sig, vars, 1)});
        }
        [[fallthrough]];
      }
      case 1:
        return Formula::equals(random_term(rng, sig, vars, 1),
                               random_term(rng, sig, vars, 1));
      case 2:
        return Formula::bottom();
      default: {
        for (const auto& pred : sig.predicates())
          if (pred.arity == 1)
            return Formula::atom(pred.name, {random_term(rng, sig, vars, 1)});
        return Formula::bottom();
      }
    }
  }
  const int connective = rand_int(rng, 0, classical_only ? 5 : 8);
  auto sub = [&](std::vector<std::string> scope = {}) {
    std::vector<std::string> inner = vars;
    for (auto& v : scope) inner.push_back(std::move(v));
    return random_formula(rng, sig, inner, depth - 1, classical_only);
  };
  const std::string bound = rand_int(rng, 0, 1) ? "u" : "v";
  switch (connective) {
    case 0:
      return Formula::conj(sub(), sub());
    case 1:
      return Formula::implies(sub(), sub());
    case 2:
      return make_not(sub());
    case 3: {
      std::vector<std::string> inner = vars;
      inner.push_back(bound);
      return Formula::forall(bound,
                             random_formula(rng, sig, inner, depth - 1,
                                            classical_only));
    }
    case 4: {
      std::vector<std::string> inner = vars;
      inner.push_back(bound);
      return make_exists(bound, random_formula(rng, sig, inner, depth - 1,
                                               classical_only));
    }
    case 5:
      return make_or(sub(), sub());
    case 6:
      return Formula::inq_disj(sub(), sub());
    case 7: {
      std::vector<std::string> inner = vars;
      inner.push_back(bound);
      return Formula::inq_exists(bound,
                                 random_formula(rng, sig, inner, depth - 1,
                                                classical_only));
    }
    default:
      return make_qmark(sub());
  }
}

inline Assignment random_assignment(std::mt19937& rng,
                                    const std::vector<std::string>& vars,
                                    int domain_size) {
  Assignment g;
  for (const auto& v : vars) g.set(v, rand_int(rng, 0, domain_size - 1));
  return g;
}

inline StateMask random_state(std::mt19937& rng, const InfoModel& m) {
  return std::uniform_int_distribution<StateMask>(0, m.full_state())(rng);
}

}  // namespace inqmc::tests

#endif  // INQMC_TESTS_CORPUS_HPP
