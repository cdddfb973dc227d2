#include "inqmc/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace inqmc {

std::size_t tuple_count(int domain_size, int arity) {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(domain_size);
  return n;
}

std::size_t tuple_index(std::span<const int> tuple, int domain_size) {
  std::size_t idx = 0;
  for (int v : tuple) idx = idx * static_cast<std::size_t>(domain_size) + v;
  return idx;
}

std::vector<int> tuple_at(std::size_t index, int domain_size, int arity) {
  std::vector<int> tuple(arity, 0);
  for (int i = arity - 1; i >= 0; --i) {
    tuple[i] = static_cast<int>(index % domain_size);
    index /= domain_size;
  }
  return tuple;
}

// ── Partition ───────────────────────────────────────────────────────────────

Partition Partition::discrete(int n) {
  Partition p;
  p.rep_.resize(n);
  std::iota(p.rep_.begin(), p.rep_.end(), 0);
  return p;
}

Partition Partition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  Partition p;
  p.rep_.assign(n, -1);
  for (const auto& block : blocks) {
    if (block.empty()) throw ValidationError("empty partition block");
    int least = *std::min_element(block.begin(), block.end());
    for (int e : block) {
      if (e < 0 || e >= n)
        throw ValidationError("partition element out of range");
      if (p.rep_[e] != -1)
        throw ValidationError("partition blocks overlap");
      p.rep_[e] = least;
    }
  }
  // Unlisted elements form singleton blocks.
  for (int e = 0; e < n; ++e)
    if (p.rep_[e] == -1) p.rep_[e] = e;
  return p;
}

Partition Partition::from_rgs(std::span<const int> rgs) {
  Partition p;
  const int n = static_cast<int>(rgs.size());
  std::vector<int> first_of_block;
  p.rep_.resize(n);
  for (int e = 0; e < n; ++e) {
    int block = rgs[e];
    if (block == static_cast<int>(first_of_block.size()))
      first_of_block.push_back(e);
    else if (block > static_cast<int>(first_of_block.size()))
      throw ValidationError("invalid restricted growth string");
    p.rep_[e] = first_of_block[block];
  }
  return p;
}

bool Partition::is_discrete() const {
  for (int e = 0; e < size(); ++e)
    if (rep_[e] != e) return false;
  return true;
}

int Partition::block_count() const {
  int count = 0;
  for (int e = 0; e < size(); ++e)
    if (rep_[e] == e) ++count;
  return count;
}

std::vector<int> Partition::representatives() const {
  std::vector<int> reps;
  for (int e = 0; e < size(); ++e)
    if (rep_[e] == e) reps.push_back(e);
  return reps;
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::map<int, std::vector<int>> by_rep;
  for (int e = 0; e < size(); ++e) by_rep[rep_[e]].push_back(e);
  std::vector<std::vector<int>> out;
  out.reserve(by_rep.size());
  for (auto& [rep, members] : by_rep) out.push_back(std::move(members));
  return out;
}

// ── InfoModel ───────────────────────────────────────────────────────────────

int InfoModel::world_index(std::string_view name) const {
  for (int w = 0; w < world_count(); ++w)
    if (world_names[w] == name) return w;
  throw EvalError("unknown world name: " + std::string(name));
}

int InfoModel::domain_index(std::string_view name) const {
  for (int d = 0; d < domain_size(); ++d)
    if (domain_names[d] == name) return d;
  throw EvalError("unknown individual name: " + std::string(name));
}

static void check_unique_names(const std::vector<std::string>& names,
                               const char* what) {
  std::set<std::string_view> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second)
      throw ValidationError(std::string("duplicate ") + what + " name: " + n);
}

void validate_model(const InfoModel& m) {
  const int nw = m.world_count();
  const int nd = m.domain_size();
  if (nw < 1) throw ValidationError("model must have at least one world");
  if (nd < 1) throw ValidationError("model must have a non-empty domain");
  if (nw > kMaxWorlds)
    throw ValidationError("model exceeds the " + std::to_string(kMaxWorlds) +
                          "-world limit");
  check_unique_names(m.world_names, "world");
  check_unique_names(m.domain_names, "individual");
  if (static_cast<int>(m.interp.size()) != nw)
    throw ValidationError("interpretation table count differs from world count");
  if (static_cast<int>(m.eqrel.size()) != nw)
    throw ValidationError("equivalence relation count differs from world count");

  const auto& preds = m.signature.predicates();
  const auto& fns = m.signature.functions();
  for (int w = 0; w < nw; ++w) {
    const WorldInterp& iw = m.interp[w];
    if (m.eqrel[w].size() != nd)
      throw ValidationError("equivalence relation at world " +
                            m.world_names[w] + " has wrong domain size");
    if (iw.predicates.size() != preds.size() || iw.functions.size() != fns.size())
      throw ValidationError("interpretation at world " + m.world_names[w] +
                            " does not cover the signature");
    for (std::size_t p = 0; p < preds.size(); ++p)
      if (iw.predicates[p].size() != tuple_count(nd, preds[p].arity))
        throw ValidationError("predicate table for " + preds[p].name +
                              " at world " + m.world_names[w] +
                              " has wrong size");
    for (std::size_t f = 0; f < fns.size(); ++f) {
      if (iw.functions[f].size() != tuple_count(nd, fns[f].arity))
        throw ValidationError("function table for " + fns[f].name +
                              " at world " + m.world_names[w] +
                              " is not total");
      for (int v : iw.functions[f])
        if (v < 0 || v >= nd)
          throw ValidationError("function table for " + fns[f].name +
                                " at world " + m.world_names[w] +
                                " maps outside the domain");
    }
  }

  // Rigid function symbols must be interpreted identically at every world.
  for (std::size_t f = 0; f < fns.size(); ++f) {
    if (!fns[f].rigid) continue;
    for (int w = 1; w < nw; ++w)
      if (m.interp[w].functions[f] != m.interp[0].functions[f])
        throw ValidationError("rigid symbol " + fns[f].name +
                              " varies between worlds " + m.world_names[0] +
                              " and " + m.world_names[w]);
  }

  // Congruence: componentwise-related tuples agree on predicate membership,
  // and function values of related tuples are related. It is enough to check
  // tuple pairs that differ in a single coordinate by related elements;
  // general related pairs are chains of such steps.
  for (int w = 0; w < nw; ++w) {
    const Partition& eq = m.eqrel[w];
    if (eq.is_discrete()) continue;
    std::vector<std::pair<int, int>> related;
    for (int d = 0; d < nd; ++d)
      for (int e = d + 1; e < nd; ++e)
        if (eq.same(d, e)) related.emplace_back(d, e);

    for (std::size_t p = 0; p < preds.size(); ++p) {
      const int arity = preds[p].arity;
      const auto& table = m.interp[w].predicates[p];
      const std::size_t rows = tuple_count(nd, arity);
      for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> tuple = tuple_at(row, nd, arity);
        for (int pos = 0; pos < arity; ++pos) {
          for (auto [d, e] : related) {
            if (tuple[pos] != d) continue;
            std::vector<int> other = tuple;
            other[pos] = e;
            if (table[row] != table[tuple_index(other, nd)])
              throw ValidationError(
                  "congruence violation at world " + m.world_names[w] +
                  ": predicate " + preds[p].name + " separates " +
                  m.domain_names[d] + " ~ " + m.domain_names[e]);
          }
        }
      }
    }
    for (std::size_t f = 0; f < fns.size(); ++f) {
      const int arity = fns[f].arity;
      const auto& table = m.interp[w].functions[f];
      const std::size_t rows = tuple_count(nd, arity);
      for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> tuple = tuple_at(row, nd, arity);
        for (int pos = 0; pos < arity; ++pos) {
          for (auto [d, e] : related) {
            if (tuple[pos] != d) continue;
            std::vector<int> other = tuple;
            other[pos] = e;
            if (!eq.same(table[row], table[tuple_index(other, nd)]))
              throw ValidationError(
                  "congruence violation at world " + m.world_names[w] +
                  ": function " + fns[f].name + " separates " +
                  m.domain_names[d] + " ~ " + m.domain_names[e]);
          }
        }
      }
    }
  }
}

bool is_id_model(const InfoModel& m) {
  for (const Partition& eq : m.eqrel)
    if (!eq.is_discrete()) return false;
  return true;
}

Structure world_structure(const InfoModel& m, int world) {
  const Partition& eq = m.eqrel[world];
  const int nd = m.domain_size();
  std::vector<int> reps = eq.representatives();
  const int qd = static_cast<int>(reps.size());
  // old element -> quotient index
  std::vector<int> to_q(nd);
  for (int d = 0; d < nd; ++d) {
    int rep = eq.block_of(d);
    to_q[d] = static_cast<int>(std::lower_bound(reps.begin(), reps.end(), rep) -
                               reps.begin());
  }

  Structure s;
  s.signature = m.signature;
  s.domain_names.reserve(qd);
  for (int rep : reps) s.domain_names.push_back(m.domain_names[rep]);

  const auto& preds = m.signature.predicates();
  const auto& fns = m.signature.functions();
  s.predicates.resize(preds.size());
  s.functions.resize(fns.size());
  for (std::size_t p = 0; p < preds.size(); ++p) {
    const int arity = preds[p].arity;
    s.predicates[p].assign(tuple_count(qd, arity), 0);
    const std::size_t rows = tuple_count(qd, arity);
    for (std::size_t row = 0; row < rows; ++row) {
      std::vector<int> qt = tuple_at(row, qd, arity);
      std::vector<int> lifted(arity);
      for (int i = 0; i < arity; ++i) lifted[i] = reps[qt[i]];
      s.predicates[p][row] = m.predicate_holds(world, static_cast<int>(p), lifted);
    }
  }
  for (std::size_t f = 0; f < fns.size(); ++f) {
    const int arity = fns[f].arity;
    s.functions[f].assign(tuple_count(qd, arity), 0);
    const std::size_t rows = tuple_count(qd, arity);
    for (std::size_t row = 0; row < rows; ++row) {
      std::vector<int> qt = tuple_at(row, qd, arity);
      std::vector<int> lifted(arity);
      for (int i = 0; i < arity; ++i) lifted[i] = reps[qt[i]];
      s.functions[f][row] =
          to_q[m.function_value(world, static_cast<int>(f), lifted)];
    }
  }
  return s;
}

InfoModel canonical_full_model(std::vector<std::string> domain_names) {
  if (domain_names.empty())
    throw ValidationError("canonical full model needs a non-empty domain");
  const int nd = static_cast<int>(domain_names.size());
  if (static_cast<std::size_t>(nd) * nd > kMaxWorlds)
    throw ValidationError("canonical full model would exceed the world limit");

  InfoModel m;
  m.signature.add_function("a", 0, /*rigid=*/false);
  m.signature.add_function("b", 0, /*rigid=*/false);
  m.domain_names = std::move(domain_names);
  for (int d = 0; d < nd; ++d)
    for (int e = 0; e < nd; ++e) {
      m.world_names.push_back("(" + m.domain_names[d] + "," +
                              m.domain_names[e] + ")");
      WorldInterp iw;
      iw.functions = {{d}, {e}};  // a_w = d, b_w = e
      m.interp.push_back(std::move(iw));
      m.eqrel.push_back(Partition::discrete(nd));
    }
  return m;
}

InfoModel canonical_full_model(int domain_size) {
  std::vector<std::string> names;
  names.reserve(domain_size);
  for (int d = 0; d < domain_size; ++d) names.push_back(std::to_string(d));
  return canonical_full_model(std::move(names));
}

InfoModel canonical_full_extension(const Structure& s) {
  if (s.signature.declares("a") || s.signature.declares("b"))
    throw ValidationError(
        "canonical full extension needs a and b to be fresh symbols");
  if (s.domain_size() < 1)
    throw ValidationError("canonical full extension needs a non-empty domain");
  const int nd = s.domain_size();
  if (static_cast<std::size_t>(nd) * nd > kMaxWorlds)
    throw ValidationError("canonical full extension would exceed the world limit");

  InfoModel m;
  m.signature = s.signature;
  m.signature.add_function("a", 0, /*rigid=*/false);
  m.signature.add_function("b", 0, /*rigid=*/false);
  m.domain_names = s.domain_names;
  for (int d = 0; d < nd; ++d)
    for (int e = 0; e < nd; ++e) {
      m.world_names.push_back("(" + m.domain_names[d] + "," +
                              m.domain_names[e] + ")");
      WorldInterp iw;
      iw.predicates = s.predicates;
      iw.functions = s.functions;
      iw.functions.push_back({d});
      iw.functions.push_back({e});
      m.interp.push_back(std::move(iw));
      m.eqrel.push_back(Partition::discrete(nd));
    }
  return m;
}

std::set<std::pair<int, int>> relation_of_state(const InfoModel& m, StateMask s) {
  const int fa = m.signature.function_index("a");
  const int fb = m.signature.function_index("b");
  if (fa < 0 || fb < 0)
    throw EvalError("relation_of_state needs constants a and b");
  if (m.signature.functions()[fa].arity != 0 ||
      m.signature.functions()[fb].arity != 0)
    throw EvalError("relation_of_state needs a and b to be constants");
  std::set<std::pair<int, int>> rel;
  for (int w = 0; w < m.world_count(); ++w)
    if (s & (StateMask{1} << w))
      rel.emplace(m.interp[w].functions[fa][0], m.interp[w].functions[fb][0]);
  return rel;
}

bool is_full(const InfoModel& m) {
  const std::size_t nd = static_cast<std::size_t>(m.domain_size());
  return relation_of_state(m, m.full_state()).size() == nd * nd;
}

QuotientResult quotient_id_model(const InfoModel& m, StateMask s) {
  if ((s & m.full_state()) != s)
    throw ValidationError("state refers to worlds outside the model");
  std::vector<int> worlds;
  for (int w = 0; w < m.world_count(); ++w)
    if (s & (StateMask{1} << w)) worlds.push_back(w);
  if (worlds.empty())
    throw ValidationError("cannot quotient over the empty state");

  // The equivalence relation must be uniform across the state.
  const Partition& eq = m.eqrel[worlds[0]];
  for (int w : worlds)
    if (!(m.eqrel[w] == eq))
      throw ValidationError(
          "equivalence relation varies across the state; the state does not "
          "support forall x. forall y. ?(x = y)");

  const int nd = m.domain_size();
  std::vector<int> reps = eq.representatives();
  const int qd = static_cast<int>(reps.size());
  std::vector<int> domain_map(nd);
  for (int d = 0; d < nd; ++d) {
    int rep = eq.block_of(d);
    domain_map[d] = static_cast<int>(
        std::lower_bound(reps.begin(), reps.end(), rep) - reps.begin());
  }

  QuotientResult out;
  out.domain_map = domain_map;
  out.world_map.assign(m.world_count(), -1);
  out.model.signature = m.signature;
  for (int rep : reps) out.model.domain_names.push_back(m.domain_names[rep]);

  const auto& preds = m.signature.predicates();
  const auto& fns = m.signature.functions();
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    const int w = worlds[i];
    out.world_map[w] = static_cast<int>(i);
    out.model.world_names.push_back(m.world_names[w]);
    WorldInterp iw;
    iw.predicates.resize(preds.size());
    iw.functions.resize(fns.size());
    for (std::size_t p = 0; p < preds.size(); ++p) {
      const int arity = preds[p].arity;
      iw.predicates[p].assign(tuple_count(qd, arity), 0);
      const std::size_t rows = tuple_count(qd, arity);
      for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> qt = tuple_at(row, qd, arity);
        std::vector<int> lifted(arity);
        for (int j = 0; j < arity; ++j) lifted[j] = reps[qt[j]];
        iw.predicates[p][row] = m.predicate_holds(w, static_cast<int>(p), lifted);
      }
    }
    for (std::size_t f = 0; f < fns.size(); ++f) {
      const int arity = fns[f].arity;
      iw.functions[f].assign(tuple_count(qd, arity), 0);
      const std::size_t rows = tuple_count(qd, arity);
      for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> qt = tuple_at(row, qd, arity);
        std::vector<int> lifted(arity);
        for (int j = 0; j < arity; ++j) lifted[j] = reps[qt[j]];
        iw.functions[f][row] = domain_map[m.function_value(w, static_cast<int>(f), lifted)];
      }
    }
    out.model.interp.push_back(std::move(iw));
    out.model.eqrel.push_back(Partition::discrete(qd));
  }
  out.state = out.model.full_state();
  return out;
}

}  // namespace inqmc
