#include "inqmc/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace inqmc {

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> rgs(n, 0);
  // Generate restricted growth strings in lexicographic order.
  while (true) {
    out.push_back(Partition::from_rgs(rgs));
    int i = n - 1;
    for (; i > 0; --i) {
      int max_prefix = *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[i] <= max_prefix) {
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
      rgs[i] = 0;
    }
    if (i == 0) break;
  }
  return out;
}

ModelEnumerator::ModelEnumerator(Signature sig, EnumBounds bounds,
                                 EnumOptions opts)
    : sig_(std::move(sig)), bounds_(bounds), opts_(opts) {
  if (bounds_.max_worlds < 1 || bounds_.max_domain < 1)
    throw ValidationError("enumeration bounds must be at least 1");
  if (bounds_.max_worlds > kMaxWorlds)
    throw ValidationError("enumeration bound exceeds the world limit");
}

// Sizes iterate with the domain outermost: (1,1), (1,2), ..., (2,1), ...
bool ModelEnumerator::advance_size() {
  if (nd_ == 0) {
    nd_ = 1;
    nw_ = 1;
  } else if (nw_ < bounds_.max_worlds) {
    ++nw_;
  } else if (nd_ < bounds_.max_domain) {
    ++nd_;
    nw_ = 1;
  } else {
    return false;
  }
  partitions_ = opts_.id_only
                    ? std::vector<Partition>{Partition::discrete(nd_)}
                    : all_partitions(nd_);
  part_choice_.assign(nw_, 0);
  return open_partition_combo();
}

bool ModelEnumerator::open_partition_combo() {
  build_slots();
  slot_choice_.assign(slots_.size(), 0);
  slots_open_ = true;
  return true;
}

bool ModelEnumerator::advance_partition_combo() {
  for (int w = nw_ - 1; w >= 0; --w) {
    if (part_choice_[w] + 1 < partitions_.size()) {
      ++part_choice_[w];
      std::fill(part_choice_.begin() + w + 1, part_choice_.end(), 0);
      return open_partition_combo();
    }
    part_choice_[w] = 0;
  }
  return false;
}

namespace {

// All total tables D^arity -> D congruent with every listed partition:
// componentwise-related argument tuples must map to related values.
std::vector<std::vector<int>> congruent_function_tables(
    int nd, int arity, const std::vector<const Partition*>& parts) {
  const std::size_t rows = tuple_count(nd, arity);
  if (rows > 20 || (rows > 0 && static_cast<double>(rows) *
                                    std::log2(static_cast<double>(nd)) > 24))
    throw BudgetError("function table space too large to enumerate",
                      static_cast<std::uint64_t>(rows), 24);

  std::vector<std::vector<int>> out;
  std::vector<int> table(rows, 0);
  auto congruent = [&]() {
    for (const Partition* eq : parts) {
      for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> tuple = tuple_at(row, nd, arity);
        for (int pos = 0; pos < arity; ++pos) {
          for (int e = 0; e < nd; ++e) {
            if (e == tuple[pos] || !eq->same(tuple[pos], e)) continue;
            std::vector<int> other = tuple;
            other[pos] = e;
            if (!eq->same(table[row], table[tuple_index(other, nd)]))
              return false;
          }
        }
      }
    }
    return true;
  };
  while (true) {
    if (congruent()) out.push_back(table);
    std::size_t i = rows;
    while (i > 0) {
      --i;
      if (table[i] + 1 < nd) {
        ++table[i];
        std::fill(table.begin() + i + 1, table.end(), 0);
        break;
      }
      table[i] = 0;
      if (i == 0) return out;
    }
  }
}

// All extensions of D^arity that are unions of orbit classes under the
// partition (exactly the congruent extensions).
std::vector<std::vector<std::uint8_t>> congruent_predicate_tables(
    int nd, int arity, const Partition& eq) {
  const std::size_t rows = tuple_count(nd, arity);
  // Orbit of a tuple: componentwise block representatives.
  std::vector<int> orbit_of(rows);
  std::vector<std::size_t> orbit_reps;
  for (std::size_t row = 0; row < rows; ++row) {
    std::vector<int> tuple = tuple_at(row, nd, arity);
    for (int& v : tuple) v = eq.block_of(v);
    std::size_t canon = tuple_index(tuple, nd);
    if (canon == row) {
      orbit_of[row] = static_cast<int>(orbit_reps.size());
      orbit_reps.push_back(row);
    } else {
      orbit_of[row] = orbit_of[canon];
    }
  }
  const std::size_t norbits = orbit_reps.size();
  if (norbits > 20)
    throw BudgetError("predicate table space too large to enumerate", norbits,
                      20);
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(std::size_t{1} << norbits);
  for (std::size_t mask = 0; mask < (std::size_t{1} << norbits); ++mask) {
    std::vector<std::uint8_t> table(rows, 0);
    for (std::size_t row = 0; row < rows; ++row)
      table[row] = (mask >> orbit_of[row]) & 1;
    out.push_back(std::move(table));
  }
  return out;
}

}  // namespace

void ModelEnumerator::build_slots() {
  slots_.clear();
  const auto& fns = sig_.functions();
  const auto& preds = sig_.predicates();

  std::vector<const Partition*> all_parts;
  for (int w = 0; w < nw_; ++w)
    all_parts.push_back(&partitions_[part_choice_[w]]);

  // Rigid function symbols first: one shared table per symbol.
  for (std::size_t f = 0; f < fns.size(); ++f) {
    if (!fns[f].rigid) continue;
    Slot slot{true, -1, static_cast<int>(f), {}, {}};
    slot.fn_tables = congruent_function_tables(nd_, fns[f].arity, all_parts);
    slots_.push_back(std::move(slot));
  }
  // Then per world: non-rigid functions, then predicates.
  for (int w = 0; w < nw_; ++w) {
    const Partition& eq = partitions_[part_choice_[w]];
    std::vector<const Partition*> here{&eq};
    for (std::size_t f = 0; f < fns.size(); ++f) {
      if (fns[f].rigid) continue;
      Slot slot{true, w, static_cast<int>(f), {}, {}};
      slot.fn_tables = congruent_function_tables(nd_, fns[f].arity, here);
      slots_.push_back(std::move(slot));
    }
    for (std::size_t p = 0; p < preds.size(); ++p) {
      Slot slot{false, w, static_cast<int>(p), {}, {}};
      slot.pred_tables = congruent_predicate_tables(nd_, preds[p].arity, eq);
      slots_.push_back(std::move(slot));
    }
  }
}

InfoModel ModelEnumerator::materialize() const {
  InfoModel m;
  m.signature = sig_;
  for (int w = 0; w < nw_; ++w) m.world_names.push_back("w" + std::to_string(w));
  for (int d = 0; d < nd_; ++d) m.domain_names.push_back("d" + std::to_string(d));
  m.interp.resize(nw_);
  for (int w = 0; w < nw_; ++w) {
    m.interp[w].predicates.resize(sig_.predicates().size());
    m.interp[w].functions.resize(sig_.functions().size());
    m.eqrel.push_back(partitions_[part_choice_[w]]);
  }
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Slot& slot = slots_[i];
    const std::size_t pick = slot_choice_[i];
    if (slot.is_function) {
      if (slot.world < 0) {
        for (int w = 0; w < nw_; ++w)
          m.interp[w].functions[slot.symbol] = slot.fn_tables[pick];
      } else {
        m.interp[slot.world].functions[slot.symbol] = slot.fn_tables[pick];
      }
    } else {
      m.interp[slot.world].predicates[slot.symbol] = slot.pred_tables[pick];
    }
  }
  return m;
}

std::optional<InfoModel> ModelEnumerator::next() {
  while (true) {
    if (!slots_open_) {
      if (!advance_size()) return std::nullopt;
    }
    // Emit the current configuration, then advance the slot odometer.
    if (opts_.max_models != 0 && examined_ + 1 > opts_.max_models)
      throw BudgetError("model enumeration budget exceeded", examined_ + 1,
                        opts_.max_models);
    ++examined_;
    InfoModel m = materialize();

    bool emit = true;
    if (opts_.prune_isomorphic) {
      if (!seen_keys_.insert(isomorphism_key(m)).second) emit = false;
    }

    // Advance to the next configuration.
    bool advanced = false;
    for (std::size_t i = slots_.size(); i > 0; --i) {
      if (slot_choice_[i - 1] + 1 < slots_[i - 1].count()) {
        ++slot_choice_[i - 1];
        std::fill(slot_choice_.begin() + i, slot_choice_.end(), 0);
        advanced = true;
        break;
      }
      slot_choice_[i - 1] = 0;
    }
    if (!advanced) {
      if (!advance_partition_combo()) slots_open_ = false;
    }

    if (emit) return m;
  }
}

// ── Isomorphism keys ────────────────────────────────────────────────────────

namespace {

void append_int(std::string& out, int v) {
  out += std::to_string(v);
  out += ',';
}

std::string serialize_permuted(const InfoModel& m,
                               const std::vector<int>& world_perm,
                               const std::vector<int>& dom_perm,
                               const std::vector<int>& dom_inv) {
  // world_perm[i] = original index of the world placed at position i;
  // dom_perm likewise; dom_inv is the inverse of dom_perm.
  const int nd = m.domain_size();
  std::string out;
  append_int(out, m.world_count());
  append_int(out, nd);
  const auto& preds = m.signature.predicates();
  const auto& fns = m.signature.functions();
  for (int pos = 0; pos < m.world_count(); ++pos) {
    const int w = world_perm[pos];
    // Equivalence relation under renaming.
    for (int i = 0; i < nd; ++i)
      for (int j = i + 1; j < nd; ++j)
        out += m.eqrel[w].same(dom_perm[i], dom_perm[j]) ? '1' : '0';
    for (std::size_t p = 0; p < preds.size(); ++p) {
      const int arity = preds[p].arity;
      const std::size_t rows = tuple_count(nd, arity);
      for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> tuple = tuple_at(row, nd, arity);
        for (int& v : tuple) v = dom_perm[v];
        out += m.predicate_holds(w, static_cast<int>(p), tuple) ? '1' : '0';
      }
    }
    for (std::size_t f = 0; f < fns.size(); ++f) {
      const int arity = fns[f].arity;
      const std::size_t rows = tuple_count(nd, arity);
      for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> tuple = tuple_at(row, nd, arity);
        for (int& v : tuple) v = dom_perm[v];
        append_int(out, dom_inv[m.function_value(w, static_cast<int>(f), tuple)]);
      }
    }
  }
  return out;
}

}  // namespace

std::string isomorphism_key(const InfoModel& m) {
  const int nw = m.world_count();
  const int nd = m.domain_size();
  if (nw > 6 || nd > 5)
    throw BudgetError("isomorphism key over permutation limit",
                      static_cast<std::uint64_t>(nw) * nd, 30);
  std::vector<int> world_perm(nw), dom_perm(nd), dom_inv(nd);
  std::iota(world_perm.begin(), world_perm.end(), 0);
  std::string best;
  do {
    std::iota(dom_perm.begin(), dom_perm.end(), 0);
    do {
      for (int i = 0; i < nd; ++i) dom_inv[dom_perm[i]] = i;
      std::string key = serialize_permuted(m, world_perm, dom_perm, dom_inv);
      if (best.empty() || key < best) best = std::move(key);
    } while (std::next_permutation(dom_perm.begin(), dom_perm.end()));
  } while (std::next_permutation(world_perm.begin(), world_perm.end()));
  return best;
}

}  // namespace inqmc
