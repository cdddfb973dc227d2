#ifndef INQMC_ENUMERATE_HPP
#define INQMC_ENUMERATE_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "inqmc/model.hpp"

namespace inqmc {

struct EnumBounds {
  int max_worlds = 1;
  int max_domain = 1;
};

struct EnumOptions {
  // Only models whose local equivalence relations are all discrete.
  bool id_only = false;
  // Skip models isomorphic to an earlier one (world and domain renaming).
  // Never skips a non-isomorphic model; off by default.
  bool prune_isomorphic = false;
  // Cap on candidate models examined; 0 means unlimited. Exceeding the cap
  // raises BudgetError.
  std::uint64_t max_models = 0;
};

// Pull-based stream of every valid information model over the signature,
// with 1 <= |D| <= max_domain and 1 <= |W| <= max_worlds. Deterministic
// order: increasing domain size, then world count, then per-world
// equivalence relations, then interpretation tables lexicographically.
// Worlds are named w0, w1, ...; individuals d0, d1, ....
class ModelEnumerator {
 public:
  ModelEnumerator(Signature sig, EnumBounds bounds, EnumOptions opts = {});

  // Next model, or nullopt when the space is exhausted.
  std::optional<InfoModel> next();

  std::uint64_t examined() const { return examined_; }

 private:
  struct Slot {
    bool is_function;
    int world;   // -1 for rigid function slots
    int symbol;  // index into the signature's function/predicate list
    std::vector<std::vector<int>> fn_tables;
    std::vector<std::vector<std::uint8_t>> pred_tables;
    std::size_t count() const {
      return is_function ? fn_tables.size() : pred_tables.size();
    }
  };

  bool advance_size();
  bool open_partition_combo();
  bool advance_partition_combo();
  void build_slots();
  InfoModel materialize() const;

  Signature sig_;
  EnumBounds bounds_;
  EnumOptions opts_;

  int nd_ = 0, nw_ = 0;
  std::vector<Partition> partitions_;     // all partitions of the current domain
  std::vector<std::size_t> part_choice_;  // per world, index into partitions_
  std::vector<Slot> slots_;
  std::vector<std::size_t> slot_choice_;
  bool slots_open_ = false;

  std::uint64_t examined_ = 0;
  std::set<std::string> seen_keys_;  // isomorphism pruning
};

// All partitions of {0..n-1}, in restricted-growth-string order.
std::vector<Partition> all_partitions(int n);

// Canonical serialization of a model, minimized over world and domain
// renamings; equal keys mean isomorphic models.
std::string isomorphism_key(const InfoModel& m);

}  // namespace inqmc

#endif  // INQMC_ENUMERATE_HPP
