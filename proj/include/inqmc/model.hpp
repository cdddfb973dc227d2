#ifndef INQMC_MODEL_HPP
#define INQMC_MODEL_HPP

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inqmc/syntax.hpp"

namespace inqmc {

// ── States ──────────────────────────────────────────────────────────────────
// An information state is a bitmask over the world indices of a fixed model.
// Bit w set means world w belongs to the state. Models are capped at 64
// worlds; substate enumeration is exponential long before that bound bites.

using StateMask = std::uint64_t;
inline constexpr int kMaxWorlds = 64;

// Number of tuples over a domain of the given size: domain^arity.
std::size_t tuple_count(int domain_size, int arity);

// Row-major index of a tuple in a flat interpretation table.
std::size_t tuple_index(std::span<const int> tuple, int domain_size);

// Inverse of tuple_index.
std::vector<int> tuple_at(std::size_t index, int domain_size, int arity);

// ── Partitions ──────────────────────────────────────────────────────────────
// A partition of {0..n-1} in normal form: each element maps to the least
// member of its block. Being a partition, it is an equivalence relation by
// construction; only congruence needs checking separately.

class Partition {
 public:
  Partition() = default;
  static Partition discrete(int n);
  static Partition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
  // Restricted growth string: rgs[i] = block number of element i, blocks
  // numbered by first appearance.
  static Partition from_rgs(std::span<const int> rgs);

  int size() const { return static_cast<int>(rep_.size()); }
  int block_of(int element) const { return rep_[element]; }
  bool same(int a, int b) const { return rep_[a] == rep_[b]; }
  bool is_discrete() const;
  int block_count() const;
  std::vector<int> representatives() const;             // sorted least members
  std::vector<std::vector<int>> blocks() const;          // ordered by least member

  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> rep_;
};

// ── Information models ──────────────────────────────────────────────────────
// A finite first-order information model: worlds, a domain, a per-world
// interpretation of every signature symbol, and a per-world equivalence
// relation on the domain. Interpretations are flat tables indexed by
// tuple_index; predicate tables hold 0/1, function tables hold element
// indices. Tables are ordered as the signature declares the symbols.

struct WorldInterp {
  std::vector<std::vector<std::uint8_t>> predicates;
  std::vector<std::vector<int>> functions;
};

struct InfoModel {
  Signature signature;
  std::vector<std::string> world_names;
  std::vector<std::string> domain_names;
  std::vector<WorldInterp> interp;  // one per world
  std::vector<Partition> eqrel;     // one per world

  int world_count() const { return static_cast<int>(world_names.size()); }
  int domain_size() const { return static_cast<int>(domain_names.size()); }
  StateMask full_state() const {
    return world_count() == kMaxWorlds ? ~StateMask{0}
                                       : (StateMask{1} << world_count()) - 1;
  }

  int world_index(std::string_view name) const;   // throws EvalError if absent
  int domain_index(std::string_view name) const;  // throws EvalError if absent

  bool predicate_holds(int world, int pred, std::span<const int> tuple) const {
    return interp[world].predicates[pred][tuple_index(tuple, domain_size())] != 0;
  }
  int function_value(int world, int fn, std::span<const int> tuple) const {
    return interp[world].functions[fn][tuple_index(tuple, domain_size())];
  }
};

// ── World-free structures ───────────────────────────────────────────────────
// A standard relational structure, as induced by one world of a model after
// quotienting by its local equivalence relation.

struct Structure {
  Signature signature;
  std::vector<std::string> domain_names;
  std::vector<std::vector<std::uint8_t>> predicates;
  std::vector<std::vector<int>> functions;

  int domain_size() const { return static_cast<int>(domain_names.size()); }

  bool predicate_holds(int pred, std::span<const int> tuple) const {
    return predicates[pred][tuple_index(tuple, domain_size())] != 0;
  }
  int function_value(int fn, std::span<const int> tuple) const {
    return functions[fn][tuple_index(tuple, domain_size())];
  }

  bool operator==(const Structure&) const = default;
};

// ── Operations ──────────────────────────────────────────────────────────────

// Checks all model invariants: non-empty worlds and domain, table shapes,
// congruence of each local equivalence relation with the interpretation,
// world-uniform interpretation of rigid symbols. Throws ValidationError
// naming the first violation.
void validate_model(const InfoModel& m);

// True iff every local equivalence relation is discrete.
bool is_id_model(const InfoModel& m);

// The relational structure induced at one world: domain = equivalence
// classes (represented by their least member), interpretations induced on
// the quotient.
Structure world_structure(const InfoModel& m, int world);

// The full id-model over the two-constant signature {a, b}: worlds are all
// domain pairs (d, e), with a and b reading off the two coordinates.
InfoModel canonical_full_model(std::vector<std::string> domain_names);
InfoModel canonical_full_model(int domain_size);

// Extends a structure to the full id-model over its signature plus fresh
// non-rigid constants a and b: worlds are all domain pairs, the original
// symbols are interpreted uniformly as in the structure. Throws
// ValidationError if the structure's signature already declares a or b.
InfoModel canonical_full_extension(const Structure& s);

// The relation {(a_w, b_w) | w in state} induced by a state; requires the
// constants a and b to be declared.
std::set<std::pair<int, int>> relation_of_state(const InfoModel& m, StateMask s);

// True iff the full-state relation covers all of domain x domain.
bool is_full(const InfoModel& m);

// Collapses a model to an id-model over the quotient domain, keeping only
// the worlds of the given state. Requires the equivalence relation to be
// uniform across the state (that is, the state supports `forall x. forall
// y. ?(x = y)`); throws ValidationError otherwise. domain_map/world_map
// translate old indices to new ones (domain_map is total; world_map is -1
// for worlds outside the state).
struct QuotientResult {
  InfoModel model;
  StateMask state;
  std::vector<int> domain_map;
  std::vector<int> world_map;
};
QuotientResult quotient_id_model(const InfoModel& m, StateMask s);

}  // namespace inqmc

#endif  // INQMC_MODEL_HPP
