#ifndef INQMC_LOGIC_HPP
#define INQMC_LOGIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inqmc/enumerate.hpp"
#include "inqmc/model.hpp"
#include "inqmc/semantics.hpp"
#include "inqmc/syntax.hpp"

namespace inqmc {

struct Bounds {
  int max_worlds = 1;
  int max_domain = 1;
};

struct SearchOptions {
  bool id_only = false;
  // Worker threads over model candidates; 0 means available parallelism,
  // 1 means sequential. The first countermodel in canonical order wins
  // regardless of the worker count.
  int workers = 1;
  bool prune_isomorphic = false;
  std::uint64_t max_models = 0;  // 0 = unlimited
  EvalOptions eval;
  // Variables assignments range over. Must cover the free variables of the
  // query; when empty, exactly those free variables are used.
  std::vector<std::string> variables;
};

struct Countermodel {
  InfoModel model;
  StateMask state = 0;
  Assignment assignment;
};

// Result of a bounded search: either a countermodel (re-verified with
// caching disabled before being returned) or a certificate that every model
// within the bounds was examined. Exhaustion is always relative to the
// bounds; it is never a validity claim.
class Verdict {
 public:
  static Verdict found(Countermodel cm, std::uint64_t examined);
  static Verdict exhausted(Bounds bounds, std::uint64_t examined);

  bool has_countermodel() const { return countermodel_.has_value(); }
  const Countermodel& countermodel() const;
  Bounds bounds() const { return bounds_; }
  std::uint64_t models_examined() const { return models_examined_; }

 private:
  std::optional<Countermodel> countermodel_;
  Bounds bounds_{};
  std::uint64_t models_examined_ = 0;
};

// Does every (model, state, assignment) within bounds that supports all
// premises also support the conclusion? Searches all models up to the
// bounds, all states, and all assignments of the query variables.
Verdict entails(const Signature& sig, const std::vector<Formula>& premises,
                const Formula& conclusion, Bounds bounds,
                const SearchOptions& opts = {});

// Validity: entailment from no premises.
Verdict valid(const Signature& sig, const Formula& f, Bounds bounds,
              const SearchOptions& opts = {});

// Searches for a (model, state, assignment) where the two formulas receive
// different support verdicts.
Verdict equivalent(const Signature& sig, const Formula& lhs, const Formula& rhs,
                   Bounds bounds, const SearchOptions& opts = {});

// Id-entailment via the rigidity translation: entailment over all models
// with `forall x. forall y. ?(x = y)` added to the premises.
Verdict id_entails_via_translation(const Signature& sig,
                                   const std::vector<Formula>& premises,
                                   const Formula& conclusion, Bounds bounds,
                                   const SearchOptions& opts = {});

// The rigidity-of-equality sentence used by the translation.
Formula rigidity_of_equality();

}  // namespace inqmc

#endif  // INQMC_LOGIC_HPP
