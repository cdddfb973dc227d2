#ifndef INQMC_SEMANTICS_HPP
#define INQMC_SEMANTICS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "inqmc/model.hpp"
#include "inqmc/syntax.hpp"

namespace inqmc {

// ── Assignments ─────────────────────────────────────────────────────────────
// A finite map from variable names to domain indices. Must cover the free
// variables of the formula under evaluation.

struct Assignment {
  std::map<std::string, int> values;

  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const std::string, int>> init)
      : values(init) {}

  void set(const std::string& var, int value) { values[var] = value; }
  const int* find(const std::string& var) const {
    auto it = values.find(var);
    return it == values.end() ? nullptr : &it->second;
  }

  bool operator==(const Assignment&) const = default;
};

// ── Evaluation options ──────────────────────────────────────────────────────

// Default step budget, sized for 16-world models (the implication clause
// walks 3^|s| submask pairs per node before memoization pays off).
inline constexpr std::uint64_t kDefaultEvalBudget = 4'000'000'000ull;

struct EvalOptions {
  // Memoize support verdicts and classical truth-sets per (node, state,
  // assignment-restriction). Verdicts are identical with caching off.
  bool cache = true;
  // Evaluate classical subformulas world-wise and test state inclusion in
  // their truth-set, instead of walking the support clauses.
  bool classical_shortcut = true;
  // For implications with a classical antecedent, restrict the substate walk
  // to s intersected with the antecedent's truth-set.
  bool implication_shortcut = true;
  // Hard step budget; exceeding it raises BudgetError.
  std::uint64_t budget = kDefaultEvalBudget;
};

// ── Term denotation ─────────────────────────────────────────────────────────
// The denotation of a term at a world under an assignment. Throws EvalError
// on unbound variables or symbols missing from the model's signature.

int denote_term(const InfoModel& m, int world, const Assignment& g,
                const Term& t);

// ── Support evaluation ──────────────────────────────────────────────────────
// One evaluation context: a model, a formula, and the caches for them. The
// context may be queried at many states and assignments; caches persist
// across queries and are keyed by (subformula, state, restriction of the
// assignment to the subformula's free variables). Not shareable across
// threads; build one evaluator per concurrent query.

class SupportEvaluator {
 public:
  SupportEvaluator(const InfoModel& m, const Formula& f, EvalOptions opts = {});
  ~SupportEvaluator();

  SupportEvaluator(SupportEvaluator&&) noexcept;
  SupportEvaluator& operator=(SupportEvaluator&&) noexcept;

  // The support relation at a state.
  bool supports(StateMask s, const Assignment& g);

  // Truth at a world: support at the corresponding singleton.
  bool truth_at(int world, const Assignment& g) {
    return supports(StateMask{1} << world, g);
  }

  std::uint64_t steps() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot wrappers; each call uses a fresh cache.

bool supports(const InfoModel& m, StateMask s, const Assignment& g,
              const Formula& f, const EvalOptions& opts = {});

bool truth_at(const InfoModel& m, int world, const Assignment& g,
              const Formula& f, const EvalOptions& opts = {});

// True iff support at every state equals truth at every member world,
// checked exhaustively over all 2^|W| states.
bool check_truth_conditional(const InfoModel& m, const Assignment& g,
                             const Formula& f, const EvalOptions& opts = {});

}  // namespace inqmc

#endif  // INQMC_SEMANTICS_HPP
