#include "inqmc/logic.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

namespace inqmc {

Verdict Verdict::found(Countermodel cm, std::uint64_t examined) {
  Verdict v;
  v.countermodel_ = std::move(cm);
  v.models_examined_ = examined;
  return v;
}

Verdict Verdict::exhausted(Bounds bounds, std::uint64_t examined) {
  Verdict v;
  v.bounds_ = bounds;
  v.models_examined_ = examined;
  return v;
}

const Countermodel& Verdict::countermodel() const {
  if (!countermodel_)
    throw EvalError("verdict has no countermodel (bounds were exhausted)");
  return *countermodel_;
}

Formula rigidity_of_equality() {
  return Formula::forall(
      "x", Formula::forall("y", make_qmark(Formula::equals(
                                    Term::variable("x"), Term::variable("y")))));
}

namespace {

// Assignments over the query variables in lexicographic order, last
// variable fastest.
class AssignmentRange {
 public:
  AssignmentRange(const std::vector<std::string>& vars, int domain_size)
      : vars_(vars), domain_size_(domain_size) {}

  template <typename Fn>
  bool for_each(Fn&& fn) const {
    std::vector<int> values(vars_.size(), 0);
    while (true) {
      Assignment g;
      for (std::size_t i = 0; i < vars_.size(); ++i)
        g.set(vars_[i], values[i]);
      if (fn(g)) return true;
      std::size_t i = vars_.size();
      while (i > 0) {
        --i;
        if (values[i] + 1 < domain_size_) {
          ++values[i];
          std::fill(values.begin() + i + 1, values.end(), 0);
          break;
        }
        values[i] = 0;
        if (i == 0) return false;
      }
      if (vars_.size() == 0) return false;
    }
  }

 private:
  const std::vector<std::string>& vars_;
  int domain_size_;
};

// A per-model test: returns the first (state, assignment) witnessing the
// search target, scanning states in increasing mask order and assignments
// lexicographically within each state.
using ModelTest =
    std::function<std::optional<std::pair<StateMask, Assignment>>(const InfoModel&)>;

std::vector<std::string> resolve_query_variables(
    const std::vector<Formula>& formulas, const SearchOptions& opts) {
  std::set<std::string> free;
  for (const Formula& f : formulas)
    for (const auto& v : free_vars(f)) free.insert(v);
  if (opts.variables.empty())
    return std::vector<std::string>(free.begin(), free.end());
  for (const auto& v : free)
    if (std::find(opts.variables.begin(), opts.variables.end(), v) ==
        opts.variables.end())
      throw EvalError("query variable list does not cover free variable " + v);
  return opts.variables;
}

Verdict search_models(const Signature& sig, Bounds bounds,
                      const SearchOptions& opts, const ModelTest& test) {
  if (bounds.max_worlds < 1 || bounds.max_domain < 1)
    throw ValidationError("search bounds must be at least 1");
  ModelEnumerator stream(
      sig, EnumBounds{bounds.max_worlds, bounds.max_domain},
      EnumOptions{opts.id_only, opts.prune_isomorphic, opts.max_models});

  int workers = opts.workers;
  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());

  std::uint64_t index = 0;
  if (workers <= 1) {
    while (auto m = stream.next()) {
      ++index;
      if (auto hit = test(*m))
        return Verdict::found(
            Countermodel{std::move(*m), hit->first, std::move(hit->second)},
            index);
    }
    return Verdict::exhausted(bounds, index);
  }

  // Parallel mode: batches of candidates, striped across workers. Workers
  // abandon candidates above the lowest hit, so the reported countermodel is
  // the first in canonical order and the verdict matches a sequential run.
  const std::size_t batch_size = static_cast<std::size_t>(workers) * 8;
  std::vector<InfoModel> batch;
  batch.reserve(batch_size);
  bool drained = false;
  while (!drained) {
    batch.clear();
    while (batch.size() < batch_size) {
      auto m = stream.next();
      if (!m) {
        drained = true;
        break;
      }
      batch.push_back(std::move(*m));
    }
    if (batch.empty()) break;

    std::atomic<std::size_t> best{batch.size()};
    std::vector<std::optional<std::pair<StateMask, Assignment>>> hits(batch.size());
    std::vector<std::thread> pool;
    std::mutex error_mutex;
    std::exception_ptr first_error;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t]() {
        try {
          for (std::size_t j = t; j < batch.size();
               j += static_cast<std::size_t>(workers)) {
            if (j > best.load(std::memory_order_relaxed)) break;
            if (auto hit = test(batch[j])) {
              hits[j] = std::move(hit);
              std::size_t expected = best.load();
              while (j < expected &&
                     !best.compare_exchange_weak(expected, j)) {
              }
              break;
            }
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    const std::size_t hit_index = best.load();
    if (hit_index < batch.size()) {
      return Verdict::found(
          Countermodel{std::move(batch[hit_index]), hits[hit_index]->first,
                       std::move(hits[hit_index]->second)},
          index + hit_index + 1);
    }
    index += batch.size();
  }
  return Verdict::exhausted(bounds, index);
}

// Re-check a countermodel with caching and shortcuts disabled; a mismatch
// would mean the optimized evaluator and the plain clauses disagree.
void verify_countermodel(const Signature& sig, const Countermodel& cm,
                         const std::vector<Formula>& premises,
                         const Formula& conclusion,
                         const EvalOptions& search_eval) {
  (void)sig;
  EvalOptions plain;
  plain.cache = false;
  plain.classical_shortcut = false;
  plain.implication_shortcut = false;
  plain.budget = search_eval.budget;
  for (const Formula& p : premises)
    if (!supports(cm.model, cm.state, cm.assignment, p, plain))
      throw EvalError(
          "internal: countermodel failed re-verification (premise not "
          "supported)");
  if (supports(cm.model, cm.state, cm.assignment, conclusion, plain))
    throw EvalError(
        "internal: countermodel failed re-verification (conclusion "
        "supported)");
}

}  // namespace

Verdict entails(const Signature& sig, const std::vector<Formula>& premises,
                const Formula& conclusion, Bounds bounds,
                const SearchOptions& opts) {
  std::vector<Formula> all = premises;
  all.push_back(conclusion);
  const std::vector<std::string> vars = resolve_query_variables(all, opts);

  ModelTest test = [&](const InfoModel& m)
      -> std::optional<std::pair<StateMask, Assignment>> {
    std::vector<SupportEvaluator> premise_evals;
    premise_evals.reserve(premises.size());
    for (const Formula& p : premises) premise_evals.emplace_back(m, p, opts.eval);
    SupportEvaluator conclusion_eval(m, conclusion, opts.eval);
    AssignmentRange assignments(vars, m.domain_size());
    const StateMask full = m.full_state();
    for (StateMask s = 0;; ++s) {
      std::optional<std::pair<StateMask, Assignment>> found;
      assignments.for_each([&](const Assignment& g) {
        for (auto& pe : premise_evals)
          if (!pe.supports(s, g)) return false;
        if (conclusion_eval.supports(s, g)) return false;
        found = {s, g};
        return true;
      });
      if (found) return found;
      if (s == full) break;
    }
    return std::nullopt;
  };

  Verdict v = search_models(sig, bounds, opts, test);
  if (v.has_countermodel())
    verify_countermodel(sig, v.countermodel(), premises, conclusion, opts.eval);
  return v;
}

Verdict valid(const Signature& sig, const Formula& f, Bounds bounds,
              const SearchOptions& opts) {
  return entails(sig, {}, f, bounds, opts);
}

Verdict equivalent(const Signature& sig, const Formula& lhs, const Formula& rhs,
                   Bounds bounds, const SearchOptions& opts) {
  const std::vector<std::string> vars =
      resolve_query_variables({lhs, rhs}, opts);

  ModelTest test = [&](const InfoModel& m)
      -> std::optional<std::pair<StateMask, Assignment>> {
    SupportEvaluator lhs_eval(m, lhs, opts.eval);
    SupportEvaluator rhs_eval(m, rhs, opts.eval);
    AssignmentRange assignments(vars, m.domain_size());
    const StateMask full = m.full_state();
    for (StateMask s = 0;; ++s) {
      std::optional<std::pair<StateMask, Assignment>> found;
      assignments.for_each([&](const Assignment& g) {
        if (lhs_eval.supports(s, g) == rhs_eval.supports(s, g)) return false;
        found = {s, g};
        return true;
      });
      if (found) return found;
      if (s == full) break;
    }
    return std::nullopt;
  };

  Verdict v = search_models(sig, bounds, opts, test);
  if (v.has_countermodel()) {
    const Countermodel& cm = v.countermodel();
    EvalOptions plain;
    plain.cache = false;
    plain.classical_shortcut = false;
    plain.implication_shortcut = false;
    plain.budget = opts.eval.budget;
    if (supports(cm.model, cm.state, cm.assignment, lhs, plain) ==
        supports(cm.model, cm.state, cm.assignment, rhs, plain))
      throw EvalError("internal: countermodel failed re-verification");
  }
  return v;
}

Verdict id_entails_via_translation(const Signature& sig,
                                   const std::vector<Formula>& premises,
                                   const Formula& conclusion, Bounds bounds,
                                   const SearchOptions& opts) {
  std::vector<Formula> translated = premises;
  translated.push_back(rigidity_of_equality());
  SearchOptions general = opts;
  general.id_only = false;
  return entails(sig, translated, conclusion, bounds, general);
}

}  // namespace inqmc
