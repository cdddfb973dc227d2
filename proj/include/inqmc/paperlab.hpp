#ifndef INQMC_PAPERLAB_HPP
#define INQMC_PAPERLAB_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inqmc/logic.hpp"
#include "inqmc/model.hpp"
#include "inqmc/semantics.hpp"
#include "inqmc/syntax.hpp"

namespace inqmc {

// ── Named sentences ─────────────────────────────────────────────────────────
// The key sentences of the two-constant fragment, already desugared:
//
//   eta     dep(a;b) & dep(b;a) & iexists x. x != b  ->  iexists x. x != a
//           (over full id-models: the domain is finite)
//   theta   iexists x. iexists y. ~(x = a & y = b)
//           (the model is not full)
//   chi_n   exists x1 ... exists xn, pairwise distinct
//           (at least n individuals; classical)
//   rho     forall x. forall y. ?(x = y)
//           (equality is interpreted uniformly across the state)

// The two-constant signature {a, b}, both non-rigid.
Signature ab_signature();

Formula build_eta();
Formula build_theta();
Formula build_chi(int n);  // requires n >= 1
Formula build_rho();

// Resolves "eta", "theta", "rho", "chi<N>" / "chi_<N>" to the corresponding
// sentence; nullopt for anything else.
std::optional<Formula> builtin_formula(std::string_view name);

// ── Lemma reports ───────────────────────────────────────────────────────────
// Outcome of one mechanical verification run: instance totals plus a
// re-verifiable witness for every failing instance.

struct LemmaWitness {
  std::optional<InfoModel> model;
  std::vector<std::string> state_worlds;
  std::string detail;
};

struct LemmaFailure {
  std::string description;
  LemmaWitness witness;
};

struct LemmaReport {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t checked = 0;
  std::vector<LemmaFailure> failures;

  bool all_passed() const { return failures.empty(); }
  void record(bool passed, const std::string& description,
              LemmaWitness witness = {});
};

// ── Verifications ───────────────────────────────────────────────────────────

// For every domain size up to max_domain and every state s of the canonical
// full id-model, checks the support facts against independent predicates on
// the induced relation R_s:
//
//   dep(a;b) supported        <=>  R_s is a function
//   dep(b;a) supported        <=>  R_s is injective
//   iexists x. x != a fails   <=>  dom(R_s) = D
//   iexists x. x != b holds   <=>  ran(R_s) != D
//
// plus the corollary that no state provides an injective non-surjective
// total self-map of the finite domain (no state falsifies eta's implication).
LemmaReport verify_rs_characterization(int max_domain,
                                       const EvalOptions& eval = {});

// Exhaustively over all id-models for {a, b} within the bounds: theta is
// supported at the full state exactly when the model is not full.
LemmaReport verify_theta_fullness(int max_worlds, int max_domain,
                                  const EvalOptions& eval = {});

// The finite witness against compactness: the canonical full id-model on
// k+1 individuals supports chi_1..chi_k and eta but not theta. Domain sizes
// above max_domain are refused with BudgetError.
LemmaReport compactness_witness(int k, int max_domain = 3,
                                const EvalOptions& eval = {});

// Support of a classical sentence over the canonical full extension of a
// structure coincides with plain Tarskian truth in the structure.
LemmaReport verify_support_truth(const Structure& s, const Formula& alpha,
                                 const EvalOptions& eval = {});

// Bounded two-way bridge between finite first-order validity of a classical
// sentence alpha and id-validity of `eta -> alpha V theta` (and, over
// general models, validity of `rho & eta -> alpha V theta`). Structures are
// searched up to max_structure_size; id-models up to domain size
// max_structure_size and world count max_structure_size^2, so the two
// bounded verdicts decide the same question. Every countermodel found on
// either side is converted to the other side and re-checked.
LemmaReport finite_validity_bridge(const Signature& sig, const Formula& alpha,
                                   int max_structure_size,
                                   const EvalOptions& eval = {});

// Fixed corpus for the bridge: classical sentences over small signatures.
struct BridgeCase {
  std::string name;
  Signature sig;
  Formula alpha;
};
std::vector<BridgeCase> bridge_corpus();

// ── Default verification suite ──────────────────────────────────────────────

struct PaperVerifyOptions {
  int max_domain = 3;  // 4 enables the large exhaustive runs
  EvalOptions eval;
};

std::vector<LemmaReport> paper_verify_suite(const PaperVerifyOptions& opts = {});

}  // namespace inqmc

#endif  // INQMC_PAPERLAB_HPP
