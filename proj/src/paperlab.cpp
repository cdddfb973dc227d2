#include "inqmc/paperlab.hpp"

#include <algorithm>
#include <set>

#include "inqmc/parse.hpp"
#include "inqmc/tarski.hpp"

namespace inqmc {

// ── Named sentences ─────────────────────────────────────────────────────────

Signature ab_signature() {
  Signature sig;
  sig.add_function("a", 0, /*rigid=*/false);
  sig.add_function("b", 0, /*rigid=*/false);
  return sig;
}

namespace {

Formula iexists_distinct_from(const std::string& constant) {
  return Formula::inq_exists(
      "x", make_neq(Term::variable("x"), Term::constant(constant)));
}

}  // namespace

Formula build_eta() {
  const Term a = Term::constant("a");
  const Term b = Term::constant("b");
  Formula antecedent = Formula::conj(
      Formula::conj(make_dep({&a, 1}, b), make_dep({&b, 1}, a)),
      iexists_distinct_from("b"));
  return Formula::implies(std::move(antecedent), iexists_distinct_from("a"));
}

Formula build_theta() {
  Formula pair_hit = Formula::conj(
      Formula::equals(Term::variable("x"), Term::constant("a")),
      Formula::equals(Term::variable("y"), Term::constant("b")));
  return Formula::inq_exists(
      "x", Formula::inq_exists("y", make_not(std::move(pair_hit))));
}

Formula build_chi(int n) {
  if (n < 1) throw ValidationError("chi_n requires n >= 1");
  auto var = [](int i) { return Term::variable("x" + std::to_string(i)); };
  Formula body = Formula::equals(var(1), var(1));
  bool first = true;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Formula distinct = make_neq(var(i), var(j));
      body = first ? std::move(distinct)
                   : Formula::conj(std::move(body), std::move(distinct));
      first = false;
    }
  Formula out = std::move(body);
  for (int i = n; i >= 1; --i)
    out = make_exists("x" + std::to_string(i), std::move(out));
  return out;
}

Formula build_rho() { return rigidity_of_equality(); }

std::optional<Formula> builtin_formula(std::string_view name) {
  if (name == "eta") return build_eta();
  if (name == "theta") return build_theta();
  if (name == "rho") return build_rho();
  std::string_view rest;
  if (name.starts_with("chi_"))
    rest = name.substr(4);
  else if (name.starts_with("chi"))
    rest = name.substr(3);
  else
    return std::nullopt;
  if (rest.empty() ||
      rest.find_first_not_of("0123456789") != std::string_view::npos)
    return std::nullopt;
  int n = std::stoi(std::string(rest));
  if (n < 1) return std::nullopt;
  return build_chi(n);
}

// ── Lemma reports ───────────────────────────────────────────────────────────

void LemmaReport::record(bool passed, const std::string& description,
                         LemmaWitness witness) {
  ++checked;
  if (!passed) failures.push_back({description, std::move(witness)});
}

namespace {

std::vector<std::string> state_world_names(const InfoModel& m, StateMask s) {
  std::vector<std::string> names;
  for (int w = 0; w < m.world_count(); ++w)
    if (s & (StateMask{1} << w)) names.push_back(m.world_names[w]);
  return names;
}

// Independent predicates on R_s, read straight off the relation.
using Relation = std::set<std::pair<int, int>>;

bool relation_is_function(const Relation& r) {
  std::set<int> seen;
  for (auto [d, e] : r)
    if (!seen.insert(d).second) return false;
  return true;
}

bool relation_is_injective(const Relation& r) {
  std::set<int> seen;
  for (auto [d, e] : r)
    if (!seen.insert(e).second) return false;
  return true;
}

bool relation_domain_is(const Relation& r, int domain_size) {
  std::set<int> dom;
  for (auto [d, e] : r) dom.insert(d);
  return static_cast<int>(dom.size()) == domain_size;
}

bool relation_range_is(const Relation& r, int domain_size) {
  std::set<int> ran;
  for (auto [d, e] : r) ran.insert(e);
  return static_cast<int>(ran.size()) == domain_size;
}

}  // namespace

LemmaReport verify_rs_characterization(int max_domain, const EvalOptions& eval) {
  if (max_domain < 1)
    throw ValidationError("verify_rs_characterization needs max_domain >= 1");
  LemmaReport report;
  report.tag = "rs-characterization";
  report.parameters = {{"max_domain", std::to_string(max_domain)}};

  const Term a = Term::constant("a");
  const Term b = Term::constant("b");
  const Formula dep_ab = make_dep({&a, 1}, b);
  const Formula dep_ba = make_dep({&b, 1}, a);
  const Formula some_not_a = iexists_distinct_from("a");
  const Formula some_not_b = iexists_distinct_from("b");

  for (int nd = 1; nd <= max_domain; ++nd) {
    const InfoModel m = canonical_full_model(nd);
    SupportEvaluator ev_dep_ab(m, dep_ab, eval);
    SupportEvaluator ev_dep_ba(m, dep_ba, eval);
    SupportEvaluator ev_some_not_a(m, some_not_a, eval);
    SupportEvaluator ev_some_not_b(m, some_not_b, eval);
    const Assignment empty;
    const StateMask full = m.full_state();
    for (StateMask s = 0;; ++s) {
      const Relation rs = relation_of_state(m, s);
      const std::string where =
          "|D|=" + std::to_string(nd) + " state=" + std::to_string(s);
      auto witness = [&](const std::string& detail) {
        return LemmaWitness{m, state_world_names(m, s), detail};
      };

      const bool function = relation_is_function(rs);
      const bool injective = relation_is_injective(rs);
      const bool total = relation_domain_is(rs, nd);
      const bool surjective = relation_range_is(rs, nd);

      report.record(ev_dep_ab.supports(s, empty) == function,
                    where + ": dep(a;b) <=> R_s function",
                    witness("dep(a;b) support disagrees with functionality"));
      report.record(ev_dep_ba.supports(s, empty) == injective,
                    where + ": dep(b;a) <=> R_s injective",
                    witness("dep(b;a) support disagrees with injectivity"));
      report.record(!ev_some_not_a.supports(s, empty) == total,
                    where + ": no iexists x. x != a <=> dom(R_s) = D",
                    witness("iexists x != a disagrees with dom(R_s)"));
      report.record(ev_some_not_b.supports(s, empty) == !surjective,
                    where + ": iexists x. x != b <=> ran(R_s) != D",
                    witness("iexists x != b disagrees with ran(R_s)"));
      // A finite domain admits no injective, non-surjective total self-map,
      // so no state may falsify eta's implication.
      report.record(!(function && injective && total && !surjective),
                    where + ": no falsifying state for eta",
                    witness("state realizes an injective non-surjective "
                            "total self-map on a finite domain"));
      if (s == full) break;
    }
  }
  return report;
}

LemmaReport verify_theta_fullness(int max_worlds, int max_domain,
                                  const EvalOptions& eval) {
  LemmaReport report;
  report.tag = "theta-fullness";
  report.parameters = {{"max_worlds", std::to_string(max_worlds)},
                       {"max_domain", std::to_string(max_domain)}};
  const Formula theta = build_theta();
  ModelEnumerator stream(ab_signature(),
                         EnumBounds{max_worlds, max_domain},
                         EnumOptions{/*id_only=*/true});
  const Assignment empty;
  while (auto m = stream.next()) {
    const bool theta_supported =
        supports(*m, m->full_state(), empty, theta, eval);
    const bool full = is_full(*m);
    report.record(theta_supported == !full,
                  "theta <=> not full on " + std::to_string(m->world_count()) +
                      " worlds, " + std::to_string(m->domain_size()) +
                      " individuals",
                  LemmaWitness{*m, state_world_names(*m, m->full_state()),
                               theta_supported
                                   ? "theta supported on a full model"
                                   : "theta unsupported on a non-full model"});
  }
  return report;
}

LemmaReport compactness_witness(int k, int max_domain, const EvalOptions& eval) {
  if (k < 0) throw ValidationError("compactness_witness needs k >= 0");
  if (k + 1 > max_domain)
    throw BudgetError("domain size " + std::to_string(k + 1) +
                          " over the verification budget",
                      static_cast<std::uint64_t>(k + 1),
                      static_cast<std::uint64_t>(max_domain));
  LemmaReport report;
  report.tag = "compactness-witness";
  report.parameters = {{"k", std::to_string(k)},
                       {"domain_size", std::to_string(k + 1)}};

  const InfoModel m = canonical_full_model(k + 1);
  const Assignment empty;
  const StateMask full = m.full_state();
  auto witness = [&](const std::string& detail) {
    return LemmaWitness{m, state_world_names(m, full), detail};
  };
  for (int n = 1; n <= k; ++n)
    report.record(supports(m, full, empty, build_chi(n), eval),
                  "chi_" + std::to_string(n) + " holds on M_" +
                      std::to_string(k + 1),
                  witness("chi_" + std::to_string(n) + " unsupported"));
  report.record(supports(m, full, empty, build_eta(), eval),
                "eta holds on M_" + std::to_string(k + 1),
                witness("eta unsupported"));
  report.record(!supports(m, full, empty, build_theta(), eval),
                "theta fails on M_" + std::to_string(k + 1),
                witness("theta supported on a full model"));
  return report;
}

LemmaReport verify_support_truth(const Structure& s, const Formula& alpha,
                                 const EvalOptions& eval) {
  if (!is_classical(alpha))
    throw EvalError("verify_support_truth requires a classical sentence");
  if (!free_vars(alpha).empty())
    throw EvalError("verify_support_truth requires a sentence");
  LemmaReport report;
  report.tag = "support-truth";
  report.parameters = {{"alpha", print_formula(alpha)},
                       {"domain_size", std::to_string(s.domain_size())}};

  const InfoModel extension = canonical_full_extension(s);
  const Assignment empty;
  const bool supported =
      supports(extension, extension.full_state(), empty, alpha, eval);
  const bool tarski_true = tarski_eval(s, empty, alpha);
  report.record(supported == tarski_true,
                "support over the canonical full extension = Tarskian truth",
                LemmaWitness{extension,
                             state_world_names(extension, extension.full_state()),
                             supported ? "supported but Tarski-false"
                                       : "unsupported but Tarski-true"});
  return report;
}

// ── Finite validity bridge ──────────────────────────────────────────────────

namespace {

Structure restrict_to(const Structure& s, const Signature& sig) {
  Structure out;
  out.signature = sig;
  out.domain_names = s.domain_names;
  for (const auto& pred : sig.predicates()) {
    int idx = s.signature.predicate_index(pred.name);
    if (idx < 0) throw EvalError("reduct misses predicate " + pred.name);
    out.predicates.push_back(s.predicates[idx]);
  }
  for (const auto& fn : sig.functions()) {
    int idx = s.signature.function_index(fn.name);
    if (idx < 0) throw EvalError("reduct misses function " + fn.name);
    out.functions.push_back(s.functions[idx]);
  }
  return out;
}

// First structure within the size bound falsifying alpha, if any.
std::optional<Structure> find_falsifying_structure(const Signature& sig,
                                                   const Formula& alpha,
                                                   int max_size) {
  ModelEnumerator stream(sig, EnumBounds{1, max_size},
                         EnumOptions{/*id_only=*/true});
  const Assignment empty;
  while (auto m = stream.next()) {
    Structure s = world_structure(*m, 0);
    if (!tarski_eval(s, empty, alpha)) return s;
  }
  return std::nullopt;
}

}  // namespace

LemmaReport finite_validity_bridge(const Signature& sig, const Formula& alpha,
                                   int max_structure_size,
                                   const EvalOptions& eval) {
  if (!is_classical(alpha))
    throw EvalError("finite_validity_bridge requires a classical sentence");
  if (!free_vars(alpha).empty())
    throw EvalError("finite_validity_bridge requires a sentence");
  if (sig.declares("a") || sig.declares("b"))
    throw ValidationError("the bridge needs a and b to be fresh symbols");

  LemmaReport report;
  report.tag = "finite-validity-bridge";
  report.parameters = {{"alpha", print_formula(alpha)},
                       {"max_structure_size", std::to_string(max_structure_size)}};

  Signature extended = sig;
  extended.add_function("a", 0, /*rigid=*/false);
  extended.add_function("b", 0, /*rigid=*/false);

  const Formula bridge =
      Formula::implies(build_eta(), Formula::inq_disj(alpha, build_theta()));
  const Formula rigid_bridge = Formula::implies(
      Formula::conj(build_rho(), build_eta()),
      Formula::inq_disj(alpha, build_theta()));
  const Bounds id_bounds{max_structure_size * max_structure_size,
                         max_structure_size};

  // Side 1: bounded finite first-order validity via the Tarskian oracle.
  const std::optional<Structure> counterstructure =
      find_falsifying_structure(sig, alpha, max_structure_size);

  // Side 2: bounded id-validity of the bridge sentence.
  SearchOptions id_opts;
  id_opts.id_only = true;
  id_opts.eval = eval;
  const Verdict id_verdict = valid(extended, bridge, id_bounds, id_opts);

  // Side 3: bounded general validity of the rigid variant.
  SearchOptions general_opts;
  general_opts.eval = eval;
  const Verdict general_verdict =
      valid(extended, rigid_bridge, id_bounds, general_opts);

  report.record(counterstructure.has_value() == id_verdict.has_countermodel(),
                "finite falsifiability = id-countermodel existence",
                LemmaWitness{std::nullopt,
                             {},
                             counterstructure ? "structure found, no id-countermodel"
                                              : "id-countermodel found, no structure"});
  report.record(
      id_verdict.has_countermodel() == general_verdict.has_countermodel(),
      "id-countermodel existence = general countermodel existence",
      LemmaWitness{std::nullopt, {}, "rigid variant disagrees with id variant"});

  const Assignment empty;

  // Extraction, structure -> id-model: the canonical full extension of a
  // falsifying structure falsifies the bridge sentence.
  if (counterstructure) {
    const InfoModel extension = canonical_full_extension(*counterstructure);
    const StateMask full = extension.full_state();
    const bool eta_ok = supports(extension, full, empty, build_eta(), eval);
    const bool alpha_fails = !supports(extension, full, empty, alpha, eval);
    const bool theta_fails = !supports(extension, full, empty, build_theta(), eval);
    const bool bridge_fails = !supports(extension, full, empty, bridge, eval);
    report.record(eta_ok && alpha_fails && theta_fails && bridge_fails,
                  "canonical full extension falsifies the bridge sentence",
                  LemmaWitness{extension, state_world_names(extension, full),
                               "extension does not falsify eta -> alpha V theta"});
  }

  // Extraction, id-countermodel -> structure: some world of the falsifying
  // state induces a finite structure falsifying alpha.
  if (id_verdict.has_countermodel()) {
    const Countermodel& cm = id_verdict.countermodel();
    std::optional<Structure> extracted;
    for (int w = 0; w < cm.model.world_count(); ++w) {
      if (!(cm.state & (StateMask{1} << w))) continue;
      if (!truth_at(cm.model, w, empty, alpha, eval)) {
        extracted = restrict_to(world_structure(cm.model, w), sig);
        break;
      }
    }
    const bool extraction_ok =
        extracted && !tarski_eval(*extracted, empty, alpha) &&
        extracted->domain_size() <= cm.model.domain_size();
    report.record(extraction_ok,
                  "id-countermodel yields a finite falsifying structure",
                  LemmaWitness{cm.model, state_world_names(cm.model, cm.state),
                               "no world of the countermodel falsifies alpha"});
  }

  // Extraction for the rigid variant: locate a substate supporting rho & eta
  // but not alpha V theta, quotient it to an id-model, and extract a world.
  if (general_verdict.has_countermodel()) {
    const Countermodel& cm = general_verdict.countermodel();
    SupportEvaluator antecedent_eval(
        cm.model, Formula::conj(build_rho(), build_eta()), eval);
    SupportEvaluator consequent_eval(
        cm.model, Formula::inq_disj(alpha, build_theta()), eval);
    std::optional<Structure> extracted;
    for (StateMask t = cm.state;; t = (t - 1) & cm.state) {
      if (t != 0 && antecedent_eval.supports(t, empty) &&
          !consequent_eval.supports(t, empty)) {
        const QuotientResult q = quotient_id_model(cm.model, t);
        for (int w = 0; w < q.model.world_count(); ++w) {
          if (!truth_at(q.model, w, empty, alpha, eval)) {
            extracted = restrict_to(world_structure(q.model, w), sig);
            break;
          }
        }
        break;
      }
      if (t == 0) break;
    }
    const bool extraction_ok = extracted && !tarski_eval(*extracted, empty, alpha);
    report.record(extraction_ok,
                  "general countermodel quotients to a falsifying structure",
                  LemmaWitness{cm.model, state_world_names(cm.model, cm.state),
                               "no falsifying substate/world after quotient"});
  }

  return report;
}

std::vector<BridgeCase> bridge_corpus() {
  std::vector<BridgeCase> cases;
  Signature pure;  // equality only
  Signature unary = pure;
  unary.add_predicate("P", 1);

  auto add = [&cases](std::string name, const Signature& sig,
                      const std::string& text) {
    ParseOptions strict;
    strict.allow_free_variables = false;
    cases.push_back({std::move(name), sig, parse_formula(text, sig, strict)});
  };

  add("reflexivity", pure, "forall x. x = x");
  add("two-elements", pure, "exists x. exists y. x != y");
  add("absurdity", pure, "_|_");
  add("non-empty-domain", pure, "exists x. x = x");
  add("singleton-domain", pure, "forall x. forall y. x = y");
  add("at-most-two", pure,
      "forall x. forall y. forall z. (x = y \\/ y = z) \\/ x = z");
  add("universal-to-existential", unary, "forall x. P(x) -> exists x. P(x)");
  add("existential-to-universal", unary, "exists x. P(x) -> forall x. P(x)");
  add("excluded-middle", unary, "forall x. P(x) \\/ ~P(x)");
  add("some-P", unary, "exists x. P(x)");
  return cases;
}

std::vector<LemmaReport> paper_verify_suite(const PaperVerifyOptions& opts) {
  std::vector<LemmaReport> reports;
  reports.push_back(verify_rs_characterization(opts.max_domain, opts.eval));
  reports.push_back(verify_theta_fullness(4, 2, opts.eval));
  for (int k = 0; k + 1 <= opts.max_domain && k <= 3; ++k)
    reports.push_back(compactness_witness(k, opts.max_domain, opts.eval));

  // Support-truth corpus: small structures crossed with classical sentences.
  {
    Signature unary;
    unary.add_predicate("P", 1);
    std::vector<Structure> structures;
    for (int nd = 1; nd <= 2; ++nd) {
      const std::size_t subsets = std::size_t{1} << nd;
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        Structure s;
        s.signature = unary;
        for (int d = 0; d < nd; ++d)
          s.domain_names.push_back("d" + std::to_string(d));
        std::vector<std::uint8_t> table(nd, 0);
        for (int d = 0; d < nd; ++d) table[d] = (mask >> d) & 1;
        s.predicates.push_back(std::move(table));
        structures.push_back(std::move(s));
      }
    }
    const char* sentences[] = {"forall x. P(x)", "exists x. P(x)", "_|_",
                               "forall x. P(x) -> exists x. P(x)",
                               "exists x. exists y. x != y"};
    LemmaReport merged;
    merged.tag = "support-truth-corpus";
    merged.parameters = {{"structures", std::to_string(structures.size())},
                         {"sentences", "5"}};
    for (const Structure& s : structures)
      for (const char* text : sentences) {
        ParseOptions strict;
        strict.allow_free_variables = false;
        LemmaReport one = verify_support_truth(
            s, parse_formula(text, unary, strict), opts.eval);
        merged.checked += one.checked;
        for (auto& fail : one.failures) merged.failures.push_back(std::move(fail));
      }
    reports.push_back(std::move(merged));
  }

  for (const BridgeCase& bc : bridge_corpus()) {
    LemmaReport r = finite_validity_bridge(bc.sig, bc.alpha, 2, opts.eval);
    r.parameters.emplace_back("case", bc.name);
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace inqmc
