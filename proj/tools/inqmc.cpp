// Command-line front-end: support checking, bounded countermodel search,
// quotients, model enumeration, and the built-in verification suite.
//
// Exit codes are a stable contract:
//   check         0 supported, 1 not supported, 2 error
//   entail/valid/equiv
//                 0 bounds exhausted, 1 countermodel found, 2 error
//   paper-verify  0 all checks pass, 1 failures, 2 error
//   quotient/enumerate
//                 0 success, 2 error

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "inqmc/enumerate.hpp"
#include "inqmc/json_io.hpp"
#include "inqmc/logic.hpp"
#include "inqmc/paperlab.hpp"
#include "inqmc/parse.hpp"
#include "inqmc/semantics.hpp"

namespace {

using namespace inqmc;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("INQMC_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw IoError("INQMC_BUDGET is not a number");
    }
  }
  return kDefaultEvalBudget;
}

struct CommonFlags {
  std::uint64_t budget = default_budget();
  bool no_cache = false;
  bool deterministic = false;
  int workers = 0;
  std::string format = "text";

  void attach(CLI::App* app) {
    app->add_option("--budget", budget, "Evaluation step budget");
    app->add_flag("--no-cache", no_cache, "Disable memoization");
    app->add_flag("--deterministic", deterministic,
                  "Single worker, reproducible byte-for-byte output");
    app->add_option("--workers", workers,
                    "Worker threads for model search (0 = all cores)");
    app->add_option("--format", format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
  }

  EvalOptions eval() const {
    EvalOptions opts;
    opts.cache = !no_cache;
    opts.budget = budget;
    return opts;
  }

  int effective_workers() const { return deterministic ? 1 : workers; }
};

Signature load_signature(const std::string& path) {
  return signature_from_json(load_json_file(path));
}

StateMask parse_state_flag(const InfoModel& m, const std::string& text) {
  if (text == "all" || text.empty()) return m.full_state();
  StateMask s = 0;
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ','))
    s |= StateMask{1} << m.world_index(name);
  return s;
}

Assignment parse_assign_flags(const InfoModel& m,
                              const std::vector<std::string>& pairs) {
  Assignment g;
  for (const auto& pair : pairs) {
    auto eq = pair.find('=');
    if (eq == std::string::npos)
      throw IoError("--assign expects var=individual, got '" + pair + "'");
    g.set(pair.substr(0, eq), m.domain_index(pair.substr(eq + 1)));
  }
  return g;
}

int run_check(const std::string& query_path, const std::string& model_path,
              const std::string& sig_path, const std::string& formula_text,
              const std::string& state_text,
              const std::vector<std::string>& assigns,
              const CommonFlags& flags) {
  InfoModel model;
  StateMask state = 0;
  Assignment g;
  Formula formula = Formula::bottom();
  std::string shown_formula;

  if (!query_path.empty()) {
    LoadedQuery q = load_query_file(query_path);
    model = std::move(q.model);
    state = q.state;
    g = std::move(q.assignment);
    formula = std::move(q.formula);
    shown_formula = q.formula_text;
  } else {
    if (model_path.empty() || formula_text.empty())
      throw IoError("check needs a query file or --model and --formula");
    std::optional<Signature> sig;
    if (!sig_path.empty()) sig = load_signature(sig_path);
    model = model_from_json(load_json_file(model_path), sig ? &*sig : nullptr);
    state = parse_state_flag(model, state_text);
    g = parse_assign_flags(model, assigns);
    formula = resolve_formula(formula_text, model.signature);
    shown_formula = formula_text;
  }

  const bool supported = supports(model, state, g, formula, flags.eval());
  if (flags.format == "json") {
    nlohmann::json out = {{"formula", print_formula(formula)},
                          {"state", state_to_json(model, state)},
                          {"supported", supported}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (supported ? "supported" : "not supported") << "\n";
  }
  return supported ? kExitOk : kExitNegative;
}

void print_verdict(const Verdict& v, const CommonFlags& flags) {
  if (flags.format == "json") {
    std::cout << verdict_to_json(v).dump(2) << "\n";
    return;
  }
  if (v.has_countermodel()) {
    const Countermodel& cm = v.countermodel();
    std::cout << "countermodel found after " << v.models_examined()
              << " models\n";
    std::cout << verdict_to_json(v)["countermodel"].dump(2) << "\n";
  } else {
    std::cout << "no countermodel up to " << v.bounds().max_worlds
              << " worlds, " << v.bounds().max_domain << " individuals ("
              << v.models_examined() << " models examined)\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for inquisitive first-order logic"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "Evaluate support for a formula");
  std::string check_query, check_model, check_sig, check_formula;
  std::string check_state = "all";
  std::vector<std::string> check_assigns;
  CommonFlags check_flags;
  check->add_option("query", check_query, "Query JSON file");
  check->add_option("--model", check_model, "Model JSON file");
  check->add_option("--sig", check_sig, "Signature JSON file");
  check->add_option("--formula", check_formula,
                    "Formula (grammar string or eta/theta/rho/chi<N>)");
  check->add_option("--state", check_state,
                    "Comma-separated world names, or 'all'");
  check->add_option("--assign", check_assigns, "Assignment entry var=individual");
  check_flags.attach(check);

  // entail / valid / equiv share bounds flags
  struct SearchFlags {
    std::string sig_path;
    int max_worlds = 3;
    int max_domain = 3;
    bool id_only = false;
    bool via_translation = false;
    bool prune_iso = false;
    std::vector<std::string> variables;
    CommonFlags common;

    void attach(CLI::App* cmd, bool with_translation) {
      cmd->add_option("--sig", sig_path, "Signature JSON file")->required();
      cmd->add_option("--max-worlds", max_worlds, "World count bound");
      cmd->add_option("--max-domain", max_domain, "Domain size bound");
      cmd->add_flag("--id-only", id_only, "Search id-models only");
      if (with_translation)
        cmd->add_flag("--via-translation", via_translation,
                      "Check id-entailment by adding the rigidity premise");
      cmd->add_flag("--prune-iso", prune_iso, "Skip isomorphic candidates");
      cmd->add_option("--var", variables, "Query variable (repeatable)");
      common.attach(cmd);
    }

    SearchOptions options() const {
      SearchOptions opts;
      opts.id_only = id_only;
      opts.workers = common.effective_workers();
      opts.prune_isomorphic = prune_iso;
      opts.eval = common.eval();
      opts.variables = variables;
      return opts;
    }
  };

  auto* entail = app.add_subcommand("entail", "Bounded entailment check");
  std::vector<std::string> entail_premises;
  std::string entail_conclusion;
  SearchFlags entail_flags;
  entail->add_option("--premise", entail_premises, "Premise formula (repeatable)");
  entail->add_option("--conclusion", entail_conclusion, "Conclusion formula")
      ->required();
  entail_flags.attach(entail, /*with_translation=*/true);

  auto* validc = app.add_subcommand("valid", "Bounded validity check");
  std::string valid_formula;
  SearchFlags valid_flags;
  validc->add_option("--formula", valid_formula, "Formula")->required();
  valid_flags.attach(validc, /*with_translation=*/true);

  auto* equiv = app.add_subcommand("equiv", "Bounded equivalence check");
  std::string equiv_left, equiv_right;
  SearchFlags equiv_flags;
  equiv->add_option("--left", equiv_left, "First formula")->required();
  equiv->add_option("--right", equiv_right, "Second formula")->required();
  equiv_flags.attach(equiv, /*with_translation=*/false);

  // paper-verify
  auto* verify = app.add_subcommand(
      "paper-verify", "Run the built-in verification suite");
  int verify_maxd = 3;
  CommonFlags verify_flags;
  verify->add_option("--maxd", verify_maxd,
                     "Exhaustive domain bound (4 enables the large runs)");
  verify_flags.attach(verify);

  // quotient
  auto* quotient = app.add_subcommand(
      "quotient", "Collapse a model to an id-model over a state");
  std::string quot_model, quot_sig, quot_state = "all", quot_out;
  CommonFlags quot_flags;
  quotient->add_option("--model", quot_model, "Model JSON file")->required();
  quotient->add_option("--sig", quot_sig, "Signature JSON file");
  quotient->add_option("--state", quot_state,
                       "Comma-separated world names, or 'all'");
  quotient->add_option("-o,--output", quot_out, "Output path (default stdout)");
  quot_flags.attach(quotient);

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Stream models as JSON");
  std::string enum_sig_path;
  int enum_max_worlds = 1, enum_max_domain = 1;
  bool enum_id_only = false, enum_prune = false;
  std::uint64_t enum_limit = 0;
  CommonFlags enum_flags;
  enumerate->add_option("--sig", enum_sig_path, "Signature JSON file")->required();
  enumerate->add_option("--max-worlds", enum_max_worlds, "World count bound");
  enumerate->add_option("--max-domain", enum_max_domain, "Domain size bound");
  enumerate->add_flag("--id-only", enum_id_only, "Only id-models");
  enumerate->add_flag("--prune-iso", enum_prune, "Skip isomorphic models");
  enumerate->add_option("--limit", enum_limit, "Stop after this many models");
  enum_flags.attach(enumerate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return run_check(check_query, check_model, check_sig, check_formula,
                       check_state, check_assigns, check_flags);

    if (entail->parsed()) {
      Signature sig = load_signature(entail_flags.sig_path);
      std::vector<Formula> premises;
      for (const auto& text : entail_premises)
        premises.push_back(resolve_formula(text, sig));
      Formula conclusion = resolve_formula(entail_conclusion, sig);
      Bounds bounds{entail_flags.max_worlds, entail_flags.max_domain};
      Verdict v = entail_flags.via_translation
                      ? id_entails_via_translation(sig, premises, conclusion,
                                                   bounds, entail_flags.options())
                      : entails(sig, premises, conclusion, bounds,
                                entail_flags.options());
      print_verdict(v, entail_flags.common);
      return v.has_countermodel() ? kExitNegative : kExitOk;
    }

    if (validc->parsed()) {
      Signature sig = load_signature(valid_flags.sig_path);
      Formula f = resolve_formula(valid_formula, sig);
      Bounds bounds{valid_flags.max_worlds, valid_flags.max_domain};
      Verdict v = valid_flags.via_translation
                      ? id_entails_via_translation(sig, {}, f, bounds,
                                                   valid_flags.options())
                      : valid(sig, f, bounds, valid_flags.options());
      print_verdict(v, valid_flags.common);
      return v.has_countermodel() ? kExitNegative : kExitOk;
    }

    if (equiv->parsed()) {
      Signature sig = load_signature(equiv_flags.sig_path);
      Formula lhs = resolve_formula(equiv_left, sig);
      Formula rhs = resolve_formula(equiv_right, sig);
      Bounds bounds{equiv_flags.max_worlds, equiv_flags.max_domain};
      Verdict v = equivalent(sig, lhs, rhs, bounds, equiv_flags.options());
      print_verdict(v, equiv_flags.common);
      return v.has_countermodel() ? kExitNegative : kExitOk;
    }

    if (verify->parsed()) {
      PaperVerifyOptions opts;
      opts.max_domain = verify_maxd;
      opts.eval = verify_flags.eval();
      std::vector<LemmaReport> reports = paper_verify_suite(opts);
      bool all_passed = true;
      nlohmann::json out = nlohmann::json::array();
      for (const LemmaReport& r : reports) {
        all_passed = all_passed && r.all_passed();
        if (verify_flags.format == "json") {
          out.push_back(report_to_json(r));
        } else {
          std::string params;
          for (const auto& [key, value] : r.parameters)
            params += " " + key + "=" + value;
          std::cout << (r.all_passed() ? "[PASS] " : "[FAIL] ") << r.tag
                    << params << " (" << r.checked << " checks, "
                    << r.failures.size() << " failures)\n";
        }
      }
      if (verify_flags.format == "json") std::cout << out.dump(2) << "\n";
      return all_passed ? kExitOk : kExitNegative;
    }

    if (quotient->parsed()) {
      std::optional<Signature> sig;
      if (!quot_sig.empty()) sig = load_signature(quot_sig);
      InfoModel m =
          model_from_json(load_json_file(quot_model), sig ? &*sig : nullptr);
      StateMask s = parse_state_flag(m, quot_state);
      QuotientResult q = quotient_id_model(m, s);
      nlohmann::json out = model_to_json(q.model);
      if (quot_out.empty())
        std::cout << out.dump(2) << "\n";
      else
        write_json_file(quot_out, out);
      return kExitOk;
    }

    if (enumerate->parsed()) {
      Signature sig = load_signature(enum_sig_path);
      ModelEnumerator stream(sig,
                             EnumBounds{enum_max_worlds, enum_max_domain},
                             EnumOptions{enum_id_only, enum_prune, 0});
      std::uint64_t count = 0;
      while (auto m = stream.next()) {
        std::cout << model_to_json(*m, /*include_signature=*/false).dump()
                  << "\n";
        if (enum_limit != 0 && ++count >= enum_limit) break;
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const BudgetError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
