#ifndef INQMC_JSON_IO_HPP
#define INQMC_JSON_IO_HPP

#include <optional>
#include <string>

#include "json.hpp"

#include "inqmc/logic.hpp"
#include "inqmc/model.hpp"
#include "inqmc/paperlab.hpp"
#include "inqmc/semantics.hpp"
#include "inqmc/syntax.hpp"

namespace inqmc {

// File formats. Tables are name-based for readability:
//
//   signature   {"predicates": [{"name","arity"}],
//                "functions":  [{"name","arity","rigid"}]}
//   model       {"signature": {...},            optional when supplied aside
//                "worlds": ["w0", ...],
//                "domain": ["d0", ...],
//                "interp": {world: {symbol: table}},
//                "eqrel":  {world: [[block], ...]}}   omitted => id-model
//
// A predicate table is a list of tuples of individual names; a function
// table maps comma-joined argument names to a value name, with a bare name
// allowed for constants. Missing predicate entries mean the empty extension;
// function entries are mandatory (functions are total).

nlohmann::json signature_to_json(const Signature& sig);
Signature signature_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const InfoModel& m, bool include_signature = true);
InfoModel model_from_json(const nlohmann::json& j,
                          const Signature* sig = nullptr);

nlohmann::json state_to_json(const InfoModel& m, StateMask s);
StateMask state_from_json(const InfoModel& m, const nlohmann::json& j);

nlohmann::json assignment_to_json(const InfoModel& m, const Assignment& g);
Assignment assignment_from_json(const InfoModel& m, const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json report_to_json(const LemmaReport& r);

// Query files bundle a model, an optional state (default: all worlds), an
// optional assignment, and a formula string. "model" and "signature" may be
// inline objects or paths relative to the query file.
struct LoadedQuery {
  InfoModel model;
  StateMask state = 0;
  Assignment assignment;
  Formula formula;
  std::string formula_text;
};
LoadedQuery load_query_file(const std::string& path);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

// Resolves a formula string: a built-in sentence name (eta, theta, rho,
// chi<N>) or concrete grammar.
Formula resolve_formula(const std::string& text, const Signature& sig);

}  // namespace inqmc

#endif  // INQMC_JSON_IO_HPP
