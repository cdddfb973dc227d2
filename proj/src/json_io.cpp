#include "inqmc/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "inqmc/parse.hpp"

namespace inqmc {

using nlohmann::json;

// ── Signatures ──────────────────────────────────────────────────────────────

json signature_to_json(const Signature& sig) {
  json preds = json::array();
  for (const auto& p : sig.predicates())
    preds.push_back({{"name", p.name}, {"arity", p.arity}});
  json fns = json::array();
  for (const auto& f : sig.functions())
    fns.push_back({{"name", f.name}, {"arity", f.arity}, {"rigid", f.rigid}});
  return {{"predicates", preds}, {"functions", fns}};
}

Signature signature_from_json(const json& j) {
  if (!j.is_object()) throw IoError("signature must be a JSON object");
  Signature sig;
  if (j.contains("predicates")) {
    for (const auto& p : j.at("predicates"))
      sig.add_predicate(p.at("name").get<std::string>(), p.at("arity").get<int>());
  }
  if (j.contains("functions")) {
    for (const auto& f : j.at("functions"))
      sig.add_function(f.at("name").get<std::string>(), f.at("arity").get<int>(),
                       f.value("rigid", false));
  }
  return sig;
}

// ── Models ──────────────────────────────────────────────────────────────────

namespace {

std::string join_tuple(const InfoModel& m, std::span<const int> tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) out += ",";
    out += m.domain_names[tuple[i]];
  }
  return out;
}

std::vector<int> parse_tuple_key(const InfoModel& m, const std::string& key,
                                 int arity, const std::string& symbol) {
  std::vector<int> tuple;
  if (!key.empty()) {
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) tuple.push_back(m.domain_index(part));
  }
  if (static_cast<int>(tuple.size()) != arity)
    throw IoError("argument tuple '" + key + "' for " + symbol + " has " +
                  std::to_string(tuple.size()) + " entries, expected " +
                  std::to_string(arity));
  return tuple;
}

}  // namespace

json model_to_json(const InfoModel& m, bool include_signature) {
  json j;
  if (include_signature) j["signature"] = signature_to_json(m.signature);
  j["worlds"] = m.world_names;
  j["domain"] = m.domain_names;

  json interp = json::object();
  const int nd = m.domain_size();
  for (int w = 0; w < m.world_count(); ++w) {
    json world = json::object();
    for (std::size_t p = 0; p < m.signature.predicates().size(); ++p) {
      const auto& decl = m.signature.predicates()[p];
      json rows = json::array();
      const std::size_t count = tuple_count(nd, decl.arity);
      for (std::size_t row = 0; row < count; ++row) {
        if (!m.interp[w].predicates[p][row]) continue;
        std::vector<int> tuple = tuple_at(row, nd, decl.arity);
        json names = json::array();
        for (int v : tuple) names.push_back(m.domain_names[v]);
        rows.push_back(names);
      }
      world[decl.name] = rows;
    }
    for (std::size_t f = 0; f < m.signature.functions().size(); ++f) {
      const auto& decl = m.signature.functions()[f];
      if (decl.arity == 0) {
        world[decl.name] = m.domain_names[m.interp[w].functions[f][0]];
        continue;
      }
      json table = json::object();
      const std::size_t count = tuple_count(nd, decl.arity);
      for (std::size_t row = 0; row < count; ++row) {
        std::vector<int> tuple = tuple_at(row, nd, decl.arity);
        table[join_tuple(m, tuple)] =
            m.domain_names[m.interp[w].functions[f][row]];
      }
      world[decl.name] = table;
    }
    interp[m.world_names[w]] = world;
  }
  j["interp"] = interp;

  bool any_nondiscrete = false;
  json eqrel = json::object();
  for (int w = 0; w < m.world_count(); ++w) {
    if (m.eqrel[w].is_discrete()) continue;
    any_nondiscrete = true;
    json blocks = json::array();
    for (const auto& block : m.eqrel[w].blocks()) {
      if (block.size() < 2) continue;  // singletons are implicit
      json names = json::array();
      for (int d : block) names.push_back(m.domain_names[d]);
      blocks.push_back(names);
    }
    eqrel[m.world_names[w]] = blocks;
  }
  if (any_nondiscrete) j["eqrel"] = eqrel;
  return j;
}

InfoModel model_from_json(const json& j, const Signature* sig) {
  if (!j.is_object()) throw IoError("model must be a JSON object");
  InfoModel m;
  if (sig != nullptr)
    m.signature = *sig;
  else if (j.contains("signature"))
    m.signature = signature_from_json(j.at("signature"));
  else
    throw IoError("model file has no signature and none was supplied");

  if (!j.contains("worlds") || !j.contains("domain"))
    throw IoError("model file needs 'worlds' and 'domain'");
  m.world_names = j.at("worlds").get<std::vector<std::string>>();
  m.domain_names = j.at("domain").get<std::vector<std::string>>();
  const int nd = m.domain_size();
  const int nw = m.world_count();
  if (nw < 1 || nd < 1)
    throw IoError("model needs at least one world and one individual");

  m.eqrel.assign(nw, Partition::discrete(nd));
  if (j.contains("eqrel")) {
    for (const auto& [world_name, blocks_json] : j.at("eqrel").items()) {
      const int w = m.world_index(world_name);
      std::vector<std::vector<int>> blocks;
      for (const auto& block_json : blocks_json) {
        std::vector<int> block;
        for (const auto& name : block_json)
          block.push_back(m.domain_index(name.get<std::string>()));
        blocks.push_back(std::move(block));
      }
      m.eqrel[w] = Partition::from_blocks(nd, blocks);
    }
  }

  const auto& preds = m.signature.predicates();
  const auto& fns = m.signature.functions();
  m.interp.resize(nw);
  const json empty_object = json::object();
  for (int w = 0; w < nw; ++w) {
    const json* world = &empty_object;
    if (j.contains("interp") && j.at("interp").contains(m.world_names[w]))
      world = &j.at("interp").at(m.world_names[w]);
    WorldInterp& iw = m.interp[w];
    iw.predicates.resize(preds.size());
    iw.functions.resize(fns.size());
    for (std::size_t p = 0; p < preds.size(); ++p) {
      iw.predicates[p].assign(tuple_count(nd, preds[p].arity), 0);
      if (!world->contains(preds[p].name)) continue;
      for (const auto& row : world->at(preds[p].name)) {
        std::vector<int> tuple;
        for (const auto& name : row)
          tuple.push_back(m.domain_index(name.get<std::string>()));
        if (static_cast<int>(tuple.size()) != preds[p].arity)
          throw IoError("tuple arity mismatch for predicate " + preds[p].name);
        iw.predicates[p][tuple_index(tuple, nd)] = 1;
      }
    }
    for (std::size_t f = 0; f < fns.size(); ++f) {
      const std::size_t rows = tuple_count(nd, fns[f].arity);
      iw.functions[f].assign(rows, -1);
      if (!world->contains(fns[f].name))
        throw IoError("missing function table for " + fns[f].name +
                      " at world " + m.world_names[w]);
      const json& table = world->at(fns[f].name);
      if (table.is_string()) {
        if (fns[f].arity != 0)
          throw IoError("function " + fns[f].name +
                        " needs an argument-to-value table");
        iw.functions[f][0] = m.domain_index(table.get<std::string>());
      } else {
        for (const auto& [key, value] : table.items()) {
          std::vector<int> tuple =
              parse_tuple_key(m, key, fns[f].arity, fns[f].name);
          iw.functions[f][tuple_index(tuple, nd)] =
              m.domain_index(value.get<std::string>());
        }
      }
      for (int v : iw.functions[f])
        if (v < 0)
          throw IoError("function table for " + fns[f].name + " at world " +
                        m.world_names[w] + " is not total");
    }
  }

  validate_model(m);
  return m;
}

// ── States and assignments ──────────────────────────────────────────────────

json state_to_json(const InfoModel& m, StateMask s) {
  json names = json::array();
  for (int w = 0; w < m.world_count(); ++w)
    if (s & (StateMask{1} << w)) names.push_back(m.world_names[w]);
  return names;
}

StateMask state_from_json(const InfoModel& m, const json& j) {
  if (j.is_string() && j.get<std::string>() == "all") return m.full_state();
  if (!j.is_array()) throw IoError("state must be \"all\" or a world list");
  StateMask s = 0;
  for (const auto& name : j)
    s |= StateMask{1} << m.world_index(name.get<std::string>());
  return s;
}

json assignment_to_json(const InfoModel& m, const Assignment& g) {
  json out = json::object();
  for (const auto& [var, value] : g.values) out[var] = m.domain_names[value];
  return out;
}

Assignment assignment_from_json(const InfoModel& m, const json& j) {
  if (!j.is_object()) throw IoError("assignment must be an object");
  Assignment g;
  for (const auto& [var, name] : j.items())
    g.set(var, m.domain_index(name.get<std::string>()));
  return g;
}

// ── Verdicts and reports ────────────────────────────────────────────────────

json verdict_to_json(const Verdict& v) {
  json j;
  j["models_examined"] = v.models_examined();
  if (v.has_countermodel()) {
    const Countermodel& cm = v.countermodel();
    j["result"] = "countermodel";
    j["countermodel"] = {
        {"model", model_to_json(cm.model)},
        {"state", state_to_json(cm.model, cm.state)},
        {"assignment", assignment_to_json(cm.model, cm.assignment)},
    };
  } else {
    j["result"] = "exhausted";
    j["bounds"] = {{"max_worlds", v.bounds().max_worlds},
                   {"max_domain", v.bounds().max_domain}};
  }
  return j;
}

json report_to_json(const LemmaReport& r) {
  json params = json::object();
  for (const auto& [key, value] : r.parameters) params[key] = value;
  json failures = json::array();
  for (const auto& fail : r.failures) {
    json w;
    w["detail"] = fail.witness.detail;
    if (fail.witness.model) {
      w["model"] = model_to_json(*fail.witness.model);
      w["state"] = fail.witness.state_worlds;
    }
    failures.push_back({{"description", fail.description}, {"witness", w}});
  }
  return {{"tag", r.tag},
          {"parameters", params},
          {"checked", r.checked},
          {"failed", r.failures.size()},
          {"failures", failures}};
}

// ── Files ───────────────────────────────────────────────────────────────────

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

Formula resolve_formula(const std::string& text, const Signature& sig) {
  if (auto builtin = builtin_formula(text)) return *builtin;
  return parse_formula(text, sig);
}

LoadedQuery load_query_file(const std::string& path) {
  const json j = load_json_file(path);
  if (!j.is_object()) throw IoError("query must be a JSON object");
  const std::filesystem::path base = std::filesystem::path(path).parent_path();

  auto resolve = [&](const json& node) -> json {
    if (node.is_string())
      return load_json_file((base / node.get<std::string>()).string());
    return node;
  };

  std::optional<Signature> sig;
  if (j.contains("signature"))
    sig = signature_from_json(resolve(j.at("signature")));

  if (!j.contains("model")) throw IoError("query needs a 'model'");
  const json model_json = resolve(j.at("model"));
  LoadedQuery q{model_from_json(model_json, sig ? &*sig : nullptr),
                0,
                {},
                Formula::bottom(),
                {}};

  q.state = j.contains("state") ? state_from_json(q.model, j.at("state"))
                                : q.model.full_state();
  if (j.contains("assignment"))
    q.assignment = assignment_from_json(q.model, j.at("assignment"));
  if (!j.contains("formula")) throw IoError("query needs a 'formula'");
  q.formula_text = j.at("formula").get<std::string>();
  q.formula = resolve_formula(q.formula_text, q.model.signature);
  return q;
}

}  // namespace inqmc
