#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "inqmc/json_io.hpp"
#include "inqmc/parse.hpp"

#include "corpus.hpp"

using namespace inqmc;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("inqmc_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const json& content) const {
    const std::string p = (path / name).string();
    std::ofstream out(p);
    out << content.dump(2);
    return p;
  }
};

bool same_model(const InfoModel& a, const InfoModel& b) {
  if (a.world_names != b.world_names) return false;
  if (a.domain_names != b.domain_names) return false;
  if (!(a.signature == b.signature)) return false;
  for (int w = 0; w < a.world_count(); ++w) {
    if (!(a.eqrel[w] == b.eqrel[w])) return false;
    if (a.interp[w].predicates != b.interp[w].predicates) return false;
    if (a.interp[w].functions != b.interp[w].functions) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("signature round-trips through JSON") {
  Signature sig;
  sig.add_predicate("P", 2);
  sig.add_function("c", 0, false);
  sig.add_function("g", 1, true);
  const Signature back = signature_from_json(signature_to_json(sig));
  CHECK(back == sig);
}

TEST_CASE("models round-trip through JSON") {
  SUBCASE("canonical model") {
    const InfoModel m = canonical_full_model(2);
    CHECK(same_model(model_from_json(model_to_json(m)), m));
  }
  SUBCASE("random models, including non-discrete relations") {
    const Signature sig = tests::corpus_signature();
    std::mt19937 rng(3);
    for (int i = 0; i < 40; ++i) {
      const InfoModel m = tests::random_model(rng, sig, 3, 3, false);
      CHECK(same_model(model_from_json(model_to_json(m)), m));
    }
  }
}

TEST_CASE("omitted eqrel means an id-model") {
  json j = model_to_json(canonical_full_model(2));
  CHECK_FALSE(j.contains("eqrel"));
  const InfoModel m = model_from_json(j);
  CHECK(is_id_model(m));
}

TEST_CASE("constants accept a bare name, tables are checked") {
  Signature sig;
  sig.add_function("c", 0, false);
  sig.add_function("f", 1, false);

  json good = {
      {"worlds", {"w"}},
      {"domain", {"d", "e"}},
      {"interp", {{"w", {{"c", "e"}, {"f", {{"d", "e"}, {"e", "d"}}}}}}},
  };
  const InfoModel m = model_from_json(good, &sig);
  CHECK(m.interp[0].functions[0][0] == 1);
  CHECK(m.interp[0].functions[1][0] == 1);
  CHECK(m.interp[0].functions[1][1] == 0);

  json partial = good;
  partial["interp"]["w"]["f"] = {{"d", "e"}};
  CHECK_THROWS_AS(model_from_json(partial, &sig), IoError);

  json missing = good;
  missing["interp"]["w"].erase("c");
  CHECK_THROWS_AS(model_from_json(missing, &sig), IoError);

  json unknown_name = good;
  unknown_name["interp"]["w"]["c"] = "z";
  CHECK_THROWS_AS(model_from_json(unknown_name, &sig), EvalError);

  json no_sig = {{"worlds", {"w"}}, {"domain", {"d"}}};
  CHECK_THROWS_AS(model_from_json(no_sig), IoError);
}

TEST_CASE("invalid models are rejected at load") {
  Signature sig;
  sig.add_predicate("P", 1);
  // d ~ e but P separates them.
  json j = {
      {"worlds", {"w"}},
      {"domain", {"d", "e"}},
      {"interp", {{"w", {{"P", {{"d"}}}}}}},
      {"eqrel", {{"w", {{"d", "e"}}}}},
  };
  CHECK_THROWS_AS(model_from_json(j, &sig), ValidationError);
}

TEST_CASE("states and assignments") {
  const InfoModel m = canonical_full_model(2);
  CHECK(state_from_json(m, json("all")) == m.full_state());
  const json two = {"(0,0)", "(1,1)"};
  const StateMask s = state_from_json(m, two);
  CHECK(state_to_json(m, s) == two);
  CHECK_THROWS_AS(state_from_json(m, json("some")), IoError);
  CHECK_THROWS_AS(state_from_json(m, json::array({"nope"})), EvalError);

  Assignment g;
  g.set("x", 1);
  CHECK(assignment_from_json(m, assignment_to_json(m, g)) == g);
}

TEST_CASE("verdict JSON reloads through the model parser") {
  Signature sig;
  sig.add_predicate("P", 1);
  const Formula premise = parse_formula("exists x. P(x)", sig);
  const Formula conclusion = parse_formula("iexists x. P(x)", sig);
  const Verdict v = entails(sig, {premise}, conclusion, {3, 2});
  REQUIRE(v.has_countermodel());
  const json j = verdict_to_json(v);
  CHECK(j["result"] == "countermodel");
  const InfoModel reloaded = model_from_json(j["countermodel"]["model"]);
  const StateMask s = state_from_json(reloaded, j["countermodel"]["state"]);
  const Assignment g =
      assignment_from_json(reloaded, j["countermodel"]["assignment"]);
  CHECK(supports(reloaded, s, g, premise));
  CHECK_FALSE(supports(reloaded, s, g, conclusion));

  const Verdict ex = entails(sig, {premise, parse_formula("forall x. ?P(x)", sig)},
                             conclusion, {2, 2});
  const json je = verdict_to_json(ex);
  CHECK(je["result"] == "exhausted");
  CHECK(je["bounds"]["max_worlds"] == 2);
  CHECK(je["models_examined"].get<std::uint64_t>() > 0);
}

TEST_CASE("lemma reports serialize with witnesses") {
  LemmaReport r;
  r.tag = "example";
  r.parameters = {{"k", "1"}};
  r.record(true, "fine");
  LemmaWitness w;
  w.model = canonical_full_model(2);
  w.state_worlds = {"(0,0)"};
  w.detail = "broken";
  r.record(false, "bad instance", w);
  const json j = report_to_json(r);
  CHECK(j["checked"] == 2);
  CHECK(j["failed"] == 1);
  CHECK(j["failures"][0]["description"] == "bad instance");
  const InfoModel back = model_from_json(j["failures"][0]["witness"]["model"]);
  CHECK(back.world_count() == 4);
}

TEST_CASE("query files load with inline and referenced parts") {
  TempDir tmp;
  const json model = model_to_json(canonical_full_model(2));
  const std::string model_path = tmp.file("model.json", model);

  SUBCASE("inline model, default state") {
    const std::string q = tmp.file("q1.json", {
                                                  {"model", model},
                                                  {"formula", "eta"},
                                              });
    const LoadedQuery loaded = load_query_file(q);
    CHECK(loaded.state == loaded.model.full_state());
    CHECK(supports(loaded.model, loaded.state, loaded.assignment, loaded.formula));
  }
  SUBCASE("model by path, explicit state and assignment") {
    const std::string q =
        tmp.file("q2.json", {
                                {"model", "model.json"},
                                {"state", {"(0,0)", "(0,1)"}},
                                {"assignment", {{"x", "1"}}},
                                {"formula", "x = b"},
                            });
    const LoadedQuery loaded = load_query_file(q);
    CHECK(loaded.state == 0b0011);
    CHECK(loaded.assignment.values.at("x") == 1);
    CHECK_FALSE(
        supports(loaded.model, loaded.state, loaded.assignment, loaded.formula));
  }
  SUBCASE("missing pieces are reported") {
    const std::string q = tmp.file("q3.json", {{"model", model}});
    CHECK_THROWS_AS(load_query_file(q), IoError);
    CHECK_THROWS_AS(load_query_file((tmp.path / "absent.json").string()), IoError);
  }
}

TEST_CASE("enumerated models survive a JSON round-trip") {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_function("c", 0, false);
  ModelEnumerator stream(sig, {2, 2}, {});
  while (auto m = stream.next()) {
    CHECK(same_model(model_from_json(model_to_json(*m)), *m));
  }
}
