#include "doctest.h"

#include "inqmc/paperlab.hpp"
#include "inqmc/parse.hpp"
#include "inqmc/tarski.hpp"

#include "corpus.hpp"

using namespace inqmc;

TEST_CASE("the named sentences round-trip and classify correctly") {
  const Signature ab = ab_signature();
  for (const Formula& f :
       {build_eta(), build_theta(), build_rho(), build_chi(1), build_chi(3)}) {
    CHECK(parse_formula(print_formula(f), ab) == f);
  }
  CHECK_FALSE(is_classical(build_eta()));
  CHECK_FALSE(is_classical(build_theta()));
  CHECK_FALSE(is_classical(build_rho()));
  CHECK(is_classical(build_chi(1)));
  CHECK(is_classical(build_chi(4)));
  CHECK_THROWS_AS(build_chi(0), ValidationError);
}

TEST_CASE("builtin formula names resolve") {
  CHECK(builtin_formula("eta").has_value());
  CHECK(builtin_formula("theta").has_value());
  CHECK(builtin_formula("rho").has_value());
  CHECK(*builtin_formula("chi2") == build_chi(2));
  CHECK(*builtin_formula("chi_3") == build_chi(3));
  CHECK_FALSE(builtin_formula("chi").has_value());
  CHECK_FALSE(builtin_formula("chi0").has_value());
  CHECK_FALSE(builtin_formula("zeta").has_value());
}

TEST_CASE("chi_n counts individuals on id-models") {
  CHECK(print_formula(build_chi(2)) ==
        print_formula(make_exists(
            "x1", make_exists("x2", make_neq(Term::variable("x1"),
                                             Term::variable("x2"))))));
  for (int nd = 1; nd <= 3; ++nd) {
    const InfoModel m = canonical_full_model(nd);
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(nd);
      CAPTURE(n);
      CHECK(supports(m, m.full_state(), {}, build_chi(n)) == (nd >= n));
    }
  }
}

TEST_CASE("rho holds on id-models and fails across varying relations") {
  const Signature sig = tests::corpus_signature();
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    const InfoModel m = tests::random_model(rng, sig, 3, 3, /*id_only=*/true);
    CHECK(supports(m, tests::random_state(rng, m), {}, build_rho()));
  }

  InfoModel varying;
  varying.world_names = {"w0", "w1"};
  varying.domain_names = {"d", "e"};
  varying.eqrel = {Partition::discrete(2), Partition::from_blocks(2, {{0, 1}})};
  varying.interp.resize(2);
  CHECK_FALSE(supports(varying, 0b11, {}, build_rho()));
  CHECK(supports(varying, 0, {}, build_rho()));
}

TEST_CASE("R_s characterization holds exhaustively") {
  const LemmaReport two = verify_rs_characterization(2);
  CHECK(two.all_passed());
  CHECK(two.checked == 5 * (2 + 16));

  const LemmaReport three = verify_rs_characterization(3);
  CHECK(three.all_passed());
  CHECK(three.checked == 5 * (2 + 16 + 512));
}

TEST_CASE("theta characterizes non-fullness over all small id-models") {
  const LemmaReport report = verify_theta_fullness(4, 2);
  CHECK(report.all_passed());
  CHECK(report.checked == 344);  // 4 one-individual + 4+16+64+256 two-individual
}

TEST_CASE("compactness witnesses check out") {
  for (int k = 0; k <= 2; ++k) {
    const LemmaReport report = compactness_witness(k);
    CAPTURE(k);
    CHECK(report.all_passed());
    CHECK(report.checked == static_cast<std::uint64_t>(k) + 2);
  }
  CHECK_THROWS_AS(compactness_witness(3), BudgetError);
  CHECK_THROWS_AS(compactness_witness(-1), ValidationError);
}

TEST_CASE("support in the canonical extension equals Tarskian truth") {
  Signature unary;
  unary.add_predicate("P", 1);

  Structure full_p;
  full_p.signature = unary;
  full_p.domain_names = {"u", "v"};
  full_p.predicates = {{1, 1}};
  const Formula all_p = parse_formula("forall x. P(x)", unary);
  const LemmaReport r1 = verify_support_truth(full_p, all_p);
  CHECK(r1.all_passed());
  CHECK(supports(canonical_full_extension(full_p),
                 canonical_full_extension(full_p).full_state(), {}, all_p));

  const LemmaReport r2 = verify_support_truth(full_p, Formula::bottom());
  CHECK(r2.all_passed());

  // Randomized corpus of classical sentences over small structures.
  const Signature sig = tests::corpus_signature();
  std::mt19937 rng(191);
  for (int i = 0; i < 60; ++i) {
    const InfoModel m = tests::random_model(rng, sig, 1, 3, /*id_only=*/true);
    const Structure s = world_structure(m, 0);
    Formula alpha = tests::random_formula(rng, sig, {}, 2, true);
    const LemmaReport r = verify_support_truth(s, alpha);
    CAPTURE(print_formula(alpha));
    CHECK(r.all_passed());
  }

  CHECK_THROWS_AS(
      verify_support_truth(full_p, parse_formula("iexists x. P(x)", unary)),
      EvalError);
  CHECK_THROWS_AS(verify_support_truth(full_p, parse_formula("P(x)", unary)),
                  EvalError);
}

TEST_CASE("finite validity bridge, falsifiable sentence") {
  Signature pure;
  const Formula two = parse_formula("exists x. exists y. x != y", pure);
  const LemmaReport report = finite_validity_bridge(pure, two, 2);
  CHECK(report.all_passed());
  // Two agreement checks plus both extraction round-trips.
  CHECK(report.checked == 4);
}

TEST_CASE("finite validity bridge, valid sentence") {
  Signature pure;
  const Formula refl = parse_formula("forall x. x = x", pure);
  const LemmaReport report = finite_validity_bridge(pure, refl, 2);
  CHECK(report.all_passed());
  CHECK(report.checked == 2);  // agreement only; nothing to extract
}

TEST_CASE("finite validity bridge, absurd sentence") {
  Signature pure;
  const LemmaReport report = finite_validity_bridge(pure, Formula::bottom(), 2);
  CHECK(report.all_passed());
  CHECK(report.checked == 4);
}

TEST_CASE("bridge corpus is the documented ten sentences") {
  const auto corpus = bridge_corpus();
  CHECK(corpus.size() == 10);
  std::set<std::string> names;
  bool has_two = false, has_refl = false;
  for (const auto& bc : corpus) {
    CHECK(names.insert(bc.name).second);
    CHECK(is_classical(bc.alpha));
    CHECK(free_vars(bc.alpha).empty());
    if (bc.name == "two-elements") has_two = true;
    if (bc.name == "reflexivity") has_refl = true;
  }
  CHECK(has_two);
  CHECK(has_refl);
}

TEST_CASE("eta fails once a world is deleted from the canonical model") {
  InfoModel m = canonical_full_model(2);
  // Remove world (1,1): theta becomes supported.
  const int victim = m.world_index("(1,1)");
  m.world_names.erase(m.world_names.begin() + victim);
  m.interp.erase(m.interp.begin() + victim);
  m.eqrel.erase(m.eqrel.begin() + victim);
  CHECK(supports(m, m.full_state(), {}, build_theta()));
}
