#include "doctest.h"

#include <random>

#include "inqmc/parse.hpp"
#include "inqmc/syntax.hpp"

#include "corpus.hpp"

using namespace inqmc;

namespace {

Signature pq_signature() {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_predicate("Q", 1);
  sig.add_function("a", 0, false);
  sig.add_function("b", 0, false);
  sig.add_function("f", 1, false);
  return sig;
}

// Independent node scan for inquisitive operators.
bool scan_has_inquisitive(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::InqDisj:
    case FormulaKind::InqExists:
      return true;
    case FormulaKind::And:
    case FormulaKind::Implies:
      return scan_has_inquisitive(f.left()) || scan_has_inquisitive(f.right());
    case FormulaKind::Forall:
      return scan_has_inquisitive(f.body());
    default:
      return false;
  }
}

}  // namespace

TEST_CASE("signature rejects bad declarations") {
  Signature sig;
  sig.add_predicate("P", 1);
  CHECK_THROWS_AS(sig.add_predicate("P", 2), ValidationError);
  CHECK_THROWS_AS(sig.add_function("P", 0, false), ValidationError);
  CHECK_THROWS_AS(sig.add_function("f", -1, false), ValidationError);
  sig.add_function("f", 1, true);
  CHECK(sig.find_function("f")->rigid);
  CHECK(sig.find_predicate("nope") == nullptr);
}

TEST_CASE("question mark desugars to inquisitive disjunction with negation") {
  const Signature sig = pq_signature();
  const Formula parsed = parse_formula("?P(x)", sig);
  const Formula p = Formula::atom("P", {Term::variable("x")});
  const Formula expected =
      Formula::inq_disj(p, Formula::implies(p, Formula::bottom()));
  CHECK(parsed == expected);
}

TEST_CASE("bottom token parses to the primitive") {
  const Signature sig = pq_signature();
  CHECK(parse_formula("_|_", sig) == Formula::bottom());
}

TEST_CASE("dep(a;b) is an implication between identification questions") {
  const Signature sig = pq_signature();
  const Formula parsed = parse_formula("dep(a;b)", sig);
  const Term a = Term::constant("a");
  const Term b = Term::constant("b");
  const Formula expected =
      Formula::implies(make_lambda(a, &sig), make_lambda(b, &sig));
  CHECK(parsed == expected);
  // lam over a closed term uses the least machine variable x0.
  CHECK(parsed.left().kind() == FormulaKind::InqExists);
  CHECK(parsed.left().var() == "x0");
}

TEST_CASE("derived forms expand to their primitive definitions") {
  const Signature sig = pq_signature();
  const Formula p = parse_formula("P(x)", sig);
  const Formula q = parse_formula("Q(x)", sig);

  SUBCASE("or") {
    const Formula expected = Formula::implies(
        Formula::conj(Formula::implies(p, Formula::bottom()),
                      Formula::implies(q, Formula::bottom())),
        Formula::bottom());
    CHECK(make_or(p, q) == expected);
    CHECK(parse_formula("P(x) \\/ Q(x)", sig) == expected);
  }
  SUBCASE("exists") {
    const Formula body = parse_formula("P(u)", sig);
    const Formula expected = Formula::implies(
        Formula::forall("u", Formula::implies(body, Formula::bottom())),
        Formula::bottom());
    CHECK(make_exists("u", body) == expected);
    CHECK(parse_formula("exists u. P(u)", sig) == expected);
  }
  SUBCASE("top") {
    CHECK(make_top() ==
          Formula::implies(Formula::bottom(), Formula::bottom()));
  }
  SUBCASE("neq") {
    const Formula expected = Formula::implies(
        Formula::equals(Term::variable("x"), Term::constant("a")),
        Formula::bottom());
    CHECK(parse_formula("x != a", sig) == expected);
  }
}

TEST_CASE("lam picks the least variable not occurring in the term") {
  const Term x0 = Term::variable("x0");
  const Formula lam = make_lambda(x0);
  CHECK(lam.var() == "x1");
  const Term fx1 = Term::apply("f", {Term::variable("x1")});
  CHECK(make_lambda(fx1).var() == "x0");
  CHECK(make_mu(x0).var() == "x1");
}

TEST_CASE("is_classical flags exactly the inquisitive-free formulas") {
  const Signature sig = pq_signature();
  CHECK(is_classical(parse_formula("forall x. P(x)", sig)));
  CHECK(is_classical(parse_formula("~(P(x) & x = a) -> exists y. Q(y)", sig)));
  CHECK_FALSE(is_classical(parse_formula("P(x) V Q(x)", sig)));
  CHECK_FALSE(is_classical(parse_formula("iexists x. P(x)", sig)));
  CHECK_FALSE(is_classical(parse_formula("?P(a)", sig)));
  CHECK_FALSE(is_classical(parse_formula("lam(a)", sig)));
}

TEST_CASE("free variable computation") {
  const Signature sig = pq_signature();
  CHECK(free_vars(parse_formula("P(x)", sig)) == std::set<std::string>{"x"});
  CHECK(free_vars(parse_formula("forall x. P(x)", sig)).empty());
  const Formula mixed = parse_formula("P(x) -> iexists x. P(x)", sig);
  CHECK(free_vars(mixed) == std::set<std::string>{"x"});
  CHECK(free_vars(parse_formula("f(x) = y", sig)) ==
        std::set<std::string>{"x", "y"});
}

TEST_CASE("printer emits the concrete grammar") {
  const Signature sig = pq_signature();
  CHECK(print_formula(Formula::bottom()) == "_|_");
  const Formula disj = Formula::inq_disj(
      Formula::atom("P", {Term::variable("x")}),
      Formula::atom("Q", {Term::variable("x")}));
  CHECK(print_formula(disj) == "P(x) V Q(x)");
  CHECK(print_formula(parse_formula("~(P(x) & Q(x))", sig)) ==
        "~(P(x) & Q(x))");
  CHECK(print_formula(parse_formula("~P(x)", sig)) == "~P(x)");
  CHECK(print_formula(parse_formula("f(f(a)) = b", sig)) == "f(f(a)) = b");
}

TEST_CASE("precedence and associativity") {
  const Signature sig = pq_signature();
  // unary binds tightest, then &, then V, then right-associative ->.
  const Formula f =
      parse_formula("~P(x) & Q(x) -> P(x) V Q(x) -> Q(a)", sig);
  CHECK(f.kind() == FormulaKind::Implies);
  CHECK(f.left().kind() == FormulaKind::And);
  CHECK(f.right().kind() == FormulaKind::Implies);
  CHECK(f.right().left().kind() == FormulaKind::InqDisj);

  // Quantifiers extend maximally to the right.
  const Formula q = parse_formula("forall x. P(x) & Q(x)", sig);
  CHECK(q.kind() == FormulaKind::Forall);
  CHECK(q.body().kind() == FormulaKind::And);
  const Formula q2 = parse_formula("P(a) & forall x. P(x) -> Q(x)", sig);
  CHECK(q2.kind() == FormulaKind::And);
  CHECK(q2.right().kind() == FormulaKind::Forall);
  CHECK(q2.right().body().kind() == FormulaKind::Implies);
}

TEST_CASE("parse errors carry spans and messages") {
  const Signature sig = pq_signature();
  CHECK_THROWS_AS(parse_formula("P(x", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("R(x)", sig), ParseError);     // unknown symbol
  CHECK_THROWS_AS(parse_formula("P(x, y)", sig), ParseError);  // arity
  CHECK_THROWS_AS(parse_formula("f(x)", sig), ParseError);     // term, no '='
  CHECK_THROWS_AS(parse_formula("x = $", sig), ParseError);    // lexical
  CHECK_THROWS_AS(parse_formula("forall a. P(a)", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("", sig), ParseError);

  ParseOptions closed;
  closed.allow_free_variables = false;
  CHECK_THROWS_AS(parse_formula("P(x)", sig, closed), ParseError);
  CHECK_NOTHROW(parse_formula("forall x. P(x)", sig, closed));

  try {
    parse_formula("P(x) &", sig);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.span().begin == 7);
  }
}

TEST_CASE("zero-ary predicates parse bare or with parentheses") {
  Signature sig;
  sig.add_predicate("Q", 0);
  const Formula bare = parse_formula("Q", sig);
  const Formula parens = parse_formula("Q()", sig);
  CHECK(bare == parens);
  CHECK(print_formula(bare) == "Q");
}

TEST_CASE("round-trip: parse after print is the identity") {
  const Signature sig = tests::corpus_signature();
  std::mt19937 rng(20240811);
  for (int i = 0; i < 500; ++i) {
    const Formula f =
        tests::random_formula(rng, sig, {"x", "y"}, 3, /*classical_only=*/false);
    const std::string text = print_formula(f);
    CAPTURE(text);
    const Formula again = parse_formula(text, sig);
    CHECK(again == f);
  }
}

TEST_CASE("is_classical matches an independent node scan on random formulas") {
  const Signature sig = tests::corpus_signature();
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Formula f = tests::random_formula(rng, sig, {"x"}, 3, false);
    CHECK(is_classical(f) == !scan_has_inquisitive(f));
  }
}

TEST_CASE("desugared classical forms stay classical") {
  const Signature sig = pq_signature();
  const Formula alpha = parse_formula("P(x)", sig);
  const Formula beta = parse_formula("Q(x)", sig);
  CHECK(is_classical(make_not(alpha)));
  CHECK(is_classical(make_top()));
  CHECK(is_classical(make_or(alpha, beta)));
  CHECK(is_classical(make_exists("u", parse_formula("P(u)", sig))));
  CHECK_FALSE(is_classical(make_qmark(alpha)));
  CHECK_FALSE(is_classical(make_lambda(Term::constant("a"))));
  CHECK_FALSE(is_classical(make_or(alpha, parse_formula("lam(a)", sig))));
}

TEST_CASE("check_symbols validates against a signature") {
  const Signature sig = pq_signature();
  const Formula ok = parse_formula("P(f(a))", sig);
  CHECK_NOTHROW(check_symbols(ok, sig));
  Signature smaller;
  smaller.add_predicate("P", 1);
  CHECK_THROWS_AS(check_symbols(ok, smaller), ValidationError);
}
