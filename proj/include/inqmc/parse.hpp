#ifndef INQMC_PARSE_HPP
#define INQMC_PARSE_HPP

#include <string_view>

#include "inqmc/syntax.hpp"

namespace inqmc {

struct ParseOptions {
  // When false, a formula with free variables is rejected. Queries evaluated
  // under an explicit assignment keep the default.
  bool allow_free_variables = true;
};

// Parses the concrete grammar into the primitive-constructor tree. Derived
// forms (~ \/ exists ? != lam mu dep) are expanded during parsing, so the
// result contains only the eight primitive constructors.
//
// Grammar, loosest binding first:
//
//   formula  :=  disj ('->' formula)?
//   disj     :=  conj (('V' | '\/') conj)*
//   conj     :=  unary ('&' unary)*
//   unary    :=  '~' unary  |  '?' unary
//             |  ('forall' | 'iexists' | 'exists') var '.' formula
//             |  atom
//   atom     :=  '_|_'  |  '(' formula ')'
//             |  'lam' '(' term ')'  |  'mu' '(' term ')'
//             |  'dep' '(' term (',' term)* ';' term ')'
//             |  pred ('(' term (',' term)* ')')?
//             |  term '=' term  |  term '!=' term
//   term     :=  name ('(' term (',' term)* ')')?
//
// A bare name is a constant if declared as a 0-ary function, a 0-ary atom if
// declared as a predicate, and a variable otherwise.
Formula parse_formula(std::string_view text, const Signature& sig,
                      const ParseOptions& options = {});

// Parses a single term (used for assignments and tooling).
Term parse_term(std::string_view text, const Signature& sig);

}  // namespace inqmc

#endif  // INQMC_PARSE_HPP
