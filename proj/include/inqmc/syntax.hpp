#ifndef INQMC_SYNTAX_HPP
#define INQMC_SYNTAX_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inqmc/errors.hpp"

namespace inqmc {

// ── Signature ───────────────────────────────────────────────────────────────
// Predicate and function symbols with arities. Function symbols carry a
// rigidity flag; 0-ary function symbols are constants. Names are unique
// across both symbol kinds.

struct PredicateDecl {
  std::string name;
  int arity = 0;
};

struct FunctionDecl {
  std::string name;
  int arity = 0;
  bool rigid = false;
};

class Signature {
 public:
  void add_predicate(std::string name, int arity);
  void add_function(std::string name, int arity, bool rigid);

  const PredicateDecl* find_predicate(std::string_view name) const;
  const FunctionDecl* find_function(std::string_view name) const;
  bool declares(std::string_view name) const;

  // Index of a symbol in declaration order; -1 when absent.
  int predicate_index(std::string_view name) const;
  int function_index(std::string_view name) const;

  const std::vector<PredicateDecl>& predicates() const { return predicates_; }
  const std::vector<FunctionDecl>& functions() const { return functions_; }

  bool operator==(const Signature&) const = default;

 private:
  std::vector<PredicateDecl> predicates_;
  std::vector<FunctionDecl> functions_;
};

// ── Terms ───────────────────────────────────────────────────────────────────
// A term is a variable or a function application; constants are 0-ary
// applications. Terms are immutable shared values.

class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string function, std::vector<Term> args);
  static Term constant(std::string name) { return apply(std::move(name), {}); }

  bool is_variable() const { return node_->is_variable; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }

  bool operator==(const Term& other) const;

 private:
  struct Node {
    bool is_variable;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// ── Formulas ────────────────────────────────────────────────────────────────
// Only the eight primitive constructors are ever stored; every derived form
// is expanded at construction time. Nodes are immutable and shared, and each
// carries an optional source span for diagnostics.

enum class FormulaKind : std::uint8_t {
  Atom,       // P(t1,...,tn)
  Equals,     // t = t'
  Bottom,     // _|_
  And,        // left & right
  InqDisj,    // left V right       (inquisitive disjunction)
  Implies,    // left -> right
  Forall,     // forall var. body
  InqExists,  // iexists var. body  (inquisitive existential)
};

class Formula {
 public:
  static Formula atom(std::string predicate, std::vector<Term> args,
                      SourceSpan span = {});
  static Formula equals(Term lhs, Term rhs, SourceSpan span = {});
  static Formula bottom(SourceSpan span = {});
  static Formula conj(Formula left, Formula right, SourceSpan span = {});
  static Formula inq_disj(Formula left, Formula right, SourceSpan span = {});
  static Formula implies(Formula left, Formula right, SourceSpan span = {});
  static Formula forall(std::string var, Formula body, SourceSpan span = {});
  static Formula inq_exists(std::string var, Formula body, SourceSpan span = {});

  FormulaKind kind() const { return node_->kind; }
  SourceSpan span() const { return node_->span; }

  // Atom: predicate name and argument terms. Equals: terms()[0] = terms()[1].
  const std::string& predicate() const { return node_->name; }
  const std::vector<Term>& terms() const { return node_->terms; }

  // Binary connectives.
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }

  // Quantifiers.
  const std::string& var() const { return node_->name; }
  const Formula& body() const { return node_->children[0]; }

  // Structural equality; spans are ignored.
  bool operator==(const Formula& other) const;

  // Stable identity of the underlying node, used as a cache key by the
  // evaluator. Structurally equal formulas may have distinct identities.
  const void* id() const { return node_.get(); }

 private:
  struct Node {
    FormulaKind kind;
    std::string name;            // predicate or bound variable
    std::vector<Term> terms;     // atom arguments, or the two equality sides
    std::vector<Formula> children;
    SourceSpan span;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// ── Derived forms ───────────────────────────────────────────────────────────
// Each builder returns the primitive expansion of the derived operator:
//
//   not(f)        f -> _|_
//   top()         _|_ -> _|_
//   or(f, g)      ~(~f & ~g)
//   exists(x, f)  ~forall x. ~f
//   qmark(f)      f V ~f
//   neq(t, t')    ~(t = t')
//   lam(t)        iexists x. x = t     x = least variable free in t
//   mu(t)         forall x. ?(x = t)
//   dep(ts; t')   lam(t1) & ... & lam(tn) -> lam(t')

Formula make_not(Formula f);
Formula make_top();
Formula make_or(Formula left, Formula right);
Formula make_exists(std::string var, Formula body);
Formula make_qmark(Formula f);
Formula make_neq(Term lhs, Term rhs);
Formula make_lambda(const Term& t, const Signature* sig = nullptr);
Formula make_mu(const Term& t, const Signature* sig = nullptr);
Formula make_dep(std::span<const Term> determinants, const Term& dependent,
                 const Signature* sig = nullptr);

// Machine-generated variables are drawn from the ordered family x0, x1, ...;
// this picks the least one not occurring in the given terms and not declared
// in the signature, when one is supplied.
std::string least_fresh_variable(std::span<const Term> terms,
                                 const Signature* sig = nullptr);

// ── Structural analysis ─────────────────────────────────────────────────────

// True iff no inquisitive disjunction or inquisitive existential occurs.
bool is_classical(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
void collect_term_vars(const Term& t, std::set<std::string>& out);

// Checks that every symbol used in f is declared with the right arity and,
// optionally, that f has no free variables. Throws ValidationError.
void check_symbols(const Formula& f, const Signature& sig,
                   bool allow_free_variables = true);

// ── Printing ────────────────────────────────────────────────────────────────
// Emits the concrete grammar; parse_formula(print_formula(f)) == f. The only
// resugared form is negation: `g -> _|_` prints as `~g`.

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);

}  // namespace inqmc

#endif  // INQMC_SYNTAX_HPP
