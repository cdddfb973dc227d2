#include "inqmc/syntax.hpp"

#include <algorithm>
#include <sstream>

namespace inqmc {

// ── Signature ───────────────────────────────────────────────────────────────

void Signature::add_predicate(std::string name, int arity) {
  if (name.empty()) throw ValidationError("predicate name must be non-empty");
  if (arity < 0) throw ValidationError("negative arity for predicate " + name);
  if (declares(name)) throw ValidationError("duplicate symbol name: " + name);
  predicates_.push_back({std::move(name), arity});
}

void Signature::add_function(std::string name, int arity, bool rigid) {
  if (name.empty()) throw ValidationError("function name must be non-empty");
  if (arity < 0) throw ValidationError("negative arity for function " + name);
  if (declares(name)) throw ValidationError("duplicate symbol name: " + name);
  functions_.push_back({std::move(name), arity, rigid});
}

const PredicateDecl* Signature::find_predicate(std::string_view name) const {
  for (const auto& p : predicates_)
    if (p.name == name) return &p;
  return nullptr;
}

const FunctionDecl* Signature::find_function(std::string_view name) const {
  for (const auto& f : functions_)
    if (f.name == name) return &f;
  return nullptr;
}

bool Signature::declares(std::string_view name) const {
  return find_predicate(name) != nullptr || find_function(name) != nullptr;
}

int Signature::predicate_index(std::string_view name) const {
  for (std::size_t i = 0; i < predicates_.size(); ++i)
    if (predicates_[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::function_index(std::string_view name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (functions_[i].name == name) return static_cast<int>(i);
  return -1;
}

// ── Terms ───────────────────────────────────────────────────────────────────

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{true, std::move(name), {}}));
}

Term Term::apply(std::string function, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(
      Node{false, std::move(function), std::move(args)}));
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->is_variable != other.node_->is_variable) return false;
  if (node_->name != other.node_->name) return false;
  return node_->args == other.node_->args;
}

// ── Formulas ────────────────────────────────────────────────────────────────

Formula Formula::atom(std::string predicate, std::vector<Term> args,
                      SourceSpan span) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::Atom, std::move(predicate), std::move(args), {}, span}));
}

Formula Formula::equals(Term lhs, Term rhs, SourceSpan span) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Equals, {}, {std::move(lhs), std::move(rhs)}, {}, span}));
}

Formula Formula::bottom(SourceSpan span) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Bottom, {}, {}, {}, span}));
}

Formula Formula::conj(Formula l, Formula r, SourceSpan span) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::And, {}, {}, {std::move(l), std::move(r)}, span}));
}

Formula Formula::inq_disj(Formula l, Formula r, SourceSpan span) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::InqDisj, {}, {}, {std::move(l), std::move(r)}, span}));
}

Formula Formula::implies(Formula l, Formula r, SourceSpan span) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Implies, {}, {}, {std::move(l), std::move(r)}, span}));
}

Formula Formula::forall(std::string var, Formula body, SourceSpan span) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::Forall, std::move(var), {}, {std::move(body)}, span}));
}

Formula Formula::inq_exists(std::string var, Formula body, SourceSpan span) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::InqExists, std::move(var), {}, {std::move(body)}, span}));
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->name != other.node_->name) return false;
  if (node_->terms != other.node_->terms) return false;
  return node_->children == other.node_->children;
}

// ── Derived forms ───────────────────────────────────────────────────────────

Formula make_not(Formula f) {
  return Formula::implies(std::move(f), Formula::bottom());
}

Formula make_top() { return make_not(Formula::bottom()); }

Formula make_or(Formula left, Formula right) {
  return make_not(Formula::conj(make_not(std::move(left)), make_not(std::move(right))));
}

Formula make_exists(std::string var, Formula body) {
  return make_not(Formula::forall(std::move(var), make_not(std::move(body))));
}

Formula make_qmark(Formula f) {
  Formula neg = make_not(f);
  return Formula::inq_disj(std::move(f), std::move(neg));
}

Formula make_neq(Term lhs, Term rhs) {
  return make_not(Formula::equals(std::move(lhs), std::move(rhs)));
}

std::string least_fresh_variable(std::span<const Term> terms,
                                 const Signature* sig) {
  std::set<std::string> used;
  for (const Term& t : terms) collect_term_vars(t, used);
  for (int k = 0;; ++k) {
    std::string candidate = "x" + std::to_string(k);
    if (used.count(candidate)) continue;
    if (sig != nullptr && sig->declares(candidate)) continue;
    return candidate;
  }
}

Formula make_lambda(const Term& t, const Signature* sig) {
  std::string x = least_fresh_variable({&t, 1}, sig);
  return Formula::inq_exists(x, Formula::equals(Term::variable(x), t));
}

Formula make_mu(const Term& t, const Signature* sig) {
  std::string x = least_fresh_variable({&t, 1}, sig);
  return Formula::forall(x, make_qmark(Formula::equals(Term::variable(x), t)));
}

Formula make_dep(std::span<const Term> determinants, const Term& dependent,
                 const Signature* sig) {
  if (determinants.empty())
    throw ValidationError("dep requires at least one determining term");
  Formula antecedent = make_lambda(determinants[0], sig);
  for (std::size_t i = 1; i < determinants.size(); ++i)
    antecedent = Formula::conj(std::move(antecedent),
                               make_lambda(determinants[i], sig));
  return Formula::implies(std::move(antecedent), make_lambda(dependent, sig));
}

// ── Structural analysis ─────────────────────────────────────────────────────

bool is_classical(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Equals:
    case FormulaKind::Bottom:
      return true;
    case FormulaKind::And:
    case FormulaKind::Implies:
      return is_classical(f.left()) && is_classical(f.right());
    case FormulaKind::Forall:
      return is_classical(f.body());
    case FormulaKind::InqDisj:
    case FormulaKind::InqExists:
      return false;
  }
  return false;
}

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.name());
    return;
  }
  for (const Term& arg : t.args()) collect_term_vars(arg, out);
}

static void collect_free_vars(const Formula& f, std::set<std::string>& bound,
                              std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Equals: {
      std::set<std::string> vars;
      for (const Term& t : f.terms()) collect_term_vars(t, vars);
      for (const auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case FormulaKind::Bottom:
      return;
    case FormulaKind::And:
    case FormulaKind::InqDisj:
    case FormulaKind::Implies:
      collect_free_vars(f.left(), bound, out);
      collect_free_vars(f.right(), bound, out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::InqExists: {
      bool was_bound = bound.count(f.var()) > 0;
      bound.insert(f.var());
      collect_free_vars(f.body(), bound, out);
      if (!was_bound) bound.erase(f.var());
      return;
    }
  }
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free_vars(f, bound, out);
  return out;
}

static void check_term_symbols(const Term& t, const Signature& sig) {
  if (t.is_variable()) {
    if (sig.declares(t.name()))
      throw ValidationError("variable shadows declared symbol: " + t.name());
    return;
  }
  const FunctionDecl* decl = sig.find_function(t.name());
  if (decl == nullptr)
    throw ValidationError("unknown function symbol: " + t.name());
  if (decl->arity != static_cast<int>(t.args().size()))
    throw ValidationError("arity mismatch for " + t.name() + ": declared " +
                          std::to_string(decl->arity) + ", used with " +
                          std::to_string(t.args().size()));
  for (const Term& arg : t.args()) check_term_symbols(arg, sig);
}

static void check_formula_symbols(const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      const PredicateDecl* decl = sig.find_predicate(f.predicate());
      if (decl == nullptr)
        throw ValidationError("unknown predicate symbol: " + f.predicate());
      if (decl->arity != static_cast<int>(f.terms().size()))
        throw ValidationError("arity mismatch for " + f.predicate());
      for (const Term& t : f.terms()) check_term_symbols(t, sig);
      return;
    }
    case FormulaKind::Equals:
      check_term_symbols(f.terms()[0], sig);
      check_term_symbols(f.terms()[1], sig);
      return;
    case FormulaKind::Bottom:
      return;
    case FormulaKind::And:
    case FormulaKind::InqDisj:
    case FormulaKind::Implies:
      check_formula_symbols(f.left(), sig);
      check_formula_symbols(f.right(), sig);
      return;
    case FormulaKind::Forall:
    case FormulaKind::InqExists:
      if (sig.declares(f.var()))
        throw ValidationError("bound variable shadows declared symbol: " +
                              f.var());
      check_formula_symbols(f.body(), sig);
      return;
  }
}

void check_symbols(const Formula& f, const Signature& sig,
                   bool allow_free_variables) {
  check_formula_symbols(f, sig);
  if (!allow_free_variables) {
    std::set<std::string> fv = free_vars(f);
    if (!fv.empty())
      throw ValidationError("formula has free variables: " + *fv.begin());
  }
}

// ── Printing ────────────────────────────────────────────────────────────────
// Binding strength, loosest first: -> and quantifier bodies (1), V (2),
// & (3), ~ operands (4). Quantifier nodes print at level 1 because their
// body extends maximally to the right; anything tighter needs parentheses.

std::string print_term(const Term& t) {
  if (t.is_variable()) return t.name();
  if (t.args().empty()) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i > 0) out += ", ";
    out += print_term(t.args()[i]);
  }
  out += ")";
  return out;
}

namespace {

int formula_level(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Implies:
      // Negation sugar prints as a tight prefix operator.
      return f.right().kind() == FormulaKind::Bottom ? 4 : 1;
    case FormulaKind::Forall:
    case FormulaKind::InqExists:
      return 1;
    case FormulaKind::InqDisj:
      return 2;
    case FormulaKind::And:
      return 3;
    case FormulaKind::Atom:
    case FormulaKind::Equals:
    case FormulaKind::Bottom:
      return 5;
  }
  return 5;
}

void print_at(const Formula& f, int min_level, std::string& out) {
  const bool parens = formula_level(f) < min_level;
  if (parens) out += "(";
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += f.predicate();
      if (!f.terms().empty()) {
        out += "(";
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i > 0) out += ", ";
          out += print_term(f.terms()[i]);
        }
        out += ")";
      }
      break;
    case FormulaKind::Equals:
      out += print_term(f.terms()[0]) + " = " + print_term(f.terms()[1]);
      break;
    case FormulaKind::Bottom:
      out += "_|_";
      break;
    case FormulaKind::And:
      print_at(f.left(), 3, out);
      out += " & ";
      print_at(f.right(), 4, out);
      break;
    case FormulaKind::InqDisj:
      print_at(f.left(), 2, out);
      out += " V ";
      print_at(f.right(), 3, out);
      break;
    case FormulaKind::Implies:
      if (f.right().kind() == FormulaKind::Bottom) {
        out += "~";
        print_at(f.left(), 5, out);
      } else {
        print_at(f.left(), 2, out);
        out += " -> ";
        print_at(f.right(), 1, out);
      }
      break;
    case FormulaKind::Forall:
      out += "forall " + f.var() + ". ";
      print_at(f.body(), 1, out);
      break;
    case FormulaKind::InqExists:
      out += "iexists " + f.var() + ". ";
      print_at(f.body(), 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_at(f, 1, out);
  return out;
}

}  // namespace inqmc
