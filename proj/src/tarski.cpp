#include "inqmc/tarski.hpp"

namespace inqmc {

int tarski_denote(const Structure& s, const Assignment& g, const Term& t) {
  if (t.is_variable()) {
    const int* v = g.find(t.name());
    if (v == nullptr) throw EvalError("unbound variable: " + t.name());
    if (*v < 0 || *v >= s.domain_size())
      throw EvalError("assignment maps " + t.name() + " outside the domain");
    return *v;
  }
  const int fn = s.signature.function_index(t.name());
  if (fn < 0) throw EvalError("unknown function symbol: " + t.name());
  std::vector<int> args;
  args.reserve(t.args().size());
  for (const Term& arg : t.args()) args.push_back(tarski_denote(s, g, arg));
  return s.function_value(fn, args);
}

bool tarski_eval(const Structure& s, const Assignment& g, const Formula& alpha) {
  switch (alpha.kind()) {
    case FormulaKind::Atom: {
      const int pred = s.signature.predicate_index(alpha.predicate());
      if (pred < 0)
        throw EvalError("unknown predicate symbol: " + alpha.predicate());
      std::vector<int> args;
      args.reserve(alpha.terms().size());
      for (const Term& t : alpha.terms())
        args.push_back(tarski_denote(s, g, t));
      return s.predicate_holds(pred, args);
    }
    case FormulaKind::Equals:
      return tarski_denote(s, g, alpha.terms()[0]) ==
             tarski_denote(s, g, alpha.terms()[1]);
    case FormulaKind::Bottom:
      return false;
    case FormulaKind::And:
      return tarski_eval(s, g, alpha.left()) && tarski_eval(s, g, alpha.right());
    case FormulaKind::Implies:
      return !tarski_eval(s, g, alpha.left()) ||
             tarski_eval(s, g, alpha.right());
    case FormulaKind::Forall: {
      Assignment extended = g;
      for (int d = 0; d < s.domain_size(); ++d) {
        extended.set(alpha.var(), d);
        if (!tarski_eval(s, extended, alpha.body())) return false;
      }
      return true;
    }
    case FormulaKind::InqDisj:
    case FormulaKind::InqExists:
      throw EvalError("tarski_eval requires a classical formula");
  }
  throw EvalError("tarski_eval: unknown formula kind");
}

}  // namespace inqmc
