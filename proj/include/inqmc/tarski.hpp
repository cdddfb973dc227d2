#ifndef INQMC_TARSKI_HPP
#define INQMC_TARSKI_HPP

#include "inqmc/model.hpp"
#include "inqmc/semantics.hpp"
#include "inqmc/syntax.hpp"

namespace inqmc {

// Standard Tarskian satisfaction over a world-free structure. This is the
// independent reference for classical formulas: it is a direct transcription
// of the textbook clauses and deliberately shares no evaluation machinery
// with the support relation. Throws EvalError on non-classical input or
// unbound variables.

int tarski_denote(const Structure& s, const Assignment& g, const Term& t);

bool tarski_eval(const Structure& s, const Assignment& g, const Formula& alpha);

}  // namespace inqmc

#endif  // INQMC_TARSKI_HPP
