#ifndef INQMC_ERRORS_HPP
#define INQMC_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace inqmc {

// Byte range into the source text a diagnostic refers to. end is exclusive.
struct SourceSpan {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

  bool empty() const { return begin == end; }
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Lexical or grammatical problem in a formula string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourceSpan span)
      : Error(what + " (at " + std::to_string(span.begin) + ".." +
              std::to_string(span.end) + ")"),
        span_(span) {}

  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

// A structural invariant of a signature, model, or structure is violated.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Problem during evaluation that is not a resource limit: unbound variable,
// non-classical input to a classical-only routine, missing symbol.
class EvalError : public Error {
 public:
  using Error::Error;
};

// Explicit resource error: an evaluation or enumeration exceeded its budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t steps, std::uint64_t budget)
      : Error(what + ": " + std::to_string(steps) + " steps exceed budget " +
              std::to_string(budget)),
        steps_(steps),
        budget_(budget) {}

  std::uint64_t steps() const { return steps_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t steps_;
  std::uint64_t budget_;
};

// File or JSON problem while loading external inputs.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace inqmc

#endif  // INQMC_ERRORS_HPP
