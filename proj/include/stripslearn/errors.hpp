#ifndef STRIPSLEARN_ERRORS_HPP
#define STRIPSLEARN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stripslearn {

// Base class for everything this library throws on bad input or
// exhausted budgets. Logic bugs still surface as std::logic_error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- input / parsing ---

struct ParseError : Error {
  ParseError(std::string file, int line, int column, const std::string &what)
      : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) +
              ": " + what),
        file(std::move(file)), line(line), column(column) {}
  std::string file;
  int line;
  int column;
};

struct UnsupportedFeature : Error {
  using Error::Error;
};

// --- model validation ---

struct UnknownType : Error {
  using Error::Error;
};

struct UnknownPredicate : Error {
  using Error::Error;
};

struct UnknownObject : Error {
  using Error::Error;
};

struct ArityMismatch : Error {
  using Error::Error;
};

struct InconsistentDelta : Error {
  using Error::Error;
};

struct UnknownAction : Error {
  using Error::Error;
};

struct NotApplicable : Error {
  explicit NotApplicable(const std::string &what, int step_index = -1)
      : Error(what), step_index(step_index) {}
  int step_index;  // -1 when not tied to a plan step
};

// --- sat bridge ---

struct UnregisteredVar : Error {
  using Error::Error;
};

// --- synthesis budgets ---

struct TimeLimit : Error {
  using Error::Error;
};

struct ParamBudgetExceeded : Error {
  ParamBudgetExceeded(const std::string &what, int last_k)
      : Error(what), last_k(last_k) {}
  int last_k;
};

struct NoCandidateObjects : Error {
  using Error::Error;
};

// --- graph isomorphism harness ---

struct NodeCountMismatch : Error {
  using Error::Error;
};

struct IsolatedVertexPresent : Error {
  using Error::Error;
};

struct TooLarge : Error {
  using Error::Error;
};

}  // namespace stripslearn

#endif
