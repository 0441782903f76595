#ifndef STRIPSLEARN_PDDL_INTERNAL_HPP
#define STRIPSLEARN_PDDL_INTERNAL_HPP

#include <span>
#include <string>
#include <vector>

#include "sexpr.hpp"
#include "stripslearn/model.hpp"

namespace stripslearn::pddl {

struct TypedName {
  std::string name;
  std::string type;
  const sexpr::Node *at;
};

// Parses a PDDL typed list `n1 n2 - t1 n3 - t2 n4` where trailing names
// default to "object". When `want_variables` is set, every name must
// start with '?' (stripped in the result); otherwise none may.
std::vector<TypedName> parse_typed_list(std::span<const sexpr::Node> items,
                                        const std::string &file,
                                        bool want_variables);

// Parses `(pred a1 a2 ...)` and checks predicate and arity against the
// signature table. Argument validation is left to the caller.
GroundFact parse_fact(const sexpr::Node &node, const SignatureTable &sigs,
                      const std::string &file);

std::string read_file(const std::string &path);

}  // namespace stripslearn::pddl

#endif
