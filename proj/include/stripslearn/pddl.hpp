#ifndef STRIPSLEARN_PDDL_HPP
#define STRIPSLEARN_PDDL_HPP

#include <string>

#include "stripslearn/model.hpp"

namespace stripslearn {

// Parses a PDDL domain restricted to :strips + :typing. Header files
// (types and predicates, zero actions) use the same grammar. ADL
// constructs, negative preconditions, and numeric fluents are rejected
// with UnsupportedFeature.
DomainModel parse_domain(const std::string &text,
                         const std::string &file = "<domain>");

DomainModel parse_domain_file(const std::string &path);

// Deterministic PDDL output; parse_domain(emit_domain(m)) == m.
std::string emit_domain(const DomainModel &model);

}  // namespace stripslearn

#endif
