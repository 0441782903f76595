#ifndef STRIPSLEARN_TRACEGEN_HPP
#define STRIPSLEARN_TRACEGEN_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stripslearn/model.hpp"
#include "stripslearn/trace.hpp"

namespace stripslearn {

struct ProblemInstance {
  std::string name;
  std::string domain_name;
  std::map<std::string, std::string> objects;  // includes domain constants
  State init;
  std::set<GroundFact> goal;  // carried along, unused by synthesis

  bool operator==(const ProblemInstance &) const = default;
};

struct PlanStep {
  std::string action;
  std::vector<std::string> args;

  bool operator==(const PlanStep &) const = default;
};

using Plan = std::vector<PlanStep>;

ProblemInstance parse_problem(const std::string &text,
                              const DomainModel &domain,
                              const std::string &file = "<problem>");
ProblemInstance parse_problem_file(const std::string &path,
                                   const DomainModel &domain);

// Plan files: one `(name o1 o2 ...)` per line, ';' comments.
Plan parse_plan(const std::string &text, const std::string &file = "<plan>");
Plan parse_plan_file(const std::string &path);

// Executes the plan and logs labels with net state deltas; the action
// arguments are deliberately not recorded.
Trace replay_plan(const DomainModel &domain, const ProblemInstance &problem,
                  const Plan &plan);

// Applies `length` uniformly sampled applicable ground actions (seeded,
// deterministic); stops early in states with no applicable action.
Trace random_walk(const DomainModel &domain, const ProblemInstance &problem,
                  int length, std::uint64_t seed);

// All (schema, substitution) pairs applicable in `s`, in deterministic
// order; bindings respect the declared parameter types.
std::vector<std::pair<const ActionSchema *, Substitution>>
applicable_ground_actions(const DomainModel &domain,
                          const ProblemInstance &problem, const State &s);

}  // namespace stripslearn

#endif
