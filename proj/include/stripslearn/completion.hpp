#ifndef STRIPSLEARN_COMPLETION_HPP
#define STRIPSLEARN_COMPLETION_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stripslearn/model.hpp"
#include "stripslearn/synth.hpp"
#include "stripslearn/trace.hpp"

namespace stripslearn {

// Per-transition precondition candidates: the before-state facts whose
// arguments lie in the substitution range, and all their liftings.
struct PreconditionCandidates {
  std::set<GroundFact> gpc;
  std::set<LiftedFact> lpc;
};

// Minimal observed types per (instance, object). Objects are tracked
// per instance because traces carry their own object universes.
class ObjectTypeTable {
 public:
  void observe(const std::string &instance, const std::string &object,
               const std::string &type, const TypeHierarchy &hierarchy);

  // Antichain of the most specific observed types; empty when the
  // object never occurred in any fact or declaration.
  const std::set<std::string> &minimal_types(const std::string &instance,
                                             const std::string &object) const;

  // Single type for parameter assignment: "object" when unobserved, the
  // least common ancestor (with a warning) when siblings were observed.
  std::string resolved(const std::string &instance, const std::string &object,
                       const TypeHierarchy &hierarchy,
                       std::ostream *warnings = nullptr) const;

 private:
  std::map<std::pair<std::string, std::string>, std::set<std::string>> table_;
};

// Facts of R's before-state all of whose arguments are in range(sub);
// zero-arity facts are included unconditionally.
std::set<GroundFact> ground_candidates(const Transition &R,
                                       const Substitution &sub);

// Every lifting of every candidate: one lifted fact per choice of
// preimage parameter at every argument position.
std::set<LiftedFact> lift_all_ways(const std::set<GroundFact> &gpc,
                                   const Substitution &sub);

PreconditionCandidates precondition_candidates(const Transition &R,
                                               const Substitution &sub);

// Intersection of the lifted candidate sets over all transitions.
std::set<LiftedFact> synth_preconditions(const LabelGroup &group,
                                         const EffectSolution &solution);

// Scans every transition state (plus the declared object types) and
// records, per object, the most specific types seen at predicate
// argument positions.
ObjectTypeTable infer_object_types(const std::vector<Trace> &traces,
                                   const SignatureTable &signatures,
                                   const TypeHierarchy &hierarchy);

// Most general resolved type over the objects that ever occupied each
// parameter position; "object" when nothing was ever observed.
std::vector<std::string> assign_parameter_types(const LabelGroup &group,
                                                const EffectSolution &solution,
                                                const ObjectTypeTable &table,
                                                const TypeHierarchy &hierarchy,
                                                std::ostream *warnings = nullptr);

}  // namespace stripslearn

#endif
