#ifndef STRIPSLEARN_TRACE_HPP
#define STRIPSLEARN_TRACE_HPP

#include <map>
#include <string>
#include <vector>

#include "stripslearn/model.hpp"

namespace stripslearn {

// One logged step: the action label plus the state delta it caused.
struct TraceStep {
  std::string label;
  std::set<GroundFact> added;
  std::set<GroundFact> deleted;

  bool operator==(const TraceStep &) const = default;
};

struct Trace {
  std::string instance_id;
  std::map<std::string, std::string> objects;  // object -> declared type
  State init;
  std::vector<TraceStep> steps;

  bool operator==(const Trace &) const = default;
};

struct Transition {
  int id = -1;  // unique within one decompose() call
  std::string instance_id;
  State before;
  std::string label;
  State after;

  std::set<GroundFact> added() const;    // after \ before
  std::set<GroundFact> deleted() const;  // before \ after
};

struct LabelGroup {
  std::string label;
  std::vector<Transition> transitions;  // input order
  int min_pars = 0;
};

// Parses one trace file, reconstructs the full state sequence, and
// validates every delta against the declarations.
Trace parse_trace(const std::string &text, const SignatureTable &signatures,
                  const TypeHierarchy &hierarchy,
                  const std::string &file = "<trace>");

Trace parse_trace_file(const std::string &path,
                       const SignatureTable &signatures,
                       const TypeHierarchy &hierarchy);

// Deterministic emission (sorted facts); parse_trace round-trips it.
std::string emit_trace(const Trace &trace);

// Full state sequence S_0..S_n of a trace (S_0 = init).
std::vector<State> replay_states(const Trace &trace);

// Splits traces into per-label transition groups. Transition ids are
// assigned sequentially in (trace, step) order.
std::map<std::string, LabelGroup> decompose(const std::vector<Trace> &traces);

// Maximum over the group's transitions of the number of distinct
// objects occurring in facts that change value.
int min_pars(const LabelGroup &group);

}  // namespace stripslearn

#endif
