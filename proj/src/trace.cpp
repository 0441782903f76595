#include "stripslearn/trace.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pddl_internal.hpp"
#include "sexpr.hpp"
#include "stripslearn/errors.hpp"

namespace stripslearn {

namespace {

using sexpr::Node;

void check_objects(const GroundFact &fact,
                   const std::map<std::string, std::string> &objects,
                   const std::string &file, int line) {
  for (const std::string &arg : fact.args)
    if (!objects.count(arg))
      throw UnknownObject(file + ":" + std::to_string(line) +
                          ": undeclared object '" + arg + "' in fact (" +
                          fact.predicate + " ...)");
}

}  // namespace

std::set<GroundFact> Transition::added() const {
  std::set<GroundFact> out;
  std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                      std::inserter(out, out.end()));
  return out;
}

std::set<GroundFact> Transition::deleted() const {
  std::set<GroundFact> out;
  std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                      std::inserter(out, out.end()));
  return out;
}

Trace parse_trace(const std::string &text, const SignatureTable &signatures,
                  const TypeHierarchy &hierarchy, const std::string &file) {
  Node top = sexpr::read_one(text, file);
  if (!top.headed("trace")) sexpr::fail(top, file, "expected '(trace ...)'");

  Trace trace;
  State current;
  bool saw_instance = false;

  for (size_t i = 1; i < top.size(); ++i) {
    const Node &section = top.items[i];
    if (!section.is_list() || section.items.empty() ||
        !section.items[0].is_atom)
      sexpr::fail(section, file, "expected a trace section");
    const std::string &head = section.items[0].atom;
    std::span<const Node> rest(section.items.data() + 1,
                               section.items.size() - 1);

    if (head == ":instance") {
      if (rest.size() != 1 || !rest[0].is_atom)
        sexpr::fail(section, file, "expected '(:instance id)'");
      trace.instance_id = rest[0].atom;
      saw_instance = true;
    } else if (head == ":objects") {
      for (const auto &o : pddl::parse_typed_list(rest, file, false)) {
        if (!hierarchy.contains(o.type))
          throw UnknownType(file + ":" + std::to_string(o.at->line) +
                            ": unknown type '" + o.type + "'");
        trace.objects[o.name] = o.type;
      }
    } else if (head == ":init") {
      for (const Node &f : rest) {
        GroundFact fact = pddl::parse_fact(f, signatures, file);
        check_objects(fact, trace.objects, file, f.line);
        trace.init.insert(fact);
      }
      current = trace.init;
    } else if (head == ":step") {
      TraceStep step;
      int line = section.line;
      for (const Node &part : rest) {
        if (part.headed(":label")) {
          if (part.size() != 2 || !part.items[1].is_atom)
            sexpr::fail(part, file, "expected '(:label name)'");
          step.label = part.items[1].atom;
        } else if (part.headed(":add") || part.headed(":del")) {
          bool adding = part.items[0].atom == ":add";
          for (size_t j = 1; j < part.size(); ++j) {
            GroundFact fact = pddl::parse_fact(part.items[j], signatures, file);
            check_objects(fact, trace.objects, file, part.items[j].line);
            (adding ? step.added : step.deleted).insert(fact);
          }
        } else {
          sexpr::fail(part, file, "expected '(:label ...)', '(:add ...)' or '(:del ...)'");
        }
      }
      if (step.label.empty())
        sexpr::fail(section, file, "step without a label");
      for (const GroundFact &f : step.deleted)
        if (!current.count(f))
          throw InconsistentDelta(file + ":" + std::to_string(line) +
                                  ": step deletes fact (" + f.predicate +
                                  " ...) that is not in the current state");
      for (const GroundFact &f : step.added)
        if (current.count(f))
          throw InconsistentDelta(file + ":" + std::to_string(line) +
                                  ": step adds fact (" + f.predicate +
                                  " ...) already in the current state");
      for (const GroundFact &f : step.deleted) current.erase(f);
      for (const GroundFact &f : step.added) current.insert(f);
      trace.steps.push_back(std::move(step));
    } else {
      sexpr::fail(section, file, "unknown trace section '" + head + "'");
    }
  }
  if (!saw_instance) sexpr::fail(top, file, "trace without '(:instance id)'");
  return trace;
}

Trace parse_trace_file(const std::string &path,
                       const SignatureTable &signatures,
                       const TypeHierarchy &hierarchy) {
  return parse_trace(pddl::read_file(path), signatures, hierarchy, path);
}

namespace {

void emit_fact(std::ostream &out, const GroundFact &f) {
  out << '(' << f.predicate;
  for (const std::string &a : f.args) out << ' ' << a;
  out << ')';
}

}  // namespace

std::string emit_trace(const Trace &trace) {
  std::ostringstream out;
  out << "(trace\n  (:instance " << trace.instance_id << ")\n  (:objects";
  for (const auto &[name, type] : trace.objects)
    out << ' ' << name << " - " << type;
  out << ")\n  (:init";
  for (const GroundFact &f : trace.init) {
    out << ' ';
    emit_fact(out, f);
  }
  out << ")";
  for (const TraceStep &step : trace.steps) {
    out << "\n  (:step (:label " << step.label << ") (:add";
    for (const GroundFact &f : step.added) {
      out << ' ';
      emit_fact(out, f);
    }
    out << ") (:del";
    for (const GroundFact &f : step.deleted) {
      out << ' ';
      emit_fact(out, f);
    }
    out << "))";
  }
  out << ")\n";
  return out.str();
}

std::vector<State> replay_states(const Trace &trace) {
  std::vector<State> states;
  states.push_back(trace.init);
  for (const TraceStep &step : trace.steps) {
    State next = states.back();
    for (const GroundFact &f : step.deleted) next.erase(f);
    for (const GroundFact &f : step.added) next.insert(f);
    states.push_back(std::move(next));
  }
  return states;
}

std::map<std::string, LabelGroup> decompose(const std::vector<Trace> &traces) {
  std::map<std::string, LabelGroup> groups;
  int next_id = 0;
  for (const Trace &trace : traces) {
    std::vector<State> states = replay_states(trace);
    for (size_t i = 0; i < trace.steps.size(); ++i) {
      Transition t;
      t.id = next_id++;
      t.instance_id = trace.instance_id;
      t.before = states[i];
      t.label = trace.steps[i].label;
      t.after = states[i + 1];
      LabelGroup &group = groups[t.label];
      group.label = t.label;
      group.transitions.push_back(std::move(t));
    }
  }
  for (auto &[label, group] : groups) group.min_pars = min_pars(group);
  return groups;
}

int min_pars(const LabelGroup &group) {
  int best = 0;
  for (const Transition &t : group.transitions) {
    std::set<std::string> objects;
    for (const GroundFact &f : t.added())
      objects.insert(f.args.begin(), f.args.end());
    for (const GroundFact &f : t.deleted())
      objects.insert(f.args.begin(), f.args.end());
    best = std::max(best, static_cast<int>(objects.size()));
  }
  return best;
}

}  // namespace stripslearn
