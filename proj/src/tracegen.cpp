#include "stripslearn/tracegen.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "pddl_internal.hpp"
#include "sexpr.hpp"
#include "stripslearn/errors.hpp"

namespace stripslearn {

namespace {

using sexpr::Node;

void check_fact_objects(const GroundFact &fact, const ProblemInstance &problem,
                        const std::string &file, int line) {
  for (const std::string &arg : fact.args)
    if (!problem.objects.count(arg))
      throw UnknownObject(file + ":" + std::to_string(line) +
                          ": undeclared object '" + arg + "'");
}

}  // namespace

ProblemInstance parse_problem(const std::string &text,
                              const DomainModel &domain,
                              const std::string &file) {
  Node top = sexpr::read_one(text, file);
  if (!top.headed("define") || top.size() < 2 ||
      !top.items[1].headed("problem") || top.items[1].size() != 2 ||
      !top.items[1].items[1].is_atom)
    sexpr::fail(top, file, "expected '(define (problem name) ...)'");

  ProblemInstance problem;
  problem.name = top.items[1].items[1].atom;
  problem.objects = domain.constants;

  for (size_t i = 2; i < top.size(); ++i) {
    const Node &section = top.items[i];
    if (!section.is_list() || section.items.empty() ||
        !section.items[0].is_atom)
      sexpr::fail(section, file, "expected a problem section");
    const std::string &head = section.items[0].atom;
    std::span<const Node> rest(section.items.data() + 1,
                               section.items.size() - 1);
    if (head == ":domain") {
      if (rest.size() != 1 || !rest[0].is_atom)
        sexpr::fail(section, file, "expected '(:domain name)'");
      problem.domain_name = rest[0].atom;
    } else if (head == ":objects") {
      for (const auto &o : pddl::parse_typed_list(rest, file, false)) {
        if (!domain.hierarchy.contains(o.type))
          throw UnknownType(file + ":" + std::to_string(o.at->line) +
                            ": unknown type '" + o.type + "'");
        problem.objects[o.name] = o.type;
      }
    } else if (head == ":init") {
      for (const Node &f : rest) {
        GroundFact fact = pddl::parse_fact(f, domain.signatures, file);
        check_fact_objects(fact, problem, file, f.line);
        problem.init.insert(fact);
      }
    } else if (head == ":goal") {
      if (rest.size() != 1)
        sexpr::fail(section, file, "expected '(:goal formula)'");
      std::vector<const Node *> facts;
      if (rest[0].headed("and")) {
        for (size_t j = 1; j < rest[0].size(); ++j)
          facts.push_back(&rest[0].items[j]);
      } else {
        facts.push_back(&rest[0]);
      }
      for (const Node *f : facts) {
        if (f->headed("not"))
          throw UnsupportedFeature(file + ": negative goals are not supported");
        GroundFact fact = pddl::parse_fact(*f, domain.signatures, file);
        check_fact_objects(fact, problem, file, f->line);
        problem.goal.insert(fact);
      }
    } else {
      throw UnsupportedFeature(file + ":" + std::to_string(section.line) +
                               ": section '" + head + "' is not supported");
    }
  }
  return problem;
}

ProblemInstance parse_problem_file(const std::string &path,
                                   const DomainModel &domain) {
  return parse_problem(pddl::read_file(path), domain, path);
}

Plan parse_plan(const std::string &text, const std::string &file) {
  Plan plan;
  for (const Node &form : sexpr::read_all(text, file)) {
    if (!form.is_list() || form.items.empty() || !form.items[0].is_atom)
      sexpr::fail(form, file, "expected '(action o1 o2 ...)'");
    PlanStep step;
    step.action = form.items[0].atom;
    for (size_t i = 1; i < form.size(); ++i) {
      if (!form.items[i].is_atom)
        sexpr::fail(form.items[i], file, "expected an object name");
      step.args.push_back(form.items[i].atom);
    }
    plan.push_back(std::move(step));
  }
  return plan;
}

Plan parse_plan_file(const std::string &path) {
  return parse_plan(pddl::read_file(path), path);
}

namespace {

Trace start_trace(const ProblemInstance &problem) {
  Trace trace;
  trace.instance_id = problem.name;
  trace.objects = problem.objects;
  trace.init = problem.init;
  return trace;
}

void append_step(Trace &trace, State &state, const std::string &label,
                 const State &next) {
  TraceStep step;
  step.label = label;
  std::set_difference(next.begin(), next.end(), state.begin(), state.end(),
                      std::inserter(step.added, step.added.end()));
  std::set_difference(state.begin(), state.end(), next.begin(), next.end(),
                      std::inserter(step.deleted, step.deleted.end()));
  trace.steps.push_back(std::move(step));
  state = next;
}

}  // namespace

Trace replay_plan(const DomainModel &domain, const ProblemInstance &problem,
                  const Plan &plan) {
  Trace trace = start_trace(problem);
  State state = problem.init;
  for (size_t i = 0; i < plan.size(); ++i) {
    const PlanStep &step = plan[i];
    int index = static_cast<int>(i);
    const ActionSchema *schema = domain.find_schema(step.action);
    if (!schema) throw UnknownAction("step " + std::to_string(index) +
                                     ": unknown action '" + step.action + "'");
    if (static_cast<int>(step.args.size()) != schema->arity())
      throw ArityMismatch("step " + std::to_string(index) + ": action '" +
                          step.action + "' expects " +
                          std::to_string(schema->arity()) + " arguments");
    Substitution sub;
    sub.objects = step.args;
    for (int p = 0; p < schema->arity(); ++p) {
      auto obj = problem.objects.find(step.args[static_cast<size_t>(p)]);
      if (obj == problem.objects.end())
        throw UnknownObject("step " + std::to_string(index) +
                            ": undeclared object '" +
                            step.args[static_cast<size_t>(p)] + "'");
      if (!is_subtype(obj->second, schema->param_types[static_cast<size_t>(p)],
                      domain.hierarchy))
        throw NotApplicable("step " + std::to_string(index) + ": object '" +
                                obj->first + "' does not fit parameter type '" +
                                schema->param_types[static_cast<size_t>(p)] +
                                "'",
                            index);
    }
    if (!applicable(state, *schema, sub))
      throw NotApplicable("step " + std::to_string(index) + ": action '" +
                              step.action + "' is not applicable",
                          index);
    State next = apply(state, *schema, sub);
    append_step(trace, state, step.action, next);
  }
  return trace;
}

std::vector<std::pair<const ActionSchema *, Substitution>>
applicable_ground_actions(const DomainModel &domain,
                          const ProblemInstance &problem, const State &s) {
  std::vector<std::pair<const ActionSchema *, Substitution>> out;
  for (const ActionSchema &schema : domain.schemas) {
    // Candidate objects per parameter, filtered by the declared types.
    std::vector<std::vector<const std::string *>> candidates(
        static_cast<size_t>(schema.arity()));
    bool impossible = false;
    for (int p = 0; p < schema.arity() && !impossible; ++p) {
      for (const auto &[name, type] : problem.objects)
        if (is_subtype(type, schema.param_types[static_cast<size_t>(p)],
                       domain.hierarchy))
          candidates[static_cast<size_t>(p)].push_back(&name);
      impossible = candidates[static_cast<size_t>(p)].empty();
    }
    if (impossible && schema.arity() > 0) continue;

    Substitution sub;
    sub.objects.resize(static_cast<size_t>(schema.arity()));
    std::vector<size_t> choice(static_cast<size_t>(schema.arity()), 0);
    while (true) {
      for (size_t p = 0; p < choice.size(); ++p)
        sub.objects[p] = *candidates[p][choice[p]];
      if (applicable(s, schema, sub)) out.emplace_back(&schema, sub);
      size_t pos = choice.size();
      while (pos > 0 && choice[pos - 1] + 1 == candidates[pos - 1].size())
        choice[--pos] = 0;
      if (pos == 0) break;
      ++choice[pos - 1];
    }
  }
  return out;
}

Trace random_walk(const DomainModel &domain, const ProblemInstance &problem,
                  int length, std::uint64_t seed) {
  Trace trace = start_trace(problem);
  State state = problem.init;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < length; ++i) {
    auto actions = applicable_ground_actions(domain, problem, state);
    if (actions.empty()) break;  // dead end
    const auto &[schema, sub] = actions[rng() % actions.size()];
    State next = apply(state, *schema, sub);
    append_step(trace, state, schema->name, next);
  }
  return trace;
}

}  // namespace stripslearn
