#include "stripslearn/completion.hpp"

#include <algorithm>
#include <ostream>

#include "stripslearn/errors.hpp"

namespace stripslearn {

void ObjectTypeTable::observe(const std::string &instance,
                              const std::string &object,
                              const std::string &type,
                              const TypeHierarchy &hierarchy) {
  if (!hierarchy.contains(type))
    throw UnknownType("unknown type '" + type + "' observed for object '" +
                      object + "'");
  std::set<std::string> &minimal = table_[{instance, object}];
  for (const std::string &t : minimal)
    if (is_subtype(t, type, hierarchy)) return;  // something at least as specific
  std::erase_if(minimal, [&](const std::string &t) {
    return is_subtype(type, t, hierarchy);
  });
  minimal.insert(type);
}

const std::set<std::string> &ObjectTypeTable::minimal_types(
    const std::string &instance, const std::string &object) const {
  static const std::set<std::string> empty;
  auto it = table_.find({instance, object});
  return it == table_.end() ? empty : it->second;
}

std::string ObjectTypeTable::resolved(const std::string &instance,
                                      const std::string &object,
                                      const TypeHierarchy &hierarchy,
                                      std::ostream *warnings) const {
  const std::set<std::string> &minimal = minimal_types(instance, object);
  if (minimal.empty()) return kRootType;
  if (minimal.size() == 1) return *minimal.begin();
  std::string lca = least_common_ancestor(minimal, hierarchy);
  if (warnings) {
    *warnings << "object '" << object << "' (instance '" << instance
              << "') observed at incomparable types";
    for (const std::string &t : minimal) *warnings << " " << t;
    *warnings << "; resolving to '" << lca << "'\n";
  }
  return lca;
}

std::set<GroundFact> ground_candidates(const Transition &R,
                                       const Substitution &sub) {
  std::set<std::string> range(sub.objects.begin(), sub.objects.end());
  std::set<GroundFact> gpc;
  for (const GroundFact &f : R.before) {
    bool in_range = std::all_of(
        f.args.begin(), f.args.end(),
        [&](const std::string &a) { return range.count(a) != 0; });
    if (in_range) gpc.insert(f);
  }
  return gpc;
}

std::set<LiftedFact> lift_all_ways(const std::set<GroundFact> &gpc,
                                   const Substitution &sub) {
  std::set<LiftedFact> lifted;
  for (const GroundFact &fact : gpc) {
    std::vector<std::vector<int>> preimages(fact.args.size());
    for (size_t pos = 0; pos < fact.args.size(); ++pos) {
      for (int p = 0; p < sub.size(); ++p)
        if (sub.objects[static_cast<size_t>(p)] == fact.args[pos])
          preimages[pos].push_back(p);
      if (preimages[pos].empty())
        throw std::logic_error("candidate argument '" + fact.args[pos] +
                               "' is outside the substitution range");
    }
    std::vector<size_t> choice(fact.args.size(), 0);
    while (true) {
      LiftedFact f;
      f.predicate = fact.predicate;
      for (size_t pos = 0; pos < fact.args.size(); ++pos)
        f.args.push_back(preimages[pos][choice[pos]]);
      lifted.insert(std::move(f));
      size_t pos = fact.args.size();
      while (pos > 0 && choice[pos - 1] + 1 == preimages[pos - 1].size())
        choice[--pos] = 0;
      if (pos == 0) break;
      ++choice[pos - 1];
    }
  }
  return lifted;
}

PreconditionCandidates precondition_candidates(const Transition &R,
                                               const Substitution &sub) {
  PreconditionCandidates out;
  out.gpc = ground_candidates(R, sub);
  out.lpc = lift_all_ways(out.gpc, sub);
  return out;
}

std::set<LiftedFact> synth_preconditions(const LabelGroup &group,
                                         const EffectSolution &solution) {
  std::set<LiftedFact> pre;
  bool first = true;
  for (const Transition &t : group.transitions) {
    const Substitution &sub = solution.substitutions.at(t.id);
    std::set<LiftedFact> lpc = lift_all_ways(ground_candidates(t, sub), sub);
    if (first) {
      pre = std::move(lpc);
      first = false;
    } else {
      std::set<LiftedFact> kept;
      std::set_intersection(pre.begin(), pre.end(), lpc.begin(), lpc.end(),
                            std::inserter(kept, kept.end()));
      pre = std::move(kept);
    }
    if (pre.empty()) break;  // intersection can only shrink
  }
  return pre;
}

ObjectTypeTable infer_object_types(const std::vector<Trace> &traces,
                                   const SignatureTable &signatures,
                                   const TypeHierarchy &hierarchy) {
  ObjectTypeTable table;
  for (const Trace &trace : traces) {
    for (const auto &[object, type] : trace.objects)
      table.observe(trace.instance_id, object, type, hierarchy);
    if (trace.steps.empty()) continue;  // no transition states to scan
    for (const State &state : replay_states(trace)) {
      for (const GroundFact &fact : state) {
        auto sig = signatures.find(fact.predicate);
        if (sig == signatures.end())
          throw UnknownPredicate("unknown predicate '" + fact.predicate + "'");
        for (size_t pos = 0; pos < fact.args.size(); ++pos)
          table.observe(trace.instance_id, fact.args[pos],
                        sig->second.arg_types[pos], hierarchy);
      }
    }
  }
  return table;
}

std::vector<std::string> assign_parameter_types(const LabelGroup &group,
                                                const EffectSolution &solution,
                                                const ObjectTypeTable &table,
                                                const TypeHierarchy &hierarchy,
                                                std::ostream *warnings) {
  std::vector<std::string> types(static_cast<size_t>(solution.k), kRootType);
  for (int i = 0; i < solution.k; ++i) {
    std::set<std::string> occupant_types;
    for (const Transition &t : group.transitions) {
      const Substitution &sub = solution.substitutions.at(t.id);
      occupant_types.insert(table.resolved(
          t.instance_id, sub.objects[static_cast<size_t>(i)], hierarchy,
          warnings));
    }
    if (!occupant_types.empty())
      types[static_cast<size_t>(i)] =
          least_common_ancestor(occupant_types, hierarchy);
  }
  return types;
}

}  // namespace stripslearn
