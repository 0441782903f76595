#include "stripslearn/model.hpp"

#include <algorithm>

#include "stripslearn/errors.hpp"

namespace stripslearn {

TypeHierarchy::TypeHierarchy() { types_.insert(kRootType); }

void TypeHierarchy::declare(const std::string &type,
                            const std::string &parent) {
  if (type == kRootType) {
    if (parent != kRootType)
      throw UnknownType("the root type 'object' cannot have a parent");
    return;
  }
  auto it = parent_.find(type);
  if (it != parent_.end()) {
    if (it->second != parent)
      throw UnknownType("type '" + type + "' redeclared with parent '" +
                        parent + "' (was '" + it->second + "')");
    return;
  }
  types_.insert(type);
  types_.insert(parent);  // forward references allowed within one :types block
  parent_[type] = parent;
  // The forest must stay a forest: walk up; a chain longer than the
  // number of types means this declaration closed a cycle.
  std::string cur = type;
  for (size_t steps = 0; cur != kRootType; ++steps) {
    if (steps > types_.size()) {
      parent_.erase(type);
      throw UnknownType("type '" + type + "' with parent '" + parent +
                        "' introduces a cycle");
    }
    auto p = parent_.find(cur);
    cur = (p == parent_.end()) ? kRootType : p->second;
  }
}

bool TypeHierarchy::contains(const std::string &type) const {
  return types_.count(type) != 0;
}

const std::string &TypeHierarchy::parent(const std::string &type) const {
  static const std::string empty;
  if (type == kRootType) return empty;
  auto it = parent_.find(type);
  if (it == parent_.end()) {
    if (!contains(type)) throw UnknownType("unknown type '" + type + "'");
    return *types_.find(kRootType);  // declared only as someone's parent
  }
  return it->second;
}

std::vector<std::string> TypeHierarchy::ancestors(
    const std::string &type) const {
  if (!contains(type)) throw UnknownType("unknown type '" + type + "'");
  std::vector<std::string> chain;
  std::string cur = type;
  chain.push_back(cur);
  while (cur != kRootType) {
    cur = parent(cur);
    chain.push_back(cur);
  }
  return chain;
}

bool is_subtype(const std::string &t1, const std::string &t2,
                const TypeHierarchy &h) {
  if (!h.contains(t1)) throw UnknownType("unknown type '" + t1 + "'");
  if (!h.contains(t2)) throw UnknownType("unknown type '" + t2 + "'");
  std::string cur = t1;
  while (true) {
    if (cur == t2) return true;
    if (cur == kRootType) return false;
    cur = h.parent(cur);
  }
}

std::string least_common_ancestor(const std::set<std::string> &ts,
                                  const TypeHierarchy &h) {
  if (ts.empty()) throw UnknownType("least_common_ancestor of an empty set");
  auto it = ts.begin();
  std::vector<std::string> chain = h.ancestors(*it);
  for (++it; it != ts.end(); ++it) {
    std::vector<std::string> other = h.ancestors(*it);
    // Keep the suffix of `chain` that also ends `other`: both chains end
    // at the root, so the common suffix is the shared ancestor line.
    auto ci = chain.rbegin();
    auto oi = other.rbegin();
    size_t shared = 0;
    while (ci != chain.rend() && oi != other.rend() && *ci == *oi) {
      ++shared;
      ++ci;
      ++oi;
    }
    chain.erase(chain.begin(), chain.end() - static_cast<long>(shared));
  }
  return chain.front();
}

GroundFact ground(const LiftedFact &f, const Substitution &sub) {
  GroundFact g;
  g.predicate = f.predicate;
  g.args.reserve(f.args.size());
  for (int idx : f.args) g.args.push_back(sub.objects.at(idx));
  return g;
}

bool applicable(const State &s, const ActionSchema &schema,
                const Substitution &sub) {
  for (const LiftedFact &f : schema.pre)
    if (!s.count(ground(f, sub))) return false;
  return true;
}

State apply(const State &s, const ActionSchema &schema,
            const Substitution &sub) {
  if (!applicable(s, schema, sub))
    throw NotApplicable("action '" + schema.name +
                        "' is not applicable in the given state");
  State result = s;
  for (const LiftedFact &f : schema.del) result.erase(ground(f, sub));
  for (const LiftedFact &f : schema.add) result.insert(ground(f, sub));
  return result;
}

const ActionSchema *DomainModel::find_schema(const std::string &name) const {
  for (const ActionSchema &a : schemas)
    if (a.name == name) return &a;
  return nullptr;
}

}  // namespace stripslearn
