#ifndef STRIPSLEARN_MODEL_HPP
#define STRIPSLEARN_MODEL_HPP

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace stripslearn {

inline constexpr const char *kRootType = "object";

// PDDL type forest with the implicit root "object". Single inheritance,
// so least common ancestors are unique.
class TypeHierarchy {
 public:
  TypeHierarchy();

  // Declares `type` with the given parent (defaults to the root). Both
  // names are stored lowercased. Redeclaring with a different parent is
  // an error; redeclaring identically is a no-op.
  void declare(const std::string &type, const std::string &parent = kRootType);

  bool contains(const std::string &type) const;
  const std::set<std::string> &types() const { return types_; }

  // Parent of `type`, or empty string for the root.
  const std::string &parent(const std::string &type) const;

  // Chain type, parent(type), ..., root.
  std::vector<std::string> ancestors(const std::string &type) const;

  bool operator==(const TypeHierarchy &) const = default;

 private:
  std::set<std::string> types_;
  std::map<std::string, std::string> parent_;  // no entry for the root
};

// true iff t1 <= t2 in the reflexive-transitive subtype order.
bool is_subtype(const std::string &t1, const std::string &t2,
                const TypeHierarchy &h);

// Deepest type t with t' <= t for every t' in ts. ts must be nonempty.
std::string least_common_ancestor(const std::set<std::string> &ts,
                                  const TypeHierarchy &h);

struct PredicateSignature {
  std::string name;
  std::vector<std::string> arg_types;

  int arity() const { return static_cast<int>(arg_types.size()); }
  auto operator<=>(const PredicateSignature &) const = default;
};

using SignatureTable = std::map<std::string, PredicateSignature>;

struct GroundFact {
  std::string predicate;
  std::vector<std::string> args;

  auto operator<=>(const GroundFact &) const = default;
};

// A fact over schema parameters, stored as 0-based parameter indices.
struct LiftedFact {
  std::string predicate;
  std::vector<int> args;

  auto operator<=>(const LiftedFact &) const = default;
};

using State = std::set<GroundFact>;

// Total parameter binding for one transition, index-aligned with the
// schema's parameter list.
struct Substitution {
  std::vector<std::string> objects;

  int size() const { return static_cast<int>(objects.size()); }
  const std::string &operator[](int param) const { return objects[param]; }
  bool operator==(const Substitution &) const = default;
};

GroundFact ground(const LiftedFact &f, const Substitution &sub);

struct ActionSchema {
  std::string name;
  std::vector<std::string> params;       // distinct, without the '?'
  std::vector<std::string> param_types;  // same length as params
  std::set<LiftedFact> pre;
  std::set<LiftedFact> add;
  std::set<LiftedFact> del;

  int arity() const { return static_cast<int>(params.size()); }
  bool operator==(const ActionSchema &) const = default;
};

bool applicable(const State &s, const ActionSchema &schema,
                const Substitution &sub);

// (s \ ground(del)) U ground(add); deletes applied before adds.
// Throws NotApplicable if the precondition does not hold in s.
State apply(const State &s, const ActionSchema &schema,
            const Substitution &sub);

// A parsed PDDL domain (or header, when `schemas` is empty).
struct DomainModel {
  std::string name;
  TypeHierarchy hierarchy;
  SignatureTable signatures;
  std::map<std::string, std::string> constants;  // object -> type
  std::vector<ActionSchema> schemas;

  const ActionSchema *find_schema(const std::string &name) const;
  bool operator==(const DomainModel &) const = default;
};

}  // namespace stripslearn

#endif
