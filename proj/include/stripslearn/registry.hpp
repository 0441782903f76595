#ifndef STRIPSLEARN_REGISTRY_HPP
#define STRIPSLEARN_REGISTRY_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stripslearn/sat.hpp"

namespace stripslearn {

// Key of a per-transition binding variable: sigma_R(param) = object.
struct BindKey {
  int transition;
  int param;
  std::string object;

  auto operator<=>(const BindKey &) const = default;
};

// Key of a global (per label) effect variable: the lifted effect
// predicate(params...). `params` holds 0-based parameter indices.
struct EffectKey {
  bool is_add;
  std::string predicate;
  std::vector<int> params;

  auto operator<=>(const EffectKey &) const = default;
};

// Bidirectional registry of bind/add/del variables for one solving
// context. Effect variables are shared across transitions; bind
// variables belong to a single transition.
class VarRegistry {
 public:
  VarId bind_var(SolveContext &ctx, int transition, int param,
                 const std::string &object);
  std::optional<VarId> find_bind(int transition, int param,
                                 const std::string &object) const;

  VarId effect_var(SolveContext &ctx, const EffectKey &key);
  std::optional<VarId> find_effect(const EffectKey &key) const;

  const BindKey *bind_key(VarId v) const;
  const EffectKey *effect_key(VarId v) const;

  // All effect variables in creation (= ascending VarId) order.
  const std::vector<VarId> &effect_vars() const { return effect_order_; }

  // Human-readable key for DIMACS comments; empty for foreign vars.
  std::string describe(VarId v) const;

 private:
  std::map<BindKey, VarId> bind_vars_;
  std::map<EffectKey, VarId> add_vars_;
  std::map<EffectKey, VarId> del_vars_;
  std::map<VarId, BindKey> var_to_bind_;
  std::map<VarId, EffectKey> var_to_effect_;
  std::vector<VarId> effect_order_;
};

}  // namespace stripslearn

#endif
