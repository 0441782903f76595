#include "stripslearn/registry.hpp"

#include <sstream>

namespace stripslearn {

VarId VarRegistry::bind_var(SolveContext &ctx, int transition, int param,
                            const std::string &object) {
  BindKey key{transition, param, object};
  auto it = bind_vars_.find(key);
  if (it != bind_vars_.end()) return it->second;
  VarId v = ctx.new_var();
  bind_vars_.emplace(key, v);
  var_to_bind_.emplace(v, std::move(key));
  return v;
}

std::optional<VarId> VarRegistry::find_bind(int transition, int param,
                                            const std::string &object) const {
  auto it = bind_vars_.find(BindKey{transition, param, object});
  if (it == bind_vars_.end()) return std::nullopt;
  return it->second;
}

VarId VarRegistry::effect_var(SolveContext &ctx, const EffectKey &key) {
  auto &table = key.is_add ? add_vars_ : del_vars_;
  auto it = table.find(key);
  if (it != table.end()) return it->second;
  VarId v = ctx.new_var();
  table.emplace(key, v);
  var_to_effect_.emplace(v, key);
  effect_order_.push_back(v);
  return v;
}

std::optional<VarId> VarRegistry::find_effect(const EffectKey &key) const {
  const auto &table = key.is_add ? add_vars_ : del_vars_;
  auto it = table.find(key);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

const BindKey *VarRegistry::bind_key(VarId v) const {
  auto it = var_to_bind_.find(v);
  return it == var_to_bind_.end() ? nullptr : &it->second;
}

const EffectKey *VarRegistry::effect_key(VarId v) const {
  auto it = var_to_effect_.find(v);
  return it == var_to_effect_.end() ? nullptr : &it->second;
}

std::string VarRegistry::describe(VarId v) const {
  std::ostringstream out;
  if (const BindKey *b = bind_key(v)) {
    out << "bind(t" << b->transition << ",p" << b->param << "," << b->object
        << ")";
    return out.str();
  }
  if (const EffectKey *e = effect_key(v)) {
    out << (e->is_add ? "add(" : "del(") << e->predicate;
    for (int p : e->params) out << ",p" << p;
    out << ")";
    return out.str();
  }
  return {};
}

}  // namespace stripslearn
