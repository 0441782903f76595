#include "stripslearn/synth.hpp"

#include <algorithm>
#include <cassert>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <tuple>

#include "stripslearn/errors.hpp"

namespace stripslearn {

namespace {

// All vectors over {0..k-1} of the given length, lexicographic.
std::vector<std::vector<int>> lex_vectors(int k, int arity) {
  std::vector<std::vector<int>> out;
  if (arity == 0) {
    out.push_back({});
    return out;
  }
  if (k == 0) return out;
  std::vector<int> cur(static_cast<size_t>(arity), 0);
  while (true) {
    out.push_back(cur);
    int pos = arity - 1;
    while (pos >= 0 && cur[static_cast<size_t>(pos)] == k - 1)
      cur[static_cast<size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++cur[static_cast<size_t>(pos)];
  }
  return out;
}

std::set<std::string> fact_objects(const std::set<GroundFact> &facts) {
  std::set<std::string> out;
  for (const GroundFact &f : facts) out.insert(f.args.begin(), f.args.end());
  return out;
}

}  // namespace

InstanceObjects collect_instance_objects(const std::vector<Trace> &traces) {
  InstanceObjects out;
  for (const Trace &trace : traces) {
    std::set<std::string> &objs = out[trace.instance_id];
    for (const auto &[name, type] : trace.objects) objs.insert(name);
  }
  return out;
}

std::vector<Lit> consistency_clause(VarId effect_var,
                                    const std::vector<VarId> &binding_vars) {
  std::vector<Lit> clause;
  clause.push_back(-effect_var);
  for (VarId b : binding_vars)
    if (std::find(clause.begin(), clause.end(), -b) == clause.end())
      clause.push_back(-b);
  return clause;
}

struct LabelSynthesizer::ClassInfo {
  std::vector<const Transition *> members;  // members[0] is the representative
};

LabelSynthesizer::LabelSynthesizer(const LabelGroup &group,
                                   const InstanceObjects &instance_objects,
                                   int k, SynthLimits limits)
    : group_(group),
      instance_objects_(instance_objects),
      k_(k),
      limits_(std::move(limits)),
      ctx_(std::make_unique<CdclSolver>()) {
  ctx_->set_deadline(limits_.deadline);
  // Transitions with identical deltas within one instance form one
  // verification class; the representative is verified with the solver,
  // the rest first try to reuse its substitution.
  std::map<std::tuple<std::string, std::set<GroundFact>, std::set<GroundFact>>,
           size_t>
      index;
  for (const Transition &t : group_.transitions) {
    auto key = std::make_tuple(t.instance_id, t.added(), t.deleted());
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(std::move(key), classes_.size());
      classes_.push_back(ClassInfo{{&t}});
    } else {
      classes_[it->second].members.push_back(&t);
    }
  }
}

LabelSynthesizer::~LabelSynthesizer() = default;

void LabelSynthesizer::check_deadline() const {
  if (limits_.deadline && std::chrono::steady_clock::now() > *limits_.deadline)
    throw TimeLimit("synthesis of label '" + group_.label +
                    "' exceeded its time budget");
}

const std::vector<std::string> &LabelSynthesizer::candidates_for(
    const Transition &R) {
  auto it = candidates_.find(R.id);
  if (it != candidates_.end()) return it->second;

  // Objects touched by the changes first, then the rest of the states,
  // then the remainder of the instance universe.
  std::set<std::string> changed = fact_objects(R.added());
  {
    std::set<std::string> del_objs = fact_objects(R.deleted());
    changed.insert(del_objs.begin(), del_objs.end());
  }
  std::set<std::string> mentioned = fact_objects(R.before);
  {
    std::set<std::string> after_objs = fact_objects(R.after);
    mentioned.insert(after_objs.begin(), after_objs.end());
  }
  std::vector<std::string> order(changed.begin(), changed.end());
  for (const std::string &o : mentioned)
    if (!changed.count(o)) order.push_back(o);
  auto universe = instance_objects_.find(R.instance_id);
  if (universe != instance_objects_.end()) {
    for (const std::string &o : universe->second)
      if (!changed.count(o) && !mentioned.count(o)) order.push_back(o);
  }
  return candidates_.emplace(R.id, std::move(order)).first->second;
}

void LabelSynthesizer::encode_transition(const Transition &R) {
  if (activation_.count(R.id))
    throw std::logic_error("transition " + std::to_string(R.id) +
                           " is already encoded");
  const std::vector<std::string> &candidates = candidates_for(R);
  if (k_ > 0 && candidates.empty())
    throw NoCandidateObjects("transition " + std::to_string(R.id) +
                             " of instance '" + R.instance_id +
                             "' has no objects to bind " + std::to_string(k_) +
                             " parameters to");
  VarId act = ctx_->new_var();
  activation_[R.id] = act;

  // Exactly one object per parameter: the at-least-one side is guarded
  // by the activation literal, the at-most-one side is global.
  for (int i = 0; i < k_; ++i) {
    std::vector<VarId> binds;
    binds.reserve(candidates.size());
    for (const std::string &o : candidates)
      binds.push_back(registry_.bind_var(*ctx_, R.id, i, o));
    std::vector<Lit> alo{-act};
    alo.insert(alo.end(), binds.begin(), binds.end());
    ctx_->add_clause(alo);
    for (size_t a = 0; a < binds.size(); ++a)
      for (size_t b = a + 1; b < binds.size(); ++b)
        ctx_->add_clause({-binds[a], -binds[b]});
  }

  std::set<GroundFact> deleted = R.deleted();
  std::set<GroundFact> added = R.added();

  // Effect variables for every predicate in the delta: deletes first,
  // then adds, vectors in lexicographic order.
  for (bool is_add : {false, true}) {
    const std::set<GroundFact> &delta = is_add ? added : deleted;
    std::set<std::string> preds;
    for (const GroundFact &f : delta) preds.insert(f.predicate);
    for (const std::string &pred : preds) {
      int arity = 0;
      for (const GroundFact &f : delta)
        if (f.predicate == pred) {
          arity = static_cast<int>(f.args.size());
          break;
        }
      for (const std::vector<int> &vec : lex_vectors(k_, arity))
        registry_.effect_var(*ctx_, EffectKey{is_add, pred, vec});
    }
  }

  // One explanation disjunction per changed fact: some effect variable
  // together with the bindings that ground it to exactly this fact.
  auto explain = [&](const GroundFact &fact, bool is_add) {
    std::vector<Lit> clause{-act};
    for (const std::vector<int> &vec :
         lex_vectors(k_, static_cast<int>(fact.args.size()))) {
      std::map<int, std::string> need;
      bool feasible = true;
      for (size_t pos = 0; pos < vec.size() && feasible; ++pos) {
        auto [it, inserted] = need.emplace(vec[pos], fact.args[pos]);
        if (!inserted && it->second != fact.args[pos]) feasible = false;
      }
      if (!feasible) continue;
      VarId eff = *registry_.find_effect(EffectKey{is_add, fact.predicate, vec});
      VarId route = ctx_->new_var();
      ctx_->add_clause({-route, eff});
      for (const auto &[param, object] : need)
        ctx_->add_clause({-route, *registry_.find_bind(R.id, param, object)});
      clause.push_back(route);
    }
    ctx_->add_clause(clause);  // just {-act} when nothing can explain it
  };
  for (const GroundFact &fact : deleted) explain(fact, false);
  for (const GroundFact &fact : added) explain(fact, true);
}

void LabelSynthesizer::ensure_encoded(const Transition &R) {
  if (!activation_.count(R.id)) encode_transition(R);
}

void LabelSynthesizer::commit(const Transition &R) {
  ensure_encoded(R);
  if (committed_.insert(R.id).second)
    ctx_->add_clause({activation_.at(R.id)});
}

std::vector<Lit> LabelSynthesizer::effect_assumptions(
    const std::set<VarId> &true_effects) const {
  std::vector<Lit> assumptions;
  assumptions.reserve(registry_.effect_vars().size());
  for (VarId v : registry_.effect_vars())
    assumptions.push_back(true_effects.count(v) ? v : -v);
  return assumptions;
}

Substitution LabelSynthesizer::decode_binding(const Transition &R) const {
  Substitution sub;
  sub.objects.resize(static_cast<size_t>(k_));
  const std::vector<std::string> &candidates = candidates_.at(R.id);
  for (int i = 0; i < k_; ++i) {
    const std::string *chosen = nullptr;
    for (const std::string &o : candidates) {
      if (ctx_->model_value(*registry_.find_bind(R.id, i, o))) {
        if (chosen)
          throw std::logic_error("two objects bound to one parameter");
        chosen = &o;
      }
    }
    if (!chosen) throw std::logic_error("parameter left unbound");
    sub.objects[static_cast<size_t>(i)] = *chosen;
  }
  return sub;
}

std::variant<Substitution, Offense> LabelSynthesizer::verify(
    const std::set<VarId> &true_effects, const Transition &R) {
  ensure_encoded(R);
  std::vector<Lit> assumptions = effect_assumptions(true_effects);
  assumptions.push_back(activation_.at(R.id));

  while (true) {
    check_deadline();
    if (ctx_->solve(assumptions) == SolveResult::Unsat) {
      Offense off;
      off.transition = R.id;
      if (blocked_rounds_[R.id] == 0) {
        off.kind = OffenseKind::UnexplainedChange;
        // Point at a changed fact whose predicate has no asserted
        // effect of the right polarity.
        auto uncovered = [&](const std::set<GroundFact> &delta,
                             bool is_add) -> const GroundFact * {
          for (const GroundFact &f : delta) {
            bool covered = false;
            for (VarId v : registry_.effect_vars()) {
              const EffectKey *key = registry_.effect_key(v);
              if (key->is_add == is_add && key->predicate == f.predicate &&
                  true_effects.count(v)) {
                covered = true;
                break;
              }
            }
            if (!covered) return &f;
          }
          return nullptr;
        };
        std::set<GroundFact> added = R.added(), deleted = R.deleted();
        if (const GroundFact *f = uncovered(added, true))
          off.detail = *f;
        else if (const GroundFact *f = uncovered(deleted, false))
          off.detail = *f;
        else if (!added.empty())
          off.detail = *added.begin();
        else if (!deleted.empty())
          off.detail = *deleted.begin();
      } else {
        off.kind = OffenseKind::InconsistentEffect;
        off.detail = last_violation_[R.id];
      }
      return off;
    }

    Substitution sub = decode_binding(R);
    std::set<GroundFact> deleted = R.deleted();
    bool clean = true;
    for (VarId v : registry_.effect_vars()) {
      if (!true_effects.count(v)) continue;
      const EffectKey *key = registry_.effect_key(v);
      GroundFact g;
      g.predicate = key->predicate;
      for (int p : key->params)
        g.args.push_back(sub.objects[static_cast<size_t>(p)]);
      bool observed = key->is_add ? R.after.count(g) > 0 : deleted.count(g) > 0;
      if (observed) continue;
      std::vector<VarId> binds;
      for (int p : key->params) {
        VarId b = *registry_.find_bind(R.id, p, sub.objects[static_cast<size_t>(p)]);
        if (std::find(binds.begin(), binds.end(), b) == binds.end())
          binds.push_back(b);
      }
      ctx_->add_clause(consistency_clause(v, binds));
      if (clean) last_violation_[R.id] = g;
      clean = false;
    }
    if (clean) return sub;
    ++blocked_rounds_[R.id];
  }
}

bool LabelSynthesizer::transfer_substitution(
    const Transition &R, const Substitution &sub,
    const std::set<VarId> &true_effects) const {
  std::set<GroundFact> add_ground, del_ground;
  for (VarId v : registry_.effect_vars()) {
    if (!true_effects.count(v)) continue;
    const EffectKey *key = registry_.effect_key(v);
    GroundFact g;
    g.predicate = key->predicate;
    for (int p : key->params)
      g.args.push_back(sub.objects[static_cast<size_t>(p)]);
    (key->is_add ? add_ground : del_ground).insert(std::move(g));
  }
  std::set<GroundFact> added = R.added(), deleted = R.deleted();
  for (const GroundFact &g : add_ground)
    if (!R.after.count(g)) return false;
  for (const GroundFact &g : del_ground)
    if (!deleted.count(g)) return false;
  return std::includes(add_ground.begin(), add_ground.end(), added.begin(),
                       added.end()) &&
         std::includes(del_ground.begin(), del_ground.end(), deleted.begin(),
                       deleted.end());
}

std::optional<Offense> LabelSynthesizer::sweep(
    const std::set<VarId> &true_effects, std::map<int, Substitution> &subs) {
  for (const ClassInfo &cls : classes_) {
    const Transition &rep = *cls.members.front();
    auto result = verify(true_effects, rep);
    if (auto *off = std::get_if<Offense>(&result)) return *off;
    const Substitution rep_sub = std::get<Substitution>(result);
    subs[rep.id] = rep_sub;
    for (size_t i = 1; i < cls.members.size(); ++i) {
      const Transition &member = *cls.members[i];
      if (transfer_substitution(member, rep_sub, true_effects)) {
        subs[member.id] = rep_sub;
        continue;
      }
      auto own = verify(true_effects, member);
      if (auto *off = std::get_if<Offense>(&own)) return *off;
      subs[member.id] = std::get<Substitution>(own);
    }
  }
  return std::nullopt;
}

bool LabelSynthesizer::run() {
  if (group_.transitions.empty()) {
    solution_ = EffectSolution{};
    solution_.k = k_;
    return true;
  }
  auto dump = [&] {
    if (limits_.debug_cnf_dir.empty()) return;
    std::filesystem::create_directories(limits_.debug_cnf_dir);
    std::ofstream out(limits_.debug_cnf_dir + "/" + group_.label + "_k" +
                      std::to_string(k_) + ".cnf");
    ctx_->dump_dimacs(out, [&](VarId v) { return registry_.describe(v); });
  };

  commit(group_.transitions.front());
  while (true) {
    check_deadline();
    if (ctx_->solve({}) == SolveResult::Unsat) {
      dump();
      return false;
    }
    Model model = minimize_true(*ctx_, registry_.effect_vars(), {});
    std::set<VarId> true_effects;
    for (VarId v : registry_.effect_vars())
      if (model[static_cast<size_t>(v)]) true_effects.insert(v);

    std::map<int, Substitution> subs;
    std::optional<Offense> offense = sweep(true_effects, subs);
    if (!offense) {
      solution_ = EffectSolution{};
      solution_.k = k_;
      for (VarId v : true_effects) {
        const EffectKey *key = registry_.effect_key(v);
        LiftedFact f{key->predicate, key->params};
        (key->is_add ? solution_.add_set : solution_.del_set).insert(f);
      }
      solution_.substitutions = std::move(subs);
      solution_.encoded_set = committed_;
      true_solution_vars_ = std::move(true_effects);
      dump();
      return true;
    }
    ++offenses_;
    const Transition *offender = nullptr;
    for (const Transition &t : group_.transitions)
      if (t.id == offense->transition) {
        offender = &t;
        break;
      }
    assert(offender != nullptr);
    // Joint growth; if the offender is already committed, the blocking
    // clauses added during its verification force a new assignment.
    if (!committed_.count(offender->id)) commit(*offender);
  }
}

bool LabelSynthesizer::solution_is_subset_minimal() {
  std::vector<Lit> base;
  for (VarId v : registry_.effect_vars())
    if (!true_solution_vars_.count(v)) base.push_back(-v);
  for (VarId v : true_solution_vars_) {
    std::vector<Lit> assumptions = base;
    assumptions.push_back(-v);
    if (ctx_->solve(assumptions) == SolveResult::Sat) return false;
  }
  return true;
}

LabelOutcome synth_label_engine(const LabelGroup &group,
                                const InstanceObjects &instance_objects,
                                const SynthLimits &limits) {
  auto start = std::chrono::steady_clock::now();
  int k0 = min_pars(group);
  int kmax = k0 + std::max(0, limits.param_budget_extra);
  for (int k = k0; k <= kmax; ++k) {
    auto engine = std::make_unique<LabelSynthesizer>(group, instance_objects,
                                                     k, limits);
    if (engine->run()) {
      if (limits.diagnostics) {
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        (*limits.diagnostics)
            << group.label << " k=" << k << " encoded="
            << engine->encoded_count() << " offenses=" << engine->offenses()
            << " time=" << secs << "\n";
      }
      LabelOutcome outcome;
      outcome.solution = engine->solution();
      outcome.engine = std::move(engine);
      return outcome;
    }
  }
  throw ParamBudgetExceeded(
      "label '" + group.label + "': no schema with at most " +
          std::to_string(kmax) + " parameters explains all transitions",
      kmax);
}

EffectSolution synth_label(const LabelGroup &group,
                           const InstanceObjects &instance_objects,
                           const SynthLimits &limits) {
  return synth_label_engine(group, instance_objects, limits).solution;
}

bool check_witness(const ActionSchema &schema,
                   const std::map<int, Substitution> &subs,
                   const LabelGroup &group) {
  for (const Transition &t : group.transitions) {
    auto it = subs.find(t.id);
    if (it == subs.end()) return false;
    const Substitution &sub = it->second;
    if (sub.size() != schema.arity()) return false;
    for (const LiftedFact &f : schema.pre)
      if (!t.before.count(ground(f, sub))) return false;
    State predicted = t.before;
    for (const LiftedFact &f : schema.del) predicted.erase(ground(f, sub));
    for (const LiftedFact &f : schema.add) predicted.insert(ground(f, sub));
    if (predicted != t.after) return false;
  }
  return true;
}

}  // namespace stripslearn
