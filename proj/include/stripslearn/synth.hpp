#ifndef STRIPSLEARN_SYNTH_HPP
#define STRIPSLEARN_SYNTH_HPP

#include <chrono>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "stripslearn/model.hpp"
#include "stripslearn/registry.hpp"
#include "stripslearn/sat.hpp"
#include "stripslearn/trace.hpp"

namespace stripslearn {

// Object universe per instance id; binding candidates for a transition
// are the objects of its instance.
using InstanceObjects = std::map<std::string, std::set<std::string>>;

InstanceObjects collect_instance_objects(const std::vector<Trace> &traces);

struct SynthLimits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  int param_budget_extra = 3;
  std::ostream *diagnostics = nullptr;
  std::string debug_cnf_dir;  // DIMACS dump per (label, k) when nonempty
};

struct EffectSolution {
  int k = 0;
  std::set<LiftedFact> add_set;
  std::set<LiftedFact> del_set;
  std::map<int, Substitution> substitutions;  // transition id -> sigma
  std::set<int> encoded_set;                  // jointly encoded transitions
};

enum class OffenseKind { UnexplainedChange, InconsistentEffect };

struct Offense {
  int transition = -1;
  OffenseKind kind = OffenseKind::UnexplainedChange;
  GroundFact detail;
};

// The consistency clause blocking one effect/binding combination that
// predicts an unobserved change: !effect v !bind_1 v ... v !bind_n.
std::vector<Lit> consistency_clause(VarId effect_var,
                                    const std::vector<VarId> &binding_vars);

// Synthesis of one label's effects and substitutions at a fixed
// parameter count. Holds one incremental solving context; transitions
// are encoded on demand (guarded by activation literals) and committed
// when they join the jointly explained set.
class LabelSynthesizer {
 public:
  LabelSynthesizer(const LabelGroup &group,
                   const InstanceObjects &instance_objects, int k,
                   SynthLimits limits = {});
  ~LabelSynthesizer();

  // Exactly-one binding constraints plus the explanation (Eq.-1-style)
  // clauses for R's observed changes, guarded by R's activation literal.
  void encode_transition(const Transition &R);

  // Makes R's guarded clauses permanent (joins the encoded set).
  void commit(const Transition &R);

  // Checks whether the tentative effect assignment (true variables in
  // `true_effects`, every other effect variable assumed false) can bind
  // R consistently. Adds blocking clauses for every mismatch found and
  // re-solves until consistent or exhausted.
  std::variant<Substitution, Offense> verify(const std::set<VarId> &true_effects,
                                             const Transition &R);

  // The synth/verify loop: returns true iff the whole group is
  // explainable with k parameters; solution() is then valid.
  bool run();

  const EffectSolution &solution() const { return solution_; }

  // True iff flipping any single true effect variable to false (all
  // false effect variables kept false) makes the final encoding Unsat.
  bool solution_is_subset_minimal();

  SolveContext &context() { return *ctx_; }
  VarRegistry &registry() { return registry_; }
  int k() const { return k_; }
  int offenses() const { return offenses_; }
  int encoded_count() const { return static_cast<int>(committed_.size()); }

 private:
  struct ClassInfo;  // transitions identical up to repeated occurrence

  const std::vector<std::string> &candidates_for(const Transition &R);
  void ensure_encoded(const Transition &R);
  std::vector<Lit> effect_assumptions(const std::set<VarId> &true_effects) const;
  bool transfer_substitution(const Transition &R, const Substitution &sub,
                             const std::set<VarId> &true_effects) const;
  Substitution decode_binding(const Transition &R) const;
  std::optional<Offense> sweep(const std::set<VarId> &true_effects,
                               std::map<int, Substitution> &subs);
  void check_deadline() const;

  const LabelGroup &group_;
  const InstanceObjects &instance_objects_;
  int k_;
  SynthLimits limits_;

  std::unique_ptr<SolveContext> ctx_;
  VarRegistry registry_;
  std::map<int, VarId> activation_;            // transition id -> literal
  std::map<int, std::vector<std::string>> candidates_;  // per transition
  std::set<int> committed_;
  std::map<int, GroundFact> last_violation_;
  std::map<int, int> blocked_rounds_;  // transitions with Eq.-2 clauses
  std::vector<ClassInfo> classes_;

  EffectSolution solution_;
  std::set<VarId> true_solution_vars_;
  int offenses_ = 0;
};

struct LabelOutcome {
  EffectSolution solution;
  std::unique_ptr<LabelSynthesizer> engine;  // engine of the final k
};

// SynthOne: starts at min_pars, re-runs from scratch with k+1 on
// failure, up to min_pars + param_budget_extra.
LabelOutcome synth_label_engine(const LabelGroup &group,
                                const InstanceObjects &instance_objects,
                                const SynthLimits &limits = {});

EffectSolution synth_label(const LabelGroup &group,
                           const InstanceObjects &instance_objects,
                           const SynthLimits &limits = {});

// Polynomial witness check: every transition's preconditions ground
// into its before-state and the grounded effects reproduce its
// after-state exactly.
bool check_witness(const ActionSchema &schema,
                   const std::map<int, Substitution> &subs,
                   const LabelGroup &group);

}  // namespace stripslearn

#endif
