#ifndef STRIPSLEARN_SAT_HPP
#define STRIPSLEARN_SAT_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace stripslearn {

using VarId = int;  // positive
using Lit = int;    // +v asserts v, -v negates it; never 0

inline VarId lit_var(Lit l) { return l < 0 ? -l : l; }

enum class SolveResult { Sat, Unsat };

// Truth assignment indexed by VarId (index 0 unused), valid after Sat.
using Model = std::vector<std::uint8_t>;

// Incremental satisfiability contract: clauses accumulate, solving runs
// under unit assumptions, the last model stays readable. Any complete
// clause-based solver with assumption support can sit behind this.
class SolveContext {
 public:
  virtual ~SolveContext() = default;

  virtual VarId new_var() = 0;
  virtual int num_vars() const = 0;

  // Conjoins the clause for the lifetime of the context. Throws
  // UnregisteredVar on literals over unknown variables.
  virtual void add_clause(const std::vector<Lit> &literals) = 0;

  virtual SolveResult solve(const std::vector<Lit> &assumptions = {}) = 0;

  // Value of `v` in the last Sat model.
  virtual bool model_value(VarId v) const = 0;
  Model model() const;

  // Aborts long solves with TimeLimit once the deadline passes.
  virtual void set_deadline(
      std::optional<std::chrono::steady_clock::time_point> deadline) = 0;

  // Debug dump of the clause store in DIMACS CNF; `describe` supplies
  // the comment-line mapping for each variable (empty string to skip).
  virtual void dump_dimacs(
      std::ostream &out,
      const std::function<std::string(VarId)> &describe) const = 0;
};

// Reference engine: a small conflict-driven solver (two-watched
// literals, first-UIP learning, activity-ordered decisions, Luby
// restarts). Fully deterministic: no randomization, ties break on the
// smaller VarId.
class CdclSolver final : public SolveContext {
 public:
  CdclSolver();
  ~CdclSolver() override;

  VarId new_var() override;
  int num_vars() const override { return static_cast<int>(assign_.size()) - 1; }
  void add_clause(const std::vector<Lit> &literals) override;
  SolveResult solve(const std::vector<Lit> &assumptions = {}) override;
  bool model_value(VarId v) const override;
  void set_deadline(
      std::optional<std::chrono::steady_clock::time_point> deadline) override;
  void dump_dimacs(
      std::ostream &out,
      const std::function<std::string(VarId)> &describe) const override;

  std::int64_t conflicts() const { return total_conflicts_; }

 private:
  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
  };

  static size_t widx(Lit l) {
    return 2 * static_cast<size_t>(lit_var(l)) + (l < 0 ? 1 : 0);
  }
  int value(Lit l) const {  // +1 true, -1 false, 0 unassigned
    int v = assign_[lit_var(l)];
    return l < 0 ? -v : v;
  }
  int level_of(Lit l) const { return level_[lit_var(l)]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void check_var(Lit l) const;
  void enqueue(Lit p, int reason);
  int propagate();  // conflicting clause index or -1
  void analyze(int confl, std::vector<Lit> &learnt, int &bt_level);
  void cancel_until(int level);
  void attach_learnt(std::vector<Lit> learnt);
  VarId pick_branch_var();
  void bump(VarId v);
  void push_order(VarId v);
  void check_deadline();

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;  // literal index -> clause ids
  std::vector<std::int8_t> assign_;        // per var
  std::vector<int> level_;
  std::vector<int> reason_;  // clause id or -1
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;

  std::vector<double> activity_;
  double act_inc_ = 1.0;
  std::uint32_t act_version_ = 0;
  struct OrderEntry {
    double activity;
    std::uint32_t version;
    VarId var;
    bool operator<(const OrderEntry &o) const {
      if (activity != o.activity) return activity < o.activity;
      return var > o.var;  // prefer smaller VarId on equal activity
    }
  };
  std::priority_queue<OrderEntry> order_;
  std::vector<std::uint8_t> phase_;

  std::vector<std::uint8_t> model_;
  std::vector<char> seen_;
  bool unsat_ = false;

  std::vector<std::vector<Lit>> dump_store_;  // raw clauses for dump_dimacs
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::int64_t total_conflicts_ = 0;
  std::int64_t deadline_tick_ = 0;
};

// Shrinks the set of true `candidates` in a satisfying assignment:
// repeatedly re-solves with one more candidate assumed false, adopting
// each success, until no further candidate can be turned off. The
// result is subset-minimal on the candidate set. solve(base_assumptions)
// must be Sat.
Model minimize_true(SolveContext &ctx, const std::vector<VarId> &candidates,
                    const std::vector<Lit> &base_assumptions);

}  // namespace stripslearn

#endif
