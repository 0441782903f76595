#include "stripslearn/sat.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

#include "stripslearn/errors.hpp"

namespace stripslearn {

namespace {

// Luby restart sequence: 1 1 2 1 1 2 4 ...
std::int64_t luby(std::int64_t i) {
  std::int64_t k = 1;
  while ((1LL << k) - 1 < i + 1) ++k;
  while ((1LL << k) - 1 != i + 1) {
    --k;
    i -= (1LL << k) - 1;
  }
  return 1LL << (k - 1);
}

constexpr std::int64_t kRestartBase = 128;
constexpr double kActivityDecay = 0.95;

}  // namespace

Model SolveContext::model() const {
  Model m(static_cast<size_t>(num_vars()) + 1, 0);
  for (VarId v = 1; v <= num_vars(); ++v) m[v] = model_value(v) ? 1 : 0;
  return m;
}

CdclSolver::CdclSolver() {
  assign_.push_back(0);  // var ids are 1-based
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  phase_.push_back(0);
  seen_.push_back(0);
  watches_.resize(2);
}

CdclSolver::~CdclSolver() = default;

VarId CdclSolver::new_var() {
  assign_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  phase_.push_back(0);
  seen_.push_back(0);
  watches_.resize(watches_.size() + 2);
  VarId v = num_vars();
  push_order(v);
  return v;
}

void CdclSolver::check_var(Lit l) const {
  if (l == 0 || lit_var(l) > num_vars())
    throw UnregisteredVar("literal " + std::to_string(l) +
                          " refers to an unregistered variable");
}

void CdclSolver::push_order(VarId v) {
  order_.push({activity_[v], act_version_, v});
}

void CdclSolver::bump(VarId v) {
  activity_[v] += act_inc_;
  if (activity_[v] > 1e100) {
    for (VarId u = 1; u <= num_vars(); ++u) activity_[u] *= 1e-100;
    act_inc_ *= 1e-100;
    ++act_version_;
    order_ = {};
    for (VarId u = 1; u <= num_vars(); ++u)
      if (assign_[u] == 0) push_order(u);
    return;
  }
  if (assign_[v] == 0) push_order(v);
}

void CdclSolver::enqueue(Lit p, int reason) {
  VarId v = lit_var(p);
  assert(assign_[v] == 0);
  assign_[v] = p > 0 ? 1 : -1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(p);
}

void CdclSolver::add_clause(const std::vector<Lit> &literals) {
  if (literals.empty()) throw Error("empty clause");
  for (Lit l : literals) check_var(l);
  dump_store_.push_back(literals);
  if (unsat_) return;
  assert(decision_level() == 0);

  // Simplify against the permanent (level-0) assignment.
  std::vector<Lit> lits;
  lits.reserve(literals.size());
  for (Lit l : literals) {
    if (value(l) == 1) return;  // already satisfied forever
    if (value(l) == -1) continue;
    if (std::find(lits.begin(), lits.end(), -l) != lits.end()) return;
    if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
  }
  if (lits.empty()) {
    unsat_ = true;
    return;
  }
  if (lits.size() == 1) {
    enqueue(lits[0], -1);
    if (propagate() != -1) unsat_ = true;
    return;
  }
  int ci = static_cast<int>(clauses_.size());
  watches_[widx(lits[0])].push_back(ci);
  watches_[widx(lits[1])].push_back(ci);
  clauses_.push_back({std::move(lits), false});
}

int CdclSolver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    std::vector<int> &ws = watches_[widx(-p)];
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      int ci = ws[i];
      Clause &c = clauses_[ci];
      if (c.lits[0] == -p) std::swap(c.lits[0], c.lits[1]);
      // c.lits[1] == -p: this watch just became false.
      if (value(c.lits[0]) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      bool rewatched = false;
      for (size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) != -1) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[widx(c.lits[1])].push_back(ci);
          rewatched = true;
          break;
        }
      }
      if (rewatched) {
        ++i;  // dropped from this watch list
        continue;
      }
      ws[j++] = ws[i++];
      if (value(c.lits[0]) == -1) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c.lits[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void CdclSolver::analyze(int confl, std::vector<Lit> &learnt, int &bt_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  int path = 0;
  Lit p = 0;
  int index = static_cast<int>(trail_.size()) - 1;
  std::vector<VarId> to_clear;

  int c = confl;
  do {
    assert(c != -1);
    for (Lit q : clauses_[c].lits) {
      if (p != 0 && q == p) continue;
      VarId v = lit_var(q);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      to_clear.push_back(v);
      bump(v);
      if (level_[v] >= decision_level())
        ++path;
      else
        learnt.push_back(q);
    }
    while (!seen_[lit_var(trail_[index])]) --index;
    p = trail_[index--];
    c = reason_[lit_var(p)];
    seen_[lit_var(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = -p;

  if (learnt.size() == 1) {
    bt_level = 0;
  } else {
    size_t max_i = 1;
    for (size_t i = 2; i < learnt.size(); ++i)
      if (level_of(learnt[i]) > level_of(learnt[max_i])) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level_of(learnt[1]);
  }
  for (VarId v : to_clear) seen_[v] = 0;
}

void CdclSolver::cancel_until(int target) {
  if (decision_level() <= target) return;
  size_t bound = static_cast<size_t>(trail_lim_[target]);
  for (size_t t = trail_.size(); t > bound; --t) {
    Lit p = trail_[t - 1];
    VarId v = lit_var(p);
    assign_[v] = 0;
    phase_[v] = p > 0 ? 1 : 0;
    push_order(v);
  }
  trail_.resize(bound);
  trail_lim_.resize(static_cast<size_t>(target));
  qhead_ = trail_.size();
}

void CdclSolver::attach_learnt(std::vector<Lit> learnt) {
  if (learnt.size() == 1) {
    enqueue(learnt[0], -1);
    return;
  }
  int ci = static_cast<int>(clauses_.size());
  watches_[widx(learnt[0])].push_back(ci);
  watches_[widx(learnt[1])].push_back(ci);
  Lit assert_lit = learnt[0];
  clauses_.push_back({std::move(learnt), true});
  enqueue(assert_lit, ci);
}

VarId CdclSolver::pick_branch_var() {
  while (!order_.empty()) {
    OrderEntry top = order_.top();
    order_.pop();
    if (assign_[top.var] != 0) continue;
    if (top.version != act_version_ || top.activity != activity_[top.var])
      continue;  // stale copy; the fresh one is elsewhere in the queue
    return top.var;
  }
  for (VarId v = 1; v <= num_vars(); ++v)
    if (assign_[v] == 0) return v;
  return 0;
}

void CdclSolver::check_deadline() {
  if (!deadline_) return;
  if (std::chrono::steady_clock::now() > *deadline_)
    throw TimeLimit("satisfiability search exceeded its time budget");
}

SolveResult CdclSolver::solve(const std::vector<Lit> &assumptions) {
  for (Lit l : assumptions) check_var(l);
  if (unsat_) return SolveResult::Unsat;
  cancel_until(0);
  if (propagate() != -1) {
    unsat_ = true;
    return SolveResult::Unsat;
  }

  std::int64_t restart_num = 0;
  std::int64_t conflicts_left = luby(restart_num) * kRestartBase;

  while (true) {
    int confl = propagate();
    if (confl != -1) {
      ++total_conflicts_;
      --conflicts_left;
      if ((total_conflicts_ & 255) == 0) check_deadline();
      if (decision_level() == 0) {
        unsat_ = true;
        return SolveResult::Unsat;
      }
      std::vector<Lit> learnt;
      int bt_level = 0;
      analyze(confl, learnt, bt_level);
      cancel_until(bt_level);
      attach_learnt(std::move(learnt));
      act_inc_ /= kActivityDecay;
      continue;
    }
    if (conflicts_left <= 0) {
      ++restart_num;
      conflicts_left = luby(restart_num) * kRestartBase;
      cancel_until(0);
      continue;
    }
    if ((++deadline_tick_ & 1023) == 0) check_deadline();
    if (decision_level() < static_cast<int>(assumptions.size())) {
      Lit p = assumptions[static_cast<size_t>(decision_level())];
      int val = value(p);
      if (val == -1) return SolveResult::Unsat;  // under these assumptions
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      if (val == 0) enqueue(p, -1);
      continue;
    }
    VarId v = pick_branch_var();
    if (v == 0) {
      model_.assign(assign_.size(), 0);
      for (VarId u = 1; u <= num_vars(); ++u) model_[u] = assign_[u] > 0;
      return SolveResult::Sat;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(phase_[v] ? v : -v, -1);
  }
}

bool CdclSolver::model_value(VarId v) const {
  if (v <= 0 || static_cast<size_t>(v) >= model_.size())
    throw UnregisteredVar("model_value(" + std::to_string(v) +
                          ") outside the last model");
  return model_[static_cast<size_t>(v)] != 0;
}

void CdclSolver::set_deadline(
    std::optional<std::chrono::steady_clock::time_point> deadline) {
  deadline_ = deadline;
}

void CdclSolver::dump_dimacs(
    std::ostream &out,
    const std::function<std::string(VarId)> &describe) const {
  for (VarId v = 1; v <= num_vars(); ++v) {
    std::string name = describe ? describe(v) : std::string();
    if (!name.empty()) out << "c var " << v << " = " << name << '\n';
  }
  out << "p cnf " << num_vars() << ' ' << dump_store_.size() << '\n';
  for (const auto &clause : dump_store_) {
    for (Lit l : clause) out << l << ' ';
    out << "0\n";
  }
}

Model minimize_true(SolveContext &ctx, const std::vector<VarId> &candidates,
                    const std::vector<Lit> &base_assumptions) {
  if (ctx.solve(base_assumptions) != SolveResult::Sat)
    throw std::logic_error("minimize_true requires a satisfiable base");
  Model current = ctx.model();

  std::vector<VarId> order = candidates;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<Lit> assumptions = base_assumptions;
  std::vector<std::uint8_t> fixed_false(order.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < order.size(); ++i) {
      VarId v = order[i];
      if (fixed_false[i] || !current[static_cast<size_t>(v)]) continue;
      assumptions.push_back(-v);
      if (ctx.solve(assumptions) == SolveResult::Sat) {
        current = ctx.model();
        fixed_false[i] = 1;
        changed = true;
      } else {
        assumptions.pop_back();
      }
    }
  }
  return current;
}

}  // namespace stripslearn
