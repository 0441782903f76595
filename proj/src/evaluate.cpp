#include "stripslearn/evaluate.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

namespace stripslearn {

DiffCounts &DiffCounts::operator+=(const DiffCounts &o) {
  missing_pre += o.missing_pre;
  extra_pre += o.extra_pre;
  missing_eff += o.missing_eff;
  extra_eff += o.extra_eff;
  mapped += o.mapped;
  return *this;
}

namespace {

// Applies a parameter map to a lifted fact; nullopt when the fact uses
// an unmapped parameter.
std::optional<LiftedFact> translate(const LiftedFact &f,
                                    const std::vector<std::optional<int>> &map) {
  LiftedFact out;
  out.predicate = f.predicate;
  for (int arg : f.args) {
    const std::optional<int> &target = map[static_cast<size_t>(arg)];
    if (!target) return std::nullopt;
    out.args.push_back(*target);
  }
  return out;
}

int count_matched(const std::set<LiftedFact> &from,
                  const std::set<LiftedFact> &to,
                  const std::vector<std::optional<int>> &map) {
  int matched = 0;
  for (const LiftedFact &f : from) {
    std::optional<LiftedFact> t = translate(f, map);
    if (t && to.count(*t)) ++matched;
  }
  return matched;
}

struct AlignSearch {
  const ActionSchema &small;
  const ActionSchema &large;
  std::vector<std::vector<int>> compatible;  // per small param, ascending
  std::vector<std::optional<int>> current;
  std::vector<char> used;
  std::vector<std::optional<int>> best;
  int best_score = -1;

  int score() const {
    return count_matched(small.pre, large.pre, current) +
           count_matched(small.add, large.add, current) +
           count_matched(small.del, large.del, current);
  }

  void search(size_t param) {
    if (param == current.size()) {
      int s = score();
      if (s > best_score) {  // strict: first (lexicographic) maximum wins
        best_score = s;
        best = current;
      }
      return;
    }
    current[param] = std::nullopt;  // "unmapped" sorts before any index
    search(param + 1);
    for (int j : compatible[param]) {
      if (used[static_cast<size_t>(j)]) continue;
      used[static_cast<size_t>(j)] = 1;
      current[param] = j;
      search(param + 1);
      used[static_cast<size_t>(j)] = 0;
    }
    current[param] = std::nullopt;
  }
};

bool types_comparable(const std::string &t1, const std::string &t2,
                      bool tolerant, const TypeHierarchy &hierarchy) {
  if (t1 == t2) return true;
  if (!tolerant) return false;
  if (!hierarchy.contains(t1) || !hierarchy.contains(t2)) return false;
  return is_subtype(t1, t2, hierarchy) || is_subtype(t2, t1, hierarchy);
}

}  // namespace

Alignment align_parameters(const ActionSchema &learned,
                           const ActionSchema &reference, bool tolerant,
                           const TypeHierarchy &hierarchy) {
  bool learned_small = learned.arity() <= reference.arity();
  const ActionSchema &small = learned_small ? learned : reference;
  const ActionSchema &large = learned_small ? reference : learned;

  AlignSearch search{small, large, {}, {}, {}, {}, -1};
  search.compatible.resize(static_cast<size_t>(small.arity()));
  for (int i = 0; i < small.arity(); ++i)
    for (int j = 0; j < large.arity(); ++j)
      if (types_comparable(small.param_types[static_cast<size_t>(i)],
                           large.param_types[static_cast<size_t>(j)], tolerant,
                           hierarchy))
        search.compatible[static_cast<size_t>(i)].push_back(j);
  search.current.assign(static_cast<size_t>(small.arity()), std::nullopt);
  search.used.assign(static_cast<size_t>(large.arity()), 0);
  search.search(0);

  Alignment result;
  if (learned_small) {
    result.map = search.best;
  } else {
    // Invert: best maps reference params into learned ones.
    result.map.assign(static_cast<size_t>(learned.arity()), std::nullopt);
    for (size_t j = 0; j < search.best.size(); ++j)
      if (search.best[j]) result.map[static_cast<size_t>(*search.best[j])] =
          static_cast<int>(j);
  }
  result.matched_pre = count_matched(learned.pre, reference.pre, result.map);
  result.matched_eff = count_matched(learned.add, reference.add, result.map) +
                       count_matched(learned.del, reference.del, result.map);
  return result;
}

namespace {

DiffCounts make_counts(const ActionSchema &learned,
                       const ActionSchema &reference, const Alignment &a) {
  DiffCounts c;
  int ref_eff = static_cast<int>(reference.add.size() + reference.del.size());
  int learned_eff = static_cast<int>(learned.add.size() + learned.del.size());
  c.missing_pre = static_cast<int>(reference.pre.size()) - a.matched_pre;
  c.extra_pre = static_cast<int>(learned.pre.size()) - a.matched_pre;
  c.missing_eff = ref_eff - a.matched_eff;
  c.extra_eff = learned_eff - a.matched_eff;
  c.mapped = a.matched();
  return c;
}

}  // namespace

DiffReport diff_domains(const DomainModel &learned,
                        const DomainModel &reference) {
  DiffReport report;
  std::map<std::string, const ActionSchema *> learned_by_name;
  for (const ActionSchema &a : learned.schemas) learned_by_name[a.name] = &a;
  std::map<std::string, const ActionSchema *> reference_by_name;
  for (const ActionSchema &a : reference.schemas) reference_by_name[a.name] = &a;

  for (const auto &[name, ref] : reference_by_name) {
    auto it = learned_by_name.find(name);
    if (it == learned_by_name.end()) {
      report.unobserved_actions.push_back(name);
      continue;
    }
    ActionDiff diff;
    diff.name = name;
    diff.tolerant_alignment =
        align_parameters(*it->second, *ref, true, reference.hierarchy);
    diff.strict_alignment =
        align_parameters(*it->second, *ref, false, reference.hierarchy);
    diff.tolerant = make_counts(*it->second, *ref, diff.tolerant_alignment);
    diff.strict = make_counts(*it->second, *ref, diff.strict_alignment);
    report.totals_tolerant += diff.tolerant;
    report.totals_strict += diff.strict;
    report.actions.push_back(std::move(diff));
  }
  for (const auto &[name, schema] : learned_by_name)
    if (!reference_by_name.count(name)) report.extra_actions.push_back(name);

  report.mapped_predicates = report.totals_tolerant.mapped;
  report.fidelity = fidelity(
      report.mapped_predicates, report.totals_tolerant.missing_pre,
      report.totals_tolerant.extra_pre, report.totals_tolerant.missing_eff,
      report.totals_tolerant.extra_eff);
  return report;
}

double fidelity(int mapped, int mp, int pp, int me, int pe) {
  double denominator = mapped + mp + 0.2 * pp + me + pe;
  if (denominator == 0.0) return 1.0;  // perfect reproduction of nothing
  return mapped / denominator;
}

std::string report_to_json(const DiffReport &report) {
  nlohmann::json doc;
  doc["actions"] = nlohmann::json::array();
  for (const ActionDiff &a : report.actions) {
    doc["actions"].push_back({{"name", a.name},
                              {"minusP", a.tolerant.missing_pre},
                              {"plusP", a.tolerant.extra_pre},
                              {"minusE_tol", a.tolerant.missing_eff},
                              {"plusE_tol", a.tolerant.extra_eff},
                              {"minusE_strict", a.strict.missing_eff},
                              {"plusE_strict", a.strict.extra_eff}});
  }
  doc["totals"] = {{"minusP", report.totals_tolerant.missing_pre},
                   {"plusP", report.totals_tolerant.extra_pre},
                   {"minusE_tol", report.totals_tolerant.missing_eff},
                   {"plusE_tol", report.totals_tolerant.extra_eff},
                   {"minusE_strict", report.totals_strict.missing_eff},
                   {"plusE_strict", report.totals_strict.extra_eff}};
  doc["mapped"] = report.mapped_predicates;
  doc["fidelity"] = report.fidelity;
  doc["unobserved_actions"] = report.unobserved_actions;
  doc["extra_actions"] = report.extra_actions;
  return doc.dump(2) + "\n";
}

std::string report_table(const DiffReport &report, bool strict) {
  std::ostringstream out;
  size_t width = 8;
  for (const ActionDiff &a : report.actions)
    width = std::max(width, a.name.size() + 2);
  out << std::left << std::setw(static_cast<int>(width)) << "action"
      << std::right << std::setw(5) << "-P" << std::setw(5) << "+P"
      << std::setw(5) << "-E" << std::setw(5) << "+E" << std::setw(8) << "fid."
      << "\n";
  for (const ActionDiff &a : report.actions) {
    // Precondition counts are the tolerant ones; the strict flag only
    // switches the effect columns.
    const DiffCounts &eff = strict ? a.strict : a.tolerant;
    out << std::left << std::setw(static_cast<int>(width)) << a.name
        << std::right << std::setw(5) << a.tolerant.missing_pre << std::setw(5)
        << a.tolerant.extra_pre << std::setw(5) << eff.missing_eff
        << std::setw(5) << eff.extra_eff << "\n";
  }
  const DiffCounts &t = strict ? report.totals_strict : report.totals_tolerant;
  out << std::left << std::setw(static_cast<int>(width)) << "total"
      << std::right << std::setw(5) << report.totals_tolerant.missing_pre
      << std::setw(5) << report.totals_tolerant.extra_pre << std::setw(5)
      << t.missing_eff << std::setw(5) << t.extra_eff << std::setw(8)
      << std::fixed << std::setprecision(3) << report.fidelity << "\n";
  for (const std::string &name : report.unobserved_actions)
    out << "unobserved: " << name << "\n";
  for (const std::string &name : report.extra_actions)
    out << "extra: " << name << "\n";
  return out.str();
}

}  // namespace stripslearn
