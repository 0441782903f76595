#ifndef STRIPSLEARN_EVALUATE_HPP
#define STRIPSLEARN_EVALUATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "stripslearn/model.hpp"

namespace stripslearn {

// Partial injective map from learned parameters to reference
// parameters, chosen to maximize the number of matched lifted facts.
struct Alignment {
  std::vector<std::optional<int>> map;  // learned param -> reference param
  int matched_pre = 0;
  int matched_eff = 0;

  int matched() const { return matched_pre + matched_eff; }
};

// Counts for one comparison variant (tolerant or strict).
struct DiffCounts {
  int missing_pre = 0;  // -P
  int extra_pre = 0;    // +P
  int missing_eff = 0;  // -E
  int extra_eff = 0;    // +E
  int mapped = 0;       // matched preconditions + effects

  DiffCounts &operator+=(const DiffCounts &o);
};

struct ActionDiff {
  std::string name;
  Alignment tolerant_alignment;
  Alignment strict_alignment;
  DiffCounts tolerant;
  DiffCounts strict;
};

struct DiffReport {
  std::vector<ActionDiff> actions;  // sorted by action name
  DiffCounts totals_tolerant;
  DiffCounts totals_strict;
  int mapped_predicates = 0;  // tolerant matched total
  double fidelity = 1.0;      // at tolerant counts
  std::vector<std::string> unobserved_actions;  // reference-only
  std::vector<std::string> extra_actions;       // learned-only
};

// Exhaustive search over partial injective maps between the parameter
// lists, restricted to type-equal pairs (strict) or subtype-comparable
// pairs (tolerant). Ties break on the lexicographically smallest map.
Alignment align_parameters(const ActionSchema &learned,
                           const ActionSchema &reference, bool tolerant,
                           const TypeHierarchy &hierarchy);

DiffReport diff_domains(const DomainModel &learned,
                        const DomainModel &reference);

// mapped / (mapped + mp + 0.2*pp + me + pe); 1.0 for the 0/0 case.
double fidelity(int mapped, int mp, int pp, int me, int pe);

std::string report_to_json(const DiffReport &report);

// Human-readable table with -P/+P/-E/+E columns and the fidelity.
std::string report_table(const DiffReport &report, bool strict);

}  // namespace stripslearn

#endif
