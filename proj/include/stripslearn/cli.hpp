#ifndef STRIPSLEARN_CLI_HPP
#define STRIPSLEARN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stripslearn/model.hpp"
#include "stripslearn/trace.hpp"

namespace stripslearn {

struct RunConfig {
  double time_limit_secs = 60.0;
  std::uint64_t seed = 0;
  int param_budget_extra = 3;
  int workers = 0;  // 0 = available parallelism
  bool strict_types = false;
  bool diagnostics = false;
  std::string debug_cnf_dir;
};

// Exit codes shared by the command entry points.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitTimeLimit = 2;
inline constexpr int kExitParamBudget = 3;

struct ActionSummary {
  std::string name;
  int k = 0;
  int pre = 0;
  int add = 0;
  int del = 0;
  int transitions = 0;
};

struct LearnResult {
  DomainModel domain;
  std::vector<ActionSummary> summaries;  // sorted by action name
};

// Full pipeline: decompose traces, synthesize effects and substitutions
// per label (label-parallel), lift preconditions, assign types, and
// assemble the learned domain.
LearnResult learn_domain(const DomainModel &header,
                         const std::vector<Trace> &traces,
                         const RunConfig &config, std::ostream *diag = nullptr);

int cmd_synth(const std::string &header_path,
              const std::vector<std::string> &trace_paths,
              const std::string &out_path, const RunConfig &config,
              std::ostream &out, std::ostream &err);

int cmd_gen(const std::string &domain_path, const std::string &problem_path,
            const std::optional<std::string> &plan_path,
            std::optional<int> random_walk_length, std::uint64_t seed,
            const std::string &out_path, std::ostream &out, std::ostream &err);

int cmd_eval(const std::string &learned_path, const std::string &reference_path,
             const std::optional<std::string> &json_out, bool strict,
             std::ostream &out, std::ostream &err);

int cmd_gi(const std::string &g1_path, const std::string &g2_path,
           bool directed, std::ostream &out, std::ostream &err);

}  // namespace stripslearn

#endif
