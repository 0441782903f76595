#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stripslearn/cli.hpp"

int main(int argc, char **argv) {
  CLI::App app{"stripslearn: learns typed STRIPS action schemas from "
               "label-only state traces"};
  app.set_version_flag("--version", "stripslearn 0.1.0");
  app.set_config("--config", "", "Read options from a key=value file");
  app.require_subcommand(1);

  stripslearn::RunConfig config;

  auto *synth = app.add_subcommand(
      "synth", "Learn a domain from a PDDL header and trace files");
  std::string header_path, synth_out = "learned.pddl";
  std::vector<std::string> trace_paths;
  synth->add_option("--header", header_path, "PDDL header (types + predicates)")
      ->required();
  synth->add_option("--trace", trace_paths, "Trace file (repeatable)")
      ->required();
  synth->add_option("--out", synth_out, "Output domain file");
  synth
      ->add_option("--time-limit", config.time_limit_secs,
                   "Global time limit in seconds")
      ->check(CLI::PositiveNumber)
      ->envname("STRIPSLEARN_TIME_LIMIT");
  synth->add_option("--seed", config.seed, "Random seed")
      ->envname("STRIPSLEARN_SEED");
  synth
      ->add_option("--param-budget-extra", config.param_budget_extra,
                   "Extra parameters allowed beyond the lower bound")
      ->check(CLI::NonNegativeNumber)
      ->envname("STRIPSLEARN_PARAM_BUDGET_EXTRA");
  synth
      ->add_option("--workers", config.workers,
                   "Parallel label workers (0 = all cores)")
      ->check(CLI::NonNegativeNumber)
      ->envname("STRIPSLEARN_WORKERS");
  synth->add_flag("--diag", config.diagnostics,
                  "Per-label diagnostics on stderr");
  synth->add_option("--debug-cnf", config.debug_cnf_dir,
                    "Directory for DIMACS dumps of the encodings");

  auto *gen = app.add_subcommand(
      "gen", "Generate a trace from a domain and problem");
  std::string gen_domain, gen_problem, gen_out = "trace.log";
  std::string gen_plan;
  int walk_length = -1;
  std::uint64_t gen_seed = 0;
  gen->add_option("--domain", gen_domain, "PDDL domain")->required();
  gen->add_option("--problem", gen_problem, "PDDL problem")->required();
  auto *plan_opt = gen->add_option("--plan", gen_plan, "Plan file to replay");
  auto *walk_opt = gen->add_option(
      "--random-walk", walk_length, "Number of random applicable steps");
  plan_opt->excludes(walk_opt);
  gen->add_option("--seed", gen_seed, "Random walk seed")
      ->envname("STRIPSLEARN_SEED");
  gen->add_option("--out", gen_out, "Output trace file");

  auto *eval = app.add_subcommand(
      "eval", "Compare a learned domain against a reference domain");
  std::string eval_learned, eval_reference, eval_json;
  bool eval_strict = false;
  eval->add_option("--learned", eval_learned, "Learned PDDL domain")
      ->required();
  eval->add_option("--reference", eval_reference, "Reference PDDL domain")
      ->required();
  auto *json_opt = eval->add_option("--json", eval_json, "JSON report path");
  eval->add_flag("--strict", eval_strict,
                 "Show strict (type-exact) effect counts in the table");

  auto *gi = app.add_subcommand(
      "gi", "Decide graph isomorphism through the synthesis reduction");
  std::string gi_g1, gi_g2;
  bool gi_directed = false;
  gi->add_option("--g1", gi_g1, "First graph file")->required();
  gi->add_option("--g2", gi_g2, "Second graph file")->required();
  gi->add_flag("--directed", gi_directed, "Treat edges as directed");

  CLI11_PARSE(app, argc, argv);

  if (synth->parsed())
    return stripslearn::cmd_synth(header_path, trace_paths, synth_out, config,
                                  std::cout, std::cerr);
  if (gen->parsed()) {
    std::optional<std::string> plan;
    if (plan_opt->count() > 0) plan = gen_plan;
    std::optional<int> walk;
    if (walk_opt->count() > 0) walk = walk_length;
    return stripslearn::cmd_gen(gen_domain, gen_problem, plan, walk, gen_seed,
                                gen_out, std::cout, std::cerr);
  }
  if (eval->parsed()) {
    std::optional<std::string> json;
    if (json_opt->count() > 0) json = eval_json;
    return stripslearn::cmd_eval(eval_learned, eval_reference, json,
                                 eval_strict, std::cout, std::cerr);
  }
  return stripslearn::cmd_gi(gi_g1, gi_g2, gi_directed, std::cout, std::cerr);
}
