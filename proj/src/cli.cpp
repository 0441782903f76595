#include "stripslearn/cli.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "stripslearn/completion.hpp"
#include "stripslearn/errors.hpp"
#include "stripslearn/evaluate.hpp"
#include "stripslearn/gi.hpp"
#include "stripslearn/pddl.hpp"
#include "stripslearn/synth.hpp"
#include "stripslearn/tracegen.hpp"

namespace stripslearn {

namespace {

std::string param_name(int index) { return "x" + std::to_string(index + 1); }

struct LabelTask {
  const LabelGroup *group;
  double budget_secs;
};

}  // namespace

LearnResult learn_domain(const DomainModel &header,
                         const std::vector<Trace> &traces,
                         const RunConfig &config, std::ostream *diag) {
  std::map<std::string, LabelGroup> groups = decompose(traces);
  InstanceObjects instance_objects = collect_instance_objects(traces);
  ObjectTypeTable type_table =
      infer_object_types(traces, header.signatures, header.hierarchy);

  size_t total_transitions = 0;
  for (const auto &[label, group] : groups)
    total_transitions += group.transitions.size();

  // The global limit is split across labels proportionally to their
  // share of the transitions; each label's clock starts when a worker
  // picks it up.
  std::vector<LabelTask> tasks;
  for (const auto &[label, group] : groups) {
    double share = total_transitions == 0
                       ? config.time_limit_secs
                       : config.time_limit_secs *
                             static_cast<double>(group.transitions.size()) /
                             static_cast<double>(total_transitions);
    tasks.push_back({&group, share});
  }

  struct LabelResult {
    ActionSchema schema;
    ActionSummary summary;
  };
  std::vector<std::optional<LabelResult>> results(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());

  std::mutex diag_mutex;
  auto run_one = [&](size_t index) {
    const LabelGroup &group = *tasks[index].group;
    try {
      SynthLimits limits;
      limits.param_budget_extra = config.param_budget_extra;
      limits.debug_cnf_dir = config.debug_cnf_dir;
      limits.deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<
                            std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(
                                tasks[index].budget_secs));
      std::ostringstream diag_lines;
      if (config.diagnostics && diag) limits.diagnostics = &diag_lines;

      EffectSolution solution =
          synth_label(group, instance_objects, limits);

      ActionSchema schema;
      schema.name = group.label;
      for (int i = 0; i < solution.k; ++i) {
        schema.params.push_back(param_name(i));
        schema.param_types.push_back(kRootType);
      }
      schema.add = solution.add_set;
      schema.del = solution.del_set;
      schema.pre = synth_preconditions(group, solution);
      std::ostringstream type_warnings;
      schema.param_types = assign_parameter_types(
          group, solution, type_table, header.hierarchy, &type_warnings);

      if (!check_witness(schema, solution.substitutions, group))
        throw std::logic_error("learned schema for '" + group.label +
                               "' fails the witness check");

      LabelResult result;
      result.summary = {group.label,
                        solution.k,
                        static_cast<int>(schema.pre.size()),
                        static_cast<int>(schema.add.size()),
                        static_cast<int>(schema.del.size()),
                        static_cast<int>(group.transitions.size())};
      result.schema = std::move(schema);
      results[index] = std::move(result);
      if (config.diagnostics && diag) {
        std::lock_guard<std::mutex> lock(diag_mutex);
        *diag << diag_lines.str() << type_warnings.str();
      }
    } catch (...) {
      failures[index] = std::current_exception();
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  size_t workers = config.workers > 0 ? static_cast<size_t>(config.workers)
                                      : (hw ? hw : 1);
  workers = std::min(workers, tasks.size());
  if (workers <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          run_one(i);
        }
      });
    for (std::thread &t : pool) t.join();
  }
  for (size_t i = 0; i < tasks.size(); ++i)
    if (failures[i]) std::rethrow_exception(failures[i]);

  LearnResult out;
  out.domain.name = header.name;
  out.domain.hierarchy = header.hierarchy;
  out.domain.signatures = header.signatures;
  for (auto &result : results) {
    out.domain.schemas.push_back(std::move(result->schema));
    out.summaries.push_back(std::move(result->summary));
  }
  return out;
}

int cmd_synth(const std::string &header_path,
              const std::vector<std::string> &trace_paths,
              const std::string &out_path, const RunConfig &config,
              std::ostream &out, std::ostream &err) {
  try {
    DomainModel header = parse_domain_file(header_path);
    std::vector<Trace> traces;
    traces.reserve(trace_paths.size());
    for (const std::string &path : trace_paths)
      traces.push_back(
          parse_trace_file(path, header.signatures, header.hierarchy));

    LearnResult result = learn_domain(header, traces, config, &err);

    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error("cannot write '" + out_path + "'");
    file << emit_domain(result.domain);
    for (const ActionSummary &s : result.summaries)
      out << s.name << " k=" << s.k << " pre=" << s.pre << " add=" << s.add
          << " del=" << s.del << "\n";
    return kExitOk;
  } catch (const TimeLimit &e) {
    err << "error: " << e.what() << "\n";
    return kExitTimeLimit;
  } catch (const ParamBudgetExceeded &e) {
    err << "error: " << e.what() << "\n";
    return kExitParamBudget;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_gen(const std::string &domain_path, const std::string &problem_path,
            const std::optional<std::string> &plan_path,
            std::optional<int> random_walk_length, std::uint64_t seed,
            const std::string &out_path, std::ostream &out, std::ostream &err) {
  try {
    if (plan_path.has_value() == random_walk_length.has_value())
      throw Error("exactly one of --plan and --random-walk is required");
    DomainModel domain = parse_domain_file(domain_path);
    ProblemInstance problem = parse_problem_file(problem_path, domain);
    Trace trace;
    if (plan_path) {
      Plan plan = parse_plan_file(*plan_path);
      trace = replay_plan(domain, problem, plan);
    } else {
      if (*random_walk_length < 0) throw Error("--random-walk must be >= 0");
      trace = random_walk(domain, problem, *random_walk_length, seed);
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error("cannot write '" + out_path + "'");
    file << emit_trace(trace);
    out << "steps=" << trace.steps.size() << "\n";
    return kExitOk;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_eval(const std::string &learned_path, const std::string &reference_path,
             const std::optional<std::string> &json_out, bool strict,
             std::ostream &out, std::ostream &err) {
  try {
    DomainModel learned = parse_domain_file(learned_path);
    DomainModel reference = parse_domain_file(reference_path);
    DiffReport report = diff_domains(learned, reference);
    if (json_out) {
      std::ofstream file(*json_out, std::ios::binary);
      if (!file) throw Error("cannot write '" + *json_out + "'");
      file << report_to_json(report);
    }
    out << report_table(report, strict);
    return kExitOk;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_gi(const std::string &g1_path, const std::string &g2_path,
           bool directed, std::ostream &out, std::ostream &err) {
  try {
    Graph g1 = parse_graph_file(g1_path, directed);
    Graph g2 = parse_graph_file(g2_path, directed);
    std::optional<NodeMapping> mapping = solve_gi(g1, g2);
    if (!mapping) {
      out << "not-isomorphic\n";
      return kExitOk;
    }
    out << "iso:";
    for (const auto &[from, to] : *mapping) out << ' ' << from << "->" << to;
    out << "\n";
    return kExitOk;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace stripslearn
