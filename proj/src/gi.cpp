#include "stripslearn/gi.hpp"

#include <algorithm>
#include <sstream>

#include "pddl_internal.hpp"
#include "stripslearn/errors.hpp"
#include "stripslearn/synth.hpp"

namespace stripslearn {

namespace {

constexpr const char *kEdgePredicate = "edge";
constexpr const char *kStepLabel = "grow";

std::set<std::string> touched_nodes(const Graph &g) {
  std::set<std::string> touched;
  for (const auto &[u, v] : g.edges) {
    touched.insert(u);
    touched.insert(v);
  }
  return touched;
}

// Copy of `g` without its isolated vertices; those are returned
// separately in sorted order.
std::pair<Graph, std::vector<std::string>> strip_isolated(const Graph &g) {
  std::set<std::string> touched = touched_nodes(g);
  Graph core;
  core.directed = g.directed;
  core.edges = g.edges;
  std::vector<std::string> isolated;
  for (const std::string &n : g.nodes)
    (touched.count(n) ? core.nodes : isolated).push_back(n);
  std::sort(isolated.begin(), isolated.end());
  return {std::move(core), std::move(isolated)};
}

}  // namespace

Graph parse_graph(const std::string &text, bool directed,
                  const std::string &file) {
  Graph g;
  g.directed = directed;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::set<std::string> declared;
  bool saw_nodes = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> words;
    std::string w;
    while (fields >> w) words.push_back(w);
    if (words.empty()) continue;
    if (!saw_nodes) {
      if (words[0] != "nodes:")
        throw ParseError(file, line_no, 1, "expected 'nodes: a b c ...'");
      for (size_t i = 1; i < words.size(); ++i) {
        if (!declared.insert(words[i]).second)
          throw ParseError(file, line_no, 1,
                           "duplicate node '" + words[i] + "'");
        g.nodes.push_back(words[i]);
      }
      saw_nodes = true;
      continue;
    }
    if (words.size() != 2)
      throw ParseError(file, line_no, 1, "expected an edge 'a b'");
    for (const std::string &endpoint : words)
      if (!declared.count(endpoint))
        throw ParseError(file, line_no, 1,
                         "undeclared node '" + endpoint + "'");
    g.edges.emplace(words[0], words[1]);
  }
  if (!saw_nodes)
    throw ParseError(file, 1, 1, "missing 'nodes:' line");
  return g;
}

Graph parse_graph_file(const std::string &path, bool directed) {
  return parse_graph(pddl::read_file(path), directed, path);
}

std::set<std::pair<std::string, std::string>> oriented_edges(const Graph &g) {
  std::set<std::pair<std::string, std::string>> out = g.edges;
  if (!g.directed)
    for (const auto &[u, v] : g.edges) out.emplace(v, u);
  return out;
}

GiTask encode_gi(const Graph &g1, const Graph &g2) {
  for (const Graph *g : {&g1, &g2}) {
    std::set<std::string> touched = touched_nodes(*g);
    for (const std::string &n : g->nodes)
      if (!touched.count(n))
        throw IsolatedVertexPresent("node '" + n +
                                    "' is isolated; strip isolated "
                                    "vertices before encoding");
  }
  if (g1.nodes.size() != g2.nodes.size())
    throw NodeCountMismatch("graphs have " + std::to_string(g1.nodes.size()) +
                            " and " + std::to_string(g2.nodes.size()) +
                            " nodes; no isomorphism exists");

  GiTask task;
  task.label = kStepLabel;
  task.k = static_cast<int>(g1.nodes.size());
  int which = 0;
  for (const Graph *g : {&g1, &g2}) {
    Trace trace;
    trace.instance_id = ++which == 1 ? "g1" : "g2";
    for (const std::string &n : g->nodes) trace.objects[n] = kRootType;
    TraceStep step;
    step.label = kStepLabel;
    for (const auto &[u, v] : oriented_edges(*g))
      step.added.insert(GroundFact{kEdgePredicate, {u, v}});
    trace.steps.push_back(std::move(step));
    (which == 1 ? task.trace1 : task.trace2) = std::move(trace);
  }
  return task;
}

bool is_isomorphism(const NodeMapping &f, const Graph &g1, const Graph &g2) {
  if (f.size() != g1.nodes.size() || g1.nodes.size() != g2.nodes.size())
    return false;
  std::set<std::string> image;
  std::set<std::string> targets(g2.nodes.begin(), g2.nodes.end());
  for (const std::string &n : g1.nodes) {
    auto it = f.find(n);
    if (it == f.end() || !targets.count(it->second)) return false;
    if (!image.insert(it->second).second) return false;  // not injective
  }
  auto e1 = oriented_edges(g1);
  auto e2 = oriented_edges(g2);
  for (const auto &[u, v] : e1)
    if (!e2.count({f.at(u), f.at(v)})) return false;
  for (const auto &[u, v] : e2) {
    // Pull back through the inverse.
    std::string pu, pv;
    for (const auto &[a, b] : f) {
      if (b == u) pu = a;
      if (b == v) pv = a;
    }
    if (pu.empty() || pv.empty() || !e1.count({pu, pv})) return false;
  }
  return true;
}

std::optional<NodeMapping> solve_gi(const Graph &g1, const Graph &g2) {
  auto [core1, isolated1] = strip_isolated(g1);
  auto [core2, isolated2] = strip_isolated(g2);
  if (isolated1.size() != isolated2.size() ||
      core1.nodes.size() != core2.nodes.size())
    return std::nullopt;

  NodeMapping mapping;
  for (size_t i = 0; i < isolated1.size(); ++i)
    mapping[isolated1[i]] = isolated2[i];  // no edges: any pairing works

  if (!core1.nodes.empty()) {
    GiTask task = encode_gi(core1, core2);
    std::map<std::string, LabelGroup> groups =
        decompose({task.trace1, task.trace2});
    const LabelGroup &group = groups.at(task.label);

    InstanceObjects objects = collect_instance_objects({task.trace1, task.trace2});
    LabelSynthesizer engine(group, objects, task.k);
    if (!engine.run()) return std::nullopt;

    const EffectSolution &solution = engine.solution();
    const Substitution &sigma1 =
        solution.substitutions.at(group.transitions[0].id);
    const Substitution &sigma2 =
        solution.substitutions.at(group.transitions[1].id);
    std::set<std::string> range1(sigma1.objects.begin(), sigma1.objects.end());
    if (static_cast<int>(range1.size()) != task.k)
      throw std::logic_error(
          "substitution for the first transition is not a bijection");
    for (int i = 0; i < task.k; ++i)
      mapping[sigma1.objects[static_cast<size_t>(i)]] =
          sigma2.objects[static_cast<size_t>(i)];
  }

  if (!is_isomorphism(mapping, g1, g2))
    throw std::logic_error("decoded mapping failed the isomorphism check");
  return mapping;
}

std::optional<NodeMapping> brute_force_iso(const Graph &g1, const Graph &g2) {
  if (g1.nodes.size() > 8 || g2.nodes.size() > 8)
    throw TooLarge("brute-force search is limited to 8 nodes");
  if (g1.nodes.size() != g2.nodes.size()) return std::nullopt;

  std::vector<std::string> left = g1.nodes;
  std::vector<std::string> right = g2.nodes;
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  auto e1 = oriented_edges(g1);
  auto e2 = oriented_edges(g2);

  std::vector<size_t> perm(right.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    NodeMapping f;
    for (size_t i = 0; i < left.size(); ++i) f[left[i]] = right[perm[i]];
    bool ok = e1.size() == e2.size();
    for (auto it = e1.begin(); ok && it != e1.end(); ++it)
      ok = e2.count({f.at(it->first), f.at(it->second)}) != 0;
    if (ok) return f;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace stripslearn
