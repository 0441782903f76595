#ifndef STRIPSLEARN_GI_HPP
#define STRIPSLEARN_GI_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stripslearn/trace.hpp"

namespace stripslearn {

struct Graph {
  std::vector<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;  // as written
  bool directed = true;
};

// `nodes: a b c` on the first line, one `a b` edge per line after.
Graph parse_graph(const std::string &text, bool directed,
                  const std::string &file = "<graph>");
Graph parse_graph_file(const std::string &path, bool directed);

// Edge set with both orientations materialized for undirected graphs.
std::set<std::pair<std::string, std::string>> oriented_edges(const Graph &g);

// The synthesis task a graph pair reduces to: two single-step traces
// over disjoint object universes, each step adding one graph's edge
// facts over the shared binary predicate, to be explained with exactly
// |V| parameters.
struct GiTask {
  Trace trace1;
  Trace trace2;
  std::string label;
  int k = 0;
};

// Requires equal node counts and no isolated vertices (strip first).
GiTask encode_gi(const Graph &g1, const Graph &g2);

using NodeMapping = std::map<std::string, std::string>;

// Runs effect synthesis at fixed k = |V| and decodes the isomorphism
// from the two recovered substitutions; nullopt when not isomorphic.
// Isolated vertices are stripped, counted, and paired in name order.
std::optional<NodeMapping> solve_gi(const Graph &g1, const Graph &g2);

// Exhaustive permutation search, node counts up to 8.
std::optional<NodeMapping> brute_force_iso(const Graph &g1, const Graph &g2);

// Bijective and edge-preserving in both directions.
bool is_isomorphism(const NodeMapping &f, const Graph &g1, const Graph &g2);

}  // namespace stripslearn

#endif
