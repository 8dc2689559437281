#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pcfp/liveness.hpp"
#include "pcfp/program.hpp"

namespace pcfp {

// Simple undirected graph over named vertices; no self-loops.
struct Graph {
  std::vector<std::string> vertices;
  std::set<std::pair<int, int>> edges;  // index pairs, first < second

  int index_of(const std::string& name) const;  // -1 if absent
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;
  int degree(int v) const;
};

struct ColorAssignment {
  std::map<std::string, int> color;  // colors 1..color_count
  int color_count = 0;
};

// Interference graph: vertices are the declared variables; {x,y} is an
// edge iff both are live at the initial commands (location 0) or both are
// live across some command's successors, live lifted to command sets by
// union.
Graph build_ig(const Program& p, const LivenessMap& live);

// Greedy coloring: vertices in non-increasing degree order (ties by
// declaration order); each color sweeps all remaining uncolored vertices
// without a like-colored neighbor. Always proper; uses at most
// max-degree + 1 colors.
ColorAssignment welsh_powell(const Graph& g);

bool is_proper_coloring(const Graph& g, const ColorAssignment& ca);

std::string to_dot(const Graph& g);

}  // namespace pcfp
