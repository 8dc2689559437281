#include "pcfp/interference.hpp"

#include <algorithm>
#include <numeric>

namespace pcfp {

int Graph::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] == name) return static_cast<int>(i);
  }
  return -1;
}

void Graph::add_edge(int a, int b) {
  if (a == b) return;  // no self-loops
  edges.emplace(std::min(a, b), std::max(a, b));
}

bool Graph::has_edge(int a, int b) const {
  return edges.count({std::min(a, b), std::max(a, b)}) > 0;
}

int Graph::degree(int v) const {
  int d = 0;
  for (const auto& [a, b] : edges) {
    if (a == v || b == v) ++d;
  }
  return d;
}

Graph build_ig(const Program& p, const LivenessMap& live) {
  Graph g;
  for (const auto& d : p.decls) g.vertices.push_back(d.name);

  auto connect_all = [&g](const VarSet& set) {
    std::vector<int> idx;
    for (const auto& v : set) {
      int i = g.index_of(v);
      if (i >= 0) idx.push_back(i);
    }
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        g.add_edge(idx[a], idx[b]);
      }
    }
  };

  // (a) jointly live at the initial commands
  connect_all(live_at_location(p, live, 0));

  // (b) jointly live across some command's successors
  for (const auto& c : p.commands) {
    VarSet across;
    for (int sid : succ(p, c)) {
      const VarSet& l = live.of(sid);
      across.insert(l.begin(), l.end());
    }
    connect_all(across);
  }
  return g;
}

ColorAssignment welsh_powell(const Graph& g) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> degree(n, 0);
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [a, b] : g.edges) {
    adj[a][b] = adj[b][a] = 1;
    ++degree[a];
    ++degree[b];
  }

  // Non-increasing degree, ties by declaration order.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&degree](int a, int b) { return degree[a] > degree[b]; });

  std::vector<int> color(n, 0);
  int used = 0;
  for (int c = 1; c <= n; ++c) {
    bool any = false;
    for (int i : order) {
      if (color[i] != 0) continue;
      bool blocked = false;
      for (int j = 0; j < n && !blocked; ++j) {
        if (adj[i][j] && color[j] == c) blocked = true;
      }
      if (!blocked) {
        color[i] = c;
        any = true;
      }
    }
    if (any) used = c;
    // Every pass colors at least one vertex, so n passes always suffice.
  }

  ColorAssignment ca;
  ca.color_count = used;
  for (int i = 0; i < n; ++i) ca.color.emplace(g.vertices[i], color[i]);
  return ca;
}

bool is_proper_coloring(const Graph& g, const ColorAssignment& ca) {
  for (const auto& v : g.vertices) {
    auto it = ca.color.find(v);
    if (it == ca.color.end() || it->second < 1) return false;
  }
  for (const auto& [a, b] : g.edges) {
    if (ca.color.at(g.vertices[a]) == ca.color.at(g.vertices[b])) {
      return false;
    }
  }
  return true;
}

std::string to_dot(const Graph& g) {
  std::string out = "graph interference {\n";
  for (const auto& v : g.vertices) {
    out += "  \"" + v + "\";\n";
  }
  for (const auto& [a, b] : g.edges) {
    out += "  \"" + g.vertices[a] + "\" -- \"" + g.vertices[b] + "\";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace pcfp
