#include <random>

#include "doctest.h"
#include "paper_programs.hpp"
#include "pcfp/interference.hpp"
#include "pcfp/parser.hpp"

using namespace pcfp;

namespace {

Graph named_graph(std::vector<std::string> vertices,
                  std::vector<std::pair<int, int>> edges) {
  Graph g;
  g.vertices = std::move(vertices);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

}  // namespace

TEST_CASE("bsp interference graph has no edges") {
  Program p = parse(fixtures::kBsp);
  Graph g = build_ig(p, lra(p));
  CHECK(g.vertices == std::vector<std::string>{"x", "y"});
  CHECK(g.edges.empty());
}

TEST_CASE("variables jointly live at location 0 interfere") {
  const char* src = R"(dtmc
module m
  cf : [0..1] init 0;
  a : [0..1] init 0;
  b : [0..1] init 0;
  [] cf=0 & a=0 & b=0 -> 1:(cf'=1);
  [] cf=1 -> 1:(cf'=1);
endmodule
)";
  Program p = parse(src);
  Graph g = build_ig(p, lra(p));
  CHECK(g.has_edge(0, 1));
}

TEST_CASE("variables jointly live across a command's successors interfere") {
  // u read at location 1, v read at location 2; the location-0 command
  // reaches both, so u and v are jointly live across its successors even
  // though no single location reads both.
  const char* src = R"(dtmc
module m
  cf : [0..2] init 0;
  u : [0..1] init 0;
  v : [0..1] init 0;
  [] cf=0 -> 0.5:(cf'=1) + 0.5:(cf'=2);
  [] cf=1 & u=0 -> 1:(cf'=1);
  [] cf=2 & v=0 -> 1:(cf'=2);
endmodule
)";
  Program p = parse(src);
  Graph g = build_ig(p, lra(p));
  CHECK(g.has_edge(g.index_of("u"), g.index_of("v")));
}

TEST_CASE("disjoint live ranges do not interfere") {
  // u is read at location 1 and dies there; v only becomes live later
  // (written at 1, read at 2).
  const char* src = R"(dtmc
module m
  cf : [0..2] init 0;
  u : [0..1] init 0;
  v : [0..1] init 0;
  [] cf=0 -> 1:(cf'=1);
  [] cf=1 & u=0 -> 1:(cf'=2)&(v'=1);
  [] cf=2 & v=1 -> 1:(cf'=2);
endmodule
)";
  Program p = parse(src);
  LivenessMap live = lra(p);
  CHECK(live.of(0) == VarSet{"u"});
  CHECK(live.of(1) == VarSet{"u"});
  CHECK(live.of(2) == VarSet{"v"});
  Graph g = build_ig(p, lra(p));
  CHECK_FALSE(g.has_edge(g.index_of("u"), g.index_of("v")));
}

TEST_CASE("welsh-powell on the paper shapes") {
  SUBCASE("complete graph needs n colors") {
    Graph k3 = named_graph({"a", "b", "c"}, {{0, 1}, {0, 2}, {1, 2}});
    ColorAssignment ca = welsh_powell(k3);
    CHECK(ca.color_count == 3);
    CHECK(is_proper_coloring(k3, ca));
  }
  SUBCASE("edgeless graph gets one color") {
    Graph g = named_graph({"a", "b", "c", "d"}, {});
    ColorAssignment ca = welsh_powell(g);
    CHECK(ca.color_count == 1);
    for (const auto& [v, c] : ca.color) CHECK(c == 1);
  }
  SUBCASE("path a-b-c: the max-degree middle vertex is colored first") {
    Graph g = named_graph({"a", "b", "c"}, {{0, 1}, {1, 2}});
    ColorAssignment ca = welsh_powell(g);
    CHECK(ca.color.at("b") == 1);
    CHECK(ca.color.at("a") == 2);
    CHECK(ca.color.at("c") == 2);
    CHECK(ca.color_count == 2);
  }
  SUBCASE("empty graph") {
    ColorAssignment ca = welsh_powell(Graph{});
    CHECK(ca.color_count == 0);
  }
}

TEST_CASE("welsh-powell is proper and bounded on random graphs") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 120; ++round) {
    int n = 1 + static_cast<int>(rng() % 40);
    Graph g;
    for (int i = 0; i < n; ++i) g.vertices.push_back("v" + std::to_string(i));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (rng() % 100 < 20) g.add_edge(a, b);
      }
    }
    ColorAssignment ca = welsh_powell(g);
    CHECK(is_proper_coloring(g, ca));
    int max_degree = 0;
    for (int v = 0; v < n; ++v) max_degree = std::max(max_degree, g.degree(v));
    CHECK(ca.color_count <= max_degree + 1);

    // determinism
    ColorAssignment again = welsh_powell(g);
    CHECK(again.color == ca.color);
  }
}

TEST_CASE("dot output lists vertices and edges") {
  Graph g = named_graph({"x", "y"}, {{0, 1}});
  std::string dot = to_dot(g);
  CHECK(dot.find("\"x\" -- \"y\"") != std::string::npos);
  CHECK(dot.find("graph interference") != std::string::npos);
}
