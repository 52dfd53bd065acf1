#include <doctest.h>

#include <random>
#include <sstream>

#include "parcut/graph.hpp"
#include "parcut/oracle.hpp"

using namespace parcut;

TEST_CASE("edge boundary on the path P4") {
  Graph g = oracle::path_graph(4);
  auto b = edge_boundary(g, {0, 1});
  REQUIRE(b.size() == 1);
  CHECK(b[0].u == 1);
  CHECK(b[0].v == 2);
  CHECK(boundary_size(g, {0, 1}) == 1);
}

TEST_CASE("edge boundary of a clique vertex") {
  Graph g = oracle::complete_graph(4);
  CHECK(boundary_size(g, {0}) == 3);
}

TEST_CASE("dumbbell bridge boundary") {
  Graph g = oracle::dumbbell(5, 5);
  CHECK(g.n == 10);
  CHECK(g.edge_count() == 21);
  VSet left{0, 1, 2, 3, 4};
  CHECK(boundary_size(g, left) == 1);
}

TEST_CASE("edge boundary rejects empty and full sides") {
  Graph g = oracle::path_graph(3);
  CHECK_THROWS_AS(edge_boundary(g, {}), InvalidCutError);
  CHECK_THROWS_AS(edge_boundary(g, {0, 1, 2}), InvalidCutError);
}

TEST_CASE("sparsity values") {
  CHECK(sparsity(oracle::path_graph(4), {0, 1}) == Rat(1, 2));
  CHECK(sparsity(oracle::complete_graph(4), {0}) == Rat(3));
  Graph d = oracle::dumbbell(5, 5);
  CHECK(sparsity(d, {0, 1, 2, 3, 4}) == Rat(1, 5));
}

TEST_CASE("conductance values") {
  CHECK(conductance(oracle::complete_graph(4), {0}) == Rat(1));
  Graph d = oracle::dumbbell(5, 5);
  CHECK(conductance(d, {0, 1, 2, 3, 4}) == Rat(1, 21));
  // 4-cycle, two adjacent vertices
  Graph c4(4);
  c4.add_edge(0, 1);
  c4.add_edge(1, 2);
  c4.add_edge(2, 3);
  c4.add_edge(3, 0);
  c4.finalize();
  CHECK(conductance(c4, {0, 1}) == Rat(1, 2));
}

TEST_CASE("self-loops add 2 to volume and 0 to boundary") {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.edges.push_back({1, 1, 1});  // internal padding loop
  g.finalize();
  CHECK(boundary_size(g, {1}) == 2);
  CHECK(volume(g, {1}) == 4);
}

TEST_CASE("terminal sparsity") {
  Graph d = oracle::dumbbell(5, 5);
  VSet left{0, 1, 2, 3, 4};
  SUBCASE("two terminals per side") {
    VSet t{0, 1, 5, 6};
    CHECK(terminal_sparsity(d, t, left) == ExtRat(Rat(1, 2)));
  }
  SUBCASE("t = V coincides with sparsity") {
    VSet t = vset_complement(d.n, {});
    CHECK(terminal_sparsity(d, t, left) == ExtRat(sparsity(d, left)));
  }
  SUBCASE("empty intersection gives the infinity sentinel") {
    VSet t{5, 6};
    auto ts = terminal_sparsity(d, t, left);
    CHECK(ts.is_inf());
    CHECK(ts > ExtRat(Rat(1000000)));
  }
}

TEST_CASE("terminal sparsity with t = V equals sparsity, exhaustively") {
  for (int n = 2; n <= 8; ++n) {
    Graph g = oracle::random_connected(n, 0.5, 77 + n);
    VSet all = vset_complement(n, {});
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      VSet s;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) s.push_back(v);
      CHECK(terminal_sparsity(g, all, s) == ExtRat(sparsity(g, s)));
    }
  }
}

TEST_CASE("vertex cuts") {
  SUBCASE("star") {
    Graph g = oracle::star_graph(4);
    VertexCut c = make_vertex_cut(g, {1}, {0}, {2, 3, 4});
    CHECK(vertex_sparsity(g, c) == Rat(1, 2));
  }
  SUBCASE("path P5 middle") {
    Graph g = oracle::path_graph(5);
    VertexCut c = make_vertex_cut(g, {0, 1}, {2}, {3, 4});
    CHECK(vertex_sparsity(g, c) == Rat(1, 3));
  }
  SUBCASE("3x3 grid middle column") {
    Graph g = oracle::grid_graph(3, 3);
    VertexCut c = make_vertex_cut(g, {0, 3, 6}, {1, 4, 7}, {2, 5, 8});
    CHECK(vertex_sparsity(g, c) == Rat(3, 6));
  }
  SUBCASE("rejects L-R edges") {
    Graph g = oracle::path_graph(3);
    CHECK_THROWS_AS(make_vertex_cut(g, {0, 1}, {2}, {}), InvalidCutError);
    CHECK_THROWS_AS(make_vertex_cut(g, {0}, {2}, {1}), InvalidCutError);
  }
}

TEST_CASE("vertex cut construction rejects random invalid partitions") {
  std::mt19937_64 rng(5);
  Graph g = oracle::random_connected(9, 0.4, 11);
  int rejected = 0, accepted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    VSet l, c, r;
    for (int v = 0; v < g.n; ++v) {
      switch (rng() % 3) {
        case 0: l.push_back(v); break;
        case 1: c.push_back(v); break;
        default: r.push_back(v); break;
      }
    }
    bool has_lr_edge = false;
    for (const Graph::Edge &e : g.edges) {
      bool ul = vset_contains(l, e.u), vl = vset_contains(l, e.v);
      bool ur = vset_contains(r, e.u), vr = vset_contains(r, e.v);
      if ((ul && vr) || (ur && vl)) has_lr_edge = true;
    }
    bool valid = !l.empty() && !r.empty() && !has_lr_edge;
    if (valid) {
      CHECK_NOTHROW(make_vertex_cut(g, l, c, r));
      ++accepted;
    } else {
      CHECK_THROWS_AS(make_vertex_cut(g, l, c, r), InvalidCutError);
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("vertex terminal sparsity") {
  Graph g = oracle::star_graph(4);
  SUBCASE("t = V equals vertex sparsity") {
    VertexCut c = make_vertex_cut(g, {1}, {0}, {2, 3, 4});
    VSet all{0, 1, 2, 3, 4};
    CHECK(vertex_terminal_sparsity(g, all, c) == ExtRat(vertex_sparsity(g, c)));
  }
  SUBCASE("leaves only") {
    VertexCut c = make_vertex_cut(g, {1}, {0}, {2, 3, 4});
    VSet t{1, 2, 3, 4};
    CHECK(vertex_terminal_sparsity(g, t, c) == ExtRat(Rat(1, 1)));
  }
  SUBCASE("P5 endpoints") {
    Graph p = oracle::path_graph(5);
    VertexCut c = make_vertex_cut(p, {0, 1}, {2}, {3, 4});
    VSet t{0, 4};
    CHECK(vertex_terminal_sparsity(p, t, c) == ExtRat(Rat(1, 1)));
  }
}

TEST_CASE("neighbors") {
  CHECK(neighbors(oracle::path_graph(4), {0}) == VSet{1});
  CHECK(neighbors(oracle::complete_graph(4), {0, 1}) == VSet{2, 3});
  CHECK(neighbors(oracle::path_graph(4), {}) == VSet{});
}

TEST_CASE("induced subgraph") {
  SUBCASE("K4 on two vertices") {
    auto sub = induced_subgraph(oracle::complete_graph(4), {1, 3});
    CHECK(sub.graph.n == 2);
    CHECK(sub.graph.edge_count() == 1);
    CHECK(sub.to_original == VSet{1, 3});
  }
  SUBCASE("dumbbell left clique is K5") {
    auto sub = induced_subgraph(oracle::dumbbell(5, 5), {0, 1, 2, 3, 4});
    CHECK(sub.graph.n == 5);
    CHECK(sub.graph.edge_count() == 10);
  }
  SUBCASE("full set gives an isomorphic copy") {
    Graph g = oracle::dumbbell(4, 3);
    auto sub = induced_subgraph(g, vset_complement(g.n, {}));
    CHECK(sub.graph.edge_count() == g.edge_count());
  }
}

TEST_CASE("cut symmetry properties on random graphs") {
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_connected(8, 0.45, 1000 + trial);
    std::mt19937_64 rng(trial);
    for (int rep = 0; rep < 20; ++rep) {
      VSet s;
      for (int v = 0; v < g.n; ++v)
        if (rng() & 1) s.push_back(v);
      if (s.empty() || static_cast<int>(s.size()) == g.n) continue;
      VSet c = vset_complement(g.n, s);
      CHECK(sparsity(g, s) == sparsity(g, c));
      auto bs = edge_boundary(g, s);
      auto bc = edge_boundary(g, c);
      REQUIRE(bs.size() == bc.size());
      for (size_t i = 0; i < bs.size(); ++i) {
        CHECK(bs[i].u == bc[i].u);
        CHECK(bs[i].v == bc[i].v);
        CHECK(bs[i].mult == bc[i].mult);
      }
    }
  }
}

TEST_CASE("conductance equals sparsity over degree on regular graphs") {
  Graph g = oracle::random_regular(10, 4, 3);
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 30; ++rep) {
    VSet s;
    for (int v = 0; v < g.n; ++v)
      if (rng() & 1) s.push_back(v);
    if (s.empty() || static_cast<int>(s.size()) == g.n) continue;
    CHECK(conductance(g, s) == sparsity(g, s) / 4);
  }
}

TEST_CASE("graph format round trip") {
  Graph g = oracle::dumbbell(4, 4);
  g.terminals = {0, 5};
  g.weights.assign(g.n, 0);
  g.weights[0] = 3;
  g.weights[5] = 1;
  g.finalize();
  std::string text = serialize_graph(g);
  std::istringstream in(text);
  Graph h = parse_graph(in);
  CHECK(serialize_graph(h) == text);
  CHECK(h.n == g.n);
  CHECK(h.terminals == g.terminals);
  CHECK(h.weights == g.weights);
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("bad header") {
    std::istringstream in("x y\n");
    CHECK_THROWS_AS(parse_graph(in), ParseError);
  }
  SUBCASE("edge out of range") {
    std::istringstream in("3 1\n0 7\n");
    try {
      parse_graph(in);
      FAIL("expected parse error");
    } catch (const ParseError &e) {
      CHECK(e.line == 2);
    }
  }
  SUBCASE("self-loop rejected") {
    std::istringstream in("3 1\n1 1\n");
    CHECK_THROWS_AS(parse_graph(in), ParseError);
  }
}
