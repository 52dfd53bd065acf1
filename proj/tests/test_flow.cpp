#include <doctest.h>

#include <random>
#include <sstream>

#include "parcut/flow.hpp"
#include "parcut/oracle.hpp"

using namespace parcut;

namespace {

// unit-capacity network from an undirected graph
FlowNetwork unit_network(const Graph &g, int s, int t) {
  FlowNetwork net(g.n);
  for (int v = 0; v < g.n; ++v) net.orig_vertex[v] = v;
  for (const Graph::Edge &e : g.edges)
    if (e.u != e.v) net.add_undirected(e.u, e.v, e.mult);
  net.source = s;
  net.sink = t;
  return net;
}

// brute force: minimum capacity of an s-t cut (unit caps with multiplicity)
long long brute_min_cut(const Graph &g, int s, int t) {
  long long best = -1;
  for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
    if (!(mask >> s & 1) || (mask >> t & 1)) continue;
    long long cap = 0;
    for (const Graph::Edge &e : g.edges) {
      if (e.u == e.v) continue;
      bool iu = mask >> e.u & 1, iv = mask >> e.v & 1;
      if (iu != iv) cap += e.mult;
    }
    if (best < 0 || cap < best) best = cap;
  }
  return best;
}

}  // namespace

TEST_CASE("single arc") {
  FlowNetwork net(2);
  net.add_arc(0, 1, 5);
  net.source = 0;
  net.sink = 1;
  auto r = max_flow_min_cut(net);
  CHECK(r.flow == 5);
  CHECK(r.cut_side == VSet{0});
}

TEST_CASE("K4 adjacent terminals have three edge-disjoint paths") {
  Graph g = oracle::complete_graph(4);
  FlowNetwork net = unit_network(g, 0, 1);
  CHECK(max_flow_min_cut(net).flow == 3);
}

TEST_CASE("dumbbell min cut is the bridge") {
  Graph g = oracle::dumbbell(5, 5);
  FlowNetwork net = unit_network(g, 0, 9);
  auto r = max_flow_min_cut(net);
  CHECK(r.flow == 1);
  CHECK(r.cut_side == VSet{0, 1, 2, 3, 4});
}

TEST_CASE("disconnected terminals give zero flow") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.finalize();
  FlowNetwork net = unit_network(g, 0, 3);
  CHECK(max_flow_min_cut(net).flow == 0);
}

TEST_CASE("max-flow equals brute-force min-cut on random graphs") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + static_cast<int>(rng() % 7);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) g.add_edge(u, v, 1 + rng() % 3);
    g.finalize();
    int s = 0, t = n - 1;
    FlowNetwork net = unit_network(g, s, t);
    auto r = max_flow_min_cut(net);
    CHECK(r.flow == brute_min_cut(g, s, t));
    // flow value equals the capacity of the returned cut
    long long cap = 0;
    std::vector<char> in(n, 0);
    for (int v : r.cut_side) in[v] = 1;
    for (const Graph::Edge &e : g.edges) {
      if (e.u == e.v) continue;
      if (in[e.u] != in[e.v]) cap += e.mult;
    }
    CHECK(cap == r.flow);
  }
}

TEST_CASE("vertex capacitated networks") {
  SUBCASE("P3 with center capacity 1") {
    Graph g = oracle::path_graph(3);
    auto vc = vertex_capacitated(g, {Rat(10), Rat(1), Rat(10)});
    vc.net.source = vc.out_node[0];
    vc.net.sink = vc.in_node[2];
    CHECK(max_flow_min_cut(vc.net).flow == 1 * vc.net.scale);
  }
  SUBCASE("adjacent terminals have no separating vertex cut") {
    Graph g = oracle::complete_graph(4);
    auto vc = vertex_capacitated(g, std::vector<Rat>(4, Rat(1)));
    vc.net.source = vc.out_node[0];
    vc.net.sink = vc.in_node[1];
    // the direct edge is effectively unbounded, so the flow exceeds every
    // vertex-cut value
    CHECK(max_flow_min_cut(vc.net).flow > 4 * vc.net.scale);
  }
  SUBCASE("star with center capacity 2, terminals two leaves") {
    Graph g = oracle::star_graph(3);
    auto vc = vertex_capacitated(g, {Rat(2), Rat(1), Rat(1), Rat(1)});
    vc.net.source = vc.out_node[1];
    vc.net.sink = vc.in_node[2];
    // the single internal path carries the full center capacity
    CHECK(max_flow_min_cut(vc.net).flow == 2 * vc.net.scale);
  }
  SUBCASE("rational capacities are scaled exactly") {
    Graph g = oracle::path_graph(3);
    auto vc = vertex_capacitated(g, {Rat(3), Rat(1, 2), Rat(3)});
    CHECK(vc.net.scale == 2);
    vc.net.source = vc.out_node[0];
    vc.net.sink = vc.in_node[2];
    CHECK(max_flow_min_cut(vc.net).flow == 1);  // 1/2 at scale 2
  }
}

TEST_CASE("vertex min cut round trip against brute force") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 5 + static_cast<int>(rng() % 5);
    Graph g = oracle::random_connected(n, 0.35, 900 + trial);
    int s = 0, t = n - 1;
    bool adjacent = false;
    for (const Graph::Edge &e : g.edges)
      if ((e.u == s && e.v == t) || (e.u == t && e.v == s)) adjacent = true;
    if (adjacent) continue;
    // brute force minimum s-t vertex cut
    long long best = n;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if ((mask >> s & 1) || (mask >> t & 1)) continue;
      // does removing mask separate s from t?
      std::vector<char> blocked(n, 0);
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) blocked[v] = 1;
      std::vector<char> seen(n, 0);
      std::vector<int> stack{s};
      seen[s] = 1;
      auto adj = g.adjacency();
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, mm] : adj[v])
          if (!seen[w] && !blocked[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
      }
      if (!seen[t]) best = std::min<long long>(best, std::popcount(mask));
    }
    auto vc = vertex_capacitated(g, std::vector<Rat>(n, Rat(1)));
    vc.net.source = vc.out_node[s];
    vc.net.sink = vc.in_node[t];
    auto r = max_flow_min_cut(vc.net);
    CHECK(r.flow == best * vc.net.scale);
  }
}

TEST_CASE("matching extraction") {
  SUBCASE("single pair, direct path") {
    Graph g = oracle::path_graph(2);
    FlowNetwork net(g.n);
    for (int v = 0; v < g.n; ++v) net.orig_vertex[v] = v;
    net.add_undirected(0, 1, 1);
    int s = net.add_vertex(), t = net.add_vertex();
    net.add_arc(s, 0, 1);
    net.add_arc(1, t, 1);
    net.source = s;
    net.sink = t;
    auto r = max_flow_min_cut(net);
    REQUIRE(r.flow == 1);
    auto m = extract_matching(net, r, {0}, {1});
    REQUIRE(m.size() == 1);
    CHECK(m[0].a == 0);
    CHECK(m[0].b == 1);
    CHECK(m[0].path == std::vector<int>{0, 1});
  }
  SUBCASE("K4 pairs with ample capacity") {
    Graph g = oracle::complete_graph(4);
    FlowNetwork net(g.n);
    for (int v = 0; v < g.n; ++v) net.orig_vertex[v] = v;
    for (const Graph::Edge &e : g.edges) net.add_undirected(e.u, e.v, 2);
    int s = net.add_vertex(), t = net.add_vertex();
    net.add_arc(s, 0, 1);
    net.add_arc(s, 1, 1);
    net.add_arc(2, t, 1);
    net.add_arc(3, t, 1);
    net.source = s;
    net.sink = t;
    auto r = max_flow_min_cut(net);
    REQUIRE(r.flow == 2);
    auto m = extract_matching(net, r, {0, 1}, {2, 3});
    REQUIRE(m.size() == 2);
    // each path respects the host graph edges
    for (const auto &mp : m) {
      for (size_t i = 0; i + 1 < mp.path.size(); ++i) {
        bool edge_exists = false;
        for (const Graph::Edge &e : g.edges)
          if ((e.u == std::min(mp.path[i], mp.path[i + 1])) &&
              (e.v == std::max(mp.path[i], mp.path[i + 1])))
            edge_exists = true;
        CHECK(edge_exists);
      }
    }
  }
  SUBCASE("disconnected sides error out") {
    Graph g(2);
    g.finalize();
    FlowNetwork net(2);
    net.orig_vertex = {0, 1};
    int s = net.add_vertex(), t = net.add_vertex();
    net.add_arc(s, 0, 1);
    net.add_arc(1, t, 1);
    net.source = s;
    net.sink = t;
    auto r = max_flow_min_cut(net);
    CHECK(r.flow == 0);
    CHECK_THROWS_AS(extract_matching(net, r, {0}, {1}), FlowError);
  }
}

TEST_CASE("embedding verification") {
  SUBCASE("unit demand on an edge") {
    Graph g = oracle::path_graph(2);
    CHECK(verify_embedding(g, {{0, 1, 1, {}}}, Rat(1)).feasible);
  }
  SUBCASE("demand 2 over a bridge at congestion 1 fails") {
    Graph g = oracle::path_graph(2);
    CHECK_FALSE(verify_embedding(g, {{0, 1, 2, {}}}, Rat(1)).feasible);
    CHECK(verify_embedding(g, {{0, 1, 2, {}}}, Rat(2)).feasible);
  }
  SUBCASE("witness paths are loaded exactly") {
    Graph g = oracle::path_graph(3);
    std::vector<Demand> demands{{0, 2, 1, {0, 1, 2}}, {0, 2, 1, {0, 1, 2}}, {0, 2, 1, {0, 1, 2}}};
    auto chk = verify_embedding(g, demands, Rat(3));
    CHECK(chk.feasible);
    CHECK(chk.congestion == Rat(3));
    CHECK_FALSE(verify_embedding(g, demands, Rat(2)).feasible);
  }
}

TEST_CASE("dimacs dump") {
  Graph g = oracle::path_graph(3);
  FlowNetwork net = unit_network(g, 0, 2);
  std::ostringstream os;
  write_dimacs(os, net);
  std::string out = os.str();
  CHECK(out.find("p max 3 ") != std::string::npos);
  CHECK(out.find("n 1 s") != std::string::npos);
  CHECK(out.find("n 3 t") != std::string::npos);
}
