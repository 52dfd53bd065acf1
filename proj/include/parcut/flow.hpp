#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "parcut/graph.hpp"

namespace parcut {

struct FlowError : GraphError {
  using GraphError::GraphError;
};

// Residual network with paired arcs. Undirected edges are modeled as two
// opposing arcs that share capacity through the usual residual bookkeeping.
// Rational capacities are cleared to integers by the recorded scale factor.
struct FlowNetwork {
  struct Arc {
    int to;
    long long cap;   // remaining residual capacity
    long long flow;  // flow pushed on this arc
  };

  int n = 0;
  int source = -1, sink = -1;
  long long scale = 1;
  std::vector<Arc> arcs;                  // arc i pairs with i ^ 1
  std::vector<std::vector<int>> out;      // per-vertex arc indices
  std::vector<int> orig_vertex;           // network vertex -> host graph vertex, -1 if auxiliary

  explicit FlowNetwork(int n_ = 0) : n(n_), out(n_), orig_vertex(n_, -1) {}

  int add_vertex(int orig = -1);
  // Directed arc u->v with capacity cap (reverse gets rev_cap, default 0).
  int add_arc(int u, int v, long long cap, long long rev_cap = 0);
  // Undirected edge: capacity cap in both directions.
  int add_undirected(int u, int v, long long cap);
};

struct MaxFlowResult {
  long long flow = 0;                 // at network scale
  std::vector<long long> arc_flow;    // signed flow per arc index
  VSet cut_side;                      // network vertices residual-reachable from source
};

// Exact Dinic. Deterministic given the arc insertion order.
MaxFlowResult max_flow_min_cut(FlowNetwork &net);

// Standard vertex splitting: v_in -> v_out carries the vertex capacity,
// original edges become effectively unbounded arcs between out/in nodes.
// Rational capacities are scaled through the returned network's scale.
struct VertexCapacitatedNetwork {
  FlowNetwork net;
  std::vector<int> in_node, out_node;  // per original vertex
  std::vector<int> split_arc;          // arc index of v_in -> v_out
};
VertexCapacitatedNetwork vertex_capacitated(const Graph &g, const std::vector<Rat> &caps);

// One matched pair plus the routing path that realizes it (host graph ids).
struct MatchedPair {
  int a, b;
  std::vector<int> path;  // a ... b
};
using Matching = std::vector<MatchedPair>;

// Flow-path decomposition of a saturating p1 -> p2 flow into a perfect
// matching. The network must connect a super-source to p1 and p2 to a
// super-sink with unit capacities at scale 1.
Matching extract_matching(const FlowNetwork &net, const MaxFlowResult &result, const VSet &p1,
                          const VSet &p2);

// Weighted demand between two host vertices, with an optional witness path.
struct Demand {
  int u, v;
  long long amount = 1;
  std::vector<int> path;  // empty: route via max-flow; else: verify this path
};

struct EmbeddingCheck {
  bool feasible = false;
  Rat congestion{0};                       // max per-unit-capacity load actually used
  std::vector<long long> edge_load;        // aligned with g.edges
};

// Per-demand single-commodity feasibility at congestion c, composed
// additively over the demand list: each demand must be routable on top of
// the load left by the previous ones with per-edge load <= c * multiplicity.
EmbeddingCheck verify_embedding(const Graph &g, const std::vector<Demand> &demands,
                                const Rat &congestion);

// DIMACS max-flow dump for cross-checking against external solvers.
void write_dimacs(std::ostream &os, const FlowNetwork &net);

}  // namespace parcut
