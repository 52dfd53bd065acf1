#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "parcut/rational.hpp"

namespace parcut {

// Sorted, duplicate-free vertex id list.
using VSet = std::vector<int>;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidCutError : GraphError {
  using GraphError::GraphError;
};
struct ParseError : GraphError {
  int line;
  ParseError(int line_, const std::string &msg)
      : GraphError("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Undirected multigraph. Parallel edges carry a multiplicity; self-loops are
// legal only as internal padding in game graphs (they never count toward any
// boundary and add 2 to volume).
struct Graph {
  struct Edge {
    int u, v;  // canonical u <= v
    long long mult = 1;
  };

  int n = 0;
  std::vector<Edge> edges;           // sorted by (u, v) once finalized
  std::vector<long long> weights;    // per-vertex measure; empty when absent
  VSet terminals;                    // sorted; empty when absent

  Graph() = default;
  explicit Graph(int n_) : n(n_) {}

  void add_edge(int u, int v, long long mult = 1);
  // Sorts and merges parallel entries; validates invariants.
  void finalize();

  bool has_weights() const { return !weights.empty(); }
  long long weight_of(int v) const { return weights.empty() ? 1 : weights[v]; }
  long long total_weight() const;

  long long edge_count() const;               // with multiplicity, loops included
  long long degree(int v) const;              // loops add 2
  long long max_degree() const;
  std::vector<std::vector<std::pair<int, long long>>> adjacency() const;  // loops excluded

  bool is_connected() const;
};

// --- cut objects ---------------------------------------------------------

struct EdgeCut {
  VSet side;
  long long boundary_size = 0;
  Rat sparsity{0};
  ExtRat terminal_sparsity;  // set when the host graph carries terminals
  bool has_terminal_sparsity = false;
};

struct VertexCut {
  VSet left, separator, right;
  Rat sparsity{0};
  ExtRat terminal_sparsity;
  bool has_terminal_sparsity = false;
};

// --- operations ----------------------------------------------------------

// Every edge with exactly one endpoint in s, with multiplicity. Errors on an
// empty or full side.
std::vector<Graph::Edge> edge_boundary(const Graph &g, const VSet &s);
long long boundary_size(const Graph &g, const VSet &s);

Rat sparsity(const Graph &g, const VSet &s);
Rat conductance(const Graph &g, const VSet &s);
long long volume(const Graph &g, const VSet &s);

ExtRat terminal_sparsity(const Graph &g, const VSet &t, const VSet &s);

Rat vertex_sparsity(const Graph &g, const VertexCut &c);
ExtRat vertex_terminal_sparsity(const Graph &g, const VSet &t, const VertexCut &c);

// Vertex sparsity of a set L: |N(L)| / |L u N(L)|. Distinct from the cut
// version; the two coincide only when C = N(L) and R is everything else.
Rat vertex_set_sparsity(const Graph &g, const VSet &l);
ExtRat vertex_set_terminal_sparsity(const Graph &g, const VSet &t, const VSet &l);

VSet neighbors(const Graph &g, const VSet &l);

struct InducedSubgraph {
  Graph graph;
  std::vector<int> to_original;  // new id -> original id
};
InducedSubgraph induced_subgraph(const Graph &g, const VSet &s);

// Constructors validate the cut invariants and fill in the derived metrics.
EdgeCut make_edge_cut(const Graph &g, const VSet &side);
VertexCut make_vertex_cut(const Graph &g, const VSet &left, const VSet &separator,
                          const VSet &right);
// Builds (l, N(l), rest); errors when the rest is empty.
VertexCut vertex_cut_from_set(const Graph &g, const VSet &l);

// --- set helpers ---------------------------------------------------------

VSet vset_complement(int n, const VSet &s);
VSet vset_union(const VSet &a, const VSet &b);
VSet vset_intersect(const VSet &a, const VSet &b);
VSet vset_minus(const VSet &a, const VSet &b);
bool vset_contains(const VSet &s, int v);

// --- text format ---------------------------------------------------------
//
//   n m [t]
//   u v [mult]        (m lines)
//   terminal v [w]    (t lines)
//
// Serialization is deterministic: edges sorted by (u, v), terminals sorted.
Graph parse_graph(std::istream &in);
Graph parse_graph_file(const std::string &path);
std::string serialize_graph(const Graph &g);

}  // namespace parcut
