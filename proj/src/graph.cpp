#include "parcut/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace parcut {

void Graph::add_edge(int u, int v, long long mult) {
  if (u < 0 || u >= n || v < 0 || v >= n) throw GraphError("edge endpoint out of range");
  if (mult < 1) throw GraphError("edge multiplicity must be >= 1");
  if (u > v) std::swap(u, v);
  edges.push_back({u, v, mult});
}

void Graph::finalize() {
  std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  std::vector<Edge> merged;
  for (const Edge &e : edges) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
      merged.back().mult += e.mult;
    else
      merged.push_back(e);
  }
  edges = std::move(merged);
  if (!weights.empty() && static_cast<int>(weights.size()) != n)
    throw GraphError("weight vector size mismatch");
  for (long long w : weights)
    if (w < 0) throw GraphError("negative vertex weight");
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  for (int t : terminals)
    if (t < 0 || t >= n) throw GraphError("terminal id out of range");
}

long long Graph::total_weight() const {
  if (weights.empty()) return n;
  return std::accumulate(weights.begin(), weights.end(), 0LL);
}

long long Graph::edge_count() const {
  long long m = 0;
  for (const Edge &e : edges) m += e.mult;
  return m;
}

long long Graph::degree(int v) const {
  long long d = 0;
  for (const Edge &e : edges) {
    if (e.u == v && e.v == v)
      d += 2 * e.mult;
    else if (e.u == v || e.v == v)
      d += e.mult;
  }
  return d;
}

long long Graph::max_degree() const {
  std::vector<long long> deg(n, 0);
  for (const Edge &e : edges) {
    if (e.u == e.v) {
      deg[e.u] += 2 * e.mult;
    } else {
      deg[e.u] += e.mult;
      deg[e.v] += e.mult;
    }
  }
  long long mx = 0;
  for (long long d : deg) mx = std::max(mx, d);
  return mx;
}

std::vector<std::vector<std::pair<int, long long>>> Graph::adjacency() const {
  std::vector<std::vector<std::pair<int, long long>>> adj(n);
  for (const Edge &e : edges) {
    if (e.u == e.v) continue;
    adj[e.u].push_back({e.v, e.mult});
    adj[e.v].push_back({e.u, e.mult});
  }
  return adj;
}

bool Graph::is_connected() const {
  if (n == 0) return true;
  auto adj = adjacency();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [w, m] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++cnt;
        stack.push_back(w);
      }
  }
  return cnt == n;
}

// --- set helpers ---------------------------------------------------------

VSet vset_complement(int n, const VSet &s) {
  VSet out;
  out.reserve(n - s.size());
  size_t i = 0;
  for (int v = 0; v < n; ++v) {
    if (i < s.size() && s[i] == v)
      ++i;
    else
      out.push_back(v);
  }
  return out;
}

VSet vset_union(const VSet &a, const VSet &b) {
  VSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VSet vset_intersect(const VSet &a, const VSet &b) {
  VSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VSet vset_minus(const VSet &a, const VSet &b) {
  VSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool vset_contains(const VSet &s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

// --- cut metrics ---------------------------------------------------------

namespace {

std::vector<char> side_mask(const Graph &g, const VSet &s) {
  std::vector<char> in(g.n, 0);
  for (int v : s) {
    if (v < 0 || v >= g.n) throw InvalidCutError("cut side contains invalid vertex id");
    in[v] = 1;
  }
  return in;
}

void check_proper(const Graph &g, const VSet &s) {
  if (s.empty() || static_cast<int>(s.size()) >= g.n)
    throw InvalidCutError("cut side must be nonempty and proper");
}

}  // namespace

std::vector<Graph::Edge> edge_boundary(const Graph &g, const VSet &s) {
  check_proper(g, s);
  auto in = side_mask(g, s);
  std::vector<Graph::Edge> out;
  for (const Graph::Edge &e : g.edges) {
    if (e.u == e.v) continue;  // self-loops never cross
    if (in[e.u] != in[e.v]) out.push_back(e);
  }
  return out;
}

long long boundary_size(const Graph &g, const VSet &s) {
  long long b = 0;
  for (const auto &e : edge_boundary(g, s)) b += e.mult;
  return b;
}

Rat sparsity(const Graph &g, const VSet &s) {
  check_proper(g, s);
  long long b = boundary_size(g, s);
  long long small = std::min<long long>(s.size(), g.n - s.size());
  return Rat(b, small);
}

long long volume(const Graph &g, const VSet &s) {
  auto in = side_mask(g, s);
  long long vol = 0;
  for (const Graph::Edge &e : g.edges) {
    if (e.u == e.v) {
      if (in[e.u]) vol += 2 * e.mult;
    } else {
      if (in[e.u]) vol += e.mult;
      if (in[e.v]) vol += e.mult;
    }
  }
  return vol;
}

Rat conductance(const Graph &g, const VSet &s) {
  check_proper(g, s);
  if (g.edge_count() == 0) throw GraphError("conductance needs at least one edge");
  long long b = boundary_size(g, s);
  long long vs = volume(g, s);
  long long vc = volume(g, vset_complement(g.n, s));
  long long vmin = std::min(vs, vc);
  if (vmin == 0) throw GraphError("undefined conductance: zero-volume side");
  return Rat(b, vmin);
}

ExtRat terminal_sparsity(const Graph &g, const VSet &t, const VSet &s) {
  check_proper(g, s);
  if (t.empty()) throw GraphError("terminal set must be nonempty");
  long long b = boundary_size(g, s);
  long long ts = vset_intersect(s, t).size();
  long long tc = t.size() - ts;
  long long denom = std::min(ts, tc);
  if (denom == 0) return ExtRat::infinity();
  return ExtRat(Rat(b, denom));
}

Rat vertex_sparsity(const Graph &g, const VertexCut &c) {
  (void)g;
  long long cs = c.separator.size();
  long long small = std::min(c.left.size(), c.right.size());
  return Rat(cs, cs + small);
}

ExtRat vertex_terminal_sparsity(const Graph &g, const VSet &t, const VertexCut &c) {
  (void)g;
  if (t.empty()) throw GraphError("terminal set must be nonempty");
  long long cs = c.separator.size();
  long long lt = vset_intersect(vset_union(c.left, c.separator), t).size();
  long long rt = vset_intersect(vset_union(c.right, c.separator), t).size();
  long long denom = std::min(lt, rt);
  if (denom == 0) return ExtRat::infinity();
  return ExtRat(Rat(cs, denom));
}

Rat vertex_set_sparsity(const Graph &g, const VSet &l) {
  if (l.empty()) throw InvalidCutError("empty set");
  VSet nb = neighbors(g, l);
  return Rat(nb.size(), l.size() + nb.size());
}

ExtRat vertex_set_terminal_sparsity(const Graph &g, const VSet &t, const VSet &l) {
  if (l.empty()) throw InvalidCutError("empty set");
  VSet nb = neighbors(g, l);
  long long denom = vset_intersect(vset_union(l, nb), t).size();
  if (denom == 0) return ExtRat::infinity();
  return ExtRat(Rat(nb.size(), denom));
}

VSet neighbors(const Graph &g, const VSet &l) {
  std::vector<char> in(g.n, 0), nb(g.n, 0);
  for (int v : l) in[v] = 1;
  for (const Graph::Edge &e : g.edges) {
    if (e.u == e.v) continue;
    if (in[e.u] && !in[e.v]) nb[e.v] = 1;
    if (in[e.v] && !in[e.u]) nb[e.u] = 1;
  }
  VSet out;
  for (int v = 0; v < g.n; ++v)
    if (nb[v]) out.push_back(v);
  return out;
}

InducedSubgraph induced_subgraph(const Graph &g, const VSet &s) {
  if (s.empty()) throw GraphError("induced subgraph of empty set");
  std::vector<int> newid(g.n, -1);
  for (size_t i = 0; i < s.size(); ++i) newid[s[i]] = static_cast<int>(i);
  InducedSubgraph out;
  out.graph = Graph(static_cast<int>(s.size()));
  out.to_original.assign(s.begin(), s.end());
  for (const Graph::Edge &e : g.edges)
    if (newid[e.u] >= 0 && newid[e.v] >= 0)
      out.graph.add_edge(newid[e.u], newid[e.v], e.mult);
  if (!g.weights.empty()) {
    out.graph.weights.resize(s.size());
    for (size_t i = 0; i < s.size(); ++i) out.graph.weights[i] = g.weights[s[i]];
  }
  for (int t : g.terminals)
    if (newid[t] >= 0) out.graph.terminals.push_back(newid[t]);
  out.graph.finalize();
  return out;
}

EdgeCut make_edge_cut(const Graph &g, const VSet &side) {
  EdgeCut c;
  c.side = side;
  std::sort(c.side.begin(), c.side.end());
  c.side.erase(std::unique(c.side.begin(), c.side.end()), c.side.end());
  check_proper(g, c.side);
  c.boundary_size = boundary_size(g, c.side);
  c.sparsity = sparsity(g, c.side);
  if (!g.terminals.empty()) {
    c.terminal_sparsity = terminal_sparsity(g, g.terminals, c.side);
    c.has_terminal_sparsity = true;
  }
  return c;
}

VertexCut make_vertex_cut(const Graph &g, const VSet &left, const VSet &separator,
                          const VSet &right) {
  VertexCut c;
  c.left = left;
  c.separator = separator;
  c.right = right;
  for (auto *s : {&c.left, &c.separator, &c.right}) std::sort(s->begin(), s->end());
  if (c.left.empty() || c.right.empty())
    throw InvalidCutError("vertex cut needs nonempty left and right");
  if (static_cast<long long>(c.left.size() + c.separator.size() + c.right.size()) != g.n)
    throw InvalidCutError("vertex cut parts must partition V");
  if (!vset_intersect(c.left, c.separator).empty() ||
      !vset_intersect(c.left, c.right).empty() ||
      !vset_intersect(c.separator, c.right).empty())
    throw InvalidCutError("vertex cut parts must be disjoint");
  std::vector<char> inl(g.n, 0), inr(g.n, 0);
  for (int v : c.left) inl[v] = 1;
  for (int v : c.right) inr[v] = 1;
  for (const Graph::Edge &e : g.edges)
    if ((inl[e.u] && inr[e.v]) || (inr[e.u] && inl[e.v]))
      throw InvalidCutError("edge joins left and right side of a vertex cut");
  c.sparsity = vertex_sparsity(g, c);
  if (!g.terminals.empty()) {
    c.terminal_sparsity = vertex_terminal_sparsity(g, g.terminals, c);
    c.has_terminal_sparsity = true;
  }
  return c;
}

VertexCut vertex_cut_from_set(const Graph &g, const VSet &l) {
  VSet nb = neighbors(g, l);
  VSet rest = vset_minus(vset_complement(g.n, l), nb);
  return make_vertex_cut(g, l, nb, rest);
}

// --- text format ---------------------------------------------------------

Graph parse_graph(std::istream &in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos && line[0] != '#') return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(1, "missing header");
  std::istringstream hs(line);
  long long n = -1, m = -1, t = 0;
  if (!(hs >> n >> m)) throw ParseError(lineno, "header must be 'n m [t]'");
  hs >> t;
  if (n < 0 || m < 0 || t < 0) throw ParseError(lineno, "negative header field");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw ParseError(lineno + 1, "unexpected end of file in edge list");
    std::istringstream es(line);
    long long u, v, mult = 1;
    if (!(es >> u >> v)) throw ParseError(lineno, "edge line must be 'u v [mult]'");
    es >> mult;
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(lineno, "edge endpoint out of range");
    if (mult < 1) throw ParseError(lineno, "edge multiplicity must be >= 1");
    if (u == v) throw ParseError(lineno, "self-loops are not allowed in input graphs");
    g.add_edge(static_cast<int>(u), static_cast<int>(v), mult);
  }
  bool any_weight = false;
  std::vector<long long> w(n, 0);
  for (long long i = 0; i < t; ++i) {
    if (!next_line()) throw ParseError(lineno + 1, "unexpected end of file in terminal list");
    std::istringstream ts(line);
    std::string kw;
    long long v, weight = 1;
    if (!(ts >> kw >> v) || kw != "terminal")
      throw ParseError(lineno, "terminal line must be 'terminal v [weight]'");
    if (ts >> weight) any_weight = true;
    if (v < 0 || v >= n) throw ParseError(lineno, "terminal id out of range");
    if (weight < 1) throw ParseError(lineno, "terminal weight must be >= 1");
    g.terminals.push_back(static_cast<int>(v));
    w[v] = weight;
  }
  if (any_weight) g.weights = std::move(w);
  try {
    g.finalize();
  } catch (const GraphError &e) {
    throw ParseError(lineno, e.what());
  }
  return g;
}

Graph parse_graph_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file: " + path);
  return parse_graph(in);
}

std::string serialize_graph(const Graph &g) {
  std::ostringstream os;
  os << g.n << " " << g.edges.size() << " " << g.terminals.size() << "\n";
  for (const Graph::Edge &e : g.edges) {
    os << e.u << " " << e.v;
    if (e.mult != 1) os << " " << e.mult;
    os << "\n";
  }
  for (int t : g.terminals) {
    os << "terminal " << t;
    if (g.has_weights() && g.weights[t] != 1) os << " " << g.weights[t];
    os << "\n";
  }
  return os.str();
}

}  // namespace parcut
