#include "parcut/flow.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>

namespace parcut {

int FlowNetwork::add_vertex(int orig) {
  out.emplace_back();
  orig_vertex.push_back(orig);
  return n++;
}

int FlowNetwork::add_arc(int u, int v, long long cap, long long rev_cap) {
  int id = static_cast<int>(arcs.size());
  arcs.push_back({v, cap, 0});
  out[u].push_back(id);
  arcs.push_back({u, rev_cap, 0});
  out[v].push_back(id + 1);
  return id;
}

int FlowNetwork::add_undirected(int u, int v, long long cap) {
  return add_arc(u, v, cap, cap);
}

namespace {

struct Dinic {
  FlowNetwork &net;
  std::vector<int> level, iter;

  explicit Dinic(FlowNetwork &n) : net(n), level(n.n), iter(n.n) {}

  bool bfs() {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    q.push(net.source);
    level[net.source] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : net.out[v]) {
        const auto &a = net.arcs[id];
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level[net.sink] >= 0;
  }

  long long dfs(int v, long long limit) {
    if (v == net.sink) return limit;
    for (int &i = iter[v]; i < static_cast<int>(net.out[v].size()); ++i) {
      int id = net.out[v][i];
      auto &a = net.arcs[id];
      if (a.cap > 0 && level[a.to] == level[v] + 1) {
        long long d = dfs(a.to, std::min(limit, a.cap));
        if (d > 0) {
          a.cap -= d;
          a.flow += d;
          net.arcs[id ^ 1].cap += d;
          net.arcs[id ^ 1].flow -= d;
          return d;
        }
      }
    }
    return 0;
  }

  long long run() {
    long long total = 0;
    while (bfs()) {
      std::fill(iter.begin(), iter.end(), 0);
      long long f;
      while ((f = dfs(net.source, std::numeric_limits<long long>::max())) > 0) total += f;
    }
    return total;
  }
};

}  // namespace

MaxFlowResult max_flow_min_cut(FlowNetwork &net) {
  if (net.source < 0 || net.sink < 0 || net.source == net.sink)
    throw FlowError("source and sink must be distinct");
  Dinic dinic(net);
  MaxFlowResult res;
  res.flow = dinic.run();
  res.arc_flow.resize(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i) res.arc_flow[i] = net.arcs[i].flow;
  // min-cut side: residual-reachable from the source
  std::vector<char> seen(net.n, 0);
  std::queue<int> q;
  q.push(net.source);
  seen[net.source] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int id : net.out[v]) {
      const auto &a = net.arcs[id];
      if (a.cap > 0 && !seen[a.to]) {
        seen[a.to] = 1;
        q.push(a.to);
      }
    }
  }
  for (int v = 0; v < net.n; ++v)
    if (seen[v]) res.cut_side.push_back(v);
  return res;
}

VertexCapacitatedNetwork vertex_capacitated(const Graph &g, const std::vector<Rat> &caps) {
  if (static_cast<int>(caps.size()) != g.n) throw FlowError("one capacity per vertex required");
  long long scale = 1;
  for (const Rat &c : caps) {
    if (c <= Rat(0)) throw FlowError("vertex capacities must be positive");
    scale = std::lcm(scale, c.denominator());
  }
  Rat total(0);
  for (const Rat &c : caps) total += c;
  long long big = (total * scale).numerator() / (total * scale).denominator() + scale;

  VertexCapacitatedNetwork out;
  out.net = FlowNetwork(0);
  out.net.scale = scale;
  out.in_node.resize(g.n);
  out.out_node.resize(g.n);
  out.split_arc.resize(g.n);
  for (int v = 0; v < g.n; ++v) {
    out.in_node[v] = out.net.add_vertex(v);
    out.out_node[v] = out.net.add_vertex(v);
  }
  for (int v = 0; v < g.n; ++v) {
    Rat c = caps[v] * scale;
    out.split_arc[v] = out.net.add_arc(out.in_node[v], out.out_node[v], c.numerator());
  }
  for (const Graph::Edge &e : g.edges) {
    if (e.u == e.v) continue;
    out.net.add_arc(out.out_node[e.u], out.in_node[e.v], big);
    out.net.add_arc(out.out_node[e.v], out.in_node[e.u], big);
  }
  return out;
}

Matching extract_matching(const FlowNetwork &net, const MaxFlowResult &result, const VSet &p1,
                          const VSet &p2) {
  if (p1.size() != p2.size()) throw FlowError("matching sides must have equal size");
  // Units of remaining decomposable flow per arc.
  std::vector<long long> rem(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i) rem[i] = std::max<long long>(result.arc_flow[i], 0);

  std::vector<std::pair<int, int>> source_arcs;  // (arc id, network vertex of p1 member)
  for (int id : net.out[net.source]) {
    const auto &a = net.arcs[id];
    long long orig_cap = a.cap + a.flow;
    if (orig_cap <= 0) continue;
    if (orig_cap != 1) throw FlowError("matching extraction requires unit source capacities");
    source_arcs.push_back({id, a.to});
  }
  long long saturated = 0;
  for (auto [id, x] : source_arcs) saturated += result.arc_flow[id];
  if (saturated != static_cast<long long>(p1.size()))
    throw FlowError("not a matching: flow does not saturate the left side");

  Matching matching;
  for (auto [src_arc, x] : source_arcs) {
    if (result.arc_flow[src_arc] <= 0) continue;
    rem[src_arc] -= 1;
    // Walk one unit from x to the sink, cancelling flow cycles on the way.
    std::vector<int> arc_path;
    std::vector<int> pos(net.n, -1);
    pos[x] = 0;
    int cur = x;
    while (cur != net.sink) {
      int chosen = -1;
      for (int id : net.out[cur])
        if (rem[id] > 0) {
          chosen = id;
          break;
        }
      if (chosen < 0) throw FlowError("flow decomposition failed: conservation violated");
      int nxt = net.arcs[chosen].to;
      if (nxt != net.sink && pos[nxt] >= 0) {
        rem[chosen] -= 1;
        for (int i = pos[nxt]; i < static_cast<int>(arc_path.size()); ++i) {
          rem[arc_path[i]] -= 1;
          pos[net.arcs[arc_path[i]].to] = -1;
        }
        arc_path.resize(pos[nxt]);
        cur = nxt;
      } else {
        arc_path.push_back(chosen);
        pos[nxt] = static_cast<int>(arc_path.size());
        cur = nxt;
      }
    }
    for (int id : arc_path) rem[id] -= 1;

    MatchedPair mp;
    mp.a = net.orig_vertex[x];
    std::vector<int> hosts;
    hosts.push_back(mp.a);
    for (int id : arc_path) {
      int h = net.orig_vertex[net.arcs[id].to];
      if (h >= 0 && (hosts.empty() || hosts.back() != h)) hosts.push_back(h);
    }
    if (hosts.empty()) throw FlowError("flow path touches no host vertices");
    mp.b = hosts.back();
    mp.path = std::move(hosts);
    matching.push_back(mp);
  }

  // Perfect-matching sanity on both sides.
  VSet left, right;
  for (const auto &mp : matching) {
    left.push_back(mp.a);
    right.push_back(mp.b);
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  if (left != p1 || right != p2) throw FlowError("not a matching: decomposition does not cover the sides");
  return matching;
}

EmbeddingCheck verify_embedding(const Graph &g, const std::vector<Demand> &demands,
                                const Rat &congestion) {
  EmbeddingCheck check;
  check.edge_load.assign(g.edges.size(), 0);
  if (congestion <= Rat(0)) return check;

  std::map<std::pair<int, int>, int> edge_index;
  for (size_t i = 0; i < g.edges.size(); ++i)
    edge_index[{g.edges[i].u, g.edges[i].v}] = static_cast<int>(i);

  long long den = congestion.denominator();
  // residual capacity per edge at scale `den`: congestion * mult * den
  std::vector<long long> residual(g.edges.size());
  for (size_t i = 0; i < g.edges.size(); ++i)
    residual[i] = congestion.numerator() * g.edges[i].mult;

  bool ok = true;
  for (const Demand &d : demands) {
    long long units = d.amount * den;
    if (d.u == d.v) continue;
    if (!d.path.empty()) {
      if (d.path.front() != d.u || d.path.back() != d.v) {
        ok = false;
        continue;
      }
      for (size_t i = 0; i + 1 < d.path.size(); ++i) {
        int a = std::min(d.path[i], d.path[i + 1]);
        int b = std::max(d.path[i], d.path[i + 1]);
        auto it = edge_index.find({a, b});
        if (it == edge_index.end()) {
          ok = false;
          break;
        }
        check.edge_load[it->second] += units;
        residual[it->second] -= units;
      }
    } else {
      // Route exactly `units` on the residual capacities left by earlier
      // demands; a throttling source arc keeps the charge at the demand.
      FlowNetwork net(g.n);
      std::vector<int> first_arc(g.edges.size(), -1);
      for (size_t i = 0; i < g.edges.size(); ++i)
        if (g.edges[i].u != g.edges[i].v)
          first_arc[i] =
              net.add_undirected(g.edges[i].u, g.edges[i].v, std::max<long long>(residual[i], 0));
      int super = net.add_vertex();
      net.add_arc(super, d.u, units);
      net.source = super;
      net.sink = d.v;
      MaxFlowResult r = max_flow_min_cut(net);
      if (r.flow < units) {
        ok = false;
        continue;
      }
      for (size_t i = 0; i < g.edges.size(); ++i) {
        if (first_arc[i] < 0) continue;
        long long used = std::abs(net.arcs[first_arc[i]].flow);
        check.edge_load[i] += used;
        residual[i] -= used;
      }
    }
  }
  for (size_t i = 0; i < g.edges.size(); ++i)
    if (check.edge_load[i] > congestion.numerator() * g.edges[i].mult) ok = false;
  check.feasible = ok;
  Rat worst(0);
  for (size_t i = 0; i < g.edges.size(); ++i) {
    Rat c(check.edge_load[i], den * g.edges[i].mult);
    worst = std::max(worst, c);
  }
  check.congestion = worst;
  return check;
}

void write_dimacs(std::ostream &os, const FlowNetwork &net) {
  size_t m = 0;
  for (size_t i = 0; i < net.arcs.size(); i += 2)
    if (net.arcs[i].cap + net.arcs[i].flow > 0) ++m;
  os << "c parcut flow network dump (scale " << net.scale << ")\n";
  os << "p max " << net.n << " " << m << "\n";
  os << "n " << net.source + 1 << " s\n";
  os << "n " << net.sink + 1 << " t\n";
  for (size_t i = 0; i < net.arcs.size(); i += 2) {
    long long cap = net.arcs[i].cap + net.arcs[i].flow;
    if (cap <= 0) continue;
    int from = net.arcs[i ^ 1].to;
    os << "a " << from + 1 << " " << net.arcs[i].to + 1 << " " << cap << "\n";
  }
}

}  // namespace parcut
