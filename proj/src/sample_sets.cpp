#include "parcut/sample_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace parcut {
namespace sample {

namespace {

long long rat_floor(const Rat &r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() < 0 && r.numerator() % r.denominator() != 0) --q;
  return q;
}

}  // namespace

long long SampleSet::total_weight() const {
  return std::accumulate(weight.begin(), weight.end(), 0LL);
}

long long SampleSet::weight_in(const VSet &w) const {
  long long total = 0;
  for (size_t i = 0; i < terminals.size(); ++i)
    if (vset_contains(w, terminals[i])) total += weight[i];
  return total;
}

SteinerDecomposition steiner_decomposition(const Graph &g, const Rat &t,
                                           const std::vector<long long> *mu) {
  if (!g.is_connected()) throw SampleSetError("decomposition requires a connected graph");
  if (t < Rat(1) || t > Rat(g.n)) throw SampleSetError("t out of range [1, n]");
  auto measure = [&](int v) -> long long { return mu ? (*mu)[v] : 1; };
  for (int v = 0; v < g.n; ++v)
    if (Rat(measure(v)) > t) throw SampleSetError("vertex measure exceeds t");

  // rooted spanning tree, children in ascending id order
  auto adj = g.adjacency();
  for (auto &list : adj) std::sort(list.begin(), list.end());
  std::vector<int> parent(g.n, -1), order;
  std::vector<char> seen(g.n, 0);
  {
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto [w, m] : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          stack.push_back(w);
        }
    }
  }
  std::vector<std::vector<int>> children(g.n);
  for (int v = 0; v < g.n; ++v)
    if (parent[v] >= 0) children[parent[v]].push_back(v);
  for (auto &c : children) std::sort(c.begin(), c.end());

  struct Piece {
    VSet verts;
    std::vector<Graph::Edge> edges;
    long long measure = 0;
  };
  std::vector<Piece> residual(g.n);
  SteinerDecomposition out;
  out.t = t;

  auto emit = [&](Piece &&p, int connector) {
    std::sort(p.verts.begin(), p.verts.end());
    out.bags.push_back(std::move(p.verts));
    out.bag_edges.push_back(std::move(p.edges));
    out.connector.push_back(connector);
  };

  // bottom-up over the reverse DFS order
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    Piece acc;
    for (int c : children[v]) {
      Piece &rc = residual[c];
      if (rc.verts.empty()) continue;  // subtree fully emitted; tree edge joins E'
      acc.verts.insert(acc.verts.end(), rc.verts.begin(), rc.verts.end());
      acc.edges.insert(acc.edges.end(), rc.edges.begin(), rc.edges.end());
      acc.measure += rc.measure;
      acc.edges.push_back({std::min(v, c), std::max(v, c), 1});
      rc = Piece{};
      if (Rat(acc.measure) >= t) {
        emit(std::move(acc), v);
        acc = Piece{};
      }
    }
    acc.verts.push_back(v);
    acc.measure += measure(v);
    if (Rat(acc.measure) >= t) {
      emit(std::move(acc), -1);
      residual[v] = Piece{};
    } else {
      residual[v] = std::move(acc);
    }
  }
  if (!residual[0].verts.empty()) {
    // the one bag allowed to stay below t goes first
    Piece &r = residual[0];
    std::sort(r.verts.begin(), r.verts.end());
    out.bags.insert(out.bags.begin(), r.verts);
    out.bag_edges.insert(out.bag_edges.begin(), r.edges);
    out.connector.insert(out.connector.begin(), -1);
  }

  // leftover: everything not assigned to a bag edge set
  std::vector<long long> used(g.edges.size(), 0);
  auto edge_slot = [&](int u, int v) -> int {
    for (size_t i = 0; i < g.edges.size(); ++i)
      if (g.edges[i].u == u && g.edges[i].v == v) return static_cast<int>(i);
    return -1;
  };
  for (auto &edges : out.bag_edges)
    for (auto &e : edges) {
      int slot = edge_slot(e.u, e.v);
      if (slot >= 0) used[slot] += 1;
    }
  for (size_t i = 0; i < g.edges.size(); ++i) {
    long long rest = g.edges[i].mult - used[i];
    if (rest > 0) out.leftover.push_back({g.edges[i].u, g.edges[i].v, rest});
  }
  return out;
}

SampleSet edge_sample_set(const Graph &g, const Rat &eps, const Rat &phi,
                          const SampleConfig &cfg) {
  if (eps <= Rat(0) || eps >= Rat(1)) throw SampleSetError("eps must lie in (0, 1)");
  if (phi <= Rat(0)) throw SampleSetError("phi must be positive");
  SampleSet ss;
  ss.eps = eps;
  ss.eps_effective = 4 * eps;
  ss.phi = phi;
  if (eps >= Rat(1, 100)) ss.note = "eps above analyzed range; ";

  auto fallback = [&](const std::string &why) {
    ss.kind = SampleKind::Fallback;
    ss.terminals = vset_complement(g.n, {});
    ss.weight.assign(g.n, 1);
    ss.note += why;
    return ss;
  };

  if (Rat(cfg.size_constant) * phi >= eps * eps)
    return fallback("size formula reaches n (phi >= eps^2/d)");

  Rat t = eps / (100 * phi);
  if (t > eps * g.n / 4) return fallback("t exceeds the decomposition range for this n");

  auto dec = steiner_decomposition(g, t);
  bool capped = false;
  for (size_t i = 1; i < dec.bags.size(); ++i) {
    const VSet &bag = dec.bags[i];
    long long quota = rat_floor(Rat(static_cast<long long>(bag.size())) / (t * eps));
    if (quota > static_cast<long long>(bag.size())) {
      quota = static_cast<long long>(bag.size());
      capped = true;
    }
    for (long long j = 0; j < quota; ++j) ss.terminals.push_back(bag[j]);
  }
  std::sort(ss.terminals.begin(), ss.terminals.end());
  ss.weight.assign(ss.terminals.size(), 1);
  ss.kind = SampleKind::Edge;
  if (capped) ss.note += "bag quota capped at bag size; ";
  if (ss.terminals.empty()) return fallback("construction yielded no terminals");

  if (!capped) {
    // |T| in [(1-2eps) n/(t eps), n/(t eps)], exactly
    Rat size(static_cast<long long>(ss.terminals.size()));
    Rat lower = (Rat(1) - 2 * eps) * g.n / (t * eps);
    Rat upper = Rat(g.n) / (t * eps);
    if (size < lower || size > upper)
      throw SampleSetError("terminal count outside the guaranteed range");
  }
  return ss;
}

SampleSet weighted_sample_set(const Graph &g, const std::vector<long long> &mu, const Rat &eps,
                              const Rat &phi, const SampleConfig &cfg) {
  if (static_cast<int>(mu.size()) != g.n) throw SampleSetError("measure size mismatch");
  if (eps <= Rat(0) || eps >= Rat(1)) throw SampleSetError("eps must lie in (0, 1)");
  if (phi <= Rat(0)) throw SampleSetError("phi must be positive");
  long long K = std::accumulate(mu.begin(), mu.end(), 0LL);
  if (K < 1) throw SampleSetError("total measure must be >= 1");
  for (long long m : mu)
    if (m < 0) throw SampleSetError("measure must be nonnegative");

  SampleSet ss;
  ss.eps = eps;
  ss.eps_effective = 4 * eps;
  ss.phi = phi;
  ss.kind = SampleKind::Weighted;

  auto identity_fallback = [&](const std::string &why) {
    ss.terminals.clear();
    ss.weight.clear();
    for (int v = 0; v < g.n; ++v)
      if (mu[v] >= 1) {
        ss.terminals.push_back(v);
        ss.weight.push_back(mu[v]);
      }
    ss.note += why;
    return ss;
  };

  if (Rat(cfg.size_constant) * phi >= eps * eps)
    return identity_fallback("identity fallback: size formula reaches the total measure");
  Rat t = eps / (100 * phi);
  if (t > eps * K / 4 || t > Rat(g.n))
    return identity_fallback("identity fallback: t exceeds the decomposition range");

  std::vector<long long> mu_rest = mu;
  std::vector<std::pair<int, long long>> picked;  // (vertex, alpha)
  for (int v = 0; v < g.n; ++v)
    if (Rat(mu[v]) > t) {
      picked.push_back({v, rat_floor(Rat(mu[v]) / (t * eps))});
      mu_rest[v] = 0;
    }
  long long rest_total = std::accumulate(mu_rest.begin(), mu_rest.end(), 0LL);
  bool capped = false;
  if (rest_total > 0) {
    auto dec = steiner_decomposition(g, t, &mu_rest);
    for (size_t i = 1; i < dec.bags.size(); ++i) {
      long long bag_measure = 0;
      for (int v : dec.bags[i]) bag_measure += mu_rest[v];
      if (bag_measure == 0) continue;
      long long alpha = rat_floor(Rat(bag_measure) / (t * eps));
      if (alpha < 1) {
        capped = true;
        alpha = 1;
      }
      picked.push_back({dec.bags[i].front(), alpha});
    }
  }
  std::sort(picked.begin(), picked.end());
  for (auto [v, a] : picked) {
    ss.terminals.push_back(v);
    ss.weight.push_back(a);
  }
  if (ss.terminals.empty()) return identity_fallback("identity fallback: no terminals produced");
  if (capped) ss.note += "bag weight clamped to 1; ";

  if (!capped) {
    Rat total(ss.total_weight());
    Rat lower = (Rat(1) - 2 * eps) * K / (t * eps);
    Rat upper = Rat(K) / (t * eps);
    if (total < lower || total > upper)
      throw SampleSetError("terminal weight outside the guaranteed range");
  }
  return ss;
}

SampleSet vertex_sample_set(const Graph &g, const Rat &eps, const Rat &phi, std::uint64_t seed,
                            const SampleConfig &cfg) {
  if (eps <= Rat(0) || eps >= Rat(1)) throw SampleSetError("eps must lie in (0, 1)");
  if (phi <= Rat(0) || phi >= Rat(1, 2)) throw SampleSetError("phi must lie in (0, 1/2)");
  SampleSet ss;
  ss.eps = eps;
  ss.eps_effective = 20 * eps;
  ss.phi = phi;
  double e = rat_double(eps), p = rat_double(phi);
  double raw = cfg.vertex_constant * (g.n * p / (e * e)) *
               std::max(1.0, std::log(g.n * p / (e * e * e)));
  long long size = static_cast<long long>(std::ceil(raw));
  if (size >= g.n) {
    ss.kind = SampleKind::Fallback;
    ss.terminals = vset_complement(g.n, {});
    ss.weight.assign(g.n, 1);
    ss.note = "requested size reaches n";
    return ss;
  }
  std::vector<int> ids(g.n);
  std::iota(ids.begin(), ids.end(), 0);
  std::mt19937_64 rng(seed);
  for (long long i = 0; i < size; ++i) {
    long long j = i + static_cast<long long>(rng() % static_cast<std::uint64_t>(g.n - i));
    std::swap(ids[i], ids[j]);
  }
  ss.terminals.assign(ids.begin(), ids.begin() + size);
  std::sort(ss.terminals.begin(), ss.terminals.end());
  ss.weight.assign(ss.terminals.size(), 1);
  ss.kind = SampleKind::Vertex;
  return ss;
}

std::vector<SampleViolation> verify_sample_set(const Graph &g, const SampleSet &ss,
                                               const std::vector<VSet> &family,
                                               const SampleConfig &cfg) {
  bool weighted = ss.kind == SampleKind::Weighted;
  bool vertex = ss.kind == SampleKind::Vertex;
  auto mu_of = [&](const VSet &w) -> long long {
    if (!weighted) return static_cast<long long>(w.size());
    long long total = 0;
    for (int v : w) total += g.weight_of(v);
    return total;
  };
  long long K = weighted ? g.total_weight() : g.n;
  long long alpha_total = ss.total_weight();

  std::vector<SampleViolation> violations;
  for (const VSet &w : family) {
    if (w.empty() || static_cast<int>(w.size()) >= g.n) continue;
    long long mu_w = mu_of(w);
    if (mu_w == 0) continue;

    long long cut;
    long long alpha_w;
    Rat phi_orig, phi_term;
    bool term_finite;
    if (vertex) {
      VSet nb = neighbors(g, w);
      cut = static_cast<long long>(nb.size());
      VSet wn = vset_union(w, nb);
      phi_orig = Rat(cut, mu_of(wn));
      long long denom = ss.weight_in(wn);
      term_finite = denom > 0;
      if (term_finite) phi_term = Rat(cut, denom);
      alpha_w = ss.weight_in(w);
    } else {
      cut = boundary_size(g, w);
      phi_orig = Rat(cut, mu_w);
      alpha_w = ss.weight_in(w);
      term_finite = alpha_w > 0;
      if (term_finite) phi_term = Rat(cut, alpha_w);
    }

    bool qualifies = phi_orig <= ss.phi;
    if (!qualifies && term_finite) {
      // phi_T(W) <= (K / (slack * alpha(T))) * phi
      qualifies = phi_term * Rat(cfg.slack_factor) * Rat(alpha_total) <= Rat(K) * ss.phi;
    }
    if (!qualifies) continue;

    Rat lhs = Rat(K) * Rat(alpha_w) / Rat(alpha_total) - Rat(mu_w);
    if (lhs < Rat(0)) lhs = -lhs;
    Rat rhs = ss.eps_effective * Rat(mu_w);
    if (lhs > rhs) violations.push_back({w, lhs, rhs});
  }
  return violations;
}

std::string serialize_sample_set(const SampleSet &ss) {
  std::ostringstream os;
  for (size_t i = 0; i < ss.terminals.size(); ++i)
    os << "terminal " << ss.terminals[i] << " " << ss.weight[i] << "\n";
  return os.str();
}

}  // namespace sample
}  // namespace parcut
