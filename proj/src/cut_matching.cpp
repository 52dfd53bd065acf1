#include "parcut/cut_matching.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "parcut/oracle.hpp"

namespace parcut {
namespace cm {

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

// 1/phi floored to a unit fraction: capacities stay integral and the flow
// path decomposition yields one unit per matched terminal
Rat unit_fraction_floor(const Rat &phi) {
  if (phi <= Rat(0)) throw GameError("phi must be positive");
  long long inv = ceil_div(phi.denominator(), phi.numerator());
  return Rat(1, inv);
}

struct CutScan {
  bool any = false;
  long long min_side = -1;
  Rat cond{0};
  VSet side;
};

void offer_cut(CutScan &best, const Graph &h, const VSet &side, long long vol_s,
               long long vol_total, long long bnd) {
  long long small_vertices = std::min<long long>(side.size(), h.n - side.size());
  long long vmin = std::min(vol_s, vol_total - vol_s);
  Rat cond = (bnd == 0) ? Rat(0) : Rat(bnd, std::max<long long>(vmin, 1));
  if (!best.any || small_vertices > best.min_side ||
      (small_vertices == best.min_side && cond < best.cond)) {
    best.any = true;
    best.min_side = small_vertices;
    best.cond = cond;
    best.side = side;
  }
}

}  // namespace

BalancedCutResult balanced_sparse_cut(const Graph &h, const Rat &b, const Rat &psi,
                                      bool heuristic, int exact_bound) {
  if (h.n < 2) throw GameError("balanced cut needs n >= 2");
  const long long vol_total = volume(h, vset_complement(h.n, {}));

  auto scan_family = [&](const std::vector<VSet> &family) {
    CutScan best;
    for (const VSet &side : family) {
      if (side.empty() || static_cast<int>(side.size()) >= h.n) continue;
      long long bnd = boundary_size(h, side);
      long long vol_s = volume(h, side);
      long long vmin = std::min(vol_s, vol_total - vol_s);
      Rat cond = (bnd == 0) ? Rat(0) : Rat(bnd, std::max<long long>(vmin, 1));
      if (bnd != 0 && vmin == 0) continue;  // boundary without volume cannot happen
      if (cond <= psi) offer_cut(best, h, side, vol_s, vol_total, bnd);
    }
    return best;
  };

  CutScan best;
  if (!heuristic) {
    if (h.n > exact_bound) throw GameError("graph too large for exact balanced cut search");
    std::vector<VSet> family;
    family.reserve(1u << (h.n - 1));
    for (unsigned mask = 1; mask < (1u << (h.n - 1)); ++mask) {
      VSet side;
      for (int v = 1; v < h.n; ++v)
        if (mask >> (v - 1) & 1) side.push_back(v);
      family.push_back(std::move(side));
    }
    best = scan_family(family);
  } else {
    // spectral sweep over the second Laplacian eigenvector
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(h.n, h.n);
    for (const Graph::Edge &e : h.edges) {
      if (e.u == e.v) continue;
      lap(e.u, e.v) -= e.mult;
      lap(e.v, e.u) -= e.mult;
      lap(e.u, e.u) += e.mult;
      lap(e.v, e.v) += e.mult;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    Eigen::VectorXd fiedler = es.eigenvectors().col(std::min(1, h.n - 1));
    std::vector<int> order(h.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int bb) {
      if (fiedler[a] != fiedler[bb]) return fiedler[a] < fiedler[bb];
      return a < bb;
    });
    std::vector<VSet> family;
    VSet prefix;
    for (int i = 0; i + 1 < h.n; ++i) {
      prefix.push_back(order[i]);
      VSet side = prefix;
      std::sort(side.begin(), side.end());
      family.push_back(side);
    }
    best = scan_family(family);
  }

  BalancedCutResult out;
  if (!best.any) {
    out.balanced = false;  // OverlapSet(empty): no qualifying cut at all
    return out;
  }
  // canonical side: the smaller one; ties go to the side containing vertex 0
  VSet side = best.side;
  VSet comp = vset_complement(h.n, side);
  if (comp.size() < side.size() || (comp.size() == side.size() && vset_contains(comp, 0)))
    side.swap(comp);
  // b/4-balanced: min side >= (b/4) n
  if (Rat(best.min_side) * 4 >= b * h.n) {
    out.balanced = true;
    out.w = side;
  } else {
    out.balanced = false;
    out.overlap = side;
  }
  out.conductance = best.cond;
  return out;
}

ImproveCutResult improve_cut(const Graph &h, const VSet &w, long long rho,
                             const Rat &precondition_sparsity, const Rat &balance_floor) {
  if (w.empty() || static_cast<int>(w.size()) >= h.n)
    throw PreconditionError("improve_cut needs a proper cut side");
  long long min_side = std::min<long long>(w.size(), h.n - w.size());
  if (Rat(min_side) * 4 < balance_floor * h.n)
    throw PreconditionError("improve_cut input is not balanced enough: min side " +
                            std::to_string(min_side));
  Rat spars = sparsity(h, w);
  if (spars > precondition_sparsity)
    throw PreconditionError("improve_cut input too dense: sparsity " + rat_str(spars));

  const long long scale = rho * rho;
  auto boundary = edge_boundary(h, w);
  std::vector<char> in_w(h.n, 0);
  for (int v : w) in_w[v] = 1;

  FlowNetwork net(0);
  net.scale = scale;
  std::vector<int> node(h.n, -1);
  for (int v : w) node[v] = net.add_vertex(v);
  int s = net.add_vertex(), t = net.add_vertex();
  net.source = s;
  net.sink = t;
  long long boundary_w = 0;
  for (const auto &e : boundary) {
    boundary_w += e.mult;
    int inside = in_w[e.u] ? e.u : e.v;
    int xe = net.add_vertex();
    net.add_arc(s, xe, e.mult * scale);
    net.add_arc(xe, node[inside], e.mult * scale);
  }
  for (const Graph::Edge &e : h.edges) {
    if (e.u == e.v) continue;
    if (in_w[e.u] && in_w[e.v]) net.add_undirected(node[e.u], node[e.v], e.mult * scale);
  }
  for (int v : w) net.add_arc(node[v], t, 1);  // 1/rho^2 at scale rho^2

  auto mf = max_flow_min_cut(net);
  std::vector<char> reach(net.n, 0);
  for (int v : mf.cut_side) reach[v] = 1;
  VSet removed, q;
  for (int v : w)
    if (reach[node[v]])
      removed.push_back(v);
    else
      q.push_back(v);

  ImproveCutResult res;
  res.flow = mf.flow;
  res.boundary_w = boundary_w;
  res.removed = static_cast<long long>(removed.size());
  res.q = q;
  // every removed vertex's sink arc is a saturated cut arc of capacity 1
  if (res.removed > mf.flow) throw GameError("improve_cut accounting violated");
  if (q.empty()) throw GameError("improve_cut degenerated: residual side swallowed w");
  return res;
}

CutPlayerRound cut_player_round(const Graph &h, const ParamSet &params) {
  CutPlayerRound round;
  round.max_degree = std::max<long long>(1, h.max_degree());
  // exact mode: psi = 1/(scale * Delta); heuristic pays another Delta
  round.psi = params.heuristic_balanced_cut
                  ? Rat(1, params.psi_scale * round.max_degree * round.max_degree)
                  : Rat(1, params.psi_scale * round.max_degree);

  auto bal = balanced_sparse_cut(h, params.balance_b, round.psi, params.heuristic_balanced_cut,
                                 params.exact_cut_bound);
  auto make_bisection = [&](const VSet &contained) {
    GamePair p;
    p.kind = GamePair::Bisection;
    long long half = (h.n + 1) / 2;
    VSet b = contained;
    for (int v = 0; v < h.n && static_cast<long long>(b.size()) < half; ++v)
      if (!vset_contains(contained, v)) b.push_back(v);
    std::sort(b.begin(), b.end());
    p.x = b;
    p.y = vset_complement(h.n, b);
    return p;
  };

  if (!bal.balanced) {
    round.overlap_branch = true;
    round.overlap_set = bal.overlap;
    round.pairs.push_back(make_bisection(bal.overlap));
    return round;
  }

  auto imp = improve_cut(h, bal.w, params.rho, params.improve_precondition, params.balance_b);
  VSet q = imp.q;
  VSet qbar = vset_complement(h.n, q);
  if (q.size() > qbar.size()) std::swap(q, qbar);
  round.q = q;

  // cover qbar by |q|-sized id-sorted blocks, the last one wrapping around
  long long qs = static_cast<long long>(q.size());
  for (long long start = 0; start < static_cast<long long>(qbar.size()); start += qs) {
    GamePair p;
    p.kind = GamePair::Cover;
    p.x = q;
    for (long long i = start; i < start + qs; ++i)
      p.y.push_back(qbar[i % qbar.size()]);
    std::sort(p.y.begin(), p.y.end());
    p.y.erase(std::unique(p.y.begin(), p.y.end()), p.y.end());
    // wrap-around may alias; refill from the front to keep |y| = |q|
    for (size_t i = 0; i < qbar.size() && p.y.size() < q.size(); ++i)
      if (!vset_contains(p.y, qbar[i])) p.y.insert(std::lower_bound(p.y.begin(), p.y.end(), qbar[i]), qbar[i]);
    round.pairs.push_back(p);
  }
  round.pairs.push_back(make_bisection(q));
  return round;
}

// --- matching player ----------------------------------------------------------

namespace {

MatchingOutcome matching_common(const Graph &g, const VSet &t, const Rat &phi, VSet x, VSet y,
                                bool vertex_version) {
  for (const VSet *side : {&x, &y}) {
    for (int v : *side)
      if (!vset_contains(t, v)) throw GameError("pair members must be terminals");
  }
  if (!vset_intersect(x, y).empty()) throw GameError("pair sides must be disjoint");
  long long diff = std::llabs(static_cast<long long>(x.size()) - static_cast<long long>(y.size()));
  if (diff > 1) throw GameError("pair sides must have equal size up to parity");
  // parity allowance: trim the larger side by its highest id
  while (x.size() > y.size()) x.pop_back();
  while (y.size() > x.size()) y.pop_back();

  MatchingOutcome out;
  Rat phi_used = unit_fraction_floor(phi);
  long long cap = phi_used.denominator();  // 1/phi'
  out.record.phi_used = phi_used;
  out.record.congestion = Rat(cap);
  if (x.empty()) return out;  // empty matching

  if (!vertex_version) {
    FlowNetwork net(g.n);
    for (int v = 0; v < g.n; ++v) net.orig_vertex[v] = v;
    for (const Graph::Edge &e : g.edges)
      if (e.u != e.v) net.add_undirected(e.u, e.v, e.mult * cap);
    int s = net.add_vertex(), snk = net.add_vertex();
    net.source = s;
    net.sink = snk;
    for (int v : x) net.add_arc(s, v, 1);
    for (int v : y) net.add_arc(v, snk, 1);
    auto mf = max_flow_min_cut(net);
    if (mf.flow < static_cast<long long>(x.size())) {
      VSet side;
      for (int v : mf.cut_side)
        if (v < g.n) side.push_back(v);
      out.sparse_cut = true;
      out.cut = make_edge_cut(g, side);
      out.cut.terminal_sparsity = terminal_sparsity(g, t, side);
      out.cut.has_terminal_sparsity = true;
      if (!(out.cut.terminal_sparsity <= ExtRat(phi_used)))
        throw GameError("matching player cut misses the sparsity guarantee");
      return out;
    }
    out.record.matching = extract_matching(net, mf, x, y);
  } else {
    auto vc = vertex_capacitated(g, std::vector<Rat>(g.n, Rat(cap)));
    // scale is 1: capacities are integers already
    FlowNetwork &net = vc.net;
    int s = net.add_vertex(), snk = net.add_vertex();
    net.source = s;
    net.sink = snk;
    for (int v : x) net.add_arc(s, vc.in_node[v], 1);
    for (int v : y) net.add_arc(vc.out_node[v], snk, 1);
    auto mf = max_flow_min_cut(net);
    if (mf.flow < static_cast<long long>(x.size())) {
      std::vector<char> reach(net.n, 0);
      for (int v : mf.cut_side) reach[v] = 1;
      VSet left, sep, right;
      for (int v = 0; v < g.n; ++v) {
        if (reach[vc.out_node[v]])
          left.push_back(v);
        else if (reach[vc.in_node[v]])
          sep.push_back(v);
        else
          right.push_back(v);
      }
      out.sparse_cut = true;
      out.vertex_cut = make_vertex_cut(g, left, sep, right);
      out.vertex_cut.terminal_sparsity = vertex_terminal_sparsity(g, t, out.vertex_cut);
      out.vertex_cut.has_terminal_sparsity = true;
      if (!(out.vertex_cut.terminal_sparsity <= ExtRat(phi_used)))
        throw GameError("vertex matching player cut misses the sparsity guarantee");
      return out;
    }
    out.record.matching = extract_matching(net, mf, x, y);
  }
  return out;
}

}  // namespace

MatchingOutcome matching_player_round(const Graph &g, const VSet &t, const Rat &phi,
                                      const VSet &x, const VSet &y) {
  return matching_common(g, t, phi, x, y, false);
}

MatchingOutcome vertex_matching_player_round(const Graph &g, const VSet &t, const Rat &phi,
                                             const VSet &x, const VSet &y) {
  return matching_common(g, t, phi, x, y, true);
}

// --- potential tracker ---------------------------------------------------------

PotentialTracker::PotentialTracker(const VSet &tracked, int n) : tracked_(tracked) {
  index_.assign(n, -1);
  for (size_t i = 0; i < tracked_.size(); ++i) index_[tracked_[i]] = static_cast<int>(i);
  mass_.assign(tracked_.size(), std::vector<Rat>(tracked_.size(), Rat(0)));
  for (size_t i = 0; i < tracked_.size(); ++i) mass_[i][i] = Rat(1);
  phi_ = entropy();
}

double PotentialTracker::entropy() const {
  double total = 0;
  for (const auto &row : mass_)
    for (const Rat &p : row) {
      double val = rat_double(p);
      if (val > 0) total -= val * std::log(val);
    }
  return total;
}

double PotentialTracker::upper_bound() const {
  double s = static_cast<double>(tracked_.size());
  return s > 0 ? s * std::log(std::max(s, 1.0)) : 0.0;
}

void PotentialTracker::step(const std::vector<std::pair<int, int>> &matched) {
  double before = phi_;
  for (auto [a, b] : matched) {
    int ia = a >= 0 && a < static_cast<int>(index_.size()) ? index_[a] : -1;
    int ib = b >= 0 && b < static_cast<int>(index_.size()) ? index_[b] : -1;
    if (ia >= 0 && ib >= 0) {
      for (size_t u = 0; u < tracked_.size(); ++u) {
        Rat avg = (mass_[u][ia] + mass_[u][ib]) / 2;
        mass_[u][ia] = avg;
        mass_[u][ib] = avg;
      }
    } else if (ia >= 0 || ib >= 0) {
      // matched outside the tracked set: mass stays put (averaging only
      // applies inside S); record what a leaky walk would have shed
      int in = ia >= 0 ? ia : ib;
      for (size_t u = 0; u < tracked_.size(); ++u)
        would_leak_ += rat_double(mass_[u][in]) / 2;
    }
  }
  phi_ = entropy();
  last_increase_ = phi_ - before;
  if (phi_ < before - 1e-9) throw GameError("entropy potential decreased");
  if (phi_ > upper_bound() + 1e-9) throw GameError("entropy potential exceeded s log s");
}

// --- game driver -----------------------------------------------------------------

GameResult run_game(const Graph &g, const VSet &t, const Rat &phi, long long s,
                    const ParamSet &params, GameKind kind, const VSet &tracked) {
  if (t.empty()) throw GameError("terminal set must be nonempty");
  if (s < 1 || s > static_cast<long long>(t.size()))
    throw GameError("s out of range [1, |T|]");
  GameResult result;
  result.kind = kind;
  Rat phi_used = unit_fraction_floor(phi);

  const int nt = static_cast<int>(t.size());
  std::vector<int> h_index(g.n, -1);
  for (int i = 0; i < nt; ++i) h_index[t[i]] = i;

  Graph h(nt);
  h.finalize();
  long long matchings = 0;
  long long log2s = 0;
  while ((1LL << log2s) < s) ++log2s;  // ceil(log2 s), 0 for s = 1
  int budget = static_cast<int>(params.round_budget_d * log2s + 1);

  PotentialTracker tracker(
      [&] {
        VSet idx;
        for (int v : tracked)
          if (h_index[v] >= 0) idx.push_back(h_index[v]);
        return idx;
      }(),
      nt);

  if (nt < 2) {
    // degenerate game: no pair can be formed, certificate is vacuous
    result.certificate.phi_used = phi_used;
    result.certificate.rounds = 0;
    result.certificate.matchings = 0;
    result.certificate.h = h;
    result.certificate.terminals = t;
    result.certificate.h_min_sparsity = Rat(0);
    result.certificate.expansion_lower = Rat(0);
    return result;
  }

  for (int round_no = 1; round_no <= budget; ++round_no) {
    auto col = cut_player_round(h, params);
    RoundRecord rec;
    rec.round = round_no;
    rec.psi = col.psi;
    rec.branch = col.overlap_branch ? "overlap" : "balanced";

    // diagnostic flags for the tracked set, measured on H before the round
    VSet tracked_idx = tracker.tracked();
    if (!col.overlap_branch && tracked_idx.size() >= 2) {
      VSet q_in = vset_intersect(col.q, tracked_idx);
      long long inside = static_cast<long long>(q_in.size());
      long long outside = static_cast<long long>(tracked_idx.size()) - inside;
      long long small = std::min(inside, outside);
      if (4 * small >= static_cast<long long>(tracked_idx.size()) && small > 0) {
        auto sub = induced_subgraph(h, tracked_idx);
        VSet q_sub;
        for (size_t i = 0; i < tracked_idx.size(); ++i)
          if (vset_contains(q_in, tracked_idx[i])) q_sub.push_back(static_cast<int>(i));
        long long cut_inside =
            q_sub.empty() || q_sub.size() == tracked_idx.size() ? 0 : boundary_size(sub.graph, q_sub);
        rec.q_balanced_sparse_for_tracked = Rat(cut_inside) * 100 <= Rat(small);
      }
    }

    bool stayed_inside = true;
    std::vector<std::pair<int, int>> matched_pairs_h;
    for (const GamePair &pr : col.pairs) {
      rec.pair_sizes.push_back({static_cast<long long>(pr.x.size()),
                                static_cast<long long>(pr.y.size())});
      VSet hx, hy;
      for (int i : pr.x) hx.push_back(t[i]);
      for (int i : pr.y) hy.push_back(t[i]);
      std::sort(hx.begin(), hx.end());
      std::sort(hy.begin(), hy.end());
      MatchingOutcome outcome = kind == GameKind::Edge
                                    ? matching_player_round(g, t, phi_used, hx, hy)
                                    : vertex_matching_player_round(g, t, phi_used, hx, hy);
      if (outcome.sparse_cut) {
        result.found_cut = true;
        result.cut = outcome.cut;
        result.vertex_cut = outcome.vertex_cut;
        result.trace.push_back(rec);
        return result;
      }
      rec.matching_sizes.push_back(static_cast<long long>(outcome.record.matching.size()));
      for (const MatchedPair &mp : outcome.record.matching) {
        int ha = h_index[mp.a], hb = h_index[mp.b];
        h.add_edge(std::min(ha, hb), std::max(ha, hb));
        matched_pairs_h.push_back({ha, hb});
      }
      if (!outcome.record.matching.empty()) ++matchings;
      result.embeddings.push_back(outcome.record);
    }
    h.finalize();
    // a matching "stays inside" when no tracked vertex is matched outside
    for (auto [a, b] : matched_pairs_h) {
      bool ain = vset_contains(tracker.tracked(), a), bin = vset_contains(tracker.tracked(), b);
      if (ain != bin) stayed_inside = false;
    }
    tracker.step(matched_pairs_h);
    rec.matching_stayed_inside = stayed_inside;
    rec.potential = tracker.phi();
    rec.potential_increase = tracker.last_increase();
    result.trace.push_back(rec);
  }

  // certificate: expansion of the final game graph, composed embedding bound
  Certificate cert;
  cert.phi_used = phi_used;
  cert.rounds = static_cast<int>(result.trace.size());
  cert.matchings = matchings;
  cert.h = h;
  cert.terminals = t;
  auto sse = oracle::certify_small_set_expansion(h, std::min<long long>(s, nt - 1),
                                                 params.certify_bound);
  cert.h_min_sparsity = sse.min_sparsity;
  cert.exhaustive = sse.exhaustive;
  for (int idx : sse.argmin) cert.h_argmin.push_back(t[idx]);
  std::sort(cert.h_argmin.begin(), cert.h_argmin.end());
  cert.expansion_lower =
      matchings > 0 ? cert.h_min_sparsity * phi_used / matchings : Rat(0);
  result.certificate = cert;
  return result;
}

ExpansionCheck certify_small_set_expansion(const Graph &h, long long s, const Rat &bound,
                                           int exhaustive_bound) {
  ExpansionCheck out;
  auto cert = oracle::certify_small_set_expansion(h, s, exhaustive_bound);
  out.exhaustive = cert.exhaustive;
  out.min_sparsity = cert.min_sparsity;
  out.worst = cert.argmin;
  out.certified = cert.min_sparsity >= bound;
  return out;
}

}  // namespace cm
}  // namespace parcut
