#include "parcut/lp_rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace parcut {
namespace lpround {

namespace {

constexpr double kSlackFactor = 10.0;

bool le_slack(double a, double b, double tol) {
  return a <= b + kSlackFactor * tol * std::max(1.0, std::abs(b));
}

double ln_clamped(double v) { return std::max(std::log(v), 1.0); }

}  // namespace

std::uint64_t default_reps(int n) {
  return static_cast<std::uint64_t>(std::ceil(4.0 * n * std::log(n + 1.0)));
}

// --- builders --------------------------------------------------------------

long long SseLpInstance::expected_rows() const {
  long long nn = n;
  long long pairs = nn * (nn - 1);  // ordered
  long long triples = nn * (nn - 1) * (nn - 2) / 6;
  return 2 * nn         // two spreading families
         + 4 * pairs    // z <= d, z <= y for both families
         + 2            // weight and size budgets
         + 3 * triples  // triangle inequalities per unordered triple
         + pairs;       // d(u,v) >= y_u - y_v
}

SseLpInstance build_sse_lp(const Graph &g, const VSet &t, const std::vector<long long> &x,
                           long long s, long long ell) {
  if (t.empty()) throw RoundingError("terminal set must be nonempty");
  if (static_cast<int>(x.size()) != g.n) throw RoundingError("weight vector size mismatch");
  long long K = 0;
  for (int v = 0; v < g.n; ++v) {
    if (x[v] < 0) throw RoundingError("weights must be nonnegative");
    if (x[v] > 0 && !vset_contains(t, v)) throw RoundingError("weight support must lie in T");
    if (vset_contains(t, v) && x[v] < 1) throw RoundingError("terminal weights must be >= 1");
    K += x[v];
  }
  if (ell < 1 || ell > K) throw RoundingError("ell out of range [1, x(V)]");
  if (s < 1 || s > g.n) throw RoundingError("s out of range [1, n]");

  SseLpInstance inst;
  inst.n = g.n;
  inst.terminals = t;
  inst.xw = x;
  inst.s = s;
  inst.ell = ell;
  inst.K = K;
  auto &p = inst.problem;
  const int n = g.n;

  inst.d_var.assign(n * n, -1);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int id = p.add_var(0.0);
      inst.d_var[u * n + v] = id;
      inst.d_var[v * n + u] = id;
    }
  inst.y_var.resize(n);
  for (int v = 0; v < n; ++v) inst.y_var[v] = p.add_var(0.0);
  std::vector<int> z1(n * n, -1), z2(n * n, -1);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) {
        z1[u * n + v] = p.add_var(0.0);
        z2[u * n + v] = p.add_var(0.0);
      }

  // objective: edge lengths with multiplicity
  for (const Graph::Edge &e : g.edges)
    if (e.u != e.v) p.cost[inst.dvar(e.u, e.v)] += static_cast<double>(e.mult);

  // spreading families
  for (int v = 0; v < n; ++v) {
    int r1 = p.add_row(lp::LpProblem::GE, 0.0);
    for (int u = 0; u < n; ++u)
      if (u != v) p.set(r1, z1[u * n + v], 1.0);
    p.set(r1, inst.y_var[v], -static_cast<double>(n - s));

    int r2 = p.add_row(lp::LpProblem::GE, 0.0);
    for (int u = 0; u < n; ++u)
      if (u != v && x[u] > 0) p.set(r2, z2[u * n + v], static_cast<double>(x[u]));
    p.set(r2, inst.y_var[v], -static_cast<double>(K - ell));
  }
  // z definitions
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      for (int *zp : {&z1[u * n + v], &z2[u * n + v]}) {
        int rd = p.add_row(lp::LpProblem::LE, 0.0);
        p.set(rd, *zp, 1.0);
        p.set(rd, inst.dvar(u, v), -1.0);
        int ry = p.add_row(lp::LpProblem::LE, 0.0);
        p.set(ry, *zp, 1.0);
        p.set(ry, inst.y_var[v], -1.0);
      }
    }
  // budgets
  {
    int r = p.add_row(lp::LpProblem::GE, static_cast<double>(ell));
    for (int v = 0; v < n; ++v)
      if (x[v] > 0) p.set(r, inst.y_var[v], static_cast<double>(x[v]));
    int r2 = p.add_row(lp::LpProblem::LE, static_cast<double>(s));
    for (int v = 0; v < n; ++v) p.set(r2, inst.y_var[v], 1.0);
  }
  // triangle inequalities
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        int uv = inst.dvar(u, v), uw = inst.dvar(u, w), vw = inst.dvar(v, w);
        for (auto [lhs, a, b] : {std::tuple{uv, uw, vw}, {uw, uv, vw}, {vw, uv, uw}}) {
          int r = p.add_row(lp::LpProblem::LE, 0.0);
          p.set(r, lhs, 1.0);
          p.set(r, a, -1.0);
          p.set(r, b, -1.0);
        }
      }
  // d(u,v) >= y_u - y_v, both orders
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      int r = p.add_row(lp::LpProblem::LE, 0.0);
      p.set(r, inst.y_var[u], 1.0);
      p.set(r, inst.y_var[v], -1.0);
      p.set(r, inst.dvar(u, v), -1.0);
    }

  if (p.rows() != inst.expected_rows())
    throw RoundingError("constraint count mismatch against the closed-form tally");
  return inst;
}

long long VertexLpInstance::expected_rows() const {
  long long nn = n;
  long long tt = static_cast<long long>(terminals.size());
  long long triples = nn * (nn - 1) * (nn - 2) / 6;
  return tt + 2 * tt * (tt - 1) + 1 + 3 * triples + nn * (nn - 1) + edge_rows;
}

VertexLpInstance build_vertex_lp(const Graph &g, const VSet &t, long long s) {
  if (t.empty()) throw RoundingError("terminal set must be nonempty");
  if (s < 1 || s > static_cast<long long>(t.size()))
    throw RoundingError("s out of range [1, |T|]");
  VertexLpInstance inst;
  inst.n = g.n;
  inst.terminals = t;
  inst.s = s;
  auto &p = inst.problem;
  const int n = g.n;
  const long long tcount = static_cast<long long>(t.size());

  inst.d_var.assign(n * n, -1);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int id = p.add_var(0.0);
      inst.d_var[u * n + v] = id;
      inst.d_var[v * n + u] = id;
    }
  inst.y_var.resize(n);
  inst.b_var.resize(n);
  for (int v = 0; v < n; ++v) inst.y_var[v] = p.add_var(0.0);
  for (int v = 0; v < n; ++v) inst.b_var[v] = p.add_var(1.0);  // objective: sum b_v
  std::vector<int> z(n * n, -1);
  for (int u : t)
    for (int v : t)
      if (u != v) z[u * n + v] = p.add_var(0.0);

  // terminal spreading
  for (int v : t) {
    int r = p.add_row(lp::LpProblem::GE, 0.0);
    for (int u : t)
      if (u != v) p.set(r, z[u * n + v], 1.0);
    p.set(r, inst.y_var[v], -static_cast<double>(tcount - s));
  }
  for (int u : t)
    for (int v : t) {
      if (u == v) continue;
      int rd = p.add_row(lp::LpProblem::LE, 0.0);
      p.set(rd, z[u * n + v], 1.0);
      p.set(rd, inst.dvar(u, v), -1.0);
      int ry = p.add_row(lp::LpProblem::LE, 0.0);
      p.set(ry, z[u * n + v], 1.0);
      p.set(ry, inst.y_var[v], -1.0);
    }
  {
    int r = p.add_row(lp::LpProblem::GE, static_cast<double>(s));
    for (int v : t) p.set(r, inst.y_var[v], 1.0);
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        int uv = inst.dvar(u, v), uw = inst.dvar(u, w), vw = inst.dvar(v, w);
        for (auto [lhs, a, b] : {std::tuple{uv, uw, vw}, {uw, uv, vw}, {vw, uv, uw}}) {
          int r = p.add_row(lp::LpProblem::LE, 0.0);
          p.set(r, lhs, 1.0);
          p.set(r, a, -1.0);
          p.set(r, b, -1.0);
        }
      }
  // Edge-relative rows: d(u,v) <= d(u,w) + b_v for every edge {w,v}, both
  // ways, with u ranging over V minus the edge endpoints. The u = w instance
  // would read d(w,v) <= b_v and collapse every distance through the
  // separator, cutting off the canonical integral solution. Anchor rows
  // d(w,v) <= b_w + b_v per edge keep distances tied to separator mass (they
  // hold for every integral vertex cut: an edge never joins L and R).
  long long edge_rows = 0;
  for (const Graph::Edge &e : g.edges) {
    if (e.u == e.v) continue;
    for (auto [w, v] : {std::pair{e.u, e.v}, {e.v, e.u}}) {
      for (int u = 0; u < n; ++u) {
        if (u == v || u == w) continue;
        int r = p.add_row(lp::LpProblem::LE, 0.0);
        p.set(r, inst.dvar(u, v), 1.0);
        p.set(r, inst.dvar(u, w), -1.0);
        p.set(r, inst.b_var[v], -1.0);
        ++edge_rows;
      }
    }
    int r = p.add_row(lp::LpProblem::LE, 0.0);
    p.set(r, inst.dvar(e.u, e.v), 1.0);
    p.set(r, inst.b_var[e.u], -1.0);
    p.set(r, inst.b_var[e.v], -1.0);
    ++edge_rows;
  }
  inst.edge_rows = edge_rows;
  // d(u,v) >= y_u - y_v
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      int r = p.add_row(lp::LpProblem::LE, 0.0);
      p.set(r, inst.y_var[u], 1.0);
      p.set(r, inst.y_var[v], -1.0);
      p.set(r, inst.dvar(u, v), -1.0);
    }

  if (p.rows() != inst.expected_rows())
    throw RoundingError("constraint count mismatch against the closed-form tally");
  return inst;
}

// --- solving ---------------------------------------------------------------

namespace {

LpValues decode(const lp::LpSolution &s, int n, const std::vector<int> &d_var,
                const std::vector<int> &y_var, const std::vector<int> &b_var, double tol) {
  LpValues out;
  out.objective = s.objective;
  out.tol = tol;
  out.y.resize(n);
  for (int v = 0; v < n; ++v) out.y[v] = s.x[y_var[v]];
  if (!b_var.empty()) {
    out.b.resize(n);
    for (int v = 0; v < n; ++v) out.b[v] = s.x[b_var[v]];
  }
  out.d.assign(n * n, 0.0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) out.d[u * n + v] = s.x[d_var[u * n + v]];
  return out;
}

}  // namespace

LpValues solve_sse(const SseLpInstance &inst, double tol) {
  auto s = lp::solve(inst.problem, tol);
  return decode(s, inst.n, inst.d_var, inst.y_var, {}, tol);
}

LpValues solve_vertex(const VertexLpInstance &inst, double tol) {
  auto s = lp::solve(inst.problem, tol);
  return decode(s, inst.n, inst.d_var, inst.y_var, inst.b_var, tol);
}

// --- rounding --------------------------------------------------------------

VSet ball(const SseLpInstance &inst, const LpValues &sol, int v, double r,
          const std::vector<char> &within) {
  if (r < 0 || r >= 1) throw RoundingError("ball radius must lie in [0, 1)");
  if (sol.y[v] <= 0) throw RoundingError("ball center must have positive mass");
  VSet out;
  long long w = 0;
  for (int u = 0; u < inst.n; ++u) {
    if (!within.empty() && !within[u]) continue;
    if (sol.dist(u, v, inst.n) <= r * sol.y[v]) {
      out.push_back(u);
      w += inst.xw[u];
    }
  }
  // Observation bounds, checked on every call
  double cap_size = static_cast<double>(inst.s) / (1.0 - r);
  double cap_weight = static_cast<double>(inst.ell) / (1.0 - r);
  if (!le_slack(static_cast<double>(out.size()), cap_size, sol.tol) ||
      !le_slack(static_cast<double>(w), cap_weight, sol.tol))
    throw RoundingError("ball bound violated: LP solution inconsistent");
  return out;
}

SseRoundResult round_sse(const Graph &g, const SseLpInstance &inst, const LpValues &sol,
                         std::mt19937_64 &rng, std::uint64_t reps) {
  if (reps == 0) reps = default_reps(g.n);
  const int n = g.n;
  const double LP = sol.objective;
  const double lnl = ln_clamped(static_cast<double>(inst.ell));
  // LP ~ 0 means a free cut exists: only zero-boundary clusters may pass
  const bool zero_lp = LP <= kSlackFactor * sol.tol;
  const double coef_size = static_cast<double>(inst.ell) / (10.0 * inst.s);
  const double coef_cut =
      zero_lp ? 0.0 : static_cast<double>(inst.ell) / (200.0 * LP * lnl);

  std::uniform_real_distribution<double> uni01(0.0, 1.0);
  std::uniform_real_distribution<double> unir(0.05, 0.1);

  SseRoundResult res;
  std::vector<char> alive(n, 1);  // V minus the accumulated Y
  auto f_score = [&](const VSet &c, long long w, long long cut) {
    return static_cast<double>(w) - coef_size * static_cast<double>(c.size()) -
           (zero_lp ? (cut > 0 ? 2.0 * inst.K : 0.0)
                    : coef_cut * static_cast<double>(cut));
  };

  while (static_cast<long long>(res.y_set.size()) <= inst.s && res.weight <= inst.ell / 4) {
    bool found = false;
    for (std::uint64_t j = 0; j < reps; ++j) {
      ++res.iterations;
      double delta = uni01(rng);
      while (delta == 0.0) delta = uni01(rng);
      double r = unir(rng);
      VSet centers;
      for (int v : inst.terminals)
        if (alive[v] && sol.y[v] >= delta && sol.y[v] <= 2 * delta) centers.push_back(v);
      std::shuffle(centers.begin(), centers.end(), rng);

      std::vector<VSet> clusters;
      std::vector<char> avail = alive;
      for (int c : centers) {
        if (!avail[c]) {
          clusters.push_back({});
          continue;
        }
        VSet cluster = ball(inst, sol, c, r, avail);
        for (int u : cluster) avail[u] = 0;
        clusters.push_back(std::move(cluster));
      }
      std::uint64_t slot = rng() % n;
      RoundTrace tr;
      tr.delta = delta;
      tr.r = r;
      tr.clusters = static_cast<int>(clusters.size());
      tr.chosen = static_cast<int>(slot);
      VSet chosen;
      if (slot < clusters.size()) chosen = clusters[slot];
      if (!chosen.empty()) {
        long long w = 0;
        for (int u : chosen) w += inst.xw[u];
        long long cut = boundary_size(g, chosen);
        tr.f_score = f_score(chosen, w, cut);
        if (tr.f_score > 0) {
          res.y_set = vset_union(res.y_set, chosen);
          res.weight += w;
          for (int u : chosen) alive[u] = 0;
          ++res.accepted_clusters;
          tr.accepted = true;
          res.trace.push_back(tr);
          found = true;
          break;
        }
      }
      res.trace.push_back(tr);
    }
    if (!found) throw RandomizedFailure("rounding attempt budget exhausted");
  }

  res.boundary = boundary_size(g, res.y_set);
  // contract checks, straight from the accepted f-scores
  if (static_cast<long long>(res.y_set.size()) > 10 * inst.s)
    throw RoundingError("rounded set exceeds the 10s size bound");
  if (10 * res.weight < inst.ell || res.weight > 3 * inst.ell)
    throw RoundingError("rounded weight outside [ell/10, 3 ell]");
  double bound = zero_lp ? 0.0
                         : 200.0 * lnl * LP * static_cast<double>(res.weight) /
                               static_cast<double>(inst.ell);
  if (!le_slack(static_cast<double>(res.boundary), bound, sol.tol))
    throw RoundingError("rounded boundary exceeds the certified bound");
  return res;
}

VertexRoundResult round_vertex(const Graph &g, const VertexLpInstance &inst, const LpValues &sol,
                               std::mt19937_64 &rng, std::uint64_t reps) {
  if (reps == 0) reps = default_reps(g.n);
  const int n = g.n;
  const double LP = sol.objective;
  const double lns = ln_clamped(static_cast<double>(inst.s));
  const bool zero_lp = LP <= kSlackFactor * sol.tol;
  const double coef = zero_lp ? 0.0 : static_cast<double>(inst.s) / (2000.0 * LP * lns);
  const long long tcount = static_cast<long long>(inst.terminals.size());

  std::uniform_real_distribution<double> uni01(0.0, 1.0);
  std::uniform_real_distribution<double> unir(0.05, 0.1);

  auto term_count = [&](const VSet &c) {
    return static_cast<long long>(vset_intersect(c, inst.terminals).size());
  };
  auto f_score = [&](const VSet &u_set, long long nbsize) {
    return static_cast<double>(term_count(u_set)) -
           (zero_lp ? (nbsize > 0 ? 2.0 * tcount : 0.0)
                    : coef * static_cast<double>(nbsize));
  };

  VertexRoundResult res;
  for (std::uint64_t j = 0; j < reps; ++j) {
    ++res.iterations;
    double delta = uni01(rng);
    while (delta == 0.0) delta = uni01(rng);
    double r = unir(rng);
    VSet centers;
    for (int v : inst.terminals)
      if (sol.y[v] >= delta && sol.y[v] <= 2 * delta) centers.push_back(v);
    std::shuffle(centers.begin(), centers.end(), rng);

    std::vector<char> avail(n, 1);
    std::vector<VSet> clusters;
    VSet carved_union;
    for (int c : centers) {
      if (!avail[c] || sol.y[c] <= 0) continue;
      VSet cluster;
      for (int u = 0; u < n; ++u)
        if (avail[u] && sol.dist(u, c, n) <= r * sol.y[c]) cluster.push_back(u);
      // terminal ball bound from the spreading constraint
      long long tin = term_count(cluster);
      if (!le_slack(static_cast<double>(tin), inst.s / (1.0 - r), sol.tol))
        throw RoundingError("terminal ball bound violated");
      for (int u : cluster) avail[u] = 0;
      carved_union = vset_union(carved_union, cluster);
      clusters.push_back(std::move(cluster));
    }

    bool flagged = false;
    VSet u_prime;
    long long carved_terms = term_count(carved_union);
    if (2 * carved_terms < tcount) {
      u_prime = carved_union;
    } else {
      // greedily split the clusters into two groups by terminal count
      std::vector<std::pair<long long, int>> by_terms;
      for (size_t i = 0; i < clusters.size(); ++i)
        by_terms.push_back({term_count(clusters[i]), static_cast<int>(i)});
      std::sort(by_terms.begin(), by_terms.end(),
                [](auto &a, auto &b) { return a.first > b.first; });
      VSet g1, g2;
      long long t1 = 0, t2 = 0;
      for (auto [tc, idx] : by_terms) {
        if (t1 <= t2) {
          g1 = vset_union(g1, clusters[idx]);
          t1 += tc;
        } else {
          g2 = vset_union(g2, clusters[idx]);
          t2 += tc;
        }
      }
      if (3 * std::min(t1, t2) < carved_terms) flagged = true;
      // the group within the |T|/2 budget; prefer the heavier one
      if (2 * std::max(t1, t2) <= tcount)
        u_prime = t1 >= t2 ? g1 : g2;
      else if (2 * std::min(t1, t2) <= tcount)
        u_prime = t1 <= t2 ? g1 : g2;
      else {
        flagged = true;
        u_prime = t1 <= t2 ? g1 : g2;
      }
    }

    RoundTrace tr;
    tr.delta = delta;
    tr.r = r;
    tr.clusters = static_cast<int>(clusters.size());
    if (!u_prime.empty() && static_cast<int>(u_prime.size()) < n &&
        2 * term_count(u_prime) <= tcount) {
      VSet nb = neighbors(g, u_prime);
      VSet rest = vset_minus(vset_complement(n, u_prime), nb);
      tr.f_score = f_score(u_prime, static_cast<long long>(nb.size()));
      if (tr.f_score > 0 && !rest.empty()) {
        tr.accepted = true;
        res.trace.push_back(tr);
        res.u_set = u_prime;
        res.split_flagged = flagged;
        res.terminals_inside = term_count(u_prime);
        res.cut = make_vertex_cut(g, u_prime, nb, rest);
        // f > 0 certifies |N(U')| <= 2000 log s * LP * |U' cap T| / s
        double bound = zero_lp ? 0.0
                               : 2000.0 * lns * LP *
                                     static_cast<double>(res.terminals_inside) /
                                     static_cast<double>(inst.s);
        if (!le_slack(static_cast<double>(nb.size()), bound, sol.tol))
          throw RoundingError("separator exceeds the certified bound");
        return res;
      }
      tr.accepted = false;
    }
    res.trace.push_back(tr);
  }
  throw RandomizedFailure("vertex rounding attempt budget exhausted");
}

}  // namespace lpround
}  // namespace parcut
