#include "parcut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace parcut {
namespace oracle {

namespace {

using u64 = std::uint64_t;

struct DenseGraph {
  int n;
  std::vector<u64> adj;                 // neighbor masks, loops excluded
  std::vector<long long> deg;           // with multiplicity, loops excluded
  std::vector<long long> mult;          // n*n multiplicity matrix
  std::vector<long long> w;             // vertex measure (all 1 when absent)
  bool unit = true;                     // all multiplicities 1

  explicit DenseGraph(const Graph &g) : n(g.n), adj(g.n, 0), deg(g.n, 0), mult(g.n * g.n, 0) {
    if (g.n > 62) throw OracleError("dense enumeration supports n <= 62");
    for (const Graph::Edge &e : g.edges) {
      if (e.u == e.v) continue;
      adj[e.u] |= u64(1) << e.v;
      adj[e.v] |= u64(1) << e.u;
      mult[e.u * n + e.v] += e.mult;
      mult[e.v * n + e.u] += e.mult;
      deg[e.u] += e.mult;
      deg[e.v] += e.mult;
      if (e.mult != 1) unit = false;
    }
    w.resize(n);
    for (int v = 0; v < n; ++v) w[v] = g.weight_of(v);
  }

  long long edges_into(int v, u64 smask) const {
    if (unit) return static_cast<long long>(std::popcount(adj[v] & smask));
    long long total = 0;
    u64 m = adj[v] & smask;
    while (m) {
      int u = std::countr_zero(m);
      m &= m - 1;
      total += mult[v * n + u];
    }
    return total;
  }
};

// Lexicographically-smallest-set order on bit masks: the set owning the
// lowest element of the symmetric difference comes first.
bool mask_lex_less(u64 a, u64 b) {
  u64 d = a ^ b;
  if (d == 0) return false;
  u64 low = d & (~d + 1);
  return (a & low) != 0;
}

VSet mask_to_vset(u64 m) {
  VSet out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

struct Best {
  bool any = false;
  Rat ratio{0};
  u64 mask = 0;

  void offer(long long num, long long den, u64 m) {
    Rat r(num, den);
    if (!any || r < ratio || (r == ratio && mask_lex_less(m, mask))) {
      any = true;
      ratio = r;
      mask = m;
    }
  }
  void merge(const Best &o) {
    if (!o.any) return;
    if (!any || o.ratio < ratio || (o.ratio == ratio && mask_lex_less(o.mask, mask))) *this = o;
  }
};

// Walks Gray-code subsets of V \ {0} over index range [lo, hi) and reports
// every subset to `visit(smask, size, boundary, weight)`. Boundary and weight
// are maintained incrementally; the walk starts from gray(lo) computed from
// scratch, so disjoint ranges compose exactly.
template <typename Visit>
void gray_walk(const DenseGraph &dg, u64 lo, u64 hi, Visit &&visit) {
  u64 smask = 0;
  u64 start_gray = lo ^ (lo >> 1);
  for (u64 m = start_gray; m; m &= m - 1) smask |= u64(1) << (std::countr_zero(m) + 1);
  long long size = std::popcount(smask);
  long long boundary = 0, weight = 0;
  for (u64 m = smask; m; m &= m - 1) {
    int v = std::countr_zero(m);
    weight += dg.w[v];
    // deg counts internal edges once and boundary edges once; edges_into
    // counts internal edges once, so the sum over S cancels them twice over
    boundary += dg.deg[v] - dg.edges_into(v, smask);
  }
  if (lo != 0) visit(smask, size, boundary, weight);
  for (u64 i = lo + 1; i < hi; ++i) {
    int v = std::countr_zero(i) + 1;  // flipped vertex in Gray order
    u64 bit = u64(1) << v;
    if (smask & bit) {
      smask ^= bit;
      --size;
      weight -= dg.w[v];
      boundary -= dg.deg[v] - 2 * dg.edges_into(v, smask);
    } else {
      boundary += dg.deg[v] - 2 * dg.edges_into(v, smask);
      smask ^= bit;
      ++size;
      weight += dg.w[v];
    }
    visit(smask, size, boundary, weight);
  }
}

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

// Runs `make_visit` over the subset space [1, 2^(n-1)), chunked across
// threads; each worker owns a Best that is merged deterministically.
template <typename MakeVisit>
Best enumerate_cuts(const DenseGraph &dg, int threads, std::uint64_t &enumerated,
                    MakeVisit &&make_visit) {
  u64 total = dg.n >= 1 ? (u64(1) << (dg.n - 1)) : 1;
  int nt = resolve_threads(threads);
  u64 chunk = std::max<u64>(1024, (total + nt - 1) / nt);
  int nchunks = static_cast<int>((total + chunk - 1) / chunk);
  std::vector<Best> results(nchunks);
  std::uint64_t count = total > 0 ? total - 1 : 0;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
#endif
  for (int c = 0; c < nchunks; ++c) {
    u64 lo = u64(c) * chunk;
    u64 hi = std::min(total, lo + chunk);
    Best local;
    auto visit = make_visit(local);
    gray_walk(dg, lo, hi, visit);
    results[c] = local;
  }
  Best best;
  for (const Best &b : results) best.merge(b);
  enumerated = count;
  return best;
}

OracleAnswer finish(const Graph &g, const Best &best, std::uint64_t enumerated, double secs,
                    bool vertex = false) {
  (void)vertex;
  if (!best.any) throw OracleError("no feasible cut found");
  OracleAnswer ans;
  ans.optimum = best.ratio;
  ans.argmin = mask_to_vset(best.mask);
  ans.enumerated = enumerated;
  ans.wall_seconds = secs;
  (void)g;
  return ans;
}

}  // namespace

OracleAnswer exact_sparsest_cut_serial(const Graph &g, const Limits &lim) {
  return exact_sparsest_cut(g, lim, 1);
}

OracleAnswer exact_sparsest_cut(const Graph &g, const Limits &lim, int threads) {
  if (g.n < 2) throw OracleError("sparsest cut needs n >= 2");
  if (g.n > lim.max_n_edge) throw OracleError("graph too large for exhaustive sparsest cut");
  auto t0 = std::chrono::steady_clock::now();
  DenseGraph dg(g);
  u64 full = (g.n == 64) ? ~u64(0) : ((u64(1) << g.n) - 1);
  std::uint64_t enumerated = 0;
  Best best = enumerate_cuts(dg, threads, enumerated, [&](Best &local) {
    return [&local, &dg, full](u64 smask, long long size, long long boundary, long long) {
      if (smask == 0) return;
      long long small = std::min<long long>(size, dg.n - size);
      // canonical side: the one containing vertex 0
      local.offer(boundary, small, full ^ smask);
    };
  });
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish(g, best, enumerated, secs);
}

OracleAnswer exact_sse_serial(const Graph &g, long long s, const Limits &lim) {
  return exact_sse(g, s, lim, 1);
}

OracleAnswer exact_sse(const Graph &g, long long s, const Limits &lim, int threads) {
  if (g.n < 2) throw OracleError("small set expansion needs n >= 2");
  if (g.n > lim.max_n_edge) throw OracleError("graph too large for exhaustive enumeration");
  if (s < 1) throw OracleError("size bound must be >= 1");
  auto t0 = std::chrono::steady_clock::now();
  DenseGraph dg(g);
  u64 full = (u64(1) << g.n) - 1;
  std::uint64_t enumerated = 0;
  Best best = enumerate_cuts(dg, threads, enumerated, [&](Best &local) {
    return [&local, &dg, full, s](u64 smask, long long size, long long boundary, long long) {
      if (smask == 0) return;
      if (size <= s) local.offer(boundary, size, smask);
      if (dg.n - size <= s && dg.n - size >= 1) local.offer(boundary, dg.n - size, full ^ smask);
    };
  });
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish(g, best, enumerated, secs);
}

std::optional<OracleAnswer> exact_budget_cut(const Graph &g, long long s, long long ell,
                                             const Limits &lim) {
  if (g.n < 2 || g.n > lim.max_n_edge) throw OracleError("size out of range for budget cut");
  auto t0 = std::chrono::steady_clock::now();
  DenseGraph dg(g);
  u64 full = (u64(1) << g.n) - 1;
  long long total_w = 0;
  for (int v = 0; v < g.n; ++v) total_w += dg.w[v];
  std::uint64_t enumerated = 0;
  Best best = enumerate_cuts(dg, 1, enumerated, [&](Best &local) {
    return [&local, &dg, full, s, ell, total_w](u64 smask, long long size, long long boundary,
                                                long long weight) {
      if (smask == 0) return;
      if (size <= s && weight >= ell) local.offer(boundary, 1, smask);
      long long csize = dg.n - size;
      if (csize >= 1 && csize <= s && total_w - weight >= ell)
        local.offer(boundary, 1, full ^ smask);
    };
  });
  if (!best.any) return std::nullopt;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish(g, best, enumerated, secs);
}

// --- vertex cuts ---------------------------------------------------------

namespace {

struct Components {
  std::vector<u64> masks;
  std::vector<int> sizes;
};

Components components_after_removal(const DenseGraph &dg, u64 removed) {
  Components comps;
  u64 left = (~removed) & ((dg.n == 64 ? ~u64(0) : (u64(1) << dg.n) - 1));
  while (left) {
    int start = std::countr_zero(left);
    u64 comp = u64(1) << start;
    u64 frontier = comp;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      u64 nb = dg.adj[v] & left & ~comp;
      comp |= nb;
      frontier |= nb;
    }
    comps.masks.push_back(comp);
    comps.sizes.push_back(std::popcount(comp));
    left &= ~comp;
  }
  return comps;
}

// Subset-sum over component sizes; returns, for the best achievable value
// with target predicate, one achieving component subset (greedy walk-back).
std::vector<char> achievable_sums(const std::vector<int> &sizes, int cap) {
  std::vector<char> dp(cap + 1, 0);
  dp[0] = 1;
  for (int sz : sizes)
    for (int v = cap; v >= sz; --v)
      if (dp[v - sz]) dp[v] = 1;
  return dp;
}

u64 reconstruct_sum(const std::vector<int> &sizes, const std::vector<u64> &masks, int target) {
  int k = static_cast<int>(sizes.size());
  // dp[i][v]: achievable with first i components
  std::vector<std::vector<char>> dp(k + 1, std::vector<char>(target + 1, 0));
  dp[0][0] = 1;
  for (int i = 0; i < k; ++i)
    for (int v = 0; v <= target; ++v)
      if (dp[i][v]) {
        dp[i + 1][v] = 1;
        if (v + sizes[i] <= target) dp[i + 1][v + sizes[i]] = 1;
      }
  if (!dp[k][target]) throw OracleError("internal: unreachable subset-sum target");
  u64 chosen = 0;
  int v = target;
  for (int i = k; i > 0; --i) {
    if (dp[i - 1][v]) continue;  // component i-1 not needed
    chosen |= masks[i - 1];
    v -= sizes[i - 1];
  }
  return chosen;
}

struct VBest {
  bool any = false;
  Rat ratio{0};
  u64 lmask = 0, cmask = 0;

  void offer(const Rat &r, u64 l, u64 c) {
    if (!any || r < ratio || (r == ratio && (mask_lex_less(l, lmask) ||
                                             (l == lmask && mask_lex_less(c, cmask))))) {
      any = true;
      ratio = r;
      lmask = l;
      cmask = c;
    }
  }
};

}  // namespace

std::optional<OracleAnswer> exact_vertex_sparsest(const Graph &g, const Limits &lim) {
  if (g.n < 3) return std::nullopt;
  if (g.n > lim.max_n_vertex) throw OracleError("graph too large for exhaustive vertex cuts");
  auto t0 = std::chrono::steady_clock::now();
  DenseGraph dg(g);
  u64 full = (u64(1) << g.n) - 1;
  VBest best;
  std::uint64_t enumerated = 0;
  for (u64 cmask = 1; cmask < full; ++cmask) {
    int csize = std::popcount(cmask);
    if (csize > g.n - 2) continue;
    ++enumerated;
    Components comps = components_after_removal(dg, cmask);
    if (comps.masks.size() < 2) continue;
    int rest = g.n - csize;
    int cap = rest / 2;
    auto dp = achievable_sums(comps.sizes, cap);
    int bestv = 0;
    for (int v = cap; v >= 1; --v)
      if (dp[v]) {
        bestv = v;
        break;
      }
    if (bestv == 0) continue;
    Rat r(csize, csize + bestv);
    if (!best.any || r <= best.ratio) {
      u64 l = reconstruct_sum(comps.sizes, comps.masks, bestv);
      // canonical: smaller side as L; on equal sizes the lex-smaller mask
      u64 other = full & ~cmask & ~l;
      if (std::popcount(other) < std::popcount(l) ||
          (std::popcount(other) == std::popcount(l) && mask_lex_less(other, l)))
        std::swap(l, other);
      best.offer(r, l, cmask);
    }
  }
  if (!best.any) return std::nullopt;
  OracleAnswer ans;
  ans.optimum = best.ratio;
  ans.argmin = mask_to_vset(best.lmask);
  ans.separator = mask_to_vset(best.cmask);
  ans.right = mask_to_vset(full & ~best.lmask & ~best.cmask);
  ans.enumerated = enumerated;
  ans.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return ans;
}

std::optional<OracleAnswer> exact_ssve(const Graph &g, long long s, const Limits &lim) {
  if (g.n < 3) return std::nullopt;
  if (g.n > lim.max_n_vertex) throw OracleError("graph too large for exhaustive vertex cuts");
  if (s < 1) throw OracleError("size bound must be >= 1");
  auto t0 = std::chrono::steady_clock::now();
  DenseGraph dg(g);
  u64 full = (u64(1) << g.n) - 1;
  VBest best;
  std::uint64_t enumerated = 0;
  for (u64 cmask = 1; cmask < full; ++cmask) {
    int csize = std::popcount(cmask);
    if (csize > g.n - 2) continue;
    ++enumerated;
    Components comps = components_after_removal(dg, cmask);
    if (comps.masks.size() < 2) continue;
    int rest = g.n - csize;
    int cap = static_cast<int>(std::min<long long>(s, rest / 2));
    if (cap < 1) continue;
    auto dp = achievable_sums(comps.sizes, cap);
    int bestv = 0;
    for (int v = cap; v >= 1; --v)
      if (dp[v]) {
        bestv = v;
        break;
      }
    if (bestv == 0) continue;
    Rat r(csize, csize + bestv);
    if (!best.any || r <= best.ratio) {
      u64 l = reconstruct_sum(comps.sizes, comps.masks, bestv);
      best.offer(r, l, cmask);
    }
  }
  if (!best.any) return std::nullopt;
  OracleAnswer ans;
  ans.optimum = best.ratio;
  ans.argmin = mask_to_vset(best.lmask);
  ans.separator = mask_to_vset(best.cmask);
  ans.right = mask_to_vset(full & ~best.lmask & ~best.cmask);
  ans.enumerated = enumerated;
  ans.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return ans;
}

// --- sparse families -----------------------------------------------------

namespace {

bool family_qualifies(const DenseGraph &dg, u64 wmask, const Rat &phi, bool vertex_mode,
                      bool weighted, long long kmax) {
  int n = dg.n;
  u64 full = (u64(1) << n) - 1;
  if (wmask == 0 || wmask == full) return false;
  long long denom = 0;
  if (weighted) {
    for (u64 m = wmask; m; m &= m - 1) denom += dg.w[std::countr_zero(m)];
  } else {
    denom = std::popcount(wmask);
  }
  if (denom == 0) return false;
  if (vertex_mode) {
    // neighborhood size as the cut
    u64 nb = 0;
    for (u64 m = wmask; m; m &= m - 1) nb |= dg.adj[std::countr_zero(m)];
    nb &= ~wmask;
    long long k = std::popcount(nb);
    if (k > kmax) return false;
    // vertex sparsity of the set W: |N(W)| / measure(W u N(W))
    long long dd = denom;
    if (weighted) {
      for (u64 m = nb; m; m &= m - 1) dd += dg.w[std::countr_zero(m)];
    } else {
      dd += k;
    }
    return Rat(k, dd) <= phi;
  }
  long long boundary = 0;
  for (u64 m = wmask; m; m &= m - 1) {
    int v = std::countr_zero(m);
    boundary += dg.deg[v] - dg.edges_into(v, wmask);
  }
  if (boundary > kmax) return false;
  return Rat(boundary, denom) <= phi;
}

bool mask_connected(const DenseGraph &dg, u64 wmask) {
  if (wmask == 0) return true;
  int start = std::countr_zero(wmask);
  u64 comp = u64(1) << start;
  u64 frontier = comp;
  while (frontier) {
    int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    u64 nb = dg.adj[v] & wmask & ~comp;
    comp |= nb;
    frontier |= nb;
  }
  return comp == wmask;
}

}  // namespace

std::vector<VSet> enumerate_sparse_family(const Graph &g, const Rat &phi, int kmax,
                                          bool vertex_mode, bool weighted, int threads) {
  if (g.n > 62) throw OracleError("family enumeration supports n <= 62");
  (void)threads;
  DenseGraph dg(g);
  u64 full = (u64(1) << g.n) - 1;
  std::vector<u64> found;

  if (!vertex_mode) {
    // Remove edge sets of total multiplicity <= kmax. Parallel classes are
    // removed as whole blocks charging their full multiplicity: removing
    // only part of a class never separates anything new.
    std::vector<std::pair<int, int>> classes;
    std::vector<long long> class_mult;
    for (const Graph::Edge &e : g.edges)
      if (e.u != e.v) {
        classes.push_back({e.u, e.v});
        class_mult.push_back(e.mult);
      }
    int m = static_cast<int>(classes.size());
    std::vector<char> drop(m, 0);
    auto process_removed = [&]() {
      std::vector<int> parent(g.n);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (int i = 0; i < m; ++i)
        if (!drop[i]) {
          int a = find(classes[i].first), b = find(classes[i].second);
          if (a != b) parent[a] = b;
        }
      std::vector<u64> comp_mask(g.n, 0);
      for (int v = 0; v < g.n; ++v) comp_mask[find(v)] |= u64(1) << v;
      std::vector<u64> comps;
      for (int v = 0; v < g.n; ++v)
        if (comp_mask[v]) comps.push_back(comp_mask[v]);
      if (comps.size() < 2) return;
      for (u64 c : comps) {
        found.push_back(c);          // one component
        found.push_back(full & ~c);  // union of all but that one
      }
    };
    std::function<void(int, long long)> rec = [&](int start, long long budget) {
      process_removed();
      for (int i = start; i < m; ++i) {
        if (class_mult[i] > budget) continue;
        drop[i] = 1;
        rec(i + 1, budget - class_mult[i]);
        drop[i] = 0;
      }
    };
    rec(0, kmax);
  } else {
    // vertex cuts of size <= kmax
    std::vector<int> cut;
    std::function<void(int, int)> rec = [&](int first, int remaining) {
      (void)first;
      if (!cut.empty()) {
        u64 cmask = 0;
        for (int v : cut) cmask |= u64(1) << v;
        Components comps = components_after_removal(dg, cmask);
        if (comps.masks.size() >= 2) {
          u64 rest = full & ~cmask;
          for (u64 c : comps.masks) {
            found.push_back(c);
            found.push_back(rest & ~c);
          }
        }
      }
      if (remaining == 0) return;
      for (int v = (cut.empty() ? 0 : cut.back() + 1); v < g.n; ++v) {
        cut.push_back(v);
        rec(v + 1, remaining - 1);
        cut.pop_back();
      }
    };
    rec(0, kmax);
  }

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<VSet> out;
  for (u64 wmask : found)
    if (family_qualifies(dg, wmask, phi, vertex_mode, weighted,
                         std::numeric_limits<long long>::max()))
      out.push_back(mask_to_vset(wmask));
  return out;
}

std::vector<VSet> enumerate_sparse_family_subsets(const Graph &g, const Rat &phi, int kmax,
                                                  bool vertex_mode, bool weighted) {
  if (g.n > 20) throw OracleError("subset family enumeration supports n <= 20");
  DenseGraph dg(g);
  u64 full = (u64(1) << g.n) - 1;
  std::vector<VSet> out;
  for (u64 wmask = 1; wmask < full; ++wmask) {
    // membership in the definition's family
    bool member = false;
    if (!vertex_mode) {
      long long boundary = 0;
      for (u64 m = wmask; m; m &= m - 1) {
        int v = std::countr_zero(m);
        boundary += dg.deg[v] - dg.edges_into(v, wmask);
      }
      if (boundary <= kmax &&
          (mask_connected(dg, wmask) || mask_connected(dg, full & ~wmask)))
        member = true;
    } else {
      u64 nb = 0;
      for (u64 m = wmask; m; m &= m - 1) nb |= dg.adj[std::countr_zero(m)];
      nb &= ~wmask;
      u64 rest = full & ~wmask & ~nb;
      long long k = std::popcount(nb);
      // a component of G - N(W): needs some other component to exist,
      // otherwise N(W) is not a cut at all
      if (k <= kmax && rest != 0 && mask_connected(dg, wmask)) member = true;
      if (!member && rest != 0) {
        // union of all components but one: the excluded component must be a
        // single component, so everything else of `rest` joins the cut
        u64 left = rest;
        long long rest_size = std::popcount(rest);
        while (left) {
          int start = std::countr_zero(left);
          u64 comp = u64(1) << start;
          u64 frontier = comp;
          while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            u64 nxt = dg.adj[v] & rest & ~comp;
            comp |= nxt;
            frontier |= nxt;
          }
          if (k + rest_size - std::popcount(comp) <= kmax) {
            member = true;
            break;
          }
          left &= ~comp;
        }
      }
    }
    if (member && family_qualifies(dg, wmask, phi, vertex_mode, weighted,
                                   std::numeric_limits<long long>::max()))
      out.push_back(mask_to_vset(wmask));
  }
  return out;
}

SmallSetCertificate certify_small_set_expansion(const Graph &g, long long s, int exhaustive_bound,
                                                int threads, std::uint64_t sample_count,
                                                std::uint64_t seed) {
  if (g.n < 2) throw OracleError("certification needs n >= 2");
  s = std::min<long long>(s, g.n - 1);
  DenseGraph dg(g);
  u64 full = (u64(1) << g.n) - 1;
  SmallSetCertificate cert;
  if (g.n <= exhaustive_bound) {
    std::uint64_t enumerated = 0;
    Best best = enumerate_cuts(dg, threads, enumerated, [&](Best &local) {
      return [&local, &dg, full, s](u64 smask, long long size, long long boundary, long long) {
        if (smask == 0) return;
        long long small = std::min<long long>(size, dg.n - size);
        if (size <= s) local.offer(boundary, small, smask);
        if (dg.n - size <= s) local.offer(boundary, small, full ^ smask);
      };
    });
    cert.exhaustive = true;
    cert.min_sparsity = best.ratio;
    cert.argmin = mask_to_vset(best.mask);
    return cert;
  }
  // sampled evidence only
  std::mt19937_64 rng(seed);
  Best best;
  for (std::uint64_t i = 0; i < sample_count; ++i) {
    long long size = 1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(s));
    u64 smask = 0;
    while (std::popcount(smask) < size) smask |= u64(1) << (rng() % g.n);
    long long boundary = 0;
    for (u64 m = smask; m; m &= m - 1) {
      int v = std::countr_zero(m);
      boundary += dg.deg[v] - dg.edges_into(v, smask);
    }
    best.offer(boundary, std::min<long long>(std::popcount(smask), g.n - std::popcount(smask)),
               smask);
  }
  cert.exhaustive = false;
  cert.min_sparsity = best.ratio;
  cert.argmin = mask_to_vset(best.mask);
  return cert;
}

// --- generators ----------------------------------------------------------

Graph dumbbell(int a, int b) {
  if (a < 1 || b < 1) throw OracleError("dumbbell sides must be >= 1");
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = i + 1; j < a; ++j) g.add_edge(i, j);
  for (int i = 0; i < b; ++i)
    for (int j = i + 1; j < b; ++j) g.add_edge(a + i, a + j);
  g.add_edge(a - 1, a);
  g.finalize();
  return g;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  g.finalize();
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  g.finalize();
  return g;
}

Graph star_graph(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  g.finalize();
  return g;
}

Graph grid_graph(int rows, int cols) {
  Graph g(rows * cols);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
    }
  g.finalize();
  return g;
}

Graph incidence_graph(int k) {
  if (k < 2) throw OracleError("incidence graph needs k >= 2");
  int pairs = k * (k - 1) / 2;
  Graph g(pairs + k);
  int idx = 0;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) {
      g.add_edge(idx, pairs + u);
      g.add_edge(idx, pairs + v);
      ++idx;
    }
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) g.add_edge(pairs + u, pairs + v);
  g.finalize();
  return g;
}

namespace {

void make_connected(Graph &g, std::vector<std::pair<int, int>> &extra) {
  // join components along lowest ids
  std::vector<int> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Graph::Edge &e : g.edges) {
    int a = find(e.u), b = find(e.v);
    if (a != b) parent[a] = b;
  }
  int root = find(0);
  for (int v = 1; v < g.n; ++v) {
    int r = find(v);
    if (r != root) {
      extra.push_back({0, v});
      parent[r] = root;
      root = find(0);
    }
  }
}

}  // namespace

Graph planted_bisection(int n, double p, double q, std::uint64_t seed) {
  Graph g(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int half = n / 2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool same = (i < half) == (j < half);
      if (uni(rng) < (same ? p : q)) g.add_edge(i, j);
    }
  std::vector<std::pair<int, int>> extra;
  g.finalize();
  make_connected(g, extra);
  for (auto [u, v] : extra) g.add_edge(u, v);
  g.finalize();
  return g;
}

Graph random_connected(int n, double p, std::uint64_t seed) {
  return planted_bisection(n, p, p, seed);
}

Graph random_regular(int n, int d, std::uint64_t seed) {
  if (n * d % 2 != 0) throw OracleError("n*d must be even for a regular graph");
  if (d >= n) throw OracleError("degree must be below n");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<std::pair<int, int>> es;
    bool ok = true;
    std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v || seen[u][v]) {
        ok = false;
        break;
      }
      seen[u][v] = seen[v][u] = 1;
      es.push_back({u, v});
    }
    if (!ok) continue;
    Graph g(n);
    for (auto [u, v] : es) g.add_edge(u, v);
    g.finalize();
    if (g.is_connected()) return g;
  }
  throw OracleError("failed to sample a connected simple regular graph");
}

}  // namespace oracle
}  // namespace parcut
