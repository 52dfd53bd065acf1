#include "parcut/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "parcut/lp_rounding.hpp"
#include "parcut/oracle.hpp"
#include "parcut/sample_sets.hpp"

namespace parcut {
namespace pipe {

namespace {

double ln_clamped(double v) { return std::max(std::log(v), 1.0); }

Claim claim_rat(const std::string &name, const Rat &measured, const Rat &bound) {
  return {name, rat_str(bound), rat_str(measured), measured <= bound};
}

Claim claim_num(const std::string &name, double measured, double bound, double tol) {
  std::ostringstream mb, bb;
  mb << measured;
  bb << bound;
  return {name, bb.str(), mb.str(), measured <= bound + 10 * tol * std::max(1.0, std::abs(bound))};
}

// powers of two whose doubling range [v, 2v) covers [1, hi]: the last
// value is the first power reaching hi
std::vector<long long> pow2_grid(long long hi) {
  hi = std::max<long long>(1, hi);
  std::vector<long long> grid;
  long long v = 1;
  for (; v < hi; v *= 2) grid.push_back(v);
  grid.push_back(v);
  return grid;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = seed;
  for (std::uint64_t v : {a, b, c}) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// cache LP solutions across repeated guesses that share an instance
struct SseLpCache {
  std::map<std::tuple<VSet, long long, long long>, std::pair<lpround::SseLpInstance,
                                                             lpround::LpValues>>
      entries;

  const std::pair<lpround::SseLpInstance, lpround::LpValues> &get(
      const Graph &g, const VSet &t, const std::vector<long long> &x, long long s, long long ell,
      double tol) {
    auto key = std::make_tuple(t, s, ell);
    auto it = entries.find(key);
    if (it == entries.end()) {
      auto inst = lpround::build_sse_lp(g, t, x, s, ell);
      auto sol = lpround::solve_sse(inst, tol);
      it = entries.emplace(key, std::make_pair(std::move(inst), std::move(sol))).first;
    }
    return it->second;
  }
};

}  // namespace

// --- Small Set Expansion -----------------------------------------------------

ApproxResult sse_log_k(const Graph &g, const Rat &phi, long long s, const ParamSet &params) {
  if (phi <= Rat(0)) throw PipelineError("phi must be positive");
  if (s < 1 || 2 * s > g.n) throw PipelineError("s out of range [1, n/2]");
  if (!params.valid()) throw PipelineError("invalid parameter set");

  ApproxResult result;
  result.seed = params.seed;

  long long k_hi = 1;
  {
    Rat ks = phi * s;
    k_hi = std::max<long long>(1, ks.numerator() / ks.denominator());
  }

  struct Candidate {
    VSet y;
    long long boundary;
    double lp;
    long long ell;
  };
  std::optional<Candidate> best;
  bool all_guesses_exclude = true;  // every grid LP certifies emptiness
  bool fallback_everywhere = true;
  SseLpCache cache;
  std::uint64_t guess_no = 0;

  for (long long k : pow2_grid(k_hi)) {
    Rat phi2 = Rat(params.c) * phi * Rat(static_cast<long long>(
                                             std::ceil(ln_clamped(static_cast<double>(k)))));
    auto ss = sample::edge_sample_set(g, params.eps, phi2);
    if (ss.kind != sample::SampleKind::Fallback) fallback_everywhere = false;
    VSet t = ss.terminals;
    std::vector<long long> x(g.n, 0);
    for (size_t i = 0; i < t.size(); ++i) x[t[i]] = ss.weight[i];
    long long xtotal = std::accumulate(x.begin(), x.end(), 0LL);

    // terminal budget from the sample condition
    Rat sprime_r = (Rat(1) + ss.eps_effective) * Rat(s) * xtotal / g.n;
    long long sprime = std::min<long long>(
        xtotal, std::max<long long>(1, sprime_r.numerator() / sprime_r.denominator() + 1));
    // the (s, ell) pair is feasible only up to s times the largest weight
    long long max_x = *std::max_element(x.begin(), x.end());
    long long ell_cap = std::min(sprime, s * std::max<long long>(1, max_x));
    std::vector<long long> ell_grid = pow2_grid(ell_cap);
    for (long long &e : ell_grid) e = std::min(e, ell_cap);
    ell_grid.erase(std::unique(ell_grid.begin(), ell_grid.end()), ell_grid.end());

    for (long long ell : ell_grid) {
      ++guess_no;
      GuessRecord rec;
      rec.k = k;
      rec.s = s;
      rec.ell = ell;
      rec.phi = phi2;
      try {
        const auto &[inst, sol] = cache.get(g, t, x, s, ell, params.lp_tol);
        rec.lp_value = sol.objective;
        // certificate of emptiness for this grid point (fallback path only)
        bool excludes =
            ss.kind == sample::SampleKind::Fallback &&
            sol.objective > rat_double(2 * phi * ell) * (1 + 10 * params.lp_tol) + 10 * params.lp_tol;
        if (!excludes) all_guesses_exclude = false;

        bool found_here = false;
        for (int attempt = 0; attempt <= params.retries && !found_here; ++attempt) {
          std::mt19937_64 rng(mix_seed(params.seed, guess_no, attempt, 17));
          try {
            auto rr = lpround::round_sse(g, inst, sol, rng);
            if (static_cast<int>(rr.y_set.size()) >= g.n) continue;  // degenerate
            Candidate cand{rr.y_set, rr.boundary, sol.objective, ell};
            if (!best || Rat(cand.boundary, cand.y.size()) <
                             Rat(best->boundary, best->y.size()) ||
                (Rat(cand.boundary, cand.y.size()) == Rat(best->boundary, best->y.size()) &&
                 cand.y < best->y)) {
              // only adopt candidates within the size contract
              if (static_cast<long long>(cand.y.size()) <= 10 * s) best = cand;
            }
            found_here = true;
          } catch (const lpround::RandomizedFailure &) {
          }
        }
        rec.outcome = found_here ? "cut" : "rounding-exhausted";
      } catch (const GraphError &e) {
        rec.outcome = std::string("error: ") + e.what();
      }
      result.transcript.push_back(rec);
    }
  }

  if (!best) {
    if (all_guesses_exclude && fallback_everywhere) {
      result.status = Status::NoSuchSet;
      result.note = "every grid LP exceeded 2 phi ell";
    } else {
      result.status = Status::RandomizedFailure;
    }
    return result;
  }

  result.status = Status::Found;
  result.cut = make_edge_cut(g, best->y);
  long long weight = static_cast<long long>(best->y.size());  // unit weights on T = V path
  result.claims.push_back(
      claim_rat("size <= 10 s", Rat(static_cast<long long>(best->y.size())), Rat(10 * s)));
  double lnl = ln_clamped(static_cast<double>(best->ell));
  result.claims.push_back(claim_num("boundary <= 200 ln(ell) LP x(Y)/ell",
                                    static_cast<double>(best->boundary),
                                    200.0 * lnl * best->lp * weight / best->ell, params.lp_tol));
  result.ratio_bound = 400.0 * lnl;
  for (const Claim &c : result.claims)
    if (!c.holds) throw PipelineError("claimed bound failed recomputation: " + c.name);
  return result;
}

// --- Sparsest Cut via the game -----------------------------------------------

namespace {

// cheapest always-available cut: best singleton by degree
VSet best_singleton(const Graph &g) {
  int arg = 0;
  long long bestdeg = g.degree(0);
  for (int v = 1; v < g.n; ++v) {
    long long d = g.degree(v);
    if (d < bestdeg) {
      bestdeg = d;
      arg = v;
    }
  }
  return {arg};
}

}  // namespace

ApproxResult sparsest_cut_cut_matching(const Graph &g, const ParamSet &params) {
  if (!g.is_connected()) throw PipelineError("graph must be connected");
  if (g.n < 2) throw PipelineError("need at least two vertices");
  ApproxResult result;
  result.seed = params.seed;

  struct Candidate {
    VSet side;
    Rat sparsity;
  };
  auto better = [](const Candidate &a, const Candidate &b) {
    return a.sparsity < b.sparsity || (a.sparsity == b.sparsity && a.side < b.side);
  };
  Candidate best{best_singleton(g), sparsity(g, best_singleton(g))};

  // descending geometric grid over the sparsity target
  long long maxdeg = std::max<long long>(1, g.max_degree());
  std::vector<Rat> grid;
  for (Rat level(2 * maxdeg); level * static_cast<long long>(g.n) * g.n >= Rat(1); level /= 2)
    grid.push_back(level);

  VSet t = vset_complement(g.n, {});
  long long s_game = std::max<long long>(1, t.size() / 2);

  for (const Rat &level : grid) {
    GuessRecord rec;
    rec.phi = level;
    rec.s = s_game;
    auto game = cm::run_game(g, t, level, s_game, params, cm::GameKind::Edge);
    if (game.found_cut) {
      Candidate cand{game.cut.side, sparsity(g, game.cut.side)};
      if (better(cand, best)) best = cand;
      rec.outcome = "cut " + rat_str(cand.sparsity);
    } else {
      rec.outcome = "certificate " + rat_str(game.certificate.expansion_lower);
      result.certificate_lower = game.certificate.expansion_lower;
      result.certificate_phi = game.certificate.phi_used;
      result.transcript.push_back(rec);
      break;  // the optimum is bracketed; lower levels only loosen the bound
    }
    result.transcript.push_back(rec);
  }

  result.status = Status::Found;
  result.cut = make_edge_cut(g, best.side);
  result.claims.push_back(claim_rat("sparsity recomputed", result.cut.sparsity, best.sparsity));
  if (result.certificate_lower > Rat(0)) {
    result.claims.push_back(
        claim_rat("certificate below output", result.certificate_lower, result.cut.sparsity));
    result.ratio_bound = rat_double(result.cut.sparsity / result.certificate_lower);
  }
  for (const Claim &c : result.claims)
    if (!c.holds) throw PipelineError("claimed bound failed recomputation: " + c.name);
  return result;
}

// --- Vertex Sparsest Cut ------------------------------------------------------

namespace {

// best trivial vertex cut of the form ({v}, N(v), rest)
std::optional<VertexCut> best_neighborhood_cut(const Graph &g) {
  std::optional<VertexCut> best;
  for (int v = 0; v < g.n; ++v) {
    VSet nb = neighbors(g, {v});
    if (static_cast<int>(nb.size()) + 1 >= g.n) continue;
    VertexCut c = vertex_cut_from_set(g, {v});
    if (!best || c.sparsity < best->sparsity) best = c;
  }
  return best;
}

// Theorem-style component post-processing: split G - C into two sides, both
// as large as the sample condition allows.
std::optional<VertexCut> repartition_components(const Graph &g, const VSet &separator) {
  std::vector<char> removed(g.n, 0);
  for (int v : separator) removed[v] = 1;
  auto adj = g.adjacency();
  std::vector<VSet> comps;
  std::vector<char> seen(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    if (removed[v] || seen[v]) continue;
    VSet comp;
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (auto [w, m] : adj[u])
        if (!removed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  if (comps.size() < 2) return std::nullopt;
  std::sort(comps.begin(), comps.end(), [](const VSet &a, const VSet &b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  VSet a, b;
  for (const VSet &comp : comps) {
    if (a.size() <= b.size())
      a = vset_union(a, comp);
    else
      b = vset_union(b, comp);
  }
  return make_vertex_cut(g, a, separator, b);
}

ApproxResult vertex_pipeline(const Graph &g, const ParamSet &params, bool use_game) {
  if (!g.is_connected()) throw PipelineError("graph must be connected");
  if (g.n < 3) throw PipelineError("need at least three vertices");
  ApproxResult result;
  result.vertex = true;
  result.seed = params.seed;

  auto trivial = best_neighborhood_cut(g);
  if (!trivial) {
    result.status = Status::NoSuchSet;
    result.note = "no vertex cut exists (complete graph)";
    return result;
  }
  VertexCut best = *trivial;
  auto offer = [&](const VertexCut &c) {
    if (c.sparsity < best.sparsity) best = c;
  };

  VSet t = vset_complement(g.n, {});
  std::uint64_t guess_no = 0;

  if (!use_game) {
    std::map<long long, std::pair<lpround::VertexLpInstance, lpround::LpValues>> cache;
    for (long long sp : pow2_grid(std::max<long long>(1, g.n / 2))) {
      ++guess_no;
      GuessRecord rec;
      rec.s = sp;
      try {
        auto it = cache.find(sp);
        if (it == cache.end()) {
          auto inst = lpround::build_vertex_lp(g, t, sp);
          auto sol = lpround::solve_vertex(inst, params.lp_tol);
          it = cache.emplace(sp, std::make_pair(std::move(inst), std::move(sol))).first;
        }
        const auto &[inst, sol] = it->second;
        rec.lp_value = sol.objective;
        bool found_here = false;
        for (int attempt = 0; attempt <= params.retries && !found_here; ++attempt) {
          std::mt19937_64 rng(mix_seed(params.seed, guess_no, attempt, 31));
          try {
            auto rr = lpround::round_vertex(g, inst, sol, rng);
            found_here = true;
            offer(rr.cut);
            // Component post-processing. With T = V an oversized component
            // would put the carved side inside the small remainder, which
            // contradicts alpha > 2; assert it.
            {
              std::vector<char> removed(g.n, 0);
              for (int v : rr.cut.separator) removed[v] = 1;
              long long largest = 0, cur = 0;
              std::vector<char> seen(g.n, 0);
              auto adj = g.adjacency();
              for (int v = 0; v < g.n; ++v) {
                if (removed[v] || seen[v]) continue;
                cur = 0;
                std::vector<int> stack{v};
                seen[v] = 1;
                while (!stack.empty()) {
                  int u = stack.back();
                  stack.pop_back();
                  ++cur;
                  for (auto [w, m] : adj[u])
                    if (!removed[w] && !seen[w]) {
                      seen[w] = 1;
                      stack.push_back(w);
                    }
                }
                largest = std::max(largest, cur);
              }
              Rat s2(static_cast<long long>(rr.u_set.size()));
              if (Rat(largest) > Rat(g.n) - s2 / params.alpha)
                throw PipelineError("sample condition violated by an oversized component");
            }
            auto post = repartition_components(g, rr.cut.separator);
            if (!post)
              throw PipelineError("separator left a single component");
            offer(*post);
          } catch (const lpround::RandomizedFailure &) {
          }
        }
        rec.outcome = found_here ? "cut" : "rounding-exhausted";
      } catch (const GraphError &e) {
        rec.outcome = std::string("error: ") + e.what();
      }
      result.transcript.push_back(rec);
    }
  } else {
    long long s_game = std::max<long long>(1, g.n / 2);
    std::vector<Rat> grid;
    for (Rat level(1, 2); level * static_cast<long long>(g.n) * 4 >= Rat(1); level /= 2)
      grid.push_back(level);
    for (const Rat &level : grid) {
      GuessRecord rec;
      rec.phi = level;
      rec.s = s_game;
      auto game = cm::run_game(g, t, level, s_game, params, cm::GameKind::Vertex);
      if (game.found_cut) {
        offer(game.vertex_cut);
        auto post = repartition_components(g, game.vertex_cut.separator);
        if (post) offer(*post);
        rec.outcome = "cut " + rat_str(game.vertex_cut.sparsity);
      } else {
        rec.outcome = "certificate " + rat_str(game.certificate.expansion_lower);
        result.certificate_lower = game.certificate.expansion_lower;
        result.certificate_phi = game.certificate.phi_used;
        result.transcript.push_back(rec);
        break;
      }
      result.transcript.push_back(rec);
    }
  }

  result.status = Status::Found;
  result.vertex_cut = make_vertex_cut(g, best.left, best.separator, best.right);
  result.claims.push_back(
      claim_rat("sparsity recomputed", result.vertex_cut.sparsity, best.sparsity));
  for (const Claim &c : result.claims)
    if (!c.holds) throw PipelineError("claimed bound failed recomputation: " + c.name);
  return result;
}

}  // namespace

ApproxResult vertex_sparsest_cut_lp(const Graph &g, const ParamSet &params) {
  return vertex_pipeline(g, params, false);
}

ApproxResult vertex_sparsest_cut_cut_matching(const Graph &g, const ParamSet &params) {
  return vertex_pipeline(g, params, true);
}

// --- weighted unbalanced cut ---------------------------------------------------

ApproxResult weighted_unbalanced_cut(const Graph &g, const std::vector<Rat> &y, const Rat &tau,
                                     const Rat &rho_frac, const ParamSet &params) {
  if (static_cast<int>(y.size()) != g.n) throw PipelineError("one weight per vertex required");
  if (tau < Rat(0) || tau > Rat(1) || rho_frac <= Rat(0) || rho_frac > Rat(1))
    throw PipelineError("tau and rho must lie in [0,1]");
  ApproxResult result;
  result.seed = params.seed;

  // clear rational weights to integers
  long long scale = 1;
  for (const Rat &w : y) {
    if (w < Rat(0)) throw PipelineError("weights must be nonnegative");
    scale = std::lcm(scale, w.denominator());
  }
  std::vector<long long> mu(g.n);
  long long total = 0;
  for (int v = 0; v < g.n; ++v) {
    Rat scaled = y[v] * scale;
    mu[v] = scaled.numerator() / scaled.denominator();
    total += mu[v];
  }
  Rat rho_n = rho_frac * g.n;
  long long s_max = rho_n.numerator() / rho_n.denominator();
  if (s_max < 1 || total < 1) {
    result.status = Status::NoSuchSet;
    result.note = "parameters admit no candidate set";
    return result;
  }
  const long long gamma = 40;
  Rat need = tau * total / gamma;  // y(S') >= tau y(V) / gamma, at scale

  struct Candidate {
    VSet side;
    long long boundary;
    long long weight;
    long long s_guess;
    double log_factor;
  };
  std::optional<Candidate> best;
  SseLpCache cache;
  std::set<std::tuple<VSet, long long, long long>> attempted;
  std::uint64_t guess_no = 0;

  for (long long s : pow2_grid(s_max)) {
    if (s > s_max) break;
    for (long long ell : pow2_grid(total)) {
      for (long long opt_guess : pow2_grid(std::max<long long>(1, g.edge_count()))) {
        ++guess_no;
        GuessRecord rec;
        rec.s = s;
        rec.ell = ell;
        rec.k = opt_guess;
        Rat phi_mu(opt_guess, ell);
        Rat phi2 = Rat(params.C) * phi_mu *
                   Rat(static_cast<long long>(std::ceil(ln_clamped(static_cast<double>(opt_guess)))));
        try {
          auto ss = sample::weighted_sample_set(g, mu, params.eps, phi2);
          std::vector<long long> x(g.n, 0);
          for (size_t i = 0; i < ss.terminals.size(); ++i) x[ss.terminals[i]] = ss.weight[i];
          long long alpha_total = ss.total_weight();
          // target alpha(S): map ell through the sample ratio
          Rat la = Rat(ell) * alpha_total / total;
          long long ell_a = std::max<long long>(1, la.numerator() / la.denominator());
          long long max_alpha = 0;
          for (long long w : x) max_alpha = std::max(max_alpha, w);
          ell_a = std::min(ell_a, s * std::max<long long>(1, max_alpha));
          if (ell_a > alpha_total) {
            rec.outcome = "infeasible target";
            result.transcript.push_back(rec);
            continue;
          }
          if (!attempted.insert(std::make_tuple(ss.terminals, s, ell_a)).second) {
            rec.outcome = "duplicate grid point";
            result.transcript.push_back(rec);
            continue;
          }
          const auto &[inst, sol] = cache.get(g, ss.terminals, x, s, ell_a, params.lp_tol);
          rec.lp_value = sol.objective;
          bool found_here = false;
          for (int attempt = 0; attempt <= params.retries && !found_here; ++attempt) {
            std::mt19937_64 rng(mix_seed(params.seed, guess_no, attempt, 71));
            try {
              auto rr = lpround::round_sse(g, inst, sol, rng);
              found_here = true;
              if (static_cast<int>(rr.y_set.size()) >= g.n) continue;
              long long wy = 0;
              for (int v : rr.y_set) wy += mu[v];
              if (Rat(wy) < need) continue;  // gamma guarantee
              if (Rat(static_cast<long long>(rr.y_set.size())) > Rat(10) * rho_n)
                continue;  // beta
              Candidate cand{rr.y_set, rr.boundary, wy, s,
                             ln_clamped(static_cast<double>(ell_a))};
              if (!best || cand.boundary < best->boundary ||
                  (cand.boundary == best->boundary && cand.side < best->side))
                best = cand;
            } catch (const lpround::RandomizedFailure &) {
            }
          }
          rec.outcome = found_here ? "cut" : "rounding-exhausted";
        } catch (const GraphError &e) {
          rec.outcome = std::string("error: ") + e.what();
        }
        result.transcript.push_back(rec);
      }
    }
  }

  if (!best) {
    result.status = Status::RandomizedFailure;
    result.note = "no guess produced a qualifying set";
    return result;
  }
  result.status = Status::Found;
  result.cut = make_edge_cut(g, best->side);
  result.claims.push_back(claim_rat("size <= 10 rho n",
                                    Rat(static_cast<long long>(best->side.size())),
                                    Rat(10) * rho_n));
  result.claims.push_back(claim_rat("weight >= tau y(V)/gamma", need, Rat(best->weight)));
  for (const Claim &c : result.claims)
    if (!c.holds) throw PipelineError("claimed bound failed recomputation: " + c.name);
  return result;
}

}  // namespace pipe
}  // namespace parcut
