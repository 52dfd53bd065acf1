#include <doctest.h>

#include <random>

#include "parcut/cut_matching.hpp"
#include "parcut/oracle.hpp"

using namespace parcut;
using namespace parcut::cm;

TEST_CASE("balanced sparse cut, exact mode") {
  SUBCASE("4-cycle has a balanced sparse cut at psi = 1") {
    Graph c4(4);
    c4.add_edge(0, 1);
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(3, 0);
    c4.finalize();
    auto r = balanced_sparse_cut(c4, Rat(1, 100), Rat(1), false);
    CHECK(r.balanced);
  }
  SUBCASE("K6 at psi = 1/100 yields the empty overlap set") {
    auto r = balanced_sparse_cut(oracle::complete_graph(6), Rat(1, 8), Rat(1, 100), false);
    CHECK_FALSE(r.balanced);
    CHECK(r.overlap.empty());
  }
  SUBCASE("dumbbell splits at the clique") {
    Graph g = oracle::dumbbell(8, 8);
    // bridge conductance = 1/57; clique side conductance much larger
    auto r = balanced_sparse_cut(g, Rat(1, 8), Rat(1, 40), false);
    REQUIRE(r.balanced);
    CHECK(r.w == VSet{0, 1, 2, 3, 4, 5, 6, 7});
  }
  SUBCASE("heuristic sweep matches the exact contract on the dumbbell") {
    Graph g = oracle::dumbbell(8, 8);
    auto exact = balanced_sparse_cut(g, Rat(1, 8), Rat(1, 40), false);
    auto sweep = balanced_sparse_cut(g, Rat(1, 8), Rat(1, 40), true);
    REQUIRE(sweep.balanced);
    CHECK(conductance(g, sweep.w) <= Rat(1, 40));
    CHECK(sweep.w == exact.w);
  }
}

TEST_CASE("improve_cut") {
  SUBCASE("precondition violations are rejected with the measured value") {
    Graph g = oracle::complete_graph(8);
    VSet half{0, 1, 2, 3};
    CHECK_THROWS_AS(improve_cut(g, half, 2, Rat(1, 8), Rat(1, 8)), PreconditionError);
  }
  SUBCASE("fully routable side stays put") {
    // dumbbell side: boundary 1 routes into the K8's sink capacity
    Graph g = oracle::dumbbell(8, 8);
    VSet left{0, 1, 2, 3, 4, 5, 6, 7};
    auto res = improve_cut(g, left, 2, Rat(1, 8), Rat(1, 8));
    CHECK(res.q == left);
    CHECK(res.removed == 0);
  }
  SUBCASE("contract on oracle-enumerated sparse sets") {
    // 2xK6 dumbbell: for every S below the test threshold,
    // |delta_{H[S]}(Q cap S)| <= |S|/D at a consistent (rho, thresh, D):
    // the counting argument gives |S| (1/rho^2 + thresh) <= |S|/D
    Graph h = oracle::dumbbell(6, 6);
    VSet w{0, 1, 2, 3, 4, 5};
    long long rho = 2;
    long long D = 2;
    Rat test_threshold(1, 6);
    auto res = improve_cut(h, w, rho, Rat(1, 6), Rat(1, 8));
    // counting bound: |Q| >= |W| - rho^2 |delta(W)|
    CHECK(static_cast<long long>(res.q.size()) >=
          static_cast<long long>(w.size()) - rho * rho * res.boundary_w);
    for (unsigned mask = 1; mask + 1 < (1u << h.n); ++mask) {
      VSet s_set;
      for (int v = 0; v < h.n; ++v)
        if (mask >> v & 1) s_set.push_back(v);
      if (2 * s_set.size() > static_cast<size_t>(h.n)) continue;
      if (sparsity(h, s_set) > test_threshold) continue;
      auto sub = induced_subgraph(h, s_set);
      VSet q_in;
      for (size_t i = 0; i < s_set.size(); ++i)
        if (vset_contains(res.q, s_set[i])) q_in.push_back(static_cast<int>(i));
      long long cut_inside = (q_in.empty() || q_in.size() == s_set.size())
                                 ? 0
                                 : boundary_size(sub.graph, q_in);
      CHECK(Rat(cut_inside) * D <= Rat(static_cast<long long>(s_set.size())));
    }
  }
}

TEST_CASE("cut player round shapes") {
  ParamSet params;
  SUBCASE("edgeless start goes through the balanced branch") {
    Graph h(8);
    h.finalize();
    auto round = cut_player_round(h, params);
    CHECK_FALSE(round.overlap_branch);
    CHECK(round.pairs.size() >= 2);
    for (const auto &p : round.pairs) {
      long long diff = std::llabs(static_cast<long long>(p.x.size()) -
                                  static_cast<long long>(p.y.size()));
      CHECK(diff <= 1);
      CHECK(vset_intersect(p.x, p.y).empty());
    }
  }
  SUBCASE("complete graph goes through the overlap branch") {
    auto round = cut_player_round(oracle::complete_graph(8), params);
    CHECK(round.overlap_branch);
    CHECK(round.pairs.size() == 1);
    CHECK(round.pairs[0].kind == GamePair::Bisection);
  }
  SUBCASE("odd vertex count keeps pair sizes within one") {
    Graph h(9);
    h.finalize();
    auto round = cut_player_round(h, params);
    for (const auto &p : round.pairs) {
      long long diff = std::llabs(static_cast<long long>(p.x.size()) -
                                  static_cast<long long>(p.y.size()));
      CHECK(diff <= 1);
    }
  }
}

TEST_CASE("matching player dichotomy") {
  SUBCASE("dumbbell forces the bridge cut") {
    Graph g = oracle::dumbbell(5, 5);
    VSet t = vset_complement(g.n, {});
    auto out = matching_player_round(g, t, Rat(1), {0, 1}, {5, 6});
    REQUIRE(out.sparse_cut);
    CHECK(out.cut.has_terminal_sparsity);
    CHECK(out.cut.terminal_sparsity <= ExtRat(Rat(1)));
  }
  SUBCASE("complete graph always matches") {
    Graph g = oracle::complete_graph(8);
    VSet t = vset_complement(g.n, {});
    auto out = matching_player_round(g, t, Rat(1, 4), {0, 1, 2, 3}, {4, 5, 6, 7});
    REQUIRE_FALSE(out.sparse_cut);
    CHECK(out.record.matching.size() == 4);
    // embedding feasible at congestion 1/phi'
    std::vector<Demand> demands;
    for (const auto &mp : out.record.matching) demands.push_back({mp.a, mp.b, 1, mp.path});
    CHECK(verify_embedding(g, demands, out.record.congestion).feasible);
  }
  SUBCASE("empty pair gives an empty matching") {
    Graph g = oracle::complete_graph(4);
    VSet t = vset_complement(g.n, {});
    auto out = matching_player_round(g, t, Rat(1), {}, {});
    CHECK_FALSE(out.sparse_cut);
    CHECK(out.record.matching.empty());
  }
  SUBCASE("vertex player: star center is the bottleneck") {
    Graph g = oracle::star_graph(8);
    VSet t;
    for (int v = 1; v <= 8; ++v) t.push_back(v);
    auto out = vertex_matching_player_round(g, t, Rat(1, 2), {1, 2, 3, 4}, {5, 6, 7, 8});
    REQUIRE(out.sparse_cut);
    CHECK(out.vertex_cut.separator == VSet{0});
    CHECK(vertex_terminal_sparsity(g, t, out.vertex_cut) <= ExtRat(Rat(1, 2)));
  }
  SUBCASE("vertex player matches on the complete graph") {
    Graph g = oracle::complete_graph(8);
    VSet t = vset_complement(g.n, {});
    auto out = vertex_matching_player_round(g, t, Rat(1, 8), {0, 1, 2, 3}, {4, 5, 6, 7});
    REQUIRE_FALSE(out.sparse_cut);
    CHECK(out.record.matching.size() == 4);
  }
  SUBCASE("singleton pair over one edge") {
    Graph g = oracle::path_graph(2);
    VSet t{0, 1};
    auto out = vertex_matching_player_round(g, t, Rat(1), {0}, {1});
    REQUIRE_FALSE(out.sparse_cut);
    CHECK(out.record.matching.size() == 1);
  }
}

TEST_CASE("randomized matching dichotomy trials") {
  std::mt19937_64 rng(2024);
  int cuts = 0, matchings = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 8 + static_cast<int>(rng() % 6);
    Graph g = oracle::random_connected(n, 0.35, 5000 + trial);
    VSet t = vset_complement(n, {});
    // random disjoint equal-size pair
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    int half = 1 + static_cast<int>(rng() % (n / 2));
    VSet x(perm.begin(), perm.begin() + half);
    VSet y(perm.begin() + half, perm.begin() + 2 * half);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    Rat phi(1, 1 + static_cast<long long>(rng() % 4));
    auto out = (trial % 2 == 0) ? matching_player_round(g, t, phi, x, y)
                                : vertex_matching_player_round(g, t, phi, x, y);
    if (out.sparse_cut) {
      ++cuts;
      if (trial % 2 == 0)
        CHECK(out.cut.terminal_sparsity <= ExtRat(phi));
      else
        CHECK(vertex_terminal_sparsity(g, t, out.vertex_cut) <= ExtRat(phi));
    } else {
      ++matchings;
      CHECK(out.record.matching.size() == x.size());
      VSet left, right;
      for (const auto &mp : out.record.matching) {
        left.push_back(mp.a);
        right.push_back(mp.b);
      }
      std::sort(left.begin(), left.end());
      std::sort(right.begin(), right.end());
      CHECK(left == x);
      CHECK(right == y);
    }
  }
  CHECK(cuts > 0);
  CHECK(matchings > 0);
}

TEST_CASE("potential tracker") {
  SUBCASE("two vertices fully mix to 2 log 2") {
    PotentialTracker tr({0, 1}, 4);
    CHECK(tr.phi() == 0.0);
    tr.step({{0, 1}});
    CHECK(tr.phi() == doctest::Approx(2 * std::log(2)));
    CHECK(tr.phi() <= tr.upper_bound() + 1e-12);
  }
  SUBCASE("matching outside the set leaves the potential unchanged") {
    PotentialTracker tr({0, 1}, 4);
    tr.step({{0, 2}});
    CHECK(tr.phi() == 0.0);
    CHECK(tr.would_leak() > 0.0);
  }
  SUBCASE("non-decreasing across random matchings") {
    std::mt19937_64 rng(5);
    PotentialTracker tr({0, 1, 2, 3, 4, 5}, 12);
    double last = 0;
    for (int round = 0; round < 30; ++round) {
      std::vector<int> perm(12);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::pair<int, int>> matched;
      for (int i = 0; i < 12; i += 2) matched.push_back({perm[i], perm[i + 1]});
      tr.step(matched);
      CHECK(tr.phi() >= last - 1e-9);
      last = tr.phi();
    }
    CHECK(last <= tr.upper_bound() + 1e-9);
  }
}

TEST_CASE("run_game on the dumbbell finds the bridge immediately") {
  Graph g = oracle::dumbbell(5, 5);
  VSet t = vset_complement(g.n, {});
  ParamSet params;
  auto res = run_game(g, t, Rat(1), 5, params);
  REQUIRE(res.found_cut);
  CHECK(res.cut.terminal_sparsity <= ExtRat(Rat(1)));
  CHECK(res.trace.size() == 1);
}

TEST_CASE("run_game on K16 certifies small-set expansion") {
  Graph g = oracle::complete_graph(16);
  VSet t = vset_complement(g.n, {});
  ParamSet params;
  VSet tracked{0, 1, 2, 3, 4, 5, 6, 7};
  auto res = run_game(g, t, Rat(1, 64), 8, params, GameKind::Edge, tracked);
  REQUIRE_FALSE(res.found_cut);
  const auto &cert = res.certificate;
  CHECK(cert.rounds <= 31);  // ceil(10 log2 8) + 1
  CHECK(cert.exhaustive);
  CHECK(cert.matchings > 0);
  // the certified bound is exactly h_min * phi' / matchings
  CHECK(cert.expansion_lower == cert.h_min_sparsity * cert.phi_used / cert.matchings);
  // H itself expands at 1/(c log2 s) with c = 8, s = 8
  auto chk = certify_small_set_expansion(cert.h, 8, Rat(1, 24));
  CHECK(chk.certified);
  // exhaustive oracle on G: every set with at most 8 terminals is expanding
  // at the certified bound
  auto worst = oracle::exact_sse(g, 8);
  CHECK(Rat(worst.optimum) >= cert.expansion_lower);
  // potential stayed within bounds on every round (asserted inside step too)
  double last = -1;
  for (const auto &rec : res.trace) {
    CHECK(rec.potential >= last - 1e-9);
    last = rec.potential;
  }
}

TEST_CASE("run_game vertex variant certifies or cuts") {
  SUBCASE("glued cliques produce a vertex cut") {
    Graph g(13);
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j) g.add_edge(i, j);
    for (int i = 6; i < 13; ++i)
      for (int j = i + 1; j < 13; ++j) g.add_edge(i, j);
    g.finalize();
    VSet t = vset_complement(g.n, {});
    ParamSet params;
    auto res = run_game(g, t, Rat(1, 3), 6, params, GameKind::Vertex);
    REQUIRE(res.found_cut);
    CHECK(vertex_terminal_sparsity(g, t, res.vertex_cut) <= ExtRat(Rat(1, 3)));
  }
  SUBCASE("complete graph certifies") {
    Graph g = oracle::complete_graph(12);
    VSet t = vset_complement(g.n, {});
    ParamSet params;
    auto res = run_game(g, t, Rat(1, 48), 6, params, GameKind::Vertex);
    CHECK_FALSE(res.found_cut);
    CHECK(res.certificate.matchings > 0);
  }
}
