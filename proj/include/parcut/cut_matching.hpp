#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parcut/flow.hpp"
#include "parcut/graph.hpp"
#include "parcut/params.hpp"

namespace parcut {
namespace cm {

struct GameError : GraphError {
  using GraphError::GraphError;
};
struct PreconditionError : GameError {
  using GameError::GameError;
};

// --- balanced sparse cuts -------------------------------------------------

struct BalancedCutResult {
  bool balanced = false;  // a b/4-balanced cut of conductance <= psi exists
  VSet w;                 // the cut side (balanced case: most balanced side)
  VSet overlap;           // Y': small side of the most balanced qualifying cut
  Rat conductance{0};
};

// Exact mode enumerates every cut; heuristic mode sweeps the second
// Laplacian eigenvector and is validated against the exact contract where
// the size permits.
BalancedCutResult balanced_sparse_cut(const Graph &h, const Rat &b, const Rat &psi,
                                      bool heuristic, int exact_bound = 20);

// --- ImproveCut -------------------------------------------------------------

struct ImproveCutResult {
  VSet q;                     // improved side (subset of w)
  long long flow = 0;         // max-flow at scale rho^2
  long long removed = 0;      // |R| = vertices moved across
  long long boundary_w = 0;   // |delta_H(W)|
};

// Single max-flow post-processing: subdivide the boundary of (w, V-w), route
// source mass through vertex sinks of capacity 1/rho^2, and peel the
// residual-reachable part off w.
ImproveCutResult improve_cut(const Graph &h, const VSet &w, long long rho,
                             const Rat &precondition_sparsity, const Rat &balance_floor);

// --- cut player -------------------------------------------------------------

struct GamePair {
  VSet x, y;
  enum Kind { Bisection, Cover, Filler } kind = Bisection;
};

struct CutPlayerRound {
  std::vector<GamePair> pairs;
  bool overlap_branch = false;
  VSet overlap_set;  // Y' (possibly empty)
  VSet q;            // balanced branch: the improved cut
  Rat psi{0};
  long long max_degree = 0;
};

CutPlayerRound cut_player_round(const Graph &h, const ParamSet &params);

// --- matching player --------------------------------------------------------

struct MatchingRecord {
  Matching matching;   // host-graph endpoints and routing paths
  Rat phi_used{0};     // unit fraction actually solved at
  Rat congestion{0};   // 1/phi_used
};

struct MatchingOutcome {
  bool sparse_cut = false;
  EdgeCut cut;           // edge player
  VertexCut vertex_cut;  // vertex player
  MatchingRecord record;
};

// Single max-flow: either a perfect matching of pair.x to pair.y embedded at
// congestion 1/phi', or a phi'-terminal sparse cut. phi' is floored to a
// unit fraction so capacities and the path decomposition stay integral.
MatchingOutcome matching_player_round(const Graph &g, const VSet &t, const Rat &phi,
                                      const VSet &x, const VSet &y);
MatchingOutcome vertex_matching_player_round(const Graph &g, const VSet &t, const Rat &phi,
                                             const VSet &x, const VSet &y);

// --- entropy potential -------------------------------------------------------

// Lemma-style diagnostic: mass matrix over a tracked set, averaged across
// matched pairs inside the set; the entropy sum never decreases and stays
// below |S| log |S|.
class PotentialTracker {
 public:
  PotentialTracker(const VSet &tracked, int n);

  // matching edges in tracker index space (pairs of H vertices)
  void step(const std::vector<std::pair<int, int>> &matched);

  double phi() const { return phi_; }
  double last_increase() const { return last_increase_; }
  double upper_bound() const;
  const VSet &tracked() const { return tracked_; }
  double would_leak() const { return would_leak_; }

 private:
  VSet tracked_;
  std::vector<int> index_;  // vertex -> row, -1 outside
  std::vector<std::vector<Rat>> mass_;
  double phi_ = 0, last_increase_ = 0, would_leak_ = 0;

  double entropy() const;
};

// --- game driver -------------------------------------------------------------

enum class GameKind { Edge, Vertex };

struct RoundRecord {
  int round = 0;
  Rat psi{0};
  std::string branch;  // "balanced" | "overlap"
  std::vector<std::pair<long long, long long>> pair_sizes;
  std::vector<long long> matching_sizes;
  double potential = 0;
  double potential_increase = 0;
  bool q_balanced_sparse_for_tracked = false;  // diagnostic for the tracked set
  bool matching_stayed_inside = false;
};

struct Certificate {
  Rat phi_used{0};
  int rounds = 0;
  long long matchings = 0;  // embedded matchings, each at congestion 1/phi_used
  Rat h_min_sparsity{0};    // small-set expansion of the final game graph
  VSet h_argmin;            // in host ids
  bool exhaustive = true;
  Rat expansion_lower{0};   // h_min * phi_used / matchings
  Graph h;                  // final game graph on [0, |T|)
  VSet terminals;           // H index -> host id
};

struct GameResult {
  bool found_cut = false;
  GameKind kind = GameKind::Edge;
  EdgeCut cut;
  VertexCut vertex_cut;
  Certificate certificate;
  std::vector<RoundRecord> trace;
  std::vector<MatchingRecord> embeddings;
};

// Runs at most ceil(d log2 s) + 1 rounds; returns the first sparse cut the
// matching player produces, otherwise a certificate with the final H, the
// embeddings, and the implied terminal-expansion lower bound.
GameResult run_game(const Graph &g, const VSet &t, const Rat &phi, long long s,
                    const ParamSet &params, GameKind kind = GameKind::Edge,
                    const VSet &tracked = {});

struct ExpansionCheck {
  bool certified = false;
  bool exhaustive = true;
  Rat min_sparsity{0};
  VSet worst;
};

// True iff every set of at most s vertices has sparsity >= bound in h;
// exhaustive below the size bound, sampled evidence above it.
ExpansionCheck certify_small_set_expansion(const Graph &h, long long s, const Rat &bound,
                                           int exhaustive_bound = 22);

}  // namespace cm
}  // namespace parcut
