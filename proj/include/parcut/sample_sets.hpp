#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parcut/graph.hpp"

namespace parcut {
namespace sample {

struct SampleSetError : GraphError {
  using GraphError::GraphError;
};

// Partition of V into connected bags with an edge partition witnessing the
// connectivity: G[E_i] is connected and spans V_i or V_i plus one extra
// vertex; every bag measure is <= 2t, and >= t except possibly the first.
struct SteinerDecomposition {
  Rat t{1};
  std::vector<VSet> bags;
  std::vector<std::vector<Graph::Edge>> bag_edges;
  std::vector<Graph::Edge> leftover;

  // extra vertex (V(G[E_i]) = V_i + {u}) per bag, -1 when absent
  std::vector<int> connector;
};

SteinerDecomposition steiner_decomposition(const Graph &g, const Rat &t,
                                           const std::vector<long long> *mu = nullptr);

enum class SampleKind { Edge, Weighted, Vertex, Fallback };

struct SampleSet {
  VSet terminals;
  std::vector<long long> weight;  // aligned with terminals, all >= 1
  Rat eps{0};                      // requested precision
  Rat eps_effective{0};            // what the construction guarantees
  Rat phi{0};
  SampleKind kind = SampleKind::Edge;
  std::string note;                // fallback reason etc.

  long long total_weight() const;
  long long weight_in(const VSet &w) const;
  bool is_terminal(int v) const { return vset_contains(terminals, v); }
};

// Tunables with the defaults the constructions were analyzed at.
struct SampleConfig {
  long long size_constant = 200;   // Theta-constant d: fallback when d*phi/eps^2 >= 1
  long long slack_factor = 10;     // the definition's factor 10 in condition (b)
  double vertex_constant = 8.0;    // c in the randomized vertex size formula
  int resample_attempts = 20;
};

// Deterministic construction via Steiner decomposition; falls back to the
// whole vertex set when the target size formula reaches n.
SampleSet edge_sample_set(const Graph &g, const Rat &eps, const Rat &phi,
                          const SampleConfig &cfg = {});

// Measure-weighted variant: high vertices enter individually, the remaining
// measure is decomposed and represented one vertex per bag.
SampleSet weighted_sample_set(const Graph &g, const std::vector<long long> &mu, const Rat &eps,
                              const Rat &phi, const SampleConfig &cfg = {});

// Uniformly random terminal set of the analyzed size; correct with constant
// probability, so callers re-verify at desk scale and resample on failure.
SampleSet vertex_sample_set(const Graph &g, const Rat &eps, const Rat &phi, std::uint64_t seed,
                            const SampleConfig &cfg = {});

struct SampleViolation {
  VSet w;
  Rat lhs{0};  // |K/alpha(T) * alpha(W cap T) - mu(W)|
  Rat rhs{0};  // eps_effective * mu(W)
};

// Checks the sample condition for every family member that qualifies under
// either sparsity clause; exact rational comparisons throughout.
std::vector<SampleViolation> verify_sample_set(const Graph &g, const SampleSet &ss,
                                               const std::vector<VSet> &family,
                                               const SampleConfig &cfg = {});

// Terminal lines in the graph text format.
std::string serialize_sample_set(const SampleSet &ss);

}  // namespace sample
}  // namespace parcut
