#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parcut/graph.hpp"

namespace parcut {
namespace oracle {

struct OracleError : GraphError {
  using GraphError::GraphError;
};

struct OracleAnswer {
  Rat optimum{0};
  VSet argmin;               // edge problems: the side; vertex problems: L
  VSet separator;            // vertex problems only
  VSet right;                // vertex problems only
  std::uint64_t enumerated = 0;
  double wall_seconds = 0;
};

// Size guards for exhaustive enumeration (configurable).
struct Limits {
  int max_n_edge = 22;
  int max_n_vertex = 18;
};

// Exact optima by exhaustive enumeration. Deterministic: ties broken by the
// lexicographically smallest vertex set. The parallel kernels and the serial
// reference compute identical answers; `threads <= 1` selects the reference.
OracleAnswer exact_sparsest_cut(const Graph &g, const Limits &lim = {}, int threads = 0);
OracleAnswer exact_sse(const Graph &g, long long s, const Limits &lim = {}, int threads = 0);
// Empty result when the graph has no vertex cut at all (complete graphs).
std::optional<OracleAnswer> exact_vertex_sparsest(const Graph &g, const Limits &lim = {});
std::optional<OracleAnswer> exact_ssve(const Graph &g, long long s, const Limits &lim = {});

// Serial reference implementations, kept for testing the parallel kernels.
OracleAnswer exact_sparsest_cut_serial(const Graph &g, const Limits &lim = {});
OracleAnswer exact_sse_serial(const Graph &g, long long s, const Limits &lim = {});

// Minimum |delta(S)| over |S| <= s and x(S) >= ell; nullopt when no set
// qualifies. Used as the integral optimum against LP relaxations.
std::optional<OracleAnswer> exact_budget_cut(const Graph &g, long long s, long long ell,
                                             const Limits &lim = {});

// The exact family quantified over in the sample-set definition: every W that
// is a connected component, or the union of all components but one, after
// removing at most kmax edges (vertex mode: a vertex cut of size <= kmax),
// and that is phi-sparse. `weighted` switches the sparsity measure to the
// graph's vertex weights.
std::vector<VSet> enumerate_sparse_family(const Graph &g, const Rat &phi, int kmax,
                                          bool vertex_mode = false, bool weighted = false,
                                          int threads = 0);
// Same family via subset enumeration (n <= 20); agreement is a test oracle.
std::vector<VSet> enumerate_sparse_family_subsets(const Graph &g, const Rat &phi, int kmax,
                                                  bool vertex_mode = false, bool weighted = false);

// Minimum sparsity over nonempty S with |S| <= s; nullopt for n < 2.
struct SmallSetCertificate {
  bool exhaustive = true;  // false: sampled, reported as evidence only
  Rat min_sparsity{0};
  VSet argmin;
};
SmallSetCertificate certify_small_set_expansion(const Graph &g, long long s,
                                                int exhaustive_bound = 22, int threads = 0,
                                                std::uint64_t sample_count = 200000,
                                                std::uint64_t seed = 1);

// --- generators ----------------------------------------------------------

Graph dumbbell(int a, int b);                                  // K_a - bridge - K_b
Graph planted_bisection(int n, double p, double q, std::uint64_t seed);
Graph random_regular(int n, int d, std::uint64_t seed);
Graph random_connected(int n, double p, std::uint64_t seed);
Graph incidence_graph(int k);  // vertex-edge incidence of K_k, clique on the right side
Graph path_graph(int n);
Graph star_graph(int leaves);
Graph grid_graph(int rows, int cols);
Graph complete_graph(int n);

}  // namespace oracle
}  // namespace parcut
