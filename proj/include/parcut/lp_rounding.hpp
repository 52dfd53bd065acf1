#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "parcut/graph.hpp"
#include "parcut/lp.hpp"

namespace parcut {
namespace lpround {

struct RoundingError : GraphError {
  using GraphError::GraphError;
};
// attempt budget exhausted; callers retry with a fresh seed
struct RandomizedFailure : RoundingError {
  using RoundingError::RoundingError;
};

// Linearized small-set-expansion relaxation: metric d over pairs, vertex
// mass y, and z variables standing in for min{d(u,v), y_v} in the two
// spreading families.
struct SseLpInstance {
  lp::LpProblem problem;
  int n = 0;
  VSet terminals;
  std::vector<long long> xw;  // per-vertex weight, 0 off terminals
  long long s = 0, ell = 0, K = 0;
  std::vector<int> y_var;  // n
  std::vector<int> d_var;  // n*n symmetric, diagonal -1

  int dvar(int u, int v) const { return d_var[u * n + v]; }
  long long expected_rows() const;
};

// Vertex relaxation: adds b_v (separator mass) and edge-relative triangle
// constraints; the spreading family runs over terminals only.
struct VertexLpInstance {
  lp::LpProblem problem;
  int n = 0;
  VSet terminals;
  long long s = 0;
  long long edge_rows = 0;  // edge-relative triangle rows, fixed at build time
  std::vector<int> y_var, b_var;
  std::vector<int> d_var;

  int dvar(int u, int v) const { return d_var[u * n + v]; }
  long long expected_rows() const;
};

SseLpInstance build_sse_lp(const Graph &g, const VSet &t, const std::vector<long long> &x,
                           long long s, long long ell);
VertexLpInstance build_vertex_lp(const Graph &g, const VSet &t, long long s);

// Decoded optimum of either relaxation.
struct LpValues {
  double objective = 0;
  double tol = 1e-7;
  std::vector<double> y;  // n
  std::vector<double> b;  // n (vertex LP only)
  std::vector<double> d;  // n*n flattened, diagonal 0
  double dist(int u, int v, int n) const { return u == v ? 0.0 : d[u * n + v]; }
};

LpValues solve_sse(const SseLpInstance &inst, double tol = 1e-7);
LpValues solve_vertex(const VertexLpInstance &inst, double tol = 1e-7);

// Ball of radius r*y_v around v in the LP metric, restricted to `within`
// (empty = all). Asserts the spreading bounds |Ball| <= s/(1-r) and
// x(Ball) <= ell/(1-r), tolerance-adjusted.
VSet ball(const SseLpInstance &inst, const LpValues &sol, int v, double r,
          const std::vector<char> &within = {});

struct RoundTrace {
  double delta = 0, r = 0;
  int clusters = 0;
  int chosen = -1;  // slot picked among n
  double f_score = 0;
  bool accepted = false;
};

struct SseRoundResult {
  VSet y_set;
  long long boundary = 0;
  long long weight = 0;  // x(Y)
  int accepted_clusters = 0;
  std::uint64_t iterations = 0;
  std::vector<RoundTrace> trace;
};

// Randomized region growing; accumulates accepted clusters until the size
// or weight guard trips, then certifies the combined boundary bound.
SseRoundResult round_sse(const Graph &g, const SseLpInstance &inst, const LpValues &sol,
                         std::mt19937_64 &rng, std::uint64_t reps = 0);

struct VertexRoundResult {
  VSet u_set;
  VertexCut cut;
  long long terminals_inside = 0;
  bool split_flagged = false;
  std::uint64_t iterations = 0;
  std::vector<RoundTrace> trace;
};

VertexRoundResult round_vertex(const Graph &g, const VertexLpInstance &inst, const LpValues &sol,
                               std::mt19937_64 &rng, std::uint64_t reps = 0);

// reps default: ceil(4 n ln(n+1))
std::uint64_t default_reps(int n);

}  // namespace lpround
}  // namespace parcut
