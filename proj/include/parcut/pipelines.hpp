#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parcut/cut_matching.hpp"
#include "parcut/graph.hpp"
#include "parcut/params.hpp"

namespace parcut {
namespace pipe {

struct PipelineError : GraphError {
  using GraphError::GraphError;
};

enum class Status { Found, NoSuchSet, RandomizedFailure };

// One bound attached to a result; always recomputed from the returned cut
// before the result is handed back.
struct Claim {
  std::string name;
  std::string bound;
  std::string measured;
  bool holds = false;
};

struct GuessRecord {
  long long k = 0, s = 0, ell = 0;
  Rat phi{0};
  double lp_value = 0;
  std::string outcome;
};

struct ApproxResult {
  Status status = Status::NoSuchSet;
  bool vertex = false;
  EdgeCut cut;
  VertexCut vertex_cut;
  std::vector<Claim> claims;
  std::vector<GuessRecord> transcript;
  std::uint64_t seed = 0;
  Rat certificate_lower{0};   // game pipelines: best certified lower bound
  Rat certificate_phi{0};     // sparsity level the certificate was issued at
  double ratio_bound = 0;     // per-instance provable output/opt bound
  std::string note;
};

// Theorem-style pipelines. Guessing loops are geometric grids; transcripts
// record every grid point. Results are min-merged by the recomputed
// objective and never carry an unverified bound.

// Small Set Expansion via sample sets + LP region growing.
ApproxResult sse_log_k(const Graph &g, const Rat &phi, long long s, const ParamSet &params);

// Sparsest Cut via the cut-matching game; certificates bracket the optimum.
ApproxResult sparsest_cut_cut_matching(const Graph &g, const ParamSet &params);

// Vertex Sparsest Cut via the vertex LP with component post-processing.
ApproxResult vertex_sparsest_cut_lp(const Graph &g, const ParamSet &params);

// Vertex Sparsest Cut via the vertex cut-matching game.
ApproxResult vertex_sparsest_cut_cut_matching(const Graph &g, const ParamSet &params);

// Weighted unbalanced cut: |S| <= 10 rho n, y(S) >= tau y(V)/gamma, minimal
// boundary up to the measured log factor.
ApproxResult weighted_unbalanced_cut(const Graph &g, const std::vector<Rat> &y, const Rat &tau,
                                     const Rat &rho_frac, const ParamSet &params);

}  // namespace pipe
}  // namespace parcut
