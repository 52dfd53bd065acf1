#pragma once

#include <cstdint>

#include "parcut/rational.hpp"

namespace parcut {

// Single home for every constant the analysis leaves as "large enough",
// with desk-scale defaults. Structural assertions are parametric in these.
struct ParamSet {
  Rat eps{1, 100};  // sample precision

  // headline constants
  long long rho = 2;
  long long D = 8;
  long long c = 8;
  long long C = 8;
  long long lambda = 4;
  long long alpha = 4;  // component post-processing, must stay > 2

  // cut-matching game
  long long round_budget_d = 10;        // rounds <= ceil(d log2 s) + 1
  long long psi_scale = 8;              // psi = 1/(psi_scale * Delta) in exact mode
  Rat balance_b{1, 8};                  // balanced-cut parameter b
  Rat improve_precondition{1, 8};       // phi_H(W) threshold checked by improve_cut
  Rat improve_test_sparsity{1, 16};     // S-threshold the contract is tested at
  int exact_cut_bound = 20;             // exhaustive balanced-cut size limit
  int certify_bound = 22;               // exhaustive certification size limit
  bool heuristic_balanced_cut = false;  // spectral sweep instead of enumeration

  // rounding / retries
  long long c_rep = 4;      // reps = ceil(c_rep n ln(n+1))
  int retries = 5;          // fresh seeds on randomized failure
  Rat potential_fraction{1, 100};

  std::uint64_t seed = 1;
  double lp_tol = 1e-7;

  bool valid() const {
    return eps > Rat(0) && eps < Rat(1) && rho >= 2 && D >= 1 && c >= 1 && C >= 1 &&
           lambda >= 1 && alpha > 2 && round_budget_d >= 1 && psi_scale >= 1 &&
           balance_b > Rat(0) && balance_b < Rat(1, 2) && c_rep >= 1 && retries >= 0;
  }
};

}  // namespace parcut
