#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "parcut/graph.hpp"

namespace parcut {
namespace lp {

struct LpError : GraphError {
  using GraphError::GraphError;
};

// min c.x subject to per-row <=,>=,= constraints and x >= 0.
struct LpProblem {
  enum Sense { LE, GE, EQ };
  struct Entry {
    int row, col;
    double val;
  };

  int nvar = 0;
  std::vector<double> cost;
  std::vector<Sense> sense;
  std::vector<double> rhs;
  std::vector<Entry> entries;

  int add_var(double c) {
    cost.push_back(c);
    return nvar++;
  }
  int add_row(Sense s, double b) {
    sense.push_back(s);
    rhs.push_back(b);
    return static_cast<int>(rhs.size()) - 1;
  }
  void set(int row, int col, double v) { entries.push_back({row, col, v}); }
  int rows() const { return static_cast<int>(rhs.size()); }
};

struct LpSolution {
  bool ok = false;
  std::vector<double> x;
  double objective = 0;
  double primal_residual = 0;  // max absolute row violation
  double gap = 0;              // relative duality gap at termination
  int iterations = 0;
};

// Primal-dual predictor-corrector interior point. The instances here are
// small, feasible and bounded, which keeps a plain normal-equations solve
// with static regularization dependable.
LpSolution solve(const LpProblem &p, double tol = 1e-7, int max_iter = 300);

// CPLEX LP text format, for cross-checking against external solvers.
void write_lp_format(std::ostream &os, const LpProblem &p,
                     const std::vector<std::string> &var_names = {});

}  // namespace lp
}  // namespace parcut
