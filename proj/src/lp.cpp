#include "parcut/lp.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <ostream>

namespace parcut {
namespace lp {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct StandardForm {
  SpMat A;   // m x N, equality rows
  Vec b, c;  // N includes slack variables
  int nvar;  // original variables (prefix of the N columns)
};

StandardForm to_standard(const LpProblem &p) {
  int m = p.rows();
  int nslack = 0;
  for (auto s : p.sense)
    if (s != LpProblem::EQ) ++nslack;
  int N = p.nvar + nslack;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(p.entries.size() + nslack);
  for (const auto &e : p.entries) trip.emplace_back(e.row, e.col, e.val);
  int slack = p.nvar;
  for (int r = 0; r < m; ++r) {
    if (p.sense[r] == LpProblem::LE)
      trip.emplace_back(r, slack++, 1.0);
    else if (p.sense[r] == LpProblem::GE)
      trip.emplace_back(r, slack++, -1.0);
  }
  StandardForm sf;
  sf.A.resize(m, N);
  sf.A.setFromTriplets(trip.begin(), trip.end());
  sf.b = Eigen::Map<const Vec>(p.rhs.data(), m);
  sf.c = Vec::Zero(N);
  for (int i = 0; i < p.nvar; ++i) sf.c[i] = p.cost[i];
  sf.nvar = p.nvar;
  return sf;
}

}  // namespace

LpSolution solve(const LpProblem &p, double tol, int max_iter) {
  LpSolution sol;
  if (p.nvar == 0) {
    sol.ok = true;
    return sol;
  }
  StandardForm sf = to_standard(p);
  const int m = static_cast<int>(sf.A.rows());
  const int N = static_cast<int>(sf.A.cols());
  SpMat At = SpMat(sf.A.transpose());

  const double reg = 1e-10;
  SpMat I(m, m);
  I.setIdentity();
  Eigen::SimplicialLDLT<SpMat> chol;
  {
    // the pattern of A D A^T does not depend on D
    SpMat M = SpMat(sf.A * At) + SpMat(reg * I);
    chol.analyzePattern(M);
    chol.factorize(M);
    if (chol.info() != Eigen::Success) throw LpError("normal equations factorization failed");
  }

  // Mehrotra starting point from least-squares estimates
  Vec x, lam, s;
  {
    Vec v = chol.solve(sf.b);
    x = At * v;
    lam = chol.solve(sf.A * sf.c);
    s = sf.c - At * lam;
    double dx = std::max(-1.5 * x.minCoeff(), 0.0);
    double ds = std::max(-1.5 * s.minCoeff(), 0.0);
    x.array() += dx;
    s.array() += ds;
    double xs = x.dot(s);
    x.array() += 0.5 * xs / std::max(s.sum(), 1e-12) + 1e-8;
    s.array() += 0.5 * xs / std::max(x.sum(), 1e-12) + 1e-8;
  }

  double bnorm = 1.0 + sf.b.lpNorm<Eigen::Infinity>();
  double cnorm = 1.0 + sf.c.lpNorm<Eigen::Infinity>();

  auto alpha_max = [](const Vec &z, const Vec &dz) {
    double a = 1.0;
    for (int i = 0; i < z.size(); ++i)
      if (dz[i] < 0) a = std::min(a, -z[i] / dz[i]);
    return a;
  };

  int it = 0;
  for (; it < max_iter; ++it) {
    Vec rb = sf.A * x - sf.b;
    Vec rc = At * lam + s - sf.c;
    double mu = x.dot(s) / N;
    double obj = sf.c.dot(x);
    double gap = std::abs(obj - sf.b.dot(lam)) / (1.0 + std::abs(obj));
    sol.primal_residual = rb.lpNorm<Eigen::Infinity>();
    sol.gap = gap;
    if (sol.primal_residual / bnorm <= tol && rc.lpNorm<Eigen::Infinity>() / cnorm <= tol &&
        gap <= tol) {
      sol.ok = true;
      break;
    }

    Vec d = x.array() / s.array();
    SpMat M0 = SpMat(sf.A * d.asDiagonal() * At);
    double diag_scale = 1.0;
    for (int k = 0; k < M0.outerSize(); ++k)
      diag_scale = std::max(diag_scale, std::abs(M0.coeff(k, k)));
    bool factored = false;
    for (double boost : {reg, 1e-12 * diag_scale, 1e-9 * diag_scale, 1e-6 * diag_scale}) {
      SpMat M = M0 + SpMat(boost * I);
      chol.factorize(M);
      if (chol.info() == Eigen::Success) {
        factored = true;
        break;
      }
    }
    if (!factored) throw LpError("normal equations factorization failed");

    // eliminate ds and dx from the KKT system; one factorization serves both
    // the affine pass and the corrector
    auto solve_step = [&](const Vec &rxs, Vec &dx, Vec &dlam, Vec &ds) {
      Vec t = rxs.array() / s.array();
      Vec rhs = -rb + sf.A * (t - (d.array() * rc.array()).matrix());
      dlam = chol.solve(rhs);
      ds = -rc - At * dlam;
      dx = -t - (d.array() * ds.array()).matrix();
    };

    Vec rxs_aff = (x.array() * s.array()).matrix();
    Vec dx_aff, dlam_aff, ds_aff;
    solve_step(rxs_aff, dx_aff, dlam_aff, ds_aff);
    double ap_aff = alpha_max(x, dx_aff);
    double ad_aff = alpha_max(s, ds_aff);
    double mu_aff = (x + ap_aff * dx_aff).dot(s + ad_aff * ds_aff) / N;
    double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3);

    Vec rxs = (x.array() * s.array() + dx_aff.array() * ds_aff.array() - sigma * mu).matrix();
    Vec dx, dlam, ds;
    solve_step(rxs, dx, dlam, ds);
    double ap = std::min(1.0, 0.99995 * alpha_max(x, dx));
    double ad = std::min(1.0, 0.99995 * alpha_max(s, ds));
    x += ap * dx;
    lam += ad * dlam;
    s += ad * ds;
  }
  sol.iterations = it;
  sol.x.assign(sf.nvar, 0.0);
  for (int i = 0; i < sf.nvar; ++i) sol.x[i] = std::max(0.0, x[i]);
  sol.objective = 0;
  for (int i = 0; i < sf.nvar; ++i) sol.objective += p.cost[i] * sol.x[i];
  if (!sol.ok) throw LpError("interior point did not converge to tolerance");
  return sol;
}

void write_lp_format(std::ostream &os, const LpProblem &p,
                     const std::vector<std::string> &var_names) {
  auto name = [&](int j) {
    return j < static_cast<int>(var_names.size()) ? var_names[j] : "x" + std::to_string(j);
  };
  std::vector<std::vector<std::pair<int, double>>> by_row(p.rows());
  for (const auto &e : p.entries) by_row[e.row].push_back({e.col, e.val});
  os << "Minimize\n obj:";
  bool first = true;
  for (int j = 0; j < p.nvar; ++j)
    if (p.cost[j] != 0) {
      os << (first ? " " : " + ") << p.cost[j] << " " << name(j);
      first = false;
    }
  if (first) os << " 0 " << name(0);
  os << "\nSubject To\n";
  for (int r = 0; r < p.rows(); ++r) {
    os << " c" << r << ":";
    for (auto [j, v] : by_row[r]) {
      if (v >= 0)
        os << " + " << v << " " << name(j);
      else
        os << " - " << -v << " " << name(j);
    }
    const char *op =
        p.sense[r] == LpProblem::LE ? "<=" : (p.sense[r] == LpProblem::GE ? ">=" : "=");
    os << " " << op << " " << p.rhs[r] << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < p.nvar; ++j) os << " 0 <= " << name(j) << "\n";
  os << "End\n";
}

}  // namespace lp
}  // namespace parcut
