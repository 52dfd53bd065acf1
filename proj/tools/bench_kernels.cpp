// Benchmark: serial reference vs OpenMP-parallel enumeration kernels.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "parcut/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace parcut;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()> &fn) {
  auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char **argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 20;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("enumeration kernels, n = %d, %d thread(s)\n", n, threads);

  Graph g = oracle::planted_bisection(n, 0.6, 0.1, 12345);
  oracle::Limits lim;
  lim.max_n_edge = n;

  oracle::OracleAnswer serial, parallel;
  double ts = time_of([&] { serial = oracle::exact_sparsest_cut_serial(g, lim); });
  double tp = time_of([&] { parallel = oracle::exact_sparsest_cut(g, lim, threads); });
  std::printf("sparsest-cut   serial %.3fs  parallel %.3fs  speedup %.2fx  (opt %s%s)\n", ts, tp,
              ts / tp, rat_str(serial.optimum).c_str(),
              serial.optimum == parallel.optimum && serial.argmin == parallel.argmin
                  ? ", identical"
                  : ", MISMATCH");

  double ts2 = time_of([&] { serial = oracle::exact_sse_serial(g, n / 2, lim); });
  double tp2 = time_of([&] { parallel = oracle::exact_sse(g, n / 2, lim, threads); });
  std::printf("small-set      serial %.3fs  parallel %.3fs  speedup %.2fx  (opt %s%s)\n", ts2,
              tp2, ts2 / tp2, rat_str(serial.optimum).c_str(),
              serial.optimum == parallel.optimum && serial.argmin == parallel.argmin
                  ? ", identical"
                  : ", MISMATCH");

  Graph h = oracle::planted_bisection(std::min(n, 18), 0.7, 0.15, 99);
  auto c1 = oracle::certify_small_set_expansion(h, h.n / 2, 22, 1);
  double tc1 = time_of([&] { c1 = oracle::certify_small_set_expansion(h, h.n / 2, 22, 1); });
  auto c2 = c1;
  double tc2 = time_of([&] { c2 = oracle::certify_small_set_expansion(h, h.n / 2, 22, threads); });
  std::printf("certification  serial %.3fs  parallel %.3fs  speedup %.2fx  (min %s%s)\n", tc1,
              tc2, tc1 / tc2, rat_str(c1.min_sparsity).c_str(),
              c1.min_sparsity == c2.min_sparsity && c1.argmin == c2.argmin ? ", identical"
                                                                           : ", MISMATCH");
  return 0;
}
