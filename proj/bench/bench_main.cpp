// Serial reference paths against the OpenMP / structured kernels. Each row is
// the best of --reps runs.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "edgecert/certifier.hpp"
#include "edgecert/oracle.hpp"
#include "edgecert/star_condition.hpp"
#include "edgecert/state_construction.hpp"
#include "edgecert/sweep.hpp"

using namespace edgecert;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& what, int n, double serial, double fast) {
  std::printf("%-28s %6d %12.4f %12.4f %9.2fx\n", what.c_str(), n, serial, fast, serial / fast);
  std::fflush(stdout);
}

ParamSet at_r_hat(const ParamSet& p) {
  ParamSet z = p;
  z.r = 0.0;
  ParamSet out = p;
  out.r = find_r_hat(extract_D(z)).r_hat;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgecert benchmarks"};
  int reps = 3;
  bool quick = false;
  app.add_option("--reps", reps, "repetitions per measurement")->check(CLI::PositiveNumber);
  app.add_flag("--quick", quick, "smaller sizes");
  CLI11_PARSE(app, argc, argv);

  const int threads = omp_get_max_threads();
  std::printf("OpenMP threads: %d\n", threads);
  std::printf("%-28s %6s %12s %12s %10s\n", "kernel", "n", "serial [s]", "fast [s]", "speedup");

  const Tolerances tol;
  for (int n : quick ? std::vector<int>{50, 100} : std::vector<int>{100, 200, 400}) {
    const ParamSet p = at_r_hat(perturbed_params(n, 1e-4));
    const StateAssembly g = assemble_rho_gamma(p);
    const double dense = best_of(reps, [&] { check_blocks(g, tol, KernelPath::Dense); });
    const double structured = best_of(reps, [&] { check_blocks(g, tol, KernelPath::Structured); });
    row("block coranks rho^Gamma", n, dense, structured);
  }

  for (int n : quick ? std::vector<int>{200, 500} : std::vector<int>{250, 500, 1000}) {
    const ParamSet p = perturbed_params(n, 1e-4);
    const ParamSet at = at_r_hat(p);
    const ComplexVector w = kernel_vector_w(extract_D(at)).w;
    const double reference = best_of(reps, [&] { star_condition_check_reference(w, p); });
    const double fast = best_of(reps, [&] { star_condition_check(w, p); });
    row("star condition", n, reference, fast);
  }

  for (int n : quick ? std::vector<int>{50} : std::vector<int>{100, 200}) {
    const ParamSet p = perturbed_params(n, 1e-4);
    const double dense = best_of(reps, [&] { certify(p, tol, {GenericityPolicy::Require, KernelPath::Dense, "bench"}); });
    const double fast = best_of(reps, [&] { certify(p, tol, {GenericityPolicy::Require, KernelPath::Structured, "bench"}); });
    row("certify (dense vs structured)", n, dense, fast);
  }

  {
    const int to = quick ? 150 : 300;
    SweepConfig cfg;
    cfg.n_from = 3;
    cfg.n_to = to;
    cfg.timings = false;
    cfg.jobs = 1;
    const double serial = best_of(1, [&] { run_sweep(cfg); });
    cfg.jobs = threads;
    const double parallel = best_of(1, [&] { run_sweep(cfg); });
    row("sweep 3..n (1 vs all jobs)", to, serial, parallel);
  }

  {
    const auto st = dense_state(perturbed_params(4, 1e-2));
    const auto k = kernel_pair(st.rho, st.rho_gamma, 4);
    const int starts = quick ? 50 : 200;
    omp_set_num_threads(1);
    const double serial = best_of(reps, [&] { product_vector_search(k, starts, 1); });
    omp_set_num_threads(threads);
    const double parallel = best_of(reps, [&] { product_vector_search(k, starts, 1); });
    row("oracle starts (1 vs all)", 4, serial, parallel);
  }
  return 0;
}
