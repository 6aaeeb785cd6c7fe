// Compares the OpenMP kernels against the serial reference path: one full
// realize+update sweep of the fixed-point solver at a few grid sizes, plus a
// whole constant-state solve. Both paths must agree bitwise; the table
// reports wall times and the measured speedup.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "refl1d/config.hpp"
#include "refl1d/parallel.hpp"
#include "refl1d/solver.hpp"

using namespace refl1d;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// one full iteration sweep (steps 3-8) on the initial iterate
double time_sweep(const Problem& p, const DomainSpec& spec, int reps, double* checksum) {
  Iterate it = init_iterate(p.refl, spec);
  BoundaryChar bchar(p.ahead, 2.0 * spec.epsilon * (1.0 + p.refl.a) / p.refl.eta0);
  auto t0 = std::chrono::steady_clock::now();
  double acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    InvariantFields inv = assemble_invariant_fields(p.eos, spec, it.beta_plus, p.refl.beta0_prime);
    TimeField tf = compute_time_field(p.eos, spec, it, inv);
    ShockTraces tr = compute_shock_traces(p.eos, p.ahead, bchar, spec, it, inv, tf);
    CoefficientFields cf = compute_coefficient_fields(p.eos, spec, it, inv, tr);
    Iterate next = update_x(spec, it, tr, cf);
    next.beta_plus = update_beta_plus(p.eos, it, tr);
    acc += next.x(spec.n_sigma, spec.n_tau) + next.beta_plus.back();
  }
  *checksum = acc;
  return seconds_since(t0) / reps;
}

RunConfig s2_config(int n) {
  RunConfig cfg;
  cfg.ahead_kind = "simple_wave";
  cfg.ahead_delta = 0.05;
  cfg.ahead_L = 1.0;
  cfg.epsilon = 0.05;
  cfg.n_sigma = cfg.n_tau = n;
  return cfg;
}

}  // namespace

int main() {
  std::printf("%-28s %10s %10s %9s  %s\n", "kernel", "serial[ms]", "openmp[ms]", "speedup",
              "bitwise");
  for (int n : {48, 96, 144}) {
    RunConfig cfg = s2_config(n);
    Problem p = build_problem(cfg);
    double cs_serial = 0.0, cs_parallel = 0.0;
    set_parallel(false);
    double ts = time_sweep(p, p.spec, 3, &cs_serial);
    set_parallel(true);
    double tp = time_sweep(p, p.spec, 3, &cs_parallel);
    std::printf("iteration sweep %4dx%-4d    %10.2f %10.2f %8.2fx  %s\n", n, n, 1e3 * ts,
                1e3 * tp, ts / tp, cs_serial == cs_parallel ? "yes" : "NO");
    if (cs_serial != cs_parallel) return 1;
  }

  {
    RunConfig cfg;  // constant scenario, full solve
    cfg.epsilon = 0.1;
    Problem p = build_problem(cfg);
    set_parallel(false);
    auto t0 = std::chrono::steady_clock::now();
    Solution s1 = solve(p.solver, p.eos, p.ahead, p.refl, p.spec);
    double ts = seconds_since(t0);
    set_parallel(true);
    t0 = std::chrono::steady_clock::now();
    Solution s2 = solve(p.solver, p.eos, p.ahead, p.refl, p.spec);
    double tp = seconds_since(t0);
    bool same = s1.x.data().size() == s2.x.data().size();
    for (std::size_t k = 0; same && k < s1.x.data().size(); ++k)
      same = s1.x.data()[k] == s2.x.data()[k] && s1.t.data()[k] == s2.t.data()[k];
    std::printf("constant solve 64x64        %10.2f %10.2f %8.2fx  %s\n", 1e3 * ts, 1e3 * tp,
                ts / tp, same ? "yes" : "NO");
    if (!same) return 1;
  }
  return 0;
}
