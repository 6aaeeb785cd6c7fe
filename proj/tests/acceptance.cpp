// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here; oracle values are recomputed from scratch
// by independent test-local code (bisection, finite differences, quadrature).
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "refl1d/config.hpp"
#include "refl1d/error.hpp"
#include "refl1d/solver.hpp"
#include "refl1d/verify.hpp"

using namespace refl1d;

namespace {

int g_failures = 0;

void check(int criterion, const char* what, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what,
              detail.c_str());
  if (!ok) ++g_failures;
}

double now_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

RunConfig constant_cfg() {
  RunConfig cfg;
  cfg.epsilon = 0.1;
  cfg.n_sigma = cfg.n_tau = 64;
  return cfg;
}

RunConfig s2_cfg(double eps) {
  RunConfig cfg;
  cfg.ahead_kind = "simple_wave";
  cfg.ahead_delta = 0.05;
  cfg.ahead_L = 1.0;
  cfg.epsilon = eps;
  cfg.n_sigma = cfg.n_tau = 64;
  return cfg;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// test-local bisection oracle for the gamma=2 scenario
double rho0_oracle() {
  auto f = [](double r) { return (0.5 * r * r - 0.75) * (r - 1.0) - 0.25; };
  double lo = 1.0 + 1e-9, hi = 10.0;
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

int main() {
  auto suite_t0 = std::chrono::steady_clock::now();
  const BarotropicEos g2 = BarotropicEos::polytropic(0.5, 2.0);

  // ---- 1: reflection-point solve against the bisection oracle -------------
  {
    auto t0 = std::chrono::steady_clock::now();
    ReflectionPointData r = solve_reflection_point(g2, {1.0, -0.5});
    double ms = now_ms(t0);
    double r0 = rho0_oracle();
    double V0 = 0.5 / (r0 - 1.0);
    double a0 = (std::sqrt(r0) - V0) / (std::sqrt(r0) + V0);
    double res = std::abs(hugoniot_residual(g2, {r.rho0, 0.0}, {1.0, -0.5}));
    bool ok = res <= 1e-10 && std::abs(r.rho0 - r0) < 1e-9 && std::abs(r.V0 - V0) < 1e-9 &&
              std::abs(r.a - a0) < 1e-9 && r.cout_minus0 < r.V0 && r.V0 < r.eta0 && r.V0 > 0.0 &&
              ms < 10.0;
    check(1, "reflection-point solve vs bisection oracle", ok,
          fmt("rho0=%.6f V0=%.6f a=%.6f |I|=%.2e, %.2f ms", r.rho0, r.V0, r.a, res, ms));
  }

  // ---- 2: exact fixed point, constant scenario ----------------------------
  Problem pc = build_problem(constant_cfg());
  {
    auto t0 = std::chrono::steady_clock::now();
    Solution sol = solve(pc.solver, pc.eos, pc.ahead, pc.refl, pc.spec);
    double ms = now_ms(t0);
    const DomainSpec& sp = sol.spec;
    double sx = 0.0, st = 0.0, sb = 0.0, sV = 0.0, sG = 0.0;
    for (int i = 0; i <= sp.n_sigma; ++i)
      for (int j = 0; j <= sp.n_tau; ++j) {
        double u = sp.u_node(i), v = sp.v_node(i, j);
        sx = std::max(sx, std::abs(sol.x(i, j) - (v - u)));
        st = std::max(st, std::abs(sol.t(i, j) - (u + v) / pc.refl.eta0));
      }
    for (double b : sol.beta_plus) sb = std::max(sb, std::abs(b - pc.refl.beta0));
    for (int k = 0; k <= sp.n_sigma; ++k) {
      sV = std::max(sV, std::abs(sol.traces.V[k] - pc.refl.V0));
      sG = std::max(sG, std::abs(sol.traces.Gamma[k] + 1.0));
    }
    bool ok = sol.diag.iterations <= 3 && sx <= 1e-10 && sb <= 1e-10 && st <= 1e-9 &&
              sV <= 1e-10 && sG <= 1e-10 && ms < 1000.0;
    check(2, "constant-ahead solve is the exact fixed point", ok,
          fmt("iters=%d sup|dx|=%.1e sup|dbeta|=%.1e sup|dt|=%.1e sup|dV|=%.1e sup|dGamma|=%.1e, %.0f ms",
              sol.diag.iterations, sx, sb, st, sV, sG, ms));
  }

  // ---- 3: contraction on S2 at eps and eps/2 ------------------------------
  Problem ps = build_problem(s2_cfg(0.05));
  Solution s2a = [&] {
    return solve(ps.solver, ps.eos, ps.ahead, ps.refl, ps.spec);
  }();
  {
    auto t0 = std::chrono::steady_clock::now();
    DomainSpec half = ps.spec;
    half.epsilon = 0.025;
    Solution s2b = solve(ps.solver, ps.eos, ps.ahead, ps.refl, half);
    double ms = now_ms(t0);

    auto max_ratio_m2 = [](const Diagnostics& d) {
      double m = 0.0;
      for (std::size_t k = 1; k < d.ratio_value.size(); ++k) m = std::max(m, d.ratio_value[k]);
      return m;
    };
    double ra = max_ratio_m2(s2a.diag), rb = max_ratio_m2(s2b.diag);
    bool all_below = true;
    for (std::size_t k = 1; k < s2a.diag.ratio_value.size(); ++k)
      all_below = all_below && s2a.diag.ratio_value[k] < 0.9;
    bool ok = s2a.diag.converged && s2b.diag.converged && all_below && rb <= ra && ms < 30000.0;
    check(3, "S2 contraction, ratio shrinks with eps", ok,
          fmt("max r(eps)=%.4f max r(eps/2)=%.4f iters=%d/%d, %.0f ms for the pair", ra, rb,
              s2a.diag.iterations, s2b.diag.iterations, ms));
  }

  // ---- 4: jump conditions along the shock on S2 ---------------------------
  {
    double jsup = 0.0;
    for (double j : s2a.J_residual) jsup = std::max(jsup, std::abs(j));
    CubicSpline ts(s2a.traces.v, s2a.traces.t_plus), xs(s2a.traces.v, s2a.traces.x_plus);
    double ssup = 0.0;
    for (int k = 1; k < s2a.spec.n_sigma; ++k)
      ssup = std::max(ssup, std::abs(xs.deriv(s2a.traces.v[k]) -
                                     s2a.traces.V[k] * ts.deriv(s2a.traces.v[k])));
    bool ok = jsup <= 1e-9 && ssup <= 1e-7;
    check(4, "S2 jump conditions (J and shock-speed residuals)", ok,
          fmt("sup|J|=%.2e sup|dx+/dv - V dt+/dv|=%.2e", jsup, ssup));
  }

  // ---- 5: wall and normalization, bitwise ----------------------------------
  {
    bool wall_ok = true;
    for (int i = 0; i <= s2a.spec.n_sigma; ++i)
      wall_ok = wall_ok && s2a.alpha(i, 0) == s2a.beta(i, 0) && s2a.x(i, 0) == 0.0;
    bool pins = s2a.beta_plus[0] == ps.refl.beta0 && s2a.x_v(0, 0) == 1.0 &&
                s2a.x_u(0, 0) == -1.0 && s2a.x(0, 0) == 0.0;
    check(5, "wall identities and origin normalization exact", wall_ok && pins,
          fmt("alpha=beta and x=0 on wall: %s; beta+(0), x-derivative pins: %s",
              wall_ok ? "bitwise" : "VIOLATED", pins ? "bitwise" : "VIOLATED"));
  }

  // ---- 6: independent Euler residual on S2 --------------------------------
  {
    DomainSpec coarse = ps.spec;
    coarse.n_sigma = coarse.n_tau = 32;
    Solution s2c = solve(ps.solver, ps.eos, ps.ahead, ps.refl, coarse);
    EulerResidual er = euler_residual(ps.eos, s2a, s2c);
    bool ok = er.order >= 1.5 && er.sup <= 1e-3;
    check(6, "independent Euler residual on an interior patch", ok,
          fmt("sup=%.2e order(64 vs 32)=%.2f", er.sup, er.order));
  }

  // ---- 7: determinism and containment on S2 -------------------------------
  {
    double dmin = s2a.diag.determinism_min_margin;
    double cmin = s2a.diag.containment_min_margin;
    bool ok = dmin > 0.0 && cmin >= 0.0;
    check(7, "determinism margins and containment", ok,
          fmt("determinism_min=%.4f containment_min=%.2e", dmin, cmin));
  }

  // ---- 8: Jacobian positivity and origin deviation ------------------------
  {
    JacobianCheck jc1 = jacobian_check(ps.eos, s2a);
    DomainSpec half = ps.spec;
    half.epsilon = 0.025;
    Solution s2b = solve(ps.solver, ps.eos, ps.ahead, ps.refl, half);
    JacobianCheck jc2 = jacobian_check(ps.eos, s2b);
    bool ok = jc1.min > 0.0 && jc2.min > 0.0 && jc1.rel_deviation <= 0.05 &&
              jc2.rel_deviation <= 0.025;
    check(8, "Jacobian positive, min near 2/eta0", ok,
          fmt("min=%.5f dev(eps)=%.3f%% dev(eps/2)=%.3f%% (2/eta0=%.5f)", jc1.min,
              100.0 * jc1.rel_deviation, 100.0 * jc2.rel_deviation, 2.0 / ps.refl.eta0));
  }

  // ---- 9: asymptotic form ratios -------------------------------------------
  {
    DomainSpec half = ps.spec;
    half.epsilon = 0.025;
    Solution s2b = solve(ps.solver, ps.eos, ps.ahead, ps.refl, half);
    AsymptoticCheck ac = asymptotic_check(s2a, s2b);
    auto in_band = [](double r) { return r >= 0.25 && r <= 4.0; };
    bool ok = in_band(ac.ratio_alpha) && in_band(ac.ratio_beta) && in_band(ac.ratio_t) &&
              in_band(ac.ratio_x);
    check(9, "asymptotic-form ratios R(eps/2)/R(eps) in [1/4, 4]", ok,
          fmt("alpha=%.3f beta=%.3f t=%.3f x=%.3f", ac.ratio_alpha, ac.ratio_beta, ac.ratio_t,
              ac.ratio_x));
  }

  // ---- 10: uniqueness probe -------------------------------------------------
  {
    double d = uniqueness_probe(ps.solver, ps.eos, ps.ahead, ps.refl, ps.spec);
    bool ok = d <= 10.0 * ps.solver.tol_value;
    check(10, "uniqueness probe: perturbed init lands on the same solution", ok,
          fmt("distance=%.2e budget=%.2e", d, 10.0 * ps.solver.tol_value));
  }

  // ---- 11: unit-property spot checks ----------------------------------------
  {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> rho_d(0.1, 10.0), w_d(-5.0, 5.0), inv_d(1.2, 3.5);

    double rt = 0.0;
    for (int k = 0; k < 2000; ++k) {
      FluidState s{rho_d(rng), w_d(rng)};
      FluidState b = g2.from_invariants(g2.to_invariants(s));
      rt = std::max(rt, std::abs(b.rho - s.rho) / s.rho);
      rt = std::max(rt, std::abs(b.w - s.w) / std::max(1.0, std::abs(s.w)));
    }

    double jid = 0.0;
    for (int k = 0; k < 500; ++k) {
      InvariantPair p{inv_d(rng), inv_d(rng)};
      StateJacobian jc = g2.state_jacobian(p);
      FluidState s = g2.from_invariants(p);
      double eoq = g2.sound_speed(s.rho) / s.rho;
      jid = std::max(jid, std::abs(eoq * jc.drho_dalpha + jc.dw_dalpha - 1.0));
      jid = std::max(jid, std::abs(eoq * jc.drho_dbeta + jc.dw_dbeta));
      jid = std::max(jid, std::abs(eoq * jc.drho_dalpha - jc.dw_dalpha));
      jid = std::max(jid, std::abs(eoq * jc.drho_dbeta - jc.dw_dbeta - 1.0));
    }

    double swap = 0.0;
    for (int k = 0; k < 1000; ++k) {
      FluidState p{rho_d(rng), w_d(rng)}, m{rho_d(rng), w_d(rng)};
      double i1 = hugoniot_residual(g2, p, m), i2 = hugoniot_residual(g2, m, p);
      swap = std::max(swap, std::abs(i1 - i2) / std::max(1.0, std::abs(i1)));
    }

    double fdev = 0.0;
    for (int k = 0; k < 50; ++k) {
      FluidState m{1.0 + 0.1 * (k % 10), -0.2 - 0.05 * (k % 7)};
      ReflectionPointData r = solve_reflection_point(g2, m);
      InvariantPair im = g2.to_invariants(m);
      double bp = solve_H(g2, r.beta0 + 0.005, im.alpha, im.beta, r.beta0);
      JumpPartials d = dJ_dplus(g2, r.beta0 + 0.005, bp, im.alpha, im.beta);
      double V = shock_speed(g2, g2.from_invariants({r.beta0 + 0.005, bp}), m);
      CharSpeeds cs = g2.char_speeds({r.beta0 + 0.005, bp});
      double closed = -std::pow((cs.c_out - V) / (V - cs.c_in), 2);
      fdev = std::max(fdev, std::abs(-d.d_alpha / d.d_beta - closed) /
                                std::max(1.0, std::abs(closed)));
    }

    double quad = 0.0;
    {
      const int n = 64;
      const double h = 0.01;
      std::vector<double> f(n + 1), cum(n + 1);
      for (int i = 0; i <= n; ++i) {
        double x = h * i;
        f[i] = 1.0 + x * (2.0 + x * (-3.0 + 4.0 * x));
      }
      cumulative_uniform(h, f, cum);
      for (int i = 0; i <= n; ++i) {
        double x = h * i;
        quad = std::max(quad, std::abs(cum[i] - x * (1.0 + x * (1.0 + x * (-1.0 + x)))));
      }
    }
    double ms = now_ms(t0);
    bool ok = rt <= 1e-12 && jid <= 1e-12 && swap <= 1e-15 && fdev <= 1e-10 && quad <= 1e-12;
    check(11, "unit-property spot checks", ok,
          fmt("roundtrip=%.1e jac_pair=%.1e swap=%.1e F_closed=%.1e quad=%.1e, %.0f ms", rt,
              jid, swap, fdev, quad, ms));
  }

  double total_s = now_ms(suite_t0) / 1e3;
  std::printf("%s: %d criterion(s) failed, total %.1f s\n", g_failures ? "FAIL" : "OK",
              g_failures, total_s);
  if (total_s >= 60.0) {
    std::printf("FAIL: suite exceeded the 60 s budget\n");
    return 1;
  }
  return g_failures ? 1 : 0;
}
