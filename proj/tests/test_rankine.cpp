#include <doctest.h>

#include <cmath>
#include <random>

#include "refl1d/error.hpp"
#include "refl1d/rankine.hpp"

using namespace refl1d;

namespace {

const BarotropicEos g2 = BarotropicEos::polytropic(0.5, 2.0);
const FluidState minus0{1.0, -0.5};

// independent bisection oracle for the gamma=2 scenario:
// (rho^2/2 - 0.75)(rho - 1) = 0.25
double rho0_oracle() {
  auto f = [](double r) { return (0.5 * r * r - 0.75) * (r - 1.0) - 0.25; };
  double lo = 1.0 + 1e-9, hi = 10.0;
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// a deterministic random downstream/upstream pair on the compressive branch
struct RandomShock {
  double alpha_p, beta_p, alpha_m, beta_m;
};
RandomShock random_shock(std::mt19937& rng) {
  std::uniform_real_distribution<double> rho_d(1.05, 3.0), w_d(-1.0, -0.1);
  FluidState m{rho_d(rng), w_d(rng)};
  ReflectionPointData r = solve_reflection_point(g2, m);
  InvariantPair im = g2.to_invariants(m);
  return {r.beta0, r.beta0, im.alpha, im.beta};
}

}  // namespace

TEST_CASE("hugoniot residual basics") {
  CHECK(hugoniot_residual(g2, {1.3, 0.4}, {1.3, 0.4}) == 0.0);
  // |I| small at the literal 4-digit root from the oracle
  CHECK(std::abs(hugoniot_residual(g2, {1.5514, 0.0}, minus0)) < 1e-3);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> rho_d(0.2, 5.0), w_d(-2.0, 2.0);
  for (int k = 0; k < 1000; ++k) {
    FluidState p{rho_d(rng), w_d(rng)}, m{rho_d(rng), w_d(rng)};
    double a = hugoniot_residual(g2, p, m);
    double b = hugoniot_residual(g2, m, p);
    CHECK(std::abs(a - b) <= 1e-15 * std::max(1.0, std::abs(a)));  // swap symmetry
  }
}

TEST_CASE("shock speed") {
  double r0 = rho0_oracle();
  CHECK(shock_speed(g2, {r0, 0.0}, minus0) == doctest::Approx(0.5 / (r0 - 1.0)).epsilon(1e-12));
  CHECK(shock_speed(g2, {2.0, 0.0}, {1.0, -1.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_WITH_AS((void)shock_speed(g2, {1.0, 0.3}, {1.0, -0.2}),
                       doctest::Contains("degenerate"), Error);
}

TEST_CASE("reflection point solve against the bisection oracle") {
  ReflectionPointData r = solve_reflection_point(g2, minus0);
  double r0 = rho0_oracle();
  CHECK(r.rho0 == doctest::Approx(r0).epsilon(1e-10));
  CHECK(std::abs(hugoniot_residual(g2, {r.rho0, 0.0}, minus0)) < 1e-10);
  CHECK(r.V0 == doctest::Approx(0.5 / (r0 - 1.0)).epsilon(1e-10));
  CHECK(r.eta0 == doctest::Approx(std::sqrt(r0)).epsilon(1e-10));
  CHECK(r.a == doctest::Approx((r.eta0 - r.V0) / (r.eta0 + r.V0)).epsilon(1e-14));
  CHECK(std::abs(r.rho0 - 1.5514) < 1e-3);
  CHECK(std::abs(r.V0 - 0.9068) < 1e-3);
  CHECK(std::abs(r.a - 0.1574) < 1e-3);
  CHECK(r.beta0 == doctest::Approx(2.0 * std::sqrt(r0)).epsilon(1e-10));
  // determinism inequalities, strictly
  CHECK(r.cout_minus0 < r.V0);
  CHECK(r.V0 < r.eta0);
  CHECK(r.V0 > 0.0);
  CHECK(r.cout_minus0 == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(r.a > 0.0);
  CHECK(r.a < 1.0);

  CHECK_THROWS_WITH_AS((void)solve_reflection_point(g2, {1.0, 0.0}),
                       doctest::Contains("compatible with wall"), Error);
}

TEST_CASE("residual_J equals I after the state transform") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(1.2, 3.5);
  for (int k = 0; k < 200; ++k) {
    double ap = d(rng), bp = d(rng), am = d(rng), bm = d(rng);
    double J = residual_J(g2, ap, bp, am, bm);
    double I = hugoniot_residual(g2, g2.from_invariants({ap, bp}), g2.from_invariants({am, bm}));
    CHECK(J == I);  // definition, exact
  }
  CHECK(residual_J(g2, 2.0, 2.1, 2.0, 2.1) == 0.0);

  ReflectionPointData r = solve_reflection_point(g2, minus0);
  CHECK(std::abs(residual_J(g2, r.beta0, r.beta0, 1.5, 2.5)) < 1e-6);
}

TEST_CASE("dJ_dplus matches central differences") {
  std::mt19937 rng(17);
  const double h = 1e-6;
  for (int k = 0; k < 50; ++k) {
    RandomShock s = random_shock(rng);
    // move slightly off the root so J itself is generic
    s.beta_p += 0.01;
    JumpPartials d = dJ_dplus(g2, s.alpha_p, s.beta_p, s.alpha_m, s.beta_m);
    double fd_a = (residual_J(g2, s.alpha_p + h, s.beta_p, s.alpha_m, s.beta_m) -
                   residual_J(g2, s.alpha_p - h, s.beta_p, s.alpha_m, s.beta_m)) /
                  (2 * h);
    double fd_b = (residual_J(g2, s.alpha_p, s.beta_p + h, s.alpha_m, s.beta_m) -
                   residual_J(g2, s.alpha_p, s.beta_p - h, s.alpha_m, s.beta_m)) /
                  (2 * h);
    CHECK(d.d_alpha == doctest::Approx(fd_a).epsilon(1e-6));
    CHECK(d.d_beta == doctest::Approx(fd_b).epsilon(1e-6));

    JumpPartials dm = dJ_dminus(g2, s.alpha_p, s.beta_p, s.alpha_m, s.beta_m);
    double fd_am = (residual_J(g2, s.alpha_p, s.beta_p, s.alpha_m + h, s.beta_m) -
                    residual_J(g2, s.alpha_p, s.beta_p, s.alpha_m - h, s.beta_m)) /
                   (2 * h);
    double fd_bm = (residual_J(g2, s.alpha_p, s.beta_p, s.alpha_m, s.beta_m + h) -
                    residual_J(g2, s.alpha_p, s.beta_p, s.alpha_m, s.beta_m - h)) /
                   (2 * h);
    CHECK(dm.d_alpha == doctest::Approx(fd_am).epsilon(1e-6));
    CHECK(dm.d_beta == doctest::Approx(fd_bm).epsilon(1e-6));
  }
}

TEST_CASE("dJ/dbeta+ does not vanish at the reflection point") {
  ReflectionPointData r = solve_reflection_point(g2, minus0);
  JumpPartials d = dJ_dplus(g2, r.beta0, r.beta0, r.alpha_minus0, r.beta_minus0);
  CHECK(std::abs(d.d_beta) > 0.1);
}

TEST_CASE("slope ratio identity on the branch") {
  // on the Hugoniot branch: -dJ/dalpha+ / dJ/dbeta+ = -((cout+ - V)/(V - cin+))^2
  std::mt19937 rng(23);
  for (int k = 0; k < 50; ++k) {
    RandomShock s = random_shock(rng);
    s.alpha_p += 0.01 * (k % 3 - 1);
    double bp = solve_H(g2, s.alpha_p, s.alpha_m, s.beta_m, s.beta_p);
    JumpPartials d = dJ_dplus(g2, s.alpha_p, bp, s.alpha_m, s.beta_m);
    double V = shock_speed(g2, g2.from_invariants({s.alpha_p, bp}),
                           g2.from_invariants({s.alpha_m, s.beta_m}));
    CharSpeeds cs = g2.char_speeds({s.alpha_p, bp});
    double closed = -std::pow((cs.c_out - V) / (V - cs.c_in), 2);
    double ratio = -d.d_alpha / d.d_beta;
    CHECK(ratio == doctest::Approx(closed).epsilon(1e-10));
    CHECK(ratio < 0.0);
  }
}

TEST_CASE("solve_H branch behavior") {
  ReflectionPointData r = solve_reflection_point(g2, minus0);
  // the reflection point solves its own Newton problem without moving
  CHECK(solve_H(g2, r.beta0, r.alpha_minus0, r.beta_minus0, r.beta0) == r.beta0);

  for (double d : {0.01, -0.01}) {
    double bp = solve_H(g2, r.beta0 + d, r.alpha_minus0, r.beta_minus0, r.beta0);
    CHECK(std::abs(residual_J(g2, r.beta0 + d, bp, r.alpha_minus0, r.beta_minus0)) < 1e-10);
    // local idempotence: re-solving from the root stays put
    CHECK(solve_H(g2, r.beta0 + d, r.alpha_minus0, r.beta_minus0, bp) == bp);
    // branch discipline: the root tracks beta0, not the contact root beta_m
    CHECK(std::abs(bp - r.beta0) < 0.1);
    CHECK(std::abs(bp - r.beta_minus0) > 1e-3);
  }
}

TEST_CASE("hugoniot slopes") {
  ReflectionPointData r = solve_reflection_point(g2, minus0);
  HugoniotSlopes s = hugoniot_slopes(g2, r.beta0, r.alpha_minus0, r.beta_minus0, r.beta0);
  CHECK(s.F == doctest::Approx(-r.a * r.a).epsilon(1e-10));
  CHECK(std::abs(s.F + 0.02477) < 1e-4);

  // slopes match central differences of the branch function H
  const double h = 1e-6;
  auto H = [&](double ap, double am, double bm) {
    return solve_H(g2, ap, am, bm, r.beta0);
  };
  double fd_F = (H(r.beta0 + h, r.alpha_minus0, r.beta_minus0) -
                 H(r.beta0 - h, r.alpha_minus0, r.beta_minus0)) /
                (2 * h);
  double fd_M2 = (H(r.beta0, r.alpha_minus0 + h, r.beta_minus0) -
                  H(r.beta0, r.alpha_minus0 - h, r.beta_minus0)) /
                 (2 * h);
  double fd_M1 = (H(r.beta0, r.alpha_minus0, r.beta_minus0 + h) -
                  H(r.beta0, r.alpha_minus0, r.beta_minus0 - h)) /
                 (2 * h);
  CHECK(s.F == doctest::Approx(fd_F).epsilon(1e-6));
  CHECK(s.M1 == doctest::Approx(fd_M1).epsilon(1e-6));
  CHECK(s.M2 == doctest::Approx(fd_M2).epsilon(1e-6));

  // F < 0 along sampled branch points
  std::mt19937 rng(31);
  for (int k = 0; k < 20; ++k) {
    RandomShock rs = random_shock(rng);
    HugoniotSlopes sk = hugoniot_slopes(g2, rs.alpha_p, rs.alpha_m, rs.beta_m, rs.beta_p);
    CHECK(sk.F < 0.0);
  }
}

TEST_CASE("beta0_prime") {
  ReflectionPointData r = solve_reflection_point(g2, minus0);
  CHECK(beta0_prime(g2, r, {0.0, 0.0, 0.0, 0.0}) == 0.0);
  AheadGradients gr{-0.3, 0.2, 0.1, -0.05};
  double b1 = beta0_prime(g2, r, gr);
  double b2 = beta0_prime(g2, r, {2 * gr.alpha_t, 2 * gr.alpha_x, 2 * gr.beta_t, 2 * gr.beta_x});
  CHECK(b2 == doctest::Approx(2.0 * b1).epsilon(1e-12));
}

TEST_CASE("determinism margins") {
  ReflectionPointData r = solve_reflection_point(g2, minus0);
  DeterminismMargins m = determinism_margins(g2, {r.beta0, r.beta0},
                                             {r.alpha_minus0, r.beta_minus0}, r.V0);
  CHECK(m.lower == doctest::Approx(0.4068).epsilon(1e-3));
  CHECK(m.upper == doctest::Approx(0.3388).epsilon(1e-3));

  InvariantPair p{2.0, 2.0};
  DeterminismMargins e = determinism_margins(g2, p, p, 0.7);
  CHECK(e.lower == doctest::Approx(0.7 - 1.0));
  CHECK(e.upper == doctest::Approx(1.0 - 0.7));
  CHECK((e.lower <= 0.0 || e.upper <= 0.0));
}
