#include <doctest.h>

#include <cmath>
#include <vector>

#include "refl1d/ahead.hpp"
#include "refl1d/error.hpp"

using namespace refl1d;

namespace {

const BarotropicEos g2 = BarotropicEos::polytropic(0.5, 2.0);
const FluidState minus0{1.0, -0.5};

AheadField make_sw(double delta, double L, double T) {
  return AheadField::simple_wave(g2, minus0.rho, minus0.w, delta, L, T);
}

}  // namespace

TEST_CASE("constant field") {
  AheadField f = AheadField::constant(g2, 1.0, -0.5);
  for (double t : {0.0, 0.01, 5.0})
    for (double x : {0.0, 0.3, -0.1}) {
      InvariantPair p = f.eval(t, x);
      CHECK(p.alpha == doctest::Approx(1.5).epsilon(1e-15));
      CHECK(p.beta == doctest::Approx(2.5).epsilon(1e-15));
      AheadGrads g = f.grads(t, x);
      CHECK(g.alpha_t == 0.0);
      CHECK(g.alpha_x == 0.0);
      CHECK(g.beta_t == 0.0);
      CHECK(g.beta_x == 0.0);
    }
}

TEST_CASE("simple wave at t=0 returns the profile directly") {
  AheadField f = make_sw(0.05, 1.0, 0.1);
  for (double x : {0.0, 0.02, 0.5, 2.0}) {
    InvariantPair p = f.eval(0.0, x);
    CHECK(p.alpha == doctest::Approx(1.5 + 0.05 * (1.0 - std::exp(-x))).epsilon(1e-14));
    CHECK(p.beta == 2.5);  // bit-identical constant
  }
}

TEST_CASE("near-linear profile matches the closed-form inversion") {
  // with L large the profile is linear to O((x0/L)^2): slope s = delta/L,
  // x0 = (x - c(alpha0) t)/(1 + (3 s/4) t) for gamma = 2
  const double L = 1e3, delta = 0.1, T = 0.1;
  AheadField f = make_sw(delta, L, T);
  double s = delta / L;
  double c0 = (3.0 * 1.5 - 2.5) / 4.0;
  for (double t : {0.01, 0.05, 0.1})
    for (double x : {0.01, 0.05, 0.2}) {
      double x0 = (x - c0 * t) / (1.0 + 0.75 * s * t);
      double expect = 1.5 + delta * (1.0 - std::exp(-x0 / L));
      CHECK(f.eval(t, x).alpha == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("gradients: transport identity at t=0 and finite differences") {
  AheadField f = make_sw(0.05, 1.0, 0.1);
  for (double x : {0.0, 0.01, 0.4}) {
    AheadGrads g = f.grads(0.0, x);
    double slope = 0.05 * std::exp(-x);
    double c = g2.char_speeds(f.eval(0.0, x)).c_out;
    CHECK(g.alpha_x == doctest::Approx(slope).epsilon(1e-12));
    CHECK(g.alpha_t == doctest::Approx(-c * slope).epsilon(1e-12));
  }

  const double h = 1e-5;
  for (double t : {0.01, 0.05})
    for (double x : {0.02, 0.3}) {
      AheadGrads g = f.grads(t, x);
      auto al = [&](double tt, double xx) { return f.eval(tt, xx).alpha; };
      CHECK(std::abs((al(t + h, x) - al(t - h, x)) / (2 * h) - g.alpha_t) < 1e-6);
      CHECK(std::abs((al(t, x + h) - al(t, x - h)) / (2 * h) - g.alpha_x) < 1e-6);
      // second partials against central differences of the first
      auto gt = [&](double tt, double xx) { return f.grads(tt, xx).alpha_t; };
      auto gx = [&](double tt, double xx) { return f.grads(tt, xx).alpha_x; };
      CHECK(std::abs((gt(t + h, x) - gt(t - h, x)) / (2 * h) - g.alpha_tt) < 1e-6);
      CHECK(std::abs((gx(t, x + h) - gx(t, x - h)) / (2 * h) - g.alpha_xx) < 1e-6);
      CHECK(std::abs((gt(t, x + h) - gt(t, x - h)) / (2 * h) - g.alpha_tx) < 1e-6);
    }
}

TEST_CASE("simple wave satisfies the conservation equations") {
  AheadField f = make_sw(0.05, 1.0, 0.2);
  auto residual = [&](double h) {
    double worst = 0.0;
    for (int a = 1; a < 20; ++a)
      for (int b = 1; b < 20; ++b) {
        double t = 0.002 + 0.1 * a / 20.0, x = 0.01 + 0.3 * b / 20.0;
        auto state = [&](double tt, double xx) { return g2.from_invariants(f.eval(tt, xx)); };
        FluidState c = state(t, x), tp = state(t + h, x), tm = state(t - h, x);
        FluidState xp = state(t, x + h), xm = state(t, x - h);
        double mass = (tp.rho - tm.rho) / (2 * h) +
                      (xp.rho * xp.w - xm.rho * xm.w) / (2 * h);
        double mom = (tp.w - tm.w) / (2 * h) + c.w * (xp.w - xm.w) / (2 * h) +
                     (g2.pressure(xp.rho) - g2.pressure(xm.rho)) / (2 * h) / c.rho;
        worst = std::max({worst, std::abs(mass), std::abs(mom)});
      }
    return worst;
  };
  double r1 = residual(2e-4), r2 = residual(1e-4);
  CHECK(std::log2(r1 / r2) > 1.8);
  CHECK(r2 < 1e-6);
}

TEST_CASE("crossing characteristics rejected at construction") {
  CHECK_THROWS_WITH_AS(make_sw(-0.5, 0.01, 1.0), doctest::Contains("cross"), Error);
  CHECK_NOTHROW(make_sw(-0.05, 1.0, 0.1));  // compressive but tame
}

TEST_CASE("horizon enforcement") {
  AheadField f = make_sw(0.05, 1.0, 0.05);
  CHECK_THROWS_WITH_AS((void)f.eval(0.06, 0.0), doctest::Contains("horizon"), Error);
  CHECK_NOTHROW((void)f.eval(0.05, 0.01));
}

TEST_CASE("boundary characteristic") {
  ReflectionPointData r = solve_reflection_point(g2, minus0);

  AheadField cf = AheadField::constant(g2, 1.0, -0.5);
  BoundaryChar b(cf, 0.2);
  CHECK(b.x0(0.0) == 0.0);
  for (double t : {0.01, 0.077, 0.2})
    CHECK(b.x0(t) == doctest::Approx(0.5 * t).epsilon(1e-12));

  // step-halving oracle for the simple wave
  AheadField sw = make_sw(0.05, 1.0, 0.4);
  BoundaryChar full(sw, 0.2), half(sw, 0.1);
  for (double t : {0.02, 0.05, 0.1})
    CHECK(std::abs(full.x0(t) - half.x0(t)) < 1e-9);
  CHECK_THROWS_AS((void)full.x0(0.3), Error);

  // containment: closed-form constant-case traces
  std::vector<double> tt, xx;
  for (int k = 0; k <= 32; ++k) {
    double v = 0.1 * k / 32.0;
    tt.push_back((1.0 + r.a) * v / r.eta0);
    xx.push_back((1.0 - r.a) * v);
  }
  BoundaryChar bc(cf, 2.0 * 0.1 * (1.0 + r.a) / r.eta0);
  double margin = containment_margin(bc, tt, xx);
  CHECK(margin == doctest::Approx(0.0).epsilon(1e-12));  // v = 0 endpoint
  double expected_slope = (1.0 - r.a) - 0.5 * (1.0 + r.a) / r.eta0;
  CHECK(expected_slope == doctest::Approx(0.378).epsilon(2e-3));
  for (auto& x : xx) x -= 1.0;
  CHECK(containment_margin(bc, tt, xx) < 0.0);
}

TEST_CASE("compatibility check") {
  ReflectionPointData r = solve_reflection_point(g2, minus0);
  AheadField good = AheadField::constant(g2, 1.0, -0.5);
  CHECK_NOTHROW(check_ahead_compatibility(good, r));
  AheadField mismatched = AheadField::constant(g2, 1.2, -0.5);
  CHECK_THROWS_AS(check_ahead_compatibility(mismatched, r), Error);
}
