#include "refl1d/ahead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "refl1d/error.hpp"
#include "refl1d/grid.hpp"

namespace refl1d {

AheadField::AheadField(const BarotropicEos& eos, AheadKind kind) : eos_(eos), kind_(kind) {}

AheadField AheadField::constant(const BarotropicEos& eos, double rho, double w) {
  AheadField f(eos, AheadKind::constant);
  InvariantPair p = eos.to_invariants({rho, w});
  f.alpha0_ = p.alpha;
  f.beta_star_ = p.beta;
  f.T_ = std::numeric_limits<double>::infinity();
  return f;
}

AheadField AheadField::simple_wave(const BarotropicEos& eos, double rho, double w,
                                   double delta, double L, double T) {
  if (!(L > 0.0)) fail(ErrKind::config, "ahead.L must be > 0");
  if (!(T > 0.0)) fail(ErrKind::config, "simple-wave horizon T must be > 0");
  AheadField f(eos, AheadKind::simple_wave);
  InvariantPair p = eos.to_invariants({rho, w});
  f.alpha0_ = p.alpha;
  f.beta_star_ = p.beta;
  f.delta_ = delta;
  f.L_ = L;
  f.T_ = T;
  f.co_alpha_ = eos.speed_partials(p).co_a;

  // characteristics must not cross before T: 1 + c'(x0) t > 0
  double min_slope = 0.0;
  const int n = 1000;
  double x_max = std::max(10.0 * L, 1.0);
  for (int k = 0; k <= n; ++k)
    min_slope = std::min(min_slope, f.wave_speed_d(x_max * k / n));
  if (1.0 + min_slope * T < 0.05)
    fail(ErrKind::physics, "simple-wave characteristics cross before the horizon T");
  return f;
}

double AheadField::profile(double x0) const { return alpha0_ + delta_ * (1.0 - std::exp(-x0 / L_)); }
double AheadField::profile_d(double x0) const { return delta_ / L_ * std::exp(-x0 / L_); }
double AheadField::profile_dd(double x0) const { return -delta_ / (L_ * L_) * std::exp(-x0 / L_); }

double AheadField::wave_speed(double x0) const {
  return eos_.char_speeds({profile(x0), beta_star_}).c_out;
}

double AheadField::wave_speed_d(double x0) const { return co_alpha_ * profile_d(x0); }

double AheadField::invert_characteristic(double t, double x) const {
  // solve x0 + c(x0) t = x; monotone in x0 for admissible horizons
  double x0 = x;
  double scale = std::max(1.0, std::abs(x) + std::abs(wave_speed(0.0)) * t);
  for (int it = 0; it < 100; ++it) {
    double g = x0 + wave_speed(x0) * t - x;
    if (std::abs(g) < 1e-14 * scale) return x0;
    double gp = 1.0 + wave_speed_d(x0) * t;
    if (!(gp > 1e-12) || !std::isfinite(g)) break;
    x0 -= g / gp;
    if (!std::isfinite(x0)) break;
  }
  fail(ErrKind::solver, "characteristic inversion failed in the state ahead");
}

InvariantPair AheadField::eval(double t, double x, long* left_of_B) const {
  if (t > T_ * (1.0 + 1e-12)) fail(ErrKind::solver, "state-ahead horizon exceeded (t > T)");
  if (kind_ == AheadKind::constant) return {alpha0_, beta_star_};
  double x0 = invert_characteristic(t, x);
  if (left_of_B && x0 < -1e-9) ++*left_of_B;
  return {profile(x0), beta_star_};
}

AheadGrads AheadField::grads(double t, double x) const {
  if (t > T_ * (1.0 + 1e-12)) fail(ErrKind::solver, "state-ahead horizon exceeded (t > T)");
  AheadGrads g;
  if (kind_ == AheadKind::constant) return g;

  double x0 = invert_characteristic(t, x);
  double a1 = profile_d(x0), a2 = profile_dd(x0);
  double c = wave_speed(x0);
  double cp = wave_speed_d(x0);
  double cpp = co_alpha_ * a2;  // co_aa vanishes for the closed-form eos
  double D = 1.0 + cp * t;

  double x0_t = -c / D;
  double x0_x = 1.0 / D;
  double x0_tt = (2.0 * c * cp - c * c * cpp * t / D) / (D * D);
  double x0_tx = -(cp - c * cpp * t / D) / (D * D);
  double x0_xx = -cpp * t / (D * D * D);

  g.alpha_t = a1 * x0_t;
  g.alpha_x = a1 * x0_x;
  g.alpha_tt = a2 * x0_t * x0_t + a1 * x0_tt;
  g.alpha_tx = a2 * x0_t * x0_x + a1 * x0_tx;
  g.alpha_xx = a2 * x0_x * x0_x + a1 * x0_xx;
  return g;
}

double AheadField::outgoing_speed(double t, double x) const {
  return eos_.char_speeds(eval(t, x)).c_out;
}

void check_ahead_compatibility(const AheadField& field, const ReflectionPointData& refl) {
  InvariantPair o = field.origin_state();
  double tol = 1e-12 * std::max(1.0, std::abs(refl.alpha_minus0));
  if (std::abs(o.alpha - refl.alpha_minus0) > tol || std::abs(o.beta - refl.beta_minus0) > tol)
    fail(ErrKind::physics, "state ahead does not match the reflection data at the origin");
  // eq-15 side repeated with the field's own origin value
  if (!(refl.cout_minus0 < refl.V0))
    fail(ErrKind::physics, "determinism failure: (c_out*)0 >= V0");
}

BoundaryChar::BoundaryChar(const AheadField& field, double T) : T_(T) {
  if (!(T > 0.0) || !std::isfinite(T))
    fail(ErrKind::solver, "boundary characteristic needs a finite horizon");
  const int n = 2048;
  dt_ = T / n;
  x_.resize(n + 1);
  x_[0] = 0.0;
  double x = 0.0;
  for (int k = 0; k < n; ++k) {
    double t = k * dt_;
    double k1 = field.outgoing_speed(t, x);
    double k2 = field.outgoing_speed(t + 0.5 * dt_, x + 0.5 * dt_ * k1);
    double k3 = field.outgoing_speed(t + 0.5 * dt_, x + 0.5 * dt_ * k2);
    double k4 = field.outgoing_speed(t + dt_, x + dt_ * k3);
    x += dt_ / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    x_[k + 1] = x;
  }
}

double BoundaryChar::x0(double t) const {
  if (t > T_ * (1.0 + 1e-12)) fail(ErrKind::solver, "boundary characteristic horizon exceeded");
  return eval_cubic_uniform(x_, t / dt_);
}

BoundaryChar boundary_characteristic(const AheadField& field, double T) {
  return BoundaryChar(field, T);
}

double containment_margin(const BoundaryChar& bchar, const std::vector<double>& t_trace,
                          const std::vector<double>& x_trace) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < t_trace.size(); ++k)
    margin = std::min(margin, x_trace[k] - bchar.x0(t_trace[k]));
  return margin;
}

}  // namespace refl1d
