#pragma once

#include <functional>
#include <vector>

#include "refl1d/eos.hpp"
#include "refl1d/rankine.hpp"

namespace refl1d {

// First and second partials of the state-ahead invariants at a point.
struct AheadGrads {
  double alpha_t = 0.0, alpha_x = 0.0;
  double beta_t = 0.0, beta_x = 0.0;
  double alpha_tt = 0.0, alpha_tx = 0.0, alpha_xx = 0.0;
  double beta_tt = 0.0, beta_tx = 0.0, beta_xx = 0.0;

  AheadGradients origin_gradients() const { return {alpha_t, alpha_x, beta_t, beta_x}; }
};

enum class AheadKind { constant, simple_wave };

// Exact solutions serving as the prescribed state ahead of the reflected
// shock. Two families:
//   constant    - fixed (rho*, w*), all partials zero, valid for all t;
//   simple_wave - beta* constant, alpha* transported along straight outgoing
//                 characteristics from the profile
//                   alpha0*(x0) = alpha-0 + delta (1 - exp(-x0/L)).
// Both match the configured reflection data at the origin.
class AheadField {
 public:
  static AheadField constant(const BarotropicEos& eos, double rho, double w);
  // horizon T must keep the characteristics from crossing; checked here
  static AheadField simple_wave(const BarotropicEos& eos, double rho, double w,
                                double delta, double L, double T);

  AheadKind kind() const { return kind_; }
  double horizon() const { return T_; }
  InvariantPair origin_state() const { return {alpha0_, beta_star_}; }

  // alpha*, beta* at (t, x); horizon error for t > T. Evaluations landing
  // left of the boundary characteristic use the smooth extension of the
  // profile; left_of_B counts those events when supplied.
  InvariantPair eval(double t, double x, long* left_of_B = nullptr) const;
  AheadGrads grads(double t, double x) const;

  // c_out(alpha*(t,x), beta*(t,x)); drives the boundary characteristic
  double outgoing_speed(double t, double x) const;

 private:
  AheadField(const BarotropicEos& eos, AheadKind kind);

  double profile(double x0) const;    // alpha0*(x0)
  double profile_d(double x0) const;  // d alpha0*/dx0
  double profile_dd(double x0) const;
  double wave_speed(double x0) const;    // c_out(alpha0*(x0), beta*)
  double wave_speed_d(double x0) const;  // d/dx0 of the above
  double invert_characteristic(double t, double x) const;

  BarotropicEos eos_;
  AheadKind kind_;
  double T_ = 0.0;
  double alpha0_ = 0.0, beta_star_ = 0.0;  // invariants at the origin
  double delta_ = 0.0, L_ = 1.0;
  double co_alpha_ = 0.0;  // d c_out / d alpha (constant for the closed-form eos)
};

// eq-15 compatibility of a configured field with the reflection data:
// (c_out*)0 < V0 must hold. Physics error otherwise.
void check_ahead_compatibility(const AheadField& field, const ReflectionPointData& refl);

// The outgoing characteristic of the state ahead starting at the origin,
// integrated with classical RK4 at step T/2048 and evaluated by local cubic
// interpolation.
class BoundaryChar {
 public:
  BoundaryChar() = default;
  BoundaryChar(const AheadField& field, double T);

  double x0(double t) const;  // horizon error for t > T
  double horizon() const { return T_; }

 private:
  double T_ = 0.0, dt_ = 0.0;
  std::vector<double> x_;
};

BoundaryChar boundary_characteristic(const AheadField& field, double T);

// min over the trace of x+(v) - x0*(t+(v)); non-negative means the shock
// trace stays inside the future development.
double containment_margin(const BoundaryChar& bchar, const std::vector<double>& t_trace,
                          const std::vector<double>& x_trace);

}  // namespace refl1d
