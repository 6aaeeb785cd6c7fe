#pragma once

#include <string>

namespace refl1d {

struct FluidState {
  double rho;  // density, > 0
  double w;    // velocity
};

// Riemann invariants alpha = P(rho) + w, beta = P(rho) - w, where P is the
// fixed antiderivative of eta/rho (see riemann_potential).
struct InvariantPair {
  double alpha;
  double beta;
};

struct CharSpeeds {
  double c_in;   // w - eta
  double c_out;  // w + eta
};

// d(rho,w)/d(alpha,beta) = [rho/2eta, rho/2eta; 1/2, -1/2]
struct StateJacobian {
  double drho_dalpha, drho_dbeta;
  double dw_dalpha, dw_dbeta;
};

// First and second partials of the characteristic speeds w.r.t. (alpha,beta).
// With N(m) = eta(P^-1(m)), m = (alpha+beta)/2:
//   c_out = (alpha-beta)/2 + N(m),  c_in = (alpha-beta)/2 - N(m),
// so the second partials are all +-N''(m)/4 (identically zero for both
// closed-form families, where N is affine).
struct SpeedPartials {
  double ci_a, ci_b, co_a, co_b;
  double ci_aa, ci_ab, ci_bb;
  double co_aa, co_ab, co_bb;
};

enum class EosKind { polytropic, isothermal };

// Barotropic equation of state p = p(rho), restricted to the two closed-form
// families: polytropic p = K rho^gamma (gamma > 1) and isothermal p = K rho.
// The Riemann potential is fixed as P = 2 eta/(gamma-1) resp. c ln(rho), so
// invariants are comparable across runs.
class BarotropicEos {
 public:
  static BarotropicEos polytropic(double K, double gamma);
  static BarotropicEos isothermal(double K);
  static BarotropicEos from_config(const std::string& kind, double K, double gamma);

  EosKind kind() const { return kind_; }
  double K() const { return K_; }
  double gamma() const { return gamma_; }

  double pressure(double rho) const;
  double dp_drho(double rho) const;
  double sound_speed(double rho) const;  // eta = sqrt(dp/drho)

  double riemann_potential(double rho) const;   // P(rho); rho <= 0 is a domain error
  double potential_inverse(double m) const;     // P^-1(m); vacuum error if below inf P

  InvariantPair to_invariants(const FluidState& s) const;
  FluidState from_invariants(const InvariantPair& p) const;
  CharSpeeds char_speeds(const InvariantPair& p) const;
  StateJacobian state_jacobian(const InvariantPair& p) const;
  SpeedPartials speed_partials(const InvariantPair& p) const;

 private:
  BarotropicEos(EosKind kind, double K, double gamma);

  double potential_slope() const;  // N'(m): (gamma-1)/2 or 0

  EosKind kind_;
  double K_;
  double gamma_;
  double sqrt_Kgamma_;
};

}  // namespace refl1d
