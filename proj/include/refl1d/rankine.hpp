#pragma once

#include "refl1d/eos.hpp"

namespace refl1d {

// Data produced by the reflection-point solve: the state behind the reflected
// shock at the origin, the shock speed there, and the derived coordinate
// ratio a = (eta0 - V0)/(eta0 + V0).
struct ReflectionPointData {
  double rho0 = 0.0;         // density behind at the reflection point
  double V0 = 0.0;           // shock speed at the reflection point
  double eta0 = 0.0;         // sound speed eta(rho0)
  double a = 0.0;            // (eta0 - V0)/(eta0 + V0), in (0,1)
  double beta0 = 0.0;        // invariant value behind (= alpha0, zero velocity)
  double beta0_prime = 0.0;  // d beta+/dv at v = 0; set by beta0_prime()
  bool beta0_prime_set = false;

  double cout_minus0 = 0.0;  // outgoing speed of the state ahead at the origin
  double alpha_minus0 = 0.0, beta_minus0 = 0.0;  // invariants ahead at origin
  FluidState minus0{0.0, 0.0};                   // configured data (rho-, w-)
  bool multiple_roots = false;  // more than one admissible density bracket found
};

// Sensitivities of the Hugoniot branch function H(alpha+, alpha-, beta-):
// F = dH/dalpha+, M1 = dH/dbeta-, M2 = dH/dalpha-.
struct HugoniotSlopes {
  double F, M1, M2;
};

struct JumpPartials {
  double d_alpha, d_beta;
};

struct DeterminismMargins {
  double lower;  // V - c_out(minus): > 0 means supersonic relative to ahead
  double upper;  // c_out(plus) - V:  > 0 means subsonic relative to behind
};

// I = [rho w]^2 - [rho w^2 + p][rho], with [f] = f_plus - f_minus.
double hugoniot_residual(const BarotropicEos& eos, const FluidState& plus, const FluidState& minus);

// V = [rho w]/[rho]; degenerate-jump error when the densities coincide.
double shock_speed(const BarotropicEos& eos, const FluidState& plus, const FluidState& minus);

// I expressed through the Riemann invariants of both sides.
double residual_J(const BarotropicEos& eos, double alpha_p, double beta_p,
                  double alpha_m, double beta_m);

// Exact partials of J with respect to the plus-side invariants
// (dI/drho+, dI/dw+ composed with the state Jacobian).
JumpPartials dJ_dplus(const BarotropicEos& eos, double alpha_p, double beta_p,
                      double alpha_m, double beta_m);

// Minus-side partials, obtained from the plus-side formulas through the swap
// symmetry I(rho+, rho-, w+, w-) = I(rho-, rho+, w-, w+).
JumpPartials dJ_dminus(const BarotropicEos& eos, double alpha_p, double beta_p,
                       double alpha_m, double beta_m);

// Newton solve of J(alpha+, beta+, alpha-, beta-) = 0 for beta+ on the branch
// connected to the supplied guess. Tolerance |J| < 1e-12 max(1, |dJ/dbeta+|).
double solve_H(const BarotropicEos& eos, double alpha_p, double alpha_m, double beta_m,
               double guess);

// Branch slopes at (alpha+, alpha-, beta-); beta+ is re-solved from the guess.
HugoniotSlopes hugoniot_slopes(const BarotropicEos& eos, double alpha_p, double alpha_m,
                               double beta_m, double beta_p_guess);

// Solves I(rho0, rho-, 0, w-) = 0 for the reflected state and checks the
// determinism inequalities (c_out-)0 < V0 < eta0 and V0 > 0.
ReflectionPointData solve_reflection_point(const BarotropicEos& eos, const FluidState& minus0);

// First partials of the state-ahead invariants at the origin, as needed for
// beta0'.
struct AheadGradients {
  double alpha_t, alpha_x, beta_t, beta_x;
};

// beta0' = (M1 beta-'(0) + M2 alpha-'(0)) / (1 + a^3), with the trace
// derivatives built from the ahead partials via the (1+a)/eta0 and (1-a)
// weights.
double beta0_prime(const BarotropicEos& eos, const ReflectionPointData& refl,
                   const AheadGradients& g0);

DeterminismMargins determinism_margins(const BarotropicEos& eos, const InvariantPair& plus,
                                       const InvariantPair& minus, double V);

}  // namespace refl1d
