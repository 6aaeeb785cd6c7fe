#pragma once

#include <string>
#include <vector>

#include "refl1d/ahead.hpp"
#include "refl1d/eos.hpp"
#include "refl1d/grid.hpp"
#include "refl1d/rankine.hpp"
#include "refl1d/spline.hpp"

namespace refl1d {

struct SolverConfig {
  double tol_value = 1e-11;  // stop on sup|dx| + sup|d beta+|
  double tol_norm = 1e-8;    // stop on the discrete second-derivative norms
  int max_iter = 200;
};

// One member of the iteration sequence: x with its five companion derivative
// fields (all built in closed form, never by numerical differencing) and the
// shock-edge invariant trace on the knots v_k = eps sigma_k.
struct Iterate {
  Field2 x, x_u, x_v, x_uu, x_uv, x_vv;
  Trace1 beta_plus;
};

// x0 = v - u, beta+0 = beta0 + beta0' v, with exact derivative fields.
Iterate init_iterate(const ReflectionPointData& refl, const DomainSpec& spec);

// beta(u,v) = beta+(v), alpha(u,v) = beta+(u), via clamped-left cubic-spline
// evaluation of the trace, plus the trace-derivative and characteristic-speed
// fields the downstream formulas need. The wall identity alpha(u,u) =
// beta(u,u) holds bitwise by construction.
struct InvariantFields {
  CubicSpline bp;               // spline of beta_plus, S'(0) = beta0'
  Field2 alpha, beta;
  Field2 bp1_u, bp1_v;          // beta+'(u), beta+'(v)
  Field2 bp2_u, bp2_v;          // beta+''(u), beta+''(v)
  Field2 c_in, c_out;
};
InvariantFields assemble_invariant_fields(const BarotropicEos& eos, const DomainSpec& spec,
                                          const Trace1& beta_plus, double beta0_prime);

// t from the wall integral of phi + psi and the outgoing integral of psi;
// t_u, t_v from the closed-form expressions (phi = x_u/c_in, psi = x_v/c_out).
struct TimeField {
  Field2 t, t_u, t_v;
};
TimeField compute_time_field(const BarotropicEos& eos, const DomainSpec& spec,
                             const Iterate& it, const InvariantFields& inv);

// Shock-edge data: trace extraction at tau = 1, the state ahead along the
// trace, shock speed, Gamma and its spline derivative.
struct ShockTraces {
  Trace1 v;  // knot parameters eps sigma_k
  Trace1 t_plus, x_plus;
  Trace1 alpha_plus;
  Trace1 alpha_minus, beta_minus;
  Trace1 V, Gamma, Gamma_prime;
  Trace1 margin_lo, margin_hi;  // determinism margins V - c_out-, c_out+ - V
  CubicSpline gamma_spline;
  double containment_margin = 0.0;
  long left_of_B = 0;
};
ShockTraces compute_shock_traces(const BarotropicEos& eos, const AheadField& ahead,
                                 const BoundaryChar& bchar, const DomainSpec& spec,
                                 const Iterate& it, const InvariantFields& inv,
                                 const TimeField& tf);

// mu, nu, M = mu x_u + nu x_v with its partials, and Lambda on the shock
// knots.
struct CoefficientFields {
  Field2 mu, nu, M, M_u, M_v;
  Trace1 lambda;
};
CoefficientFields compute_coefficient_fields(const BarotropicEos& eos, const DomainSpec& spec,
                                             const Iterate& it, const InvariantFields& inv,
                                             const ShockTraces& tr);

// New x plus all five derivative fields from the integral update formulas.
Iterate update_x(const DomainSpec& spec, const Iterate& prev, const ShockTraces& tr,
                 const CoefficientFields& cf);

// New beta+ trace: per-node Newton continuation of the Hugoniot branch.
Trace1 update_beta_plus(const BarotropicEos& eos, const Iterate& prev, const ShockTraces& tr);

struct Diagnostics {
  bool converged = false;
  int iterations = 0;
  std::vector<double> value_delta, norm_delta;    // per applied update
  std::vector<double> ratio_value, ratio_norm;    // r_m = |D_{m+1}|/|D_m|
  double max_ratio_value = 0.0, max_ratio_norm = 0.0;
  std::vector<double> B_monitor, N0_monitor;      // ball-norm histories
  double determinism_min_margin = 0.0;
  double containment_min_margin = 0.0;
  double jacobian_min = 0.0, jacobian_origin = 0.0;
  double xuv_minus_M_sup = 0.0;    // eq-80 consistency at the fixed point
  double shock_bc_residual = 0.0;  // |x_v - Gamma x_u| on the shock edge
  long left_of_B_events = 0;
  std::string failure;
};

struct Solution {
  DomainSpec spec;
  ReflectionPointData refl;
  Field2 t, x, t_u, t_v, x_u, x_v, x_uu, x_uv, x_vv;
  Field2 alpha, beta, rho, w;
  Trace1 beta_plus;
  ShockTraces traces;
  Trace1 J_residual;  // jump-condition residual along the shock
  Diagnostics diag;
};

// Full fixed-point loop. On failure throws a solver/physics error; when
// diag_out is supplied the partial diagnostics survive the throw.
Solution solve(const SolverConfig& cfg, const BarotropicEos& eos, const AheadField& ahead,
               const ReflectionPointData& refl, const DomainSpec& spec,
               const Iterate* custom_init = nullptr, Diagnostics* diag_out = nullptr);

}  // namespace refl1d
