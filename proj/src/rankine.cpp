#include "refl1d/rankine.hpp"

#include <cmath>
#include <string>

#include "refl1d/error.hpp"

namespace refl1d {

namespace {

struct JumpTerms {
  double j_rho;   // [rho]
  double j_mom;   // [rho w]
  double j_flux;  // [rho w^2 + p]
};

JumpTerms jump_terms(const BarotropicEos& eos, const FluidState& p, const FluidState& m) {
  double fp = p.rho * p.w * p.w + eos.pressure(p.rho);
  double fm = m.rho * m.w * m.w + eos.pressure(m.rho);
  return {p.rho - m.rho, p.rho * p.w - m.rho * m.w, fp - fm};
}

// dI/drho+ and dI/dw+ (exact, no jump conditions assumed)
void dI_dplus(const BarotropicEos& eos, const FluidState& p, const FluidState& m,
              double& dI_drho, double& dI_dw) {
  JumpTerms j = jump_terms(eos, p, m);
  double eta_p = eos.sound_speed(p.rho);
  dI_drho = 2.0 * j.j_mom * p.w - (p.w * p.w + eta_p * eta_p) * j.j_rho - j.j_flux;
  dI_dw = 2.0 * p.rho * (j.j_mom - p.w * j.j_rho);
}

}  // namespace

double hugoniot_residual(const BarotropicEos& eos, const FluidState& plus, const FluidState& minus) {
  JumpTerms j = jump_terms(eos, plus, minus);
  return j.j_mom * j.j_mom - j.j_flux * j.j_rho;
}

double shock_speed(const BarotropicEos& eos, const FluidState& plus, const FluidState& minus) {
  JumpTerms j = jump_terms(eos, plus, minus);
  if (j.j_rho == 0.0) fail(ErrKind::physics, "shock_speed: degenerate jump (equal densities)");
  return j.j_mom / j.j_rho;
}

double residual_J(const BarotropicEos& eos, double alpha_p, double beta_p,
                  double alpha_m, double beta_m) {
  return hugoniot_residual(eos, eos.from_invariants({alpha_p, beta_p}),
                           eos.from_invariants({alpha_m, beta_m}));
}

JumpPartials dJ_dplus(const BarotropicEos& eos, double alpha_p, double beta_p,
                      double alpha_m, double beta_m) {
  FluidState p = eos.from_invariants({alpha_p, beta_p});
  FluidState m = eos.from_invariants({alpha_m, beta_m});
  double dI_drho, dI_dw;
  dI_dplus(eos, p, m, dI_drho, dI_dw);
  StateJacobian jac = eos.state_jacobian({alpha_p, beta_p});
  return {dI_drho * jac.drho_dalpha + dI_dw * jac.dw_dalpha,
          dI_drho * jac.drho_dbeta + dI_dw * jac.dw_dbeta};
}

JumpPartials dJ_dminus(const BarotropicEos& eos, double alpha_p, double beta_p,
                       double alpha_m, double beta_m) {
  // I(rho+, rho-, w+, w-) = I(rho-, rho+, w-, w+), so the minus-side partials
  // are the plus-side formulas with the sides swapped.
  return dJ_dplus(eos, alpha_m, beta_m, alpha_p, beta_p);
}

double solve_H(const BarotropicEos& eos, double alpha_p, double alpha_m, double beta_m,
               double guess) {
  double b = guess;
  for (int it = 0; it < 50; ++it) {
    double J = residual_J(eos, alpha_p, b, alpha_m, beta_m);
    double dJb = dJ_dplus(eos, alpha_p, b, alpha_m, beta_m).d_beta;
    if (std::abs(J) < 1e-12 * std::max(1.0, std::abs(dJb))) return b;
    if (dJb == 0.0 || !std::isfinite(J) || !std::isfinite(dJb)) break;
    b -= J / dJb;
    if (!std::isfinite(b)) break;
  }
  fail(ErrKind::solver, "Hugoniot branch lost (Newton on J did not converge)");
}

HugoniotSlopes hugoniot_slopes(const BarotropicEos& eos, double alpha_p, double alpha_m,
                               double beta_m, double beta_p_guess) {
  double beta_p = solve_H(eos, alpha_p, alpha_m, beta_m, beta_p_guess);
  JumpPartials dp = dJ_dplus(eos, alpha_p, beta_p, alpha_m, beta_m);
  JumpPartials dm = dJ_dminus(eos, alpha_p, beta_p, alpha_m, beta_m);
  return {-dp.d_alpha / dp.d_beta, -dm.d_beta / dp.d_beta, -dm.d_alpha / dp.d_beta};
}

ReflectionPointData solve_reflection_point(const BarotropicEos& eos, const FluidState& minus0) {
  if (!(minus0.rho > 0.0)) fail(ErrKind::physics, "solve_reflection_point: rho- must be > 0");
  if (minus0.w == 0.0) fail(ErrKind::physics, "data compatible with wall (w- = 0)");

  auto I_at = [&](double rho) { return hugoniot_residual(eos, {rho, 0.0}, minus0); };

  // I(rho-) = [rho w]^2 > 0; scan (rho-, 1e3 rho-] geometrically for the
  // first sign change, then bisect and polish with Newton.
  const double rho_m = minus0.rho;
  double lo = rho_m, f_lo = I_at(rho_m * (1.0 + 1e-12));
  double hi = 0.0;
  bool found = false;
  int sign_changes = 0;
  const double step = 1.0 + 1.0 / 64.0;
  double prev_r = rho_m, prev_f = f_lo;
  for (double r = rho_m * step; r <= 1e3 * rho_m * (1.0 + 1e-12); r *= step) {
    double fr = I_at(r);
    if ((prev_f > 0.0) != (fr > 0.0)) {
      ++sign_changes;
      if (!found) {
        lo = prev_r;
        f_lo = prev_f;
        hi = r;
        found = true;
      }
    }
    prev_r = r;
    prev_f = fr;
  }
  if (!found) fail(ErrKind::physics, "no deterministic reflection (no root of I in (rho-, 1e3 rho-])");

  // bisect to 1e-13 relative
  while (hi - lo > 1e-13 * hi) {
    double mid = 0.5 * (lo + hi);
    double fm = I_at(mid);
    if ((f_lo > 0.0) == (fm > 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  double rho0 = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {  // Newton polish
    double dI_drho, dI_dw;
    dI_dplus(eos, {rho0, 0.0}, minus0, dI_drho, dI_dw);
    if (dI_drho == 0.0) break;
    double next = rho0 - I_at(rho0) / dI_drho;
    if (!(next > lo * 0.5 && next < hi * 2.0)) break;
    if (next == rho0) break;
    rho0 = next;
  }

  ReflectionPointData r;
  r.minus0 = minus0;
  r.rho0 = rho0;
  r.V0 = shock_speed(eos, {rho0, 0.0}, minus0);
  r.eta0 = eos.sound_speed(rho0);
  InvariantPair inv_m = eos.to_invariants(minus0);
  r.alpha_minus0 = inv_m.alpha;
  r.beta_minus0 = inv_m.beta;
  r.cout_minus0 = eos.char_speeds(inv_m).c_out;
  r.multiple_roots = sign_changes > 1;

  if (!(r.V0 > 0.0)) fail(ErrKind::physics, "determinism failure: V0 <= 0");
  if (!(r.cout_minus0 < r.V0 && r.V0 < r.eta0))
    fail(ErrKind::physics, "determinism failure: (c_out-)0 < V0 < eta0 violated");

  r.a = (r.eta0 - r.V0) / (r.eta0 + r.V0);
  r.beta0 = eos.riemann_potential(rho0);
  return r;
}

double beta0_prime(const BarotropicEos& eos, const ReflectionPointData& refl,
                   const AheadGradients& g0) {
  double alpha_m1 = g0.alpha_t * (1.0 + refl.a) / refl.eta0 + g0.alpha_x * (1.0 - refl.a);
  double beta_m1 = g0.beta_t * (1.0 + refl.a) / refl.eta0 + g0.beta_x * (1.0 - refl.a);
  HugoniotSlopes s = hugoniot_slopes(eos, refl.beta0, refl.alpha_minus0, refl.beta_minus0,
                                     refl.beta0);
  return (s.M1 * beta_m1 + s.M2 * alpha_m1) / (1.0 + refl.a * refl.a * refl.a);
}

DeterminismMargins determinism_margins(const BarotropicEos& eos, const InvariantPair& plus,
                                       const InvariantPair& minus, double V) {
  double cout_p = eos.char_speeds(plus).c_out;
  double cout_m = eos.char_speeds(minus).c_out;
  return {V - cout_m, cout_p - V};
}

}  // namespace refl1d
