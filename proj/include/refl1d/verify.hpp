#pragma once

#include "refl1d/solver.hpp"

namespace refl1d {

// Pass/fail thresholds for the post-hoc verification; defaults pin the
// acceptance tolerances.
struct VerifyThresholds {
  double euler_max = 1e-3;
  double euler_order_min = 1.5;
  double euler_noise_floor = 1e-9;  // below this the residual counts as exact
  double rh_speed_max = 1e-7;
  double j_max = 1e-9;
  double rh_v0_max = 1e-10;
  double wall_max = 0.0;
  double determinism_min = 0.0;    // min margin must exceed this
  double containment_min = 0.0;    // min margin must reach this
  double jacobian_dev_max = 0.05;  // |min J - 2/eta0| eta0/2
  double asym_ratio_lo = 0.25;
  double asym_ratio_hi = 4.0;
  double uniqueness_factor = 10.0;  // times solver tol_value

  bool operator==(const VerifyThresholds&) const = default;
};

// Independent residual of the conservation equations on a regular (t,x)
// patch strictly inside the image of T_eps; the map is inverted per point by
// a 2x2 Newton on the interpolated fields. The patch and the FD step depend
// only on the domain geometry, so residuals are comparable across grids; the
// order is measured across one halving of the grid step (companion solve at
// half resolution).
struct EulerResidual {
  double sup = 0.0;
  double order = 0.0;   // NaN when no companion solution is supplied
  int shrink_steps = 0; // patch shrink-and-retry count
};
EulerResidual euler_residual(const BarotropicEos& eos, const Solution& sol);
EulerResidual euler_residual(const BarotropicEos& eos, const Solution& sol,
                             const Solution& half_resolution);

struct RhResidual {
  double speed_sup;    // |dx+/dv - V dt+/dv| at interior shock nodes
  double jump_sup;     // |J| along the shock
  double v0_deviation; // |V(0) - V0|
};
RhResidual rh_residual(const BarotropicEos& eos, const Solution& sol);

// max over wall nodes of |alpha - beta| and |x|; zero by construction
double wall_residual(const Solution& sol);

struct JacobianCheck {
  double min;            // min over nodes of (c_out - c_in) t_u t_v
  double origin;         // value at the origin node
  double rel_deviation;  // |min - 2/eta0| eta0/2
};
JacobianCheck jacobian_check(const BarotropicEos& eos, const Solution& sol);

// sup over nodes with v >= eps/16 of |field - leading terms| / v^2, per field
struct AsymptoticNumerators {
  double R_alpha, R_beta, R_t, R_x;
  bool exact;  // numerators at rounding level (constant scenario)
};
AsymptoticNumerators asymptotic_numerators(const Solution& sol);

struct AsymptoticCheck {
  AsymptoticNumerators coarse, fine;
  double ratio_alpha, ratio_beta, ratio_t, ratio_x;  // R(eps/2)/R(eps)
  bool exact;
};
AsymptoticCheck asymptotic_check(const Solution& at_eps, const Solution& at_half_eps);

// Admissible perturbed initial iterate for the uniqueness probe: keeps the
// endpoint pinning (beta+(0), beta0', origin normalization) intact.
Iterate perturbed_init(const ReflectionPointData& refl, const DomainSpec& spec);

// sup distance between the standard-init and perturbed-init solutions
double uniqueness_probe(const SolverConfig& cfg, const BarotropicEos& eos,
                        const AheadField& ahead, const ReflectionPointData& refl,
                        const DomainSpec& spec);

struct VerificationReport {
  double euler_residual_sup = 0.0, euler_order = 0.0;
  double rh_speed_residual_sup = 0.0, rh_jump_residual_sup = 0.0, rh_v0_deviation = 0.0;
  double wall_residual_sup = 0.0;
  double determinism_min_margin = 0.0, containment_min_margin = 0.0;
  double jacobian_min = 0.0, jacobian_origin_value = 0.0, jacobian_min_rel_deviation = 0.0;
  double asym_R_alpha = 0.0, asym_R_beta = 0.0, asym_R_t = 0.0, asym_R_x = 0.0;
  double asym_R_alpha_fine = 0.0, asym_R_beta_fine = 0.0, asym_R_t_fine = 0.0,
         asym_R_x_fine = 0.0;
  double asym_ratio_alpha = 0.0, asym_ratio_beta = 0.0, asym_ratio_t = 0.0, asym_ratio_x = 0.0;
  bool asym_exact = false;
  double uniqueness_delta = 0.0;
  int iterations = 0;
  double max_contraction_ratio = 0.0;
  bool passed = false;
};

// Full verification workflow: solve at eps and eps/2, run every check, apply
// the thresholds. The report is produced even when checks fail; solver
// failures still throw.
VerificationReport run_verification(const VerifyThresholds& vt, const SolverConfig& cfg,
                                    const BarotropicEos& eos, const AheadField& ahead,
                                    const ReflectionPointData& refl, const DomainSpec& spec);

}  // namespace refl1d
